// The space of subshifts at desk scale: shifts of finite type with
// phase-anchored forbidden words (subshifts of (X_n, sigma_n^step)), finite
// unions of periodic points, exact language computation through a trimmed
// transfer graph, the 2^{-k} language metric, Markov approximations, chain
// recurrence, pointwise stabilizers and their fixed subshifts, and the
// spatialization acting on finite and chain-recurrent subshifts.
//
// All subshift comparisons go through languages up to an explicit cutoff;
// no claim is ever made beyond the cutoff.

#pragma once

#include <set>
#include <unordered_map>

#include "stabaut/verraum.hpp"

namespace stabaut {

// A forbidden word anchored at positions p with p = phase (mod modulus).
// Plain SFTs use phase 0, modulus 1 (forbidden everywhere).
struct ForbiddenWord {
  std::vector<int> symbols;
  int phase = 0;
  int modulus = 1;

  friend bool operator==(const ForbiddenWord&, const ForbiddenWord&) = default;
  friend bool operator<(const ForbiddenWord& a, const ForbiddenWord& b) {
    return std::tie(a.symbols, a.phase, a.modulus) < std::tie(b.symbols, b.phase, b.modulus);
  }
};

class Subshift {
 public:
  enum class Kind { Sft, Finite };

  static Subshift sft(Alphabet a, int step, std::vector<ForbiddenWord> forbidden) {
    Subshift y;
    y.kind_ = Kind::Sft;
    y.alphabet_ = a;
    y.step_ = step;
    for (auto& f : forbidden) {
      if (f.symbols.empty()) throw std::invalid_argument("forbidden words must be nonempty");
      if (f.modulus < 1 || step % f.modulus != 0)
        throw std::invalid_argument("forbidden-word modulus must divide the step");
      f.phase = positive_mod(f.phase, f.modulus);
      for (int c : f.symbols)
        if (c < 0 || c >= a.size) throw std::invalid_argument("forbidden word symbol out of range");
    }
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
    y.forbidden_ = std::move(forbidden);
    return y;
  }

  // Standard SFT: forbidden at every position.
  static Subshift sft_everywhere(Alphabet a, std::vector<std::vector<int>> words) {
    std::vector<ForbiddenWord> forbidden;
    for (auto& w : words) forbidden.push_back(ForbiddenWord{std::move(w), 0, 1});
    return sft(a, 1, std::move(forbidden));
  }

  static Subshift full_shift(Alphabet a) { return sft(a, 1, {}); }

  // A finite union of periodic points, closed under sigma^step.
  static Subshift finite(Alphabet a, int step, const std::vector<PeriodicPoint>& seed) {
    Subshift y;
    y.kind_ = Kind::Finite;
    y.alphabet_ = a;
    y.step_ = step;
    std::set<std::vector<int>> roots;
    std::vector<PeriodicPoint> queue = seed;
    while (!queue.empty()) {
      PeriodicPoint x = queue.back();
      queue.pop_back();
      if (!(x.alphabet() == a)) throw std::invalid_argument("finite subshift point over the wrong alphabet");
      PeriodicPoint normal(a, x.primitive_root());
      if (!roots.insert(normal.primitive_root()).second) continue;
      y.points_.push_back(normal);
      queue.push_back(shift_point(normal, step));
    }
    std::sort(y.points_.begin(), y.points_.end());
    return y;
  }

  Kind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int step() const { return step_; }
  const std::vector<ForbiddenWord>& forbidden() const { return forbidden_; }
  const std::vector<PeriodicPoint>& points() const { return points_; }

  bool contains_point(const PeriodicPoint& x) const {
    if (!(x.alphabet() == alphabet_)) return false;
    if (kind_ == Kind::Finite) {
      PeriodicPoint normal(alphabet_, x.primitive_root());
      return std::binary_search(points_.begin(), points_.end(), normal);
    }
    // Constraints repeat with period lcm(point period, moduli).
    long long span = x.period();
    for (const auto& f : forbidden_) span = std::lcm(span, static_cast<long long>(f.modulus));
    for (const auto& f : forbidden_) {
      for (long long p = f.phase; p < span; p += f.modulus) {
        bool match = true;
        for (std::size_t t = 0; t < f.symbols.size() && match; ++t)
          match = x.symbol(p + static_cast<long long>(t)) == f.symbols[t];
        if (match) return false;
      }
    }
    return true;
  }

  // Exact set of length-m words occurring in the subshift.
  std::set<std::vector<int>> language(int m, std::uint64_t capacity = kDefaultCapacity) const;

  bool is_empty(std::uint64_t capacity = kDefaultCapacity) const;

  friend bool operator==(const Subshift& a, const Subshift& b) {
    return a.kind_ == b.kind_ && a.alphabet_ == b.alphabet_ && a.step_ == b.step_ &&
           a.forbidden_ == b.forbidden_ && a.points_ == b.points_;
  }

 private:
  Kind kind_ = Kind::Sft;
  Alphabet alphabet_{2};
  int step_ = 1;
  std::vector<ForbiddenWord> forbidden_;
  std::vector<PeriodicPoint> points_;
};

namespace detail {

// Transfer graph of an SFT: states are (last ord-1 symbols, position mod
// phase-span), edges append one symbol, checked against every anchored
// forbidden word; trimmed to the biinfinitely extendable part.
struct TransferGraph {
  int n = 2;
  int ord = 2;        // window length
  int span = 1;       // lcm of the anchor moduli
  std::uint64_t word_states = 1;
  std::vector<char> alive;              // state index -> survives trimming
  std::vector<std::int64_t> edge_to;    // state*n + symbol -> target or -1

  std::size_t state_count() const { return static_cast<std::size_t>(word_states) * static_cast<std::size_t>(span); }
  std::size_t index(std::uint64_t word, int phase) const {
    return static_cast<std::size_t>(word) * static_cast<std::size_t>(span) + static_cast<std::size_t>(phase);
  }
};

inline TransferGraph build_transfer_graph(const Subshift& y, std::uint64_t capacity) {
  if (y.kind() != Subshift::Kind::Sft) throw std::invalid_argument("transfer graph needs an SFT");
  TransferGraph g;
  g.n = y.alphabet().size;
  int maxlen = 2;
  long long span = 1;
  for (const auto& f : y.forbidden()) {
    maxlen = std::max(maxlen, static_cast<int>(f.symbols.size()));
    span = std::lcm(span, static_cast<long long>(f.modulus));
  }
  g.ord = maxlen;
  g.span = static_cast<int>(span);
  g.word_states = checked_pow(static_cast<std::uint64_t>(g.n), static_cast<std::uint64_t>(g.ord - 1), capacity);
  if (g.state_count() > capacity) throw capacity_error("transfer graph exceeds capacity");

  // Group forbidden words by (length, code) for the edge check.
  std::map<std::pair<int, std::uint64_t>, std::vector<std::pair<int, int>>> anchored;
  for (const auto& f : y.forbidden()) {
    anchored[{static_cast<int>(f.symbols.size()), word_to_index(f.symbols, g.n)}].emplace_back(f.phase, f.modulus);
  }

  std::size_t states = g.state_count();
  g.edge_to.assign(states * static_cast<std::size_t>(g.n), -1);
  g.alive.assign(states, 1);

  std::uint64_t mask_mod = 1;
  for (int i = 0; i < g.ord - 1; ++i) mask_mod *= static_cast<std::uint64_t>(g.n);

  std::vector<int> window(static_cast<std::size_t>(g.ord));
  for (std::uint64_t w = 0; w < g.word_states; ++w) {
    std::vector<int> word = index_to_word(w, g.n, g.ord - 1);
    for (int phase = 0; phase < g.span; ++phase) {
      // State: `word` occupies positions [q - ord + 1, q); appending symbol
      // a at position q; forbidden windows end at q.
      for (int a = 0; a < g.n; ++a) {
        for (int i = 0; i < g.ord - 1; ++i) window[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>(i)];
        window[static_cast<std::size_t>(g.ord - 1)] = a;
        bool ok = true;
        for (int len = 1; len <= g.ord && ok; ++len) {
          std::uint64_t code = 0;
          for (int t = g.ord - len; t < g.ord; ++t)
            code = code * static_cast<std::uint64_t>(g.n) + static_cast<std::uint64_t>(window[static_cast<std::size_t>(t)]);
          auto it = anchored.find({len, code});
          if (it == anchored.end()) continue;
          // The window of this length starts at position q - len + 1; the
          // state phase is q mod span.
          for (auto [fphase, fmod] : it->second) {
            if (positive_mod(phase - len + 1, fmod) == fphase % fmod) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        std::uint64_t next_word = (w * static_cast<std::uint64_t>(g.n) + static_cast<std::uint64_t>(a)) % mask_mod;
        int next_phase = (phase + 1) % g.span;
        g.edge_to[g.index(w, phase) * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)] =
            static_cast<std::int64_t>(g.index(next_word, next_phase));
      }
    }
  }

  // Trim states without successors or predecessors until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> indeg(states, 0);
    for (std::size_t s = 0; s < states; ++s) {
      if (!g.alive[s]) continue;
      for (int a = 0; a < g.n; ++a) {
        std::int64_t t = g.edge_to[s * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)];
        if (t >= 0 && g.alive[static_cast<std::size_t>(t)]) indeg[static_cast<std::size_t>(t)]++;
      }
    }
    for (std::size_t s = 0; s < states; ++s) {
      if (!g.alive[s]) continue;
      bool has_out = false;
      for (int a = 0; a < g.n && !has_out; ++a) {
        std::int64_t t = g.edge_to[s * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)];
        has_out = t >= 0 && g.alive[static_cast<std::size_t>(t)];
      }
      if (!has_out || indeg[s] == 0) {
        g.alive[s] = 0;
        changed = true;
      }
    }
  }
  return g;
}

}  // namespace detail

inline std::set<std::vector<int>> Subshift::language(int m, std::uint64_t capacity) const {
  if (m < 1) throw std::invalid_argument("word length must be >= 1");
  std::set<std::vector<int>> words;
  if (kind_ == Kind::Finite) {
    for (const auto& x : points_) {
      for (int start = 0; start < x.period(); ++start) {
        std::vector<int> w(static_cast<std::size_t>(m));
        for (int t = 0; t < m; ++t) w[static_cast<std::size_t>(t)] = x.symbol(start + static_cast<long long>(t));
        words.insert(std::move(w));
      }
    }
    return words;
  }

  detail::TransferGraph g = detail::build_transfer_graph(*this, capacity);
  // Memoized word sets per (state, remaining length).
  std::size_t states = g.state_count();
  std::vector<std::unordered_map<int, std::set<std::vector<int>>>> memo(states);
  std::uint64_t visited = 0;
  std::function<const std::set<std::vector<int>>&(std::size_t, int)> collect =
      [&](std::size_t s, int depth) -> const std::set<std::vector<int>>& {
    auto it = memo[s].find(depth);
    if (it != memo[s].end()) return it->second;
    std::set<std::vector<int>> out;
    for (int a = 0; a < g.n; ++a) {
      std::int64_t t = g.edge_to[s * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) continue;
      if (++visited > capacity) throw capacity_error("language computation exceeded capacity");
      if (depth == 1) {
        out.insert(std::vector<int>{a});
      } else {
        for (const auto& tail : collect(static_cast<std::size_t>(t), depth - 1)) {
          std::vector<int> w;
          w.reserve(static_cast<std::size_t>(depth));
          w.push_back(a);
          w.insert(w.end(), tail.begin(), tail.end());
          out.insert(std::move(w));
        }
      }
    }
    return memo[s].emplace(depth, std::move(out)).first->second;
  };
  for (std::size_t s = 0; s < states; ++s) {
    if (!g.alive[s]) continue;
    const auto& from_here = collect(s, m);
    words.insert(from_here.begin(), from_here.end());
  }
  return words;
}

inline bool Subshift::is_empty(std::uint64_t capacity) const {
  if (kind_ == Kind::Finite) return points_.empty();
  detail::TransferGraph g = detail::build_transfer_graph(*this, capacity);
  for (std::size_t s = 0; s < g.state_count(); ++s)
    if (g.alive[s]) return false;
  return true;
}

// If the subshift consists of finitely many points (the trimmed transfer
// graph is a disjoint union of cycles), the explicit point set.
inline std::optional<std::vector<PeriodicPoint>> sft_point_set(const Subshift& y,
                                                               std::uint64_t capacity = kDefaultCapacity) {
  if (y.kind() == Subshift::Kind::Finite) return y.points();
  detail::TransferGraph g = detail::build_transfer_graph(y, capacity);
  std::size_t states = g.state_count();
  std::vector<std::pair<std::int64_t, int>> succ(states, {-1, -1});  // target, symbol
  for (std::size_t s = 0; s < states; ++s) {
    if (!g.alive[s]) continue;
    for (int a = 0; a < g.n; ++a) {
      std::int64_t t = g.edge_to[s * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) continue;
      if (succ[s].first >= 0) return std::nullopt;  // branching: infinitely many points
      succ[s] = {t, a};
    }
  }
  std::vector<PeriodicPoint> points;
  std::set<std::vector<int>> roots;
  std::vector<char> visited(states, 0);
  for (std::size_t s = 0; s < states; ++s) {
    if (!g.alive[s] || visited[s]) continue;
    std::vector<int> block;
    std::vector<int> phases;  // phase at which each symbol is emitted
    std::size_t cur = s;
    do {
      visited[cur] = 1;
      block.push_back(succ[cur].second);
      phases.push_back(static_cast<int>(cur % static_cast<std::size_t>(g.span)));
      cur = static_cast<std::size_t>(succ[cur].first);
    } while (cur != s);
    // A reading is a point of the subshift only when it starts at a
    // phase-0 state (symbols land at their anchored positions).
    int len = static_cast<int>(block.size());
    for (int o = 0; o < len; ++o) {
      if (phases[static_cast<std::size_t>(o)] != 0) continue;
      std::vector<int> rotated(static_cast<std::size_t>(len));
      for (int t = 0; t < len; ++t) rotated[static_cast<std::size_t>(t)] = block[static_cast<std::size_t>((o + t) % len)];
      PeriodicPoint x(y.alphabet(), rotated);
      if (roots.insert(x.primitive_root()).second) points.push_back(PeriodicPoint(y.alphabet(), x.primitive_root()));
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

// d(X, Y) = 2^{-k*} for the least k* <= cutoff with differing languages;
// nullopt means the languages agree up to the cutoff (d <= 2^{-cutoff}).
inline std::optional<int> first_language_difference(const Subshift& x, const Subshift& y, int cutoff,
                                                    std::uint64_t capacity = kDefaultCapacity) {
  if (!(x.alphabet() == y.alphabet())) throw std::invalid_argument("metric across different alphabets");
  for (int k = 1; k <= cutoff; ++k) {
    if (x.language(k, capacity) != y.language(k, capacity)) return k;
  }
  return std::nullopt;
}

inline Dyadic subshift_metric(const Subshift& x, const Subshift& y, int cutoff,
                              std::uint64_t capacity = kDefaultCapacity) {
  auto k = first_language_difference(x, y, cutoff, capacity);
  if (!k) return Dyadic::exact_zero();  // indistinguishable at this cutoff
  return Dyadic::power(-*k);
}

// The SFT with exactly Y's length-m language: forbid every length-m word
// outside L_m(Y), everywhere.
inline Subshift markov_approximation(const Subshift& y, int m, std::uint64_t capacity = kDefaultCapacity) {
  auto lang = y.language(m, capacity);
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(y.alphabet().size), static_cast<std::uint64_t>(m), capacity);
  std::vector<ForbiddenWord> forbidden;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::vector<int> w = index_to_word(i, y.alphabet().size, m);
    if (lang.count(w) == 0) forbidden.push_back(ForbiddenWord{std::move(w), 0, 1});
  }
  return Subshift::sft(y.alphabet(), 1, std::move(forbidden));
}

// Nonwandering test for SFTs: every surviving edge of the transfer graph
// must lie inside one strongly connected component.
inline bool is_chain_recurrent(const Subshift& y, std::uint64_t capacity = kDefaultCapacity) {
  if (y.kind() == Subshift::Kind::Finite) return true;
  detail::TransferGraph g = detail::build_transfer_graph(y, capacity);
  std::size_t states = g.state_count();

  // Iterative Tarjan.
  std::vector<int> comp(states, -1), low(states, 0), num(states, -1);
  std::vector<std::size_t> stack_nodes;
  std::vector<char> on_stack(states, 0);
  int counter = 0, comp_count = 0;
  struct Frame {
    std::size_t node;
    int next_edge;
  };
  for (std::size_t root = 0; root < states; ++root) {
    if (!g.alive[root] || num[root] != -1) continue;
    std::vector<Frame> call_stack{Frame{root, 0}};
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      std::size_t v = frame.node;
      if (frame.next_edge == 0) {
        num[v] = low[v] = counter++;
        stack_nodes.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (frame.next_edge < g.n && !descended) {
        std::int64_t t = g.edge_to[v * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(frame.next_edge)];
        frame.next_edge++;
        if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) continue;
        std::size_t w = static_cast<std::size_t>(t);
        if (num[w] == -1) {
          call_stack.push_back(Frame{w, 0});
          descended = true;
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        while (true) {
          std::size_t w = stack_nodes.back();
          stack_nodes.pop_back();
          on_stack[w] = 0;
          comp[w] = comp_count;
          if (w == v) break;
        }
        comp_count++;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        std::size_t parent = call_stack.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  for (std::size_t s = 0; s < states; ++s) {
    if (!g.alive[s]) continue;
    for (int a = 0; a < g.n; ++a) {
      std::int64_t t = g.edge_to[s * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(a)];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) continue;
      if (comp[s] != comp[static_cast<std::size_t>(t)]) return false;
    }
  }
  return true;
}

// Periodizations of the length-m words whose cyclic closure is legal, as a
// finite sigma^m-subshift.
inline Subshift finite_approximations(const Subshift& y, int m, std::uint64_t capacity = kDefaultCapacity) {
  std::vector<PeriodicPoint> points;
  for (const auto& w : y.language(m, capacity)) {
    PeriodicPoint q(y.alphabet(), w);
    if (y.contains_point(q)) points.push_back(q);
  }
  return Subshift::finite(y.alphabet(), m, points);
}

// ---------------------------------------------------------------------------
// Pointwise stabilizers and fixed subshifts.

// Membership of one element in Stp(Y).  Finite subshifts are checked
// pointwise; SFTs through the window criterion: the code output at the
// center cell must reproduce the center of every realized window.
// phi(x) = x, with the period lifted to the code level; the image may
// legitimately leave Per_m, which simply means the point moved.
inline bool fixes_point(const BlockCode& code, const PeriodicPoint& x) {
  int lifted = static_cast<int>(std::lcm(static_cast<long long>(x.period()), static_cast<long long>(code.level())));
  PeriodicPoint xl = x.with_period_multiple(lifted / x.period());
  return apply(code, xl) == xl;
}

inline bool stp_contains(const Subshift& y, const GroupElement& phi, std::uint64_t capacity = kDefaultCapacity) {
  if (y.kind() == Subshift::Kind::Finite) {
    BlockCode code = phi.evaluate();
    for (const auto& x : y.points()) {
      if (!fixes_point(code, x)) return false;
    }
    return true;
  }
  BlockCode code = phi.evaluate();
  int k = code.level();
  int radius = code.radius();
  int wlen = k * (2 * radius + 1);
  std::vector<int> out(static_cast<std::size_t>(k));
  for (const auto& w : y.language(wlen, capacity)) {
    code.eval_forward(w.data(), -static_cast<long long>(radius) * k, out.data(), detail::Range{0, k});
    for (int t = 0; t < k; ++t) {
      if (out[static_cast<std::size_t>(t)] != w[static_cast<std::size_t>(radius * k + t)]) return false;
    }
  }
  return true;
}

struct StabilizerFamily {
  std::vector<GroupElement> family;
  std::vector<bool> member;  // member[i]: family[i] fixes Y pointwise

  std::vector<GroupElement> members() const {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (member[i]) out.push_back(family[i]);
    return out;
  }
};

inline StabilizerFamily stp(const Subshift& y, std::vector<GroupElement> family,
                            std::uint64_t capacity = kDefaultCapacity) {
  StabilizerFamily out;
  out.member.reserve(family.size());
  for (const auto& phi : family) out.member.push_back(stp_contains(y, phi, capacity));
  out.family = std::move(family);
  return out;
}

// sigma^{-phase} . tau . sigma^{phase} for a word permutation tau: the
// family the Galois machinery uses.  Its fixed subshift is the anchored SFT
// forbidding the non-fixed words at the conjugated phase.
struct PhasedWordPermutation {
  SimpleAuto tau;
  int phase = 0;

  GroupElement as_element() const {
    return GroupElement::shift(tau.alphabet, phase)
        .then(GroupElement::simple(tau))
        .then(GroupElement::shift(tau.alphabet, -phase))
        .with_level(tau.level);
  }
};

// tau_{va,vb} gadgets (with all cyclic phases) for every word v of length
// < max_level, plus the plain symbol transpositions at level 1.
inline std::vector<PhasedWordPermutation> galois_family(Alphabet a, int max_level,
                                                        std::uint64_t capacity = kDefaultCapacity) {
  std::vector<PhasedWordPermutation> family;
  for (int level = 1; level <= max_level; ++level) {
    std::uint64_t prefix_count =
        checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(level - 1), capacity);
    for (std::uint64_t v = 0; v < prefix_count; ++v) {
      for (int s1 = 0; s1 < a.size; ++s1) {
        for (int s2 = s1 + 1; s2 < a.size; ++s2) {
          std::uint64_t w1 = v * static_cast<std::uint64_t>(a.size) + static_cast<std::uint64_t>(s1);
          std::uint64_t w2 = v * static_cast<std::uint64_t>(a.size) + static_cast<std::uint64_t>(s2);
          SimpleAuto tau = SimpleAuto::transposition(a, level, w1, w2);
          for (int phase = 0; phase < level; ++phase) family.push_back(PhasedWordPermutation{tau, phase});
        }
      }
    }
  }
  return family;
}

// Stp membership for the phased family over a sigma-invariant (step-1) Y:
// every realized word of the level length must be fixed by tau.
inline bool stp_contains_phased(const Subshift& y, const PhasedWordPermutation& member,
                                std::uint64_t capacity = kDefaultCapacity) {
  if (y.kind() == Subshift::Kind::Finite) return stp_contains(y, member.as_element(), capacity);
  if (y.step() != 1) return stp_contains(y, member.as_element(), capacity);
  for (const auto& w : y.language(member.tau.level, capacity)) {
    std::uint64_t code = word_to_index(w, y.alphabet().size);
    if (member.tau.table[code] != static_cast<int>(code)) return false;
  }
  return true;
}

// Fix of a set of phased word permutations, as an anchored SFT.
inline Subshift fix_of_phased(Alphabet a, const std::vector<PhasedWordPermutation>& members) {
  long long step = 1;
  for (const auto& m : members) step = std::lcm(step, static_cast<long long>(m.tau.level));
  std::vector<ForbiddenWord> forbidden;
  for (const auto& m : members) {
    int level = m.tau.level;
    for (std::size_t w = 0; w < m.tau.table.size(); ++w) {
      if (m.tau.table[w] == static_cast<int>(w)) continue;
      forbidden.push_back(ForbiddenWord{index_to_word(w, a.size, level), positive_mod(m.phase, level), level});
    }
  }
  return Subshift::sft(a, static_cast<int>(step), std::move(forbidden));
}

// Fix of arbitrary group elements: forbid the windows whose code output
// differs from the center block, anchored at the code level.
inline Subshift fix(Alphabet a, const std::vector<GroupElement>& generators,
                    std::uint64_t capacity = kDefaultCapacity) {
  long long step = 1;
  std::vector<ForbiddenWord> forbidden;
  for (const auto& phi : generators) {
    BlockCode code = phi.evaluate();
    int k = code.level();
    step = std::lcm(step, static_cast<long long>(k));
    int radius = code.radius();
    int wlen = k * (2 * radius + 1);
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(wlen), capacity);
    std::vector<int> out(static_cast<std::size_t>(k));
    for (std::uint64_t i = 0; i < total; ++i) {
      std::vector<int> w = index_to_word(i, a.size, wlen);
      code.eval_forward(w.data(), -static_cast<long long>(radius) * k, out.data(), detail::Range{0, k});
      bool fixed = true;
      for (int t = 0; t < k && fixed; ++t) fixed = out[static_cast<std::size_t>(t)] == w[static_cast<std::size_t>(radius * k + t)];
      // The window starts at -radius*k relative to the cell, i.e. at
      // positions congruent to 0 mod k.
      if (!fixed) forbidden.push_back(ForbiddenWord{std::move(w), 0, k});
    }
  }
  return Subshift::sft(a, static_cast<int>(step), std::move(forbidden));
}

inline bool languages_agree(const Subshift& x, const Subshift& y, int cutoff,
                            std::uint64_t capacity = kDefaultCapacity) {
  return !first_language_difference(x, y, cutoff, capacity).has_value();
}

// ---------------------------------------------------------------------------
// Stabilizer continuity along a sequence Y_m -> Y.

struct StpContinuityResult {
  bool member_of_limit = false;
  int stabilization_index = -1;   // least M with constant membership from M on
  int agreement_index = -1;       // least M with L_wlen(Y_m) = L_wlen(Y) from M on
};

inline StpContinuityResult stp_continuity_check(const std::vector<Subshift>& sequence, const Subshift& y,
                                                const GroupElement& phi, std::uint64_t capacity = kDefaultCapacity) {
  StpContinuityResult result;
  result.member_of_limit = stp_contains(y, phi, capacity);
  BlockCode code = phi.evaluate();
  int wlen = code.level() * (2 * code.radius() + 1);

  std::vector<bool> in_m;
  std::vector<bool> lang_eq;
  auto limit_lang = y.language(wlen, capacity);
  for (const auto& ym : sequence) {
    in_m.push_back(stp_contains(ym, phi, capacity));
    lang_eq.push_back(ym.language(wlen, capacity) == limit_lang);
  }
  auto first_stable = [](const std::vector<bool>& flags, bool target) {
    int m = static_cast<int>(flags.size());
    for (int i = static_cast<int>(flags.size()); i-- > 0;) {
      if (flags[static_cast<std::size_t>(i)] != target) break;
      m = i;
    }
    return m;  // == size() means never stable
  };
  result.stabilization_index = first_stable(in_m, result.member_of_limit);
  result.agreement_index = first_stable(lang_eq, true);
  return result;
}

// ---------------------------------------------------------------------------
// The spatialization acting on subshifts.

struct VerraumSubshiftResult {
  Subshift image;
  std::map<int, int> stabilization_index;  // word length -> order where L_j stabilized
  int stable_order = 0;                    // largest word length with a stabilized language
  bool used_approximations = false;
};

inline Subshift verraum_finite_image(VerraumEngine& engine, const Subshift& y) {
  if (y.kind() != Subshift::Kind::Finite) throw std::invalid_argument("finite image needs a finite subshift");
  std::vector<PeriodicPoint> images;
  for (const auto& x : y.points()) images.push_back(engine.global_verraum(x));
  int step = static_cast<int>(std::lcm(static_cast<long long>(y.step()),
                                       static_cast<long long>(engine.degree_info().degree)));
  return Subshift::finite(y.alphabet(), step, images);
}

inline VerraumSubshiftResult verraum_subshift(VerraumEngine& engine, const Subshift& y, int cutoff,
                                              std::uint64_t capacity = kDefaultCapacity) {
  VerraumSubshiftResult result{Subshift::full_shift(y.alphabet()), {}, false};
  if (y.kind() == Subshift::Kind::Finite) {
    result.image = verraum_finite_image(engine, y);
    return result;
  }
  if (!is_chain_recurrent(y, capacity))
    throw std::invalid_argument("the spatialization acts on chain-recurrent SFTs only");

  // An SFT with finitely many points is handled exactly.
  if (auto explicit_points = sft_point_set(y, capacity)) {
    result.image = verraum_finite_image(engine, Subshift::finite(y.alphabet(), y.step(), *explicit_points));
    return result;
  }
  result.used_approximations = true;

  // Approximation orders whose legal periodizations are nonempty (graphs
  // with a cycle period have no legal cycles at other orders).
  std::vector<int> orders;
  std::vector<Subshift> images;
  for (int m = 1; m <= cutoff; ++m) {
    Subshift q = finite_approximations(y, m, capacity);
    if (q.points().empty()) continue;
    orders.push_back(m);
    images.push_back(verraum_finite_image(engine, q));
  }
  if (images.size() < 2)
    throw std::runtime_error("no-stabilization: fewer than two nonempty finite approximations by the cutoff");

  // A length-j image language counts as stabilized when it holds steady
  // over at least the last two approximations; short lengths stabilize
  // first, so record the largest stabilized prefix.
  std::map<int, std::set<std::vector<int>>> stable_language;
  for (int j = 1; j <= cutoff; ++j) {
    auto last = images.back().language(j, capacity);
    std::size_t index = images.size();
    for (std::size_t m = images.size(); m-- > 0;) {
      if (images[m].language(j, capacity) != last) break;
      index = m;
    }
    if (index + 2 > images.size()) break;
    result.stabilization_index[j] = orders[index];
    stable_language[j] = std::move(last);
    result.stable_order = j;
  }
  if (result.stable_order == 0)
    throw std::runtime_error("no-stabilization: no image language stabilized by the cutoff");

  // Assemble the image as the SFT with the largest stabilized language.
  int order = result.stable_order;
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(y.alphabet().size), static_cast<std::uint64_t>(order), capacity);
  std::vector<ForbiddenWord> forbidden;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::vector<int> w = index_to_word(i, y.alphabet().size, order);
    if (stable_language[order].count(w) == 0) forbidden.push_back(ForbiddenWord{std::move(w), 0, 1});
  }
  result.image = Subshift::sft(y.alphabet(), 1, std::move(forbidden));
  return result;
}

// Psi(Stp(Q)) = Stp(Psi-hat(Q)) over the sampled family, both directions,
// for a finite subshift Q.
inline bool stp_transport_check(VerraumEngine& engine, const Subshift& q, const std::vector<GroupElement>& family,
                                std::uint64_t capacity = kDefaultCapacity) {
  Subshift image = verraum_finite_image(engine, q);
  for (const auto& phi : family) {
    bool in_q = stp_contains(q, phi, capacity);
    bool image_in = stp_contains(image, apply_psi(engine.psi(), phi), capacity);
    if (in_q != image_in) return false;
  }
  return true;
}

}  // namespace stabaut
