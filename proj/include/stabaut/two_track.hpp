// Two-track machinery over the pair alphabet n^2: pair points split into a
// top and a bottom track, the gadgets g_{w,pi} that permute the bottom
// symbol wherever the top track reads w, the top-track shift gamma, the
// track swap, commutator identities, the period-maximization loop, and the
// orbit-centralizer separation construction.
//
// Codes that leave the top track unchanged and act on each bottom cell by
// a permutation selected from a window of the top track form a class
// closed under composition, inversion, and conjugation by gamma powers.
// Two such codes are equal as block codes iff their trigger tables agree
// at the common window: every top window extends to configurations whose
// bottom center separates differing permutations.

#pragma once

#include "stabaut/subshift.hpp"

namespace stabaut {

struct TwoTrackPoint {
  int base = 2;  // n; the pair alphabet has n^2 symbols
  PeriodicPoint top;
  PeriodicPoint bottom;

  TwoTrackPoint(int n, PeriodicPoint top_, PeriodicPoint bottom_)
      : base(n), top(std::move(top_)), bottom(std::move(bottom_)) {
    if (top.period() != bottom.period()) throw std::invalid_argument("track periods must agree");
    if (top.alphabet().size != n || bottom.alphabet().size != n)
      throw std::invalid_argument("track alphabet mismatch");
  }

  static TwoTrackPoint from_pair(const PeriodicPoint& pair, int n) {
    if (pair.alphabet().size != n * n) throw std::invalid_argument("pair point alphabet is not n^2");
    std::vector<int> top(static_cast<std::size_t>(pair.period()));
    std::vector<int> bottom(static_cast<std::size_t>(pair.period()));
    for (int i = 0; i < pair.period(); ++i) {
      top[static_cast<std::size_t>(i)] = pair.symbol(i) / n;
      bottom[static_cast<std::size_t>(i)] = pair.symbol(i) % n;
    }
    return TwoTrackPoint(n, PeriodicPoint(Alphabet(n), std::move(top)), PeriodicPoint(Alphabet(n), std::move(bottom)));
  }

  PeriodicPoint pair_point() const {
    std::vector<int> block(static_cast<std::size_t>(top.period()));
    for (int i = 0; i < top.period(); ++i)
      block[static_cast<std::size_t>(i)] = top.symbol(i) * base + bottom.symbol(i);
    return PeriodicPoint(Alphabet(base * base), std::move(block));
  }

  TwoTrackPoint swapped() const { return TwoTrackPoint(base, bottom, top); }
};

// A code over the pair alphabet that leaves the top track unchanged and
// applies perm(top window at [i+lo, i+hi]) to the bottom symbol at i.
class TrackCode {
 public:
  TrackCode(int n, int lo, int hi, std::vector<std::vector<int>> perms)
      : n_(n), lo_(lo), hi_(hi), perms_(std::move(perms)) {
    if (lo > hi) throw std::invalid_argument("empty trigger window");
    std::uint64_t patterns =
        checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(hi - lo + 1), 100000000ull);
    if (perms_.size() != patterns) throw std::invalid_argument("trigger table has wrong size");
    for (const auto& p : perms_) {
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      if (p.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("bottom permutation has wrong size");
      for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
  }

  static TrackCode identity(int n) {
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
    return TrackCode(n, 0, 0, std::vector<std::vector<int>>(static_cast<std::size_t>(n), id));
  }

  int base() const { return n_; }
  int window_lo() const { return lo_; }
  int window_hi() const { return hi_; }
  const std::vector<std::vector<int>>& trigger_table() const { return perms_; }

  const std::vector<int>& perm_for(const std::vector<int>& top_window) const {
    return perms_[word_to_index(top_window, n_)];
  }

  // The same code with the trigger window extended to [lo, hi] (extra
  // symbols are ignored).
  TrackCode widened(int lo, int hi) const {
    if (lo > lo_ || hi < hi_) throw std::invalid_argument("widened window must contain the current one");
    int len = hi - lo + 1;
    std::uint64_t patterns = checked_pow(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(len), 100000000ull);
    std::vector<std::vector<int>> perms(patterns);
    for (std::uint64_t w = 0; w < patterns; ++w) {
      std::vector<int> window = index_to_word(w, n_, len);
      std::vector<int> inner(window.begin() + (lo_ - lo), window.begin() + (lo_ - lo) + (hi_ - lo_ + 1));
      perms[w] = perm_for(inner);
    }
    return TrackCode(n_, lo, hi, std::move(perms));
  }

  TrackCode inverse() const {
    std::vector<std::vector<int>> inv(perms_.size());
    for (std::size_t w = 0; w < perms_.size(); ++w) {
      std::vector<int> p(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(perms_[w][static_cast<std::size_t>(i)])] = i;
      inv[w] = std::move(p);
    }
    return TrackCode(n_, lo_, hi_, std::move(inv));
  }

  // gamma^{-k} . this . gamma^{k}: the trigger window slides by k.
  TrackCode gamma_conjugate(int k) const { return TrackCode(n_, lo_ + k, hi_ + k, perms_); }

  // Apply `other` first, then this; the top track is shared.
  TrackCode after(const TrackCode& other) const {
    int lo = std::min(lo_, other.lo_);
    int hi = std::max(hi_, other.hi_);
    TrackCode a = widened(lo, hi);
    TrackCode b = other.widened(lo, hi);
    std::vector<std::vector<int>> perms(a.perms_.size());
    for (std::size_t w = 0; w < a.perms_.size(); ++w) {
      std::vector<int> p(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i)
        p[static_cast<std::size_t>(i)] = a.perms_[w][static_cast<std::size_t>(b.perms_[w][static_cast<std::size_t>(i)])];
      perms[w] = std::move(p);
    }
    return TrackCode(n_, lo, hi, std::move(perms));
  }

  bool equals_code(const TrackCode& other) const {
    int lo = std::min(lo_, other.lo_);
    int hi = std::max(hi_, other.hi_);
    return widened(lo, hi).perms_ == other.widened(lo, hi).perms_;
  }

  bool is_identity() const {
    for (std::size_t w = 0; w < perms_.size(); ++w) {
      for (int i = 0; i < n_; ++i)
        if (perms_[w][static_cast<std::size_t>(i)] != i) return false;
    }
    return true;
  }

  TwoTrackPoint apply_to(const TwoTrackPoint& x) const {
    int p = x.top.period();
    std::vector<int> bottom(static_cast<std::size_t>(p));
    int len = hi_ - lo_ + 1;
    std::vector<int> window(static_cast<std::size_t>(len));
    for (int i = 0; i < p; ++i) {
      for (int t = 0; t < len; ++t) window[static_cast<std::size_t>(t)] = x.top.symbol(i + lo_ + t);
      bottom[static_cast<std::size_t>(i)] = perm_for(window)[static_cast<std::size_t>(x.bottom.symbol(i))];
    }
    return TwoTrackPoint(n_, x.top, PeriodicPoint(Alphabet(n_), std::move(bottom)));
  }

 private:
  int n_;
  int lo_, hi_;
  std::vector<std::vector<int>> perms_;  // top-window pattern -> bottom permutation
};

// g_{w,pi}: apply pi at bottom position i whenever the top track reads w
// starting at i.
inline TrackCode make_g_track(const Word& w, const std::vector<int>& pi) {
  int n = w.alphabet.size;
  if (w.length() < 1) throw std::invalid_argument("trigger word must be nonempty");
  std::vector<int> id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
  std::uint64_t patterns =
      checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(w.length()), 100000000ull);
  std::vector<std::vector<int>> perms(patterns, id);
  perms[word_to_index(w.symbols, n)] = pi;
  return TrackCode(n, 0, w.length() - 1, std::move(perms));
}

namespace detail {

// Evaluates a TrackCode over the pair alphabet as a primitive local rule.
class TrackAtom final : public Atom {
 public:
  explicit TrackAtom(TrackCode code) : Atom(code.base() * code.base(), 1), code_(std::move(code)) {}

  Range input_range(Range out) const override {
    return Range{out.lo + std::min(code_.window_lo(), 0), out.hi + std::max(code_.window_hi(), 0)};
  }

  void run(const int* in, long long in_lo, int* out, Range out_range) const override {
    int n = code_.base();
    int len = code_.window_hi() - code_.window_lo() + 1;
    std::vector<int> window(static_cast<std::size_t>(len));
    for (long long i = out_range.lo; i < out_range.hi; ++i) {
      for (int t = 0; t < len; ++t) window[static_cast<std::size_t>(t)] = in[i + code_.window_lo() + t - in_lo] / n;
      int top = in[i - in_lo] / n;
      int bottom = in[i - in_lo] % n;
      out[i - out_range.lo] = top * n + code_.perm_for(window)[static_cast<std::size_t>(bottom)];
    }
  }

 private:
  TrackCode code_;
};

}  // namespace detail

// The gadget as a block code over the pair alphabet n^2, level 1.  The
// trigger only looks ahead, so the window is [0, |w|-1].
inline BlockCode track_to_block(const TrackCode& code, std::string label = {}) {
  auto fwd = std::make_shared<detail::TrackAtom>(code);
  auto inv = std::make_shared<detail::TrackAtom>(code.inverse());
  return BlockCode::from_atoms(Alphabet(code.base() * code.base()), {fwd}, {inv}, std::move(label));
}

inline BlockCode make_g(const Word& w, const std::vector<int>& pi) {
  return track_to_block(make_g_track(w, pi), "g");
}

// The pair-symbol swap (a,b) -> (b,a), an element of the level-2 simple
// automorphisms in the pair presentation.
inline SimpleAuto trackswap_simple(int n) {
  std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a * n + b)] = b * n + a;
  return SimpleAuto(Alphabet(n * n), 1, std::move(table));
}

inline BlockCode trackswap(int n) { return embed_simple(trackswap_simple(n), "trackswap"); }

// sigma_n in the pair presentation: (a_i, b_i) -> (b_i, a_{i+1}).
inline BlockCode base_shift_on_pairs(int n) {
  int N = n * n;
  std::vector<int> fwd_table(static_cast<std::size_t>(N) * N * N);
  std::vector<int> inv_table(static_cast<std::size_t>(N) * N * N);
  for (int left = 0; left < N; ++left) {
    for (int mid = 0; mid < N; ++mid) {
      for (int right = 0; right < N; ++right) {
        std::size_t idx = static_cast<std::size_t>((left * N + mid) * N + right);
        fwd_table[idx] = (mid % n) * n + (right / n);
        inv_table[idx] = (left % n) * n + (mid / n);
      }
    }
  }
  auto fwd = std::make_shared<detail::TableAtom>(N, 1, 1, std::move(fwd_table));
  auto inv = std::make_shared<detail::TableAtom>(N, 1, 1, std::move(inv_table));
  return BlockCode::from_atoms(Alphabet(N), {fwd}, {inv}, "sigma-on-pairs");
}

// gamma: shifts only the top track, (a_i, b_i) -> (a_{i+1}, b_i).
inline BlockCode gamma_code(int n) {
  int N = n * n;
  std::vector<int> fwd_table(static_cast<std::size_t>(N) * N * N);
  std::vector<int> inv_table(static_cast<std::size_t>(N) * N * N);
  for (int left = 0; left < N; ++left) {
    for (int mid = 0; mid < N; ++mid) {
      for (int right = 0; right < N; ++right) {
        std::size_t idx = static_cast<std::size_t>((left * N + mid) * N + right);
        fwd_table[idx] = (right / n) * n + (mid % n);
        inv_table[idx] = (left / n) * n + (mid % n);
      }
    }
  }
  auto fwd = std::make_shared<detail::TableAtom>(N, 1, 1, std::move(fwd_table));
  auto inv = std::make_shared<detail::TableAtom>(N, 1, 1, std::move(inv_table));
  return BlockCode::from_atoms(Alphabet(N), {fwd}, {inv}, "gamma");
}

// Commutators under the function-composition convention: [a, b] applies
// b^{-1} first, i.e. [a,b] = a . b . a^{-1} . b^{-1}.
inline TrackCode track_commutator(const TrackCode& a, const TrackCode& b) {
  return a.after(b).after(a.inverse()).after(b.inverse());
}

inline std::vector<int> perm_commutator(const std::vector<int>& p, const std::vector<int>& q) {
  int n = static_cast<int>(p.size());
  std::vector<int> p_inv(p.size()), q_inv(q.size()), out(p.size());
  for (int i = 0; i < n; ++i) p_inv[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i) q_inv[static_cast<std::size_t>(q[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i) {
    int v = q_inv[static_cast<std::size_t>(i)];
    v = p_inv[static_cast<std::size_t>(v)];
    v = q[static_cast<std::size_t>(v)];
    v = p[static_cast<std::size_t>(v)];
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

// [g_{w1,pi1}, gamma^{-|w1|} g_{w2,pi2} gamma^{|w1|}] = g_{w1w2,[pi1,pi2]},
// with the same commutator convention on both sides (the recorded one:
// a b a^{-1} b^{-1} under function composition).  Exact on trigger tables.
inline bool commutator_identity_check(const Word& w1, const Word& w2, const std::vector<int>& pi1,
                                      const std::vector<int>& pi2) {
  TrackCode a = make_g_track(w1, pi1);
  TrackCode b = make_g_track(w2, pi2).gamma_conjugate(w1.length());
  TrackCode lhs = track_commutator(a, b);
  std::vector<int> concat = w1.symbols;
  concat.insert(concat.end(), w2.symbols.begin(), w2.symbols.end());
  TrackCode rhs = make_g_track(Word(w1.alphabet, concat), perm_commutator(pi1, pi2));
  return lhs.equals_code(rhs);
}

// ---------------------------------------------------------------------------
// Period maximization (the proof loop): push the minimal period of the
// pair point into its top track using gadgets and track swaps.

struct MaximizeResult {
  std::vector<BlockCode> word;  // applied in order over the pair alphabet
  TwoTrackPoint point;          // the final configuration g(x)
  int iterations = 0;
};

// An even permutation sending a to 0 (identity when a = 0).
inline std::vector<int> even_perm_sending_to_zero(int n, int a) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  if (a == 0) return p;
  int c = (a == 1) ? 2 : 1;  // any third symbol; n >= 3
  p[static_cast<std::size_t>(a)] = 0;
  p[0] = c;
  p[static_cast<std::size_t>(c)] = a;
  return p;
}

// An even permutation moving b and fixing a (when a != b); n >= 5.
inline std::vector<int> even_perm_fixing_moving(int n, int a, int b) {
  std::vector<int> others;
  for (int i = 0; i < n && others.size() < 2; ++i) {
    if (i != a && i != b) others.push_back(i);
  }
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  // 3-cycle (b, others[0], others[1]).
  p[static_cast<std::size_t>(b)] = others[0];
  p[static_cast<std::size_t>(others[0])] = others[1];
  p[static_cast<std::size_t>(others[1])] = b;
  return p;
}

inline MaximizeResult maximize_top_period(const TwoTrackPoint& x) {
  int n = x.base;
  if (n < 5) throw std::invalid_argument("the two-track machinery requires n >= 5");
  PeriodicPoint pair = x.pair_point();
  int k = pair.minimal_period();
  if (x.top.period() != k) {
    // Normalize the declared period to the minimal pair period.
    TwoTrackPoint normalized = TwoTrackPoint::from_pair(PeriodicPoint(pair.alphabet(), pair.primitive_root()), n);
    return maximize_top_period(normalized);
  }

  MaximizeResult result{{}, x, 0};
  TwoTrackPoint y = x;
  while (y.top.minimal_period() < k) {
    int m = y.top.minimal_period();
    // h = product of g_{w_j, theta_j}, w_j the top window of length k at j,
    // theta_j an even permutation sending the bottom symbol at j to 0.
    // The factors commute: their trigger words are distinct rotations.
    TwoTrackPoint z = y;
    for (int j = 0; j < m; ++j) {
      std::vector<int> wj(static_cast<std::size_t>(k));
      for (int t = 0; t < k; ++t) wj[static_cast<std::size_t>(t)] = y.top.symbol(j + t);
      std::vector<int> theta = even_perm_sending_to_zero(n, y.bottom.symbol(j));
      TrackCode g = make_g_track(Word(Alphabet(n), wj), theta);
      result.word.push_back(track_to_block(g, "g"));
      z = g.apply_to(z);
    }
    // The bottom track now starts with m zeros, so its minimal period
    // exceeds m (a constant bottom would contradict minimal pair period k).
    if (z.bottom.minimal_period() <= m) throw std::logic_error("period maximization failed to grow the bottom track");
    result.word.push_back(trackswap(n));
    y = z.swapped();
    ++result.iterations;
    if (!(y.top.minimal_period() > m)) throw std::logic_error("period maximization did not increase the top period");
  }
  result.point = y;
  return result;
}

// ---------------------------------------------------------------------------
// Orbit separation: for every ordered pair of distinct sigma_{n^2}-orbits
// of minimal period k, a gadget word moves one and fixes the other.

inline std::optional<PeriodicPoint> find_orbit_offset_equal(const PeriodicPoint& a, const PeriodicPoint& b) {
  for (int j = 0; j < a.minimal_period(); ++j) {
    if (shift_point(a, j) == b) return shift_point(a, j);
  }
  return std::nullopt;
}

inline bool orbit_separation_check(int n, int k, std::uint64_t capacity = kDefaultCapacity) {
  if (n < 5) throw std::invalid_argument("orbit separation requires n >= 5");
  Alphabet pair_alphabet(n * n);

  // Orbit representatives of minimal period k.
  std::vector<PeriodicPoint> reps;
  std::set<std::vector<int>> seen;
  for (const auto& x : enumerate_periodic(pair_alphabet, k, capacity)) {
    if (x.minimal_period() != k) continue;
    if (seen.insert(x.orbit_key()).second) reps.push_back(PeriodicPoint(pair_alphabet, x.orbit_key()));
  }

  // Precompute the maximizing word and image for each representative.
  std::vector<MaximizeResult> maximized;
  maximized.reserve(reps.size());
  for (const auto& rep : reps) maximized.push_back(maximize_top_period(TwoTrackPoint::from_pair(rep, n)));

  auto apply_word = [&](const std::vector<BlockCode>& word, const PeriodicPoint& p) {
    PeriodicPoint cur = p;
    for (const auto& code : word) cur = apply(code, cur);
    return cur;
  };

  for (std::size_t xi = 0; xi < reps.size(); ++xi) {
    const MaximizeResult& mx = maximized[xi];
    TwoTrackPoint fx = mx.point;
    if (fx.top.minimal_period() != k) return false;
    for (std::size_t yi = 0; yi < reps.size(); ++yi) {
      if (xi == yi) continue;
      TwoTrackPoint fy = TwoTrackPoint::from_pair(apply_word(mx.word, reps[yi]), n);

      // Build the separating gadget from the proof's two cases.
      TrackCode g = TrackCode::identity(n);
      auto offset_match = find_orbit_offset_equal(fx.top, fy.top);
      if (!offset_match) {
        // Case A: tops in different orbits; the trigger word never fires on
        // f(y).
        std::vector<int> w(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) w[static_cast<std::size_t>(t)] = fx.top.symbol(t);
        int a = fy.bottom.symbol(0);
        int b = fx.bottom.symbol(0);
        // When a = b the fixed symbol is irrelevant: the trigger misses
        // f(y) entirely, any even permutation moving b works.
        int fixed_symbol = (a == b) ? ((b == 0) ? 1 : 0) : a;
        std::vector<int> theta = even_perm_fixing_moving(n, fixed_symbol, b);
        g = make_g_track(Word(Alphabet(n), w), theta);
      } else {
        // Case B: f(x)^top = sigma^j(f(y)^top); find a bottom disagreement.
        int j = -1;
        for (int cand = 0; cand < k; ++cand) {
          if (shift_point(fy.top, cand) == fx.top) {
            j = cand;
            break;
          }
        }
        if (j < 0) return false;
        int m = -1;
        for (int cand = 0; cand < k; ++cand) {
          if (fx.bottom.symbol(cand) != fy.bottom.symbol(cand + j)) {
            m = cand;
            break;
          }
        }
        if (m < 0) return false;  // same orbit after all: contradiction
        // The trigger fires on f(x) at positions congruent to m and on
        // f(y) at positions congruent to m + j, where theta acts trivially.
        std::vector<int> w(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) w[static_cast<std::size_t>(t)] = fx.top.symbol(m + t);
        std::vector<int> theta = even_perm_fixing_moving(n, fy.bottom.symbol(m + j), fx.bottom.symbol(m));
        g = make_g_track(Word(Alphabet(n), w), theta);
      }

      TwoTrackPoint gfx = g.apply_to(fx);
      TwoTrackPoint gfy = g.apply_to(fy);
      // g must fix f(y) pointwise and move f(x) off its orbit.
      if (!(gfy.pair_point() == fy.pair_point())) return false;
      if (gfx.pair_point().orbit_key() == fx.pair_point().orbit_key()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rigidity: an automorphism fixing the sampled G_2 gadgets acts on periodic
// points as a shift schedule, so the profinite recovery succeeds.

struct G2RigidityResult {
  bool fixes_sample = false;
  bool recovery_ok = false;
  bool vacuous = false;
  bool implication_holds = false;
};

// Gadgets as level-2 codes over the base alphabet, for interaction with a
// group automorphism of the stabilized group.
inline std::vector<GroupElement> g2_gadget_sample(int n) {
  std::vector<GroupElement> sample;
  auto add = [&](const BlockCode& pair_code) {
    sample.push_back(GroupElement::from_code(recode_to_base(pair_code, n, 2), 2));
  };
  std::vector<int> cycle(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
  std::vector<int> transp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) transp[static_cast<std::size_t>(i)] = i;
  std::swap(transp[0], transp[1]);
  for (int b = 0; b < n; ++b) {
    add(make_g(Word(Alphabet(n), {b}), cycle));
    add(make_g(Word(Alphabet(n), {b}), transp));
  }
  add(make_g(Word(Alphabet(n), {0, 1}), cycle));
  add(trackswap(n));
  add(gamma_code(n));
  return sample;
}

inline G2RigidityResult g2_rigidity_check(const GroupAutomorphism& psi, int bound,
                                          std::uint64_t capacity = kDefaultCapacity) {
  int n = psi.alphabet().size;
  G2RigidityResult result;
  std::uint64_t window_capacity = std::max<std::uint64_t>(capacity, 40000000ull);
  result.fixes_sample = true;
  for (const auto& g : g2_gadget_sample(n)) {
    GroupElement image = apply_psi(psi, g);
    if (!equals(image.evaluate(), g.evaluate(), window_capacity)) {
      result.fixes_sample = false;
      break;
    }
  }
  if (!result.fixes_sample) {
    result.vacuous = true;
    result.implication_holds = true;  // nothing to conclude
    return result;
  }
  VerraumEngine engine(psi, capacity);
  result.recovery_ok = engine.profinite_recovery(bound).ok();
  result.implication_holds = result.recovery_ok;
  return result;
}

}  // namespace stabaut
