// Simple automorphisms (blockwise word permutations), the section nu_k of
// the restriction map rho_k, formal generator words with their dimension
// representation, and a backtracking centralizer search in Sym(Per_k).

#pragma once

#include <map>
#include <optional>
#include <variant>

#include "stabaut/block_code.hpp"
#include "stabaut/core.hpp"

namespace stabaut {

// A permutation of the n^k words of length k, acting blockwise at
// coordinates that are multiples of k.
struct SimpleAuto {
  Alphabet alphabet;
  int level = 1;
  std::vector<int> table;  // word index -> word index, a bijection

  SimpleAuto() : alphabet(2), table{0, 1} {}
  SimpleAuto(Alphabet a, int level_, std::vector<int> table_)
      : alphabet(a), level(level_), table(std::move(table_)) {
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(level));
    if (table.size() != count) throw std::invalid_argument("word permutation has wrong size");
    std::vector<bool> seen(table.size(), false);
    for (int v : table) {
      if (v < 0 || static_cast<std::size_t>(v) >= table.size() || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("word permutation is not a bijection");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static SimpleAuto identity(Alphabet a, int level) {
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(level));
    std::vector<int> t(count);
    for (std::uint64_t i = 0; i < count; ++i) t[i] = static_cast<int>(i);
    return SimpleAuto(a, level, std::move(t));
  }

  static SimpleAuto transposition(Alphabet a, int level, std::uint64_t w1, std::uint64_t w2) {
    SimpleAuto s = identity(a, level);
    std::swap(s.table[w1], s.table[w2]);
    return s;
  }

  SimpleAuto inverse() const {
    std::vector<int> inv(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) inv[static_cast<std::size_t>(table[i])] = static_cast<int>(i);
    return SimpleAuto(alphabet, level, std::move(inv));
  }

  friend bool operator==(const SimpleAuto&, const SimpleAuto&) = default;
};

// Radius-0 level-k block code applying the word permutation blockwise.
inline BlockCode embed_simple(const SimpleAuto& s, std::string label = {}) {
  auto fwd = std::make_shared<detail::TableAtom>(s.alphabet.size, s.level, 0, s.table);
  auto inv = std::make_shared<detail::TableAtom>(s.alphabet.size, s.level, 0, s.inverse().table);
  return BlockCode::from_atoms(s.alphabet, {fwd}, {inv}, std::move(label));
}

// nu_k: the unique simple automorphism restricting to the given permutation
// of Per_k.  Under the identification of Per_k with words of length k via
// x -> x_[0,k-1], the word table and the point table coincide.
inline SimpleAuto nu_k(const PermutationTable& pi) {
  std::vector<int> table(pi.images.begin(), pi.images.end());
  return SimpleAuto(Alphabet(pi.n), pi.period, std::move(table));
}

// rho_k of the embedded simple automorphism; by construction the section
// identity rho_k . nu_k = id holds exactly.
inline PermutationTable rho_k_of_simple(const SimpleAuto& s) {
  std::vector<std::uint32_t> im(s.table.begin(), s.table.end());
  return PermutationTable(s.alphabet.size, s.level, std::move(im));
}

inline bool is_even(const SimpleAuto& s) { return rho_k_of_simple(s).is_even(); }

// ---------------------------------------------------------------------------
// Formal generator words and the dimension representation.

struct DimensionVector {
  std::vector<long long> primes;     // distinct prime divisors of n, ascending
  std::vector<long long> exponents;  // one entry per prime

  bool is_zero() const {
    for (long long e : exponents)
      if (e != 0) return false;
    return true;
  }
  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
};

inline std::vector<std::pair<long long, long long>> factorize(long long n) {
  std::vector<std::pair<long long, long long>> factors;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      long long k = 0;
      while (n % p == 0) {
        n /= p;
        ++k;
      }
      factors.emplace_back(p, k);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

// One generator in a formal word: a shift power, a simple automorphism, or
// an explicit block code (whose dimension data is unknown).
struct GroupFactor {
  std::variant<long long, SimpleAuto, BlockCode> value;

  static GroupFactor shift(long long j) { return GroupFactor{j}; }
  static GroupFactor simple(SimpleAuto s) { return GroupFactor{std::move(s)}; }
  static GroupFactor explicit_code(BlockCode c) { return GroupFactor{std::move(c)}; }
};

// A formal word over the generators, stored in application order (the first
// factor acts first), with a declared commutation level.
class GroupElement {
 public:
  GroupElement() : alphabet_(2), declared_level_(1) {}
  GroupElement(Alphabet a, std::vector<GroupFactor> factors, int declared_level)
      : alphabet_(a), factors_(std::move(factors)), declared_level_(declared_level) {
    if (declared_level < 1) throw std::invalid_argument("declared level must be >= 1");
  }

  static GroupElement shift(Alphabet a, long long j) { return GroupElement(a, {GroupFactor::shift(j)}, 1); }
  static GroupElement simple(const SimpleAuto& s) {
    return GroupElement(s.alphabet, {GroupFactor::simple(s)}, s.level);
  }
  static GroupElement from_code(const BlockCode& c, int declared_level) {
    return GroupElement(c.alphabet(), {GroupFactor::explicit_code(c)}, declared_level);
  }
  static GroupElement identity(Alphabet a) { return GroupElement(a, {}, 1); }

  const Alphabet& alphabet() const { return alphabet_; }
  int declared_level() const { return declared_level_; }
  const std::vector<GroupFactor>& factors() const { return factors_; }

  GroupElement with_level(int level) const { return GroupElement(alphabet_, factors_, level); }

  GroupElement inverse() const {
    std::vector<GroupFactor> inv;
    inv.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      if (std::holds_alternative<long long>(it->value)) {
        inv.push_back(GroupFactor::shift(-std::get<long long>(it->value)));
      } else if (std::holds_alternative<SimpleAuto>(it->value)) {
        inv.push_back(GroupFactor::simple(std::get<SimpleAuto>(it->value).inverse()));
      } else {
        inv.push_back(GroupFactor::explicit_code(std::get<BlockCode>(it->value).inverse()));
      }
    }
    return GroupElement(alphabet_, std::move(inv), declared_level_);
  }

  // g.then(f): the word applying g first, then f.
  GroupElement then(const GroupElement& f) const {
    std::vector<GroupFactor> all = factors_;
    all.insert(all.end(), f.factors_.begin(), f.factors_.end());
    return GroupElement(alphabet_, std::move(all), std::lcm(declared_level_, f.declared_level_));
  }

  BlockCode evaluate() const {
    BlockCode code = BlockCode::identity(alphabet_);
    for (const auto& factor : factors_) {
      BlockCode next;
      if (std::holds_alternative<long long>(factor.value)) {
        next = shift_power(alphabet_, std::get<long long>(factor.value));
      } else if (std::holds_alternative<SimpleAuto>(factor.value)) {
        next = embed_simple(std::get<SimpleAuto>(factor.value));
      } else {
        next = std::get<BlockCode>(factor.value);
      }
      code = compose(next, code);
    }
    return code;
  }

  // Check the declared commutation sigma^{-L} . w . sigma^{L} = w.  Cheap
  // when the structural level already divides L.
  bool verify_level(std::uint64_t capacity = kDefaultCapacity) const {
    BlockCode code = evaluate();
    if (declared_level_ % code.level() == 0) return true;
    return equals(shift_conjugate(code, declared_level_), code, capacity);
  }

 private:
  Alphabet alphabet_;
  std::vector<GroupFactor> factors_;
  int declared_level_;
};

// Apply a group element to a point of Per_m, lifting the declared period to
// the structural level of the evaluated code when necessary.  The image is
// verified to lie in Per_m again.
inline PeriodicPoint apply_element(const GroupElement& w, const PeriodicPoint& x) {
  BlockCode code = w.evaluate();
  int m = x.period();
  int lifted = static_cast<int>(std::lcm(static_cast<long long>(m), static_cast<long long>(code.level())));
  PeriodicPoint y = apply(code, x.with_period_multiple(lifted / m));
  if (m % y.minimal_period() != 0)
    throw std::invalid_argument("image left Per_m; the declared level of the word is wrong");
  return y.with_period(m);
}

// rho_m of a group element, via the same period lift.
inline PermutationTable rho(const GroupElement& w, int m, std::uint64_t capacity = kDefaultCapacity) {
  if (m % w.declared_level() != 0) throw alignment_error("period is not a multiple of the declared level");
  BlockCode code = w.evaluate();
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(w.alphabet().size), static_cast<std::uint64_t>(m), capacity);
  int lifted = static_cast<int>(std::lcm(static_cast<long long>(m), static_cast<long long>(code.level())));
  std::vector<std::uint32_t> images(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PeriodicPoint x(w.alphabet(), index_to_word(i, w.alphabet().size, m));
    PeriodicPoint y = apply(code, x.with_period_multiple(lifted / m));
    if (m % y.minimal_period() != 0)
      throw std::invalid_argument("image left Per_m; the declared level of the word is wrong");
    images[i] = static_cast<std::uint32_t>(point_index(y, m));
  }
  return PermutationTable(w.alphabet().size, m, std::move(images));
}

// Dimension representation of a generator word: sigma^j contributes
// j*(k_1,...,k_l) for n = p_1^{k_1}...p_l^{k_l}, simple automorphisms
// contribute zero.  Words containing explicit block codes have unknown
// dimension data.
inline std::optional<DimensionVector> dimension_rep(const GroupElement& w) {
  long long total_shift = 0;
  for (const auto& factor : w.factors()) {
    if (std::holds_alternative<BlockCode>(factor.value)) return std::nullopt;
    if (std::holds_alternative<long long>(factor.value)) total_shift += std::get<long long>(factor.value);
  }
  DimensionVector v;
  for (auto [p, k] : factorize(w.alphabet().size)) {
    v.primes.push_back(p);
    v.exponents.push_back(total_shift * k);
  }
  return v;
}

inline bool is_inert(const GroupElement& w) {
  auto dim = dimension_rep(w);
  if (!dim) throw std::invalid_argument("dimension representation unknown for explicit block codes");
  return dim->is_zero();
}

// Given the dimension vector of gamma^r (a relation gamma^r = sigma^s),
// solve for the root exponent t = s/r.  Requires n not to be a proper
// power.
inline long long root_analysis(Alphabet a, long long r, const DimensionVector& dim) {
  if (r == 0) throw std::invalid_argument("root exponent r must be nonzero");
  auto factors = factorize(a.size);
  long long g = 0;
  for (auto [p, k] : factors) g = std::gcd(g, k);
  if (g > 1) throw std::invalid_argument("proper-power: alphabet size is a proper power");
  if (dim.exponents.size() != factors.size()) throw std::invalid_argument("dimension vector has wrong arity");
  // dim = s * (k_1,...,k_l) for an integer s.
  std::optional<long long> s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long long k = factors[i].second;
    if (dim.exponents[i] % k != 0) throw std::invalid_argument("not-a-root: dimension vector is not proportional");
    long long si = dim.exponents[i] / k;
    if (s && *s != si) throw std::invalid_argument("not-a-root: dimension vector is not proportional");
    s = si;
  }
  if (*s % r != 0) throw std::invalid_argument("not-a-root: exponent is not divisible by r");
  return *s / r;
}

// ---------------------------------------------------------------------------
// Centralizer of a set of permutations, by backtracking with propagation
// along the generators.

inline constexpr std::uint64_t kCentralizerNodeBudget = 10000000;

namespace detail {

struct CentralizerSearch {
  const std::vector<PermutationTable>& gens;
  std::vector<PermutationTable> inverse_gens;
  std::size_t size;
  std::vector<int> img, pre;
  std::vector<std::size_t> trail;
  std::uint64_t nodes = 0;
  std::vector<PermutationTable> found;

  explicit CentralizerSearch(const std::vector<PermutationTable>& generators)
      : gens(generators), size(generators.empty() ? 0 : generators.front().size()) {
    for (const auto& g : gens) inverse_gens.push_back(g.inverse());
    img.assign(size, -1);
    pre.assign(size, -1);
  }

  bool assign(std::size_t a, std::size_t b) {
    // Propagate h(g(x)) = g(h(x)) and h(g^{-1}(x)) = g^{-1}(h(x)) for all
    // generators g from the seed assignment.
    std::vector<std::pair<std::size_t, std::size_t>> queue{{a, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.back();
      queue.pop_back();
      if (img[x] != -1) {
        if (img[x] != static_cast<int>(y)) return false;
        continue;
      }
      if (pre[y] != -1) return false;
      if (++nodes > kCentralizerNodeBudget) throw capacity_error("centralizer search exceeded its node budget");
      img[x] = static_cast<int>(y);
      pre[y] = static_cast<int>(x);
      trail.push_back(x);
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        queue.emplace_back(gens[gi].images[x], gens[gi].images[y]);
        queue.emplace_back(inverse_gens[gi].images[x], inverse_gens[gi].images[y]);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      std::size_t x = trail.back();
      trail.pop_back();
      pre[static_cast<std::size_t>(img[x])] = -1;
      img[x] = -1;
    }
  }

  void recurse(int n_alpha, int period) {
    std::size_t a = 0;
    while (a < size && img[a] != -1) ++a;
    if (a == size) {
      std::vector<std::uint32_t> images(img.begin(), img.end());
      found.emplace_back(n_alpha, period, std::move(images));
      return;
    }
    for (std::size_t b = 0; b < size; ++b) {
      if (pre[b] != -1) continue;
      std::size_t mark = trail.size();
      if (assign(a, b)) recurse(n_alpha, period);
      undo(mark);
    }
  }
};

}  // namespace detail

// All permutations of the common ground set commuting with every generator.
// Exact; sorted by image table for deterministic output.
inline std::vector<PermutationTable> centralizer_in_sym(const std::vector<PermutationTable>& generators) {
  if (generators.empty()) throw std::invalid_argument("centralizer of an empty generator list is all of Sym");
  int n = generators.front().n;
  int period = generators.front().period;
  for (const auto& g : generators) {
    if (g.n != n || g.period != period) throw std::invalid_argument("generators over different ground sets");
  }
  detail::CentralizerSearch search(generators);
  search.recurse(n, period);
  std::sort(search.found.begin(), search.found.end(),
            [](const PermutationTable& a, const PermutationTable& b) { return a.images < b.images; });
  for (const auto& h : search.found) {
    for (const auto& g : generators) {
      if (!h.commutes_with(g)) throw std::logic_error("centralizer search produced a non-commuting element");
    }
  }
  return search.found;
}

}  // namespace stabaut
