// Core symbolic-dynamics values: alphabets, words, periodic points of the
// full shift, the level-k recoding conjugacy, and the window metric.
//
// Conventions used throughout the library:
//   * A word over the alphabet {0,...,n-1} is encoded as an integer in
//     base n with the LEFTMOST symbol most significant.
//   * A periodic point is stored as the block x_[0, k-1] of a declared
//     period k; the point is the biinfinite periodization of that block.
//   * Two points are equal iff they are equal as biinfinite sequences,
//     i.e. their primitive roots agree at offset 0.  Orbit identity is a
//     separate notion (see orbit_key).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabaut {

// Thrown when an enumeration or window check would exceed the configured
// desk-scale bound.  The CLI maps this to exit code 3.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a period is not a multiple of the level it must align with.
struct alignment_error : std::invalid_argument {
  explicit alignment_error(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr std::uint64_t kDefaultCapacity = 1000000;

inline int positive_mod(long long a, long long m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// n^k with an overflow/capacity guard; used for point and window counts.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t capacity = kDefaultCapacity) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > capacity / base) {
      throw capacity_error("count " + std::to_string(base) + "^" + std::to_string(exp) +
                           " exceeds capacity " + std::to_string(capacity));
    }
    r *= base;
  }
  return r;
}

struct Alphabet {
  int size = 2;

  Alphabet() = default;
  explicit Alphabet(int n) : size(n) {
    if (n < 2) throw std::invalid_argument("alphabet size must be >= 2");
  }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct Word {
  Alphabet alphabet;
  std::vector<int> symbols;

  Word() = default;
  Word(Alphabet a, std::vector<int> s) : alphabet(a), symbols(std::move(s)) {
    for (int c : symbols) {
      if (c < 0 || c >= alphabet.size) throw std::invalid_argument("symbol out of alphabet range");
    }
  }

  int length() const { return static_cast<int>(symbols.size()); }
  friend bool operator==(const Word&, const Word&) = default;
};

// Integer code of a word, leftmost symbol most significant.
inline std::uint64_t word_to_index(const std::vector<int>& symbols, int n) {
  std::uint64_t code = 0;
  for (int c : symbols) code = code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(c);
  return code;
}

inline std::vector<int> index_to_word(std::uint64_t code, int n, int length) {
  std::vector<int> symbols(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    symbols[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(n));
    code /= static_cast<std::uint64_t>(n);
  }
  return symbols;
}

// A periodic point of the full shift on `alphabet.size` symbols, stored as
// the block at coordinates [0, k-1] for the declared period k.
class PeriodicPoint {
 public:
  PeriodicPoint() : alphabet_(2), block_{0} {}
  PeriodicPoint(Alphabet a, std::vector<int> block) : alphabet_(a), block_(std::move(block)) {
    if (block_.empty()) throw std::invalid_argument("period must be >= 1");
    for (int c : block_) {
      if (c < 0 || c >= alphabet_.size) throw std::invalid_argument("symbol out of alphabet range");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int period() const { return static_cast<int>(block_.size()); }
  const std::vector<int>& block() const { return block_; }

  // Symbol at arbitrary coordinate i of the biinfinite sequence.
  int symbol(long long i) const { return block_[static_cast<std::size_t>(positive_mod(i, period()))]; }

  // Least j >= 1 with sigma^j(x) = x; always divides the declared period.
  int minimal_period() const {
    int k = period();
    for (int d = 1; d <= k; ++d) {
      if (k % d != 0) continue;
      bool ok = true;
      for (int i = 0; ok && i < k; ++i) ok = block_[static_cast<std::size_t>(i)] == block_[static_cast<std::size_t>(i % d)];
      if (ok) return d;
    }
    return k;
  }

  // The block of the minimal period; identifies the point.
  std::vector<int> primitive_root() const {
    int d = minimal_period();
    return std::vector<int>(block_.begin(), block_.begin() + d);
  }

  // Same point, re-declared with period j*period().
  PeriodicPoint with_period_multiple(int j) const {
    if (j < 1) throw std::invalid_argument("multiplier must be >= 1");
    std::vector<int> b;
    b.reserve(static_cast<std::size_t>(period()) * static_cast<std::size_t>(j));
    for (int r = 0; r < j; ++r) b.insert(b.end(), block_.begin(), block_.end());
    return PeriodicPoint(alphabet_, std::move(b));
  }

  // Re-declare with period m (m must be a multiple of the minimal period).
  PeriodicPoint with_period(int m) const {
    int d = minimal_period();
    if (m < 1 || m % d != 0) throw alignment_error("period not a multiple of the minimal period");
    std::vector<int> b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) b[static_cast<std::size_t>(i)] = block_[static_cast<std::size_t>(i % d)];
    return PeriodicPoint(alphabet_, std::move(b));
  }

  // Lexicographically least rotation of the primitive root; canonical key
  // for sigma-orbits.
  std::vector<int> orbit_key() const {
    std::vector<int> root = primitive_root();
    std::vector<int> best = root;
    std::vector<int> rot = root;
    for (std::size_t j = 1; j < root.size(); ++j) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot < best) best = rot;
    }
    return best;
  }

  friend bool operator==(const PeriodicPoint& x, const PeriodicPoint& y) {
    return x.alphabet_ == y.alphabet_ && x.primitive_root() == y.primitive_root();
  }
  friend bool operator<(const PeriodicPoint& x, const PeriodicPoint& y) {
    if (x.alphabet_.size != y.alphabet_.size) return x.alphabet_.size < y.alphabet_.size;
    return x.primitive_root() < y.primitive_root();
  }

 private:
  Alphabet alphabet_;
  std::vector<int> block_;
};

// All n^k points with sigma^k(x) = x, in lexicographic order of the block
// x_[0, k-1].  The i-th entry is the periodization of the base-n digits of i.
inline std::vector<PeriodicPoint> enumerate_periodic(Alphabet a, int k,
                                                     std::uint64_t capacity = kDefaultCapacity) {
  if (k < 1) throw std::invalid_argument("period must be >= 1");
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(k), capacity);
  std::vector<PeriodicPoint> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) points.emplace_back(a, index_to_word(i, a.size, k));
  return points;
}

inline int minimal_period(const PeriodicPoint& x) { return x.minimal_period(); }

// sigma^j(x); the declared period is unchanged.
inline PeriodicPoint shift_point(const PeriodicPoint& x, long long j) {
  int k = x.period();
  std::vector<int> b(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = x.symbol(i + j);
  return PeriodicPoint(x.alphabet(), std::move(b));
}

// Index of x in enumerate_periodic(alphabet, m) order, i.e. the integer code
// of the block x_[0, m-1].  Requires minimal_period(x) | m.
inline std::uint64_t point_index(const PeriodicPoint& x, int m) {
  if (m % x.minimal_period() != 0) throw alignment_error("point does not lie in Per_m");
  std::uint64_t code = 0;
  for (int i = 0; i < m; ++i)
    code = code * static_cast<std::uint64_t>(x.alphabet().size) + static_cast<std::uint64_t>(x.symbol(i));
  return code;
}

// The conjugacy (X_n, sigma_n^k) -> (X_{n^k}, sigma_{n^k}): symbols grouped
// into k-blocks aligned at coordinates that are multiples of k.
inline PeriodicPoint recode(const PeriodicPoint& x, int k) {
  if (k < 1) throw std::invalid_argument("level must be >= 1");
  if (x.period() % k != 0) throw alignment_error("declared period not divisible by the level");
  int n = x.alphabet().size;
  std::uint64_t nk = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  int cells = x.period() / k;
  std::vector<int> b(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) {
    std::uint64_t code = 0;
    for (int t = 0; t < k; ++t) code = code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(x.symbol(c * k + t));
    b[static_cast<std::size_t>(c)] = static_cast<int>(code);
  }
  return PeriodicPoint(Alphabet(static_cast<int>(nk)), std::move(b));
}

// Inverse of recode: expand each symbol of a point over n^k into its k
// base-n digits.
inline PeriodicPoint recode_inverse(const PeriodicPoint& y, int n, int k) {
  std::uint64_t nk = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (static_cast<std::uint64_t>(y.alphabet().size) != nk)
    throw std::invalid_argument("point alphabet is not n^k");
  std::vector<int> b;
  b.reserve(static_cast<std::size_t>(y.period()) * static_cast<std::size_t>(k));
  for (int c = 0; c < y.period(); ++c) {
    std::vector<int> digits = index_to_word(static_cast<std::uint64_t>(y.symbol(c)), n, k);
    b.insert(b.end(), digits.begin(), digits.end());
  }
  return PeriodicPoint(Alphabet(n), std::move(b));
}

// A dyadic value 2^log2 (or zero); the range of the product-topology metric
// on points.
struct Dyadic {
  bool zero = true;
  int log2 = 0;

  static Dyadic exact_zero() { return Dyadic{true, 0}; }
  static Dyadic power(int e) { return Dyadic{false, e}; }

  double value() const { return zero ? 0.0 : std::ldexp(1.0, log2); }
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    if (a.zero) return !b.zero;
    if (b.zero) return false;
    return a.log2 < b.log2;
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a == b || a < b; }
};

// 2^{-r} where r is the least radius at which the central windows of x and
// y differ; zero iff x = y as points.
inline Dyadic point_distance(const PeriodicPoint& x, const PeriodicPoint& y) {
  if (x.alphabet().size != y.alphabet().size) throw std::invalid_argument("points over different alphabets");
  long long bound = std::lcm(static_cast<long long>(x.period()), static_cast<long long>(y.period()));
  for (long long r = 0; r <= bound; ++r) {
    if (x.symbol(r) != y.symbol(r) || x.symbol(-r) != y.symbol(-r)) return Dyadic::power(static_cast<int>(-r));
  }
  return Dyadic::exact_zero();
}

inline std::string block_string(const PeriodicPoint& x) {
  std::string s;
  for (int c : x.block()) s += (x.alphabet().size <= 10) ? std::to_string(c) : (std::to_string(c) + ".");
  return s;
}

}  // namespace stabaut
