// Invertible sliding block codes acting on the full shift, represented as
// chains of primitive local rules.  A code at level k commutes with
// sigma_n^k by construction: its rule is applied at every cell of length k
// aligned at coordinates that are multiples of k.
//
// A BlockCode carries a forward chain and an inverse chain; inversion swaps
// the two.  Window ranges are propagated exactly through chains, so the
// radius of a composition like sigma^{-j} . tau . sigma^j stays tight.

#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabaut/core.hpp"

namespace stabaut {

namespace detail {

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

// Raw (symbol-coordinate) half-open interval.
struct Range {
  long long lo = 0;
  long long hi = 0;
  long long length() const { return hi - lo; }
};

inline Range align_outward(Range r, int level) {
  return Range{floor_div(r.lo, level) * level, ceil_div(r.hi, level) * level};
}

// One local rule in a chain.  Coordinates are raw symbol positions; the
// rule produces output cells aligned at multiples of `level`.
class Atom {
 public:
  Atom(int n, int level) : n_(n), level_(level) {}
  virtual ~Atom() = default;

 private:
  int n_;
  int level_;

 public:

  int alphabet_size() const { return n_; }
  int level() const { return level_; }

  // Raw input range needed to produce the (level-aligned) output range.
  virtual Range input_range(Range out) const = 0;

  // Compute output symbols on `out` (aligned); `in` covers input_range(out)
  // with in[0] at raw position in_lo.
  virtual void run(const int* in, long long in_lo, int* out, Range out_range) const = 0;

  // Apply to one full period of a periodic sequence, cyclically.
  virtual void run_cyclic(const std::vector<int>& in, std::vector<int>& out) const {
    int p = static_cast<int>(in.size());
    out.assign(in.size(), 0);
    std::vector<int> buf;
    for (long long c = 0; c < p; c += level_) {
      Range o{c, c + level_};
      Range need = input_range(o);
      buf.resize(static_cast<std::size_t>(need.length()));
      for (long long i = need.lo; i < need.hi; ++i)
        buf[static_cast<std::size_t>(i - need.lo)] = in[static_cast<std::size_t>(positive_mod(i, p))];
      run(buf.data(), need.lo, out.data() + c, o);
    }
  }
};

using AtomPtr = std::shared_ptr<const Atom>;

// Explicit rule table: window of 2*radius+1 level-k symbols -> one level-k
// symbol, indexed base n^k with the leftmost cell most significant.
class TableAtom final : public Atom {
 public:
  TableAtom(int n, int level, int radius, std::vector<int> table)
      : Atom(n, level), radius_(radius), table_(std::move(table)) {
    cell_count_ = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(level));
    std::uint64_t want = checked_pow(cell_count_, static_cast<std::uint64_t>(2 * radius + 1), 100000000ull);
    if (table_.size() != want) throw std::invalid_argument("rule table has wrong size");
    for (int v : table_) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= cell_count_) throw std::invalid_argument("rule output out of range");
    }
  }

  int radius() const { return radius_; }
  std::uint64_t cell_symbols() const { return cell_count_; }
  const std::vector<int>& table() const { return table_; }

  Range input_range(Range out) const override {
    Range a = align_outward(out, level());
    return Range{a.lo - static_cast<long long>(radius_) * level(), a.hi + static_cast<long long>(radius_) * level()};
  }

  void run(const int* in, long long in_lo, int* out, Range out_range) const override {
    for (long long c = out_range.lo; c < out_range.hi; c += level()) {
      std::uint64_t idx = 0;
      for (int w = -radius_; w <= radius_; ++w) {
        std::uint64_t cell = 0;
        for (int t = 0; t < level(); ++t) {
          long long pos = c + static_cast<long long>(w) * level() + t;
          cell = cell * static_cast<std::uint64_t>(alphabet_size()) + static_cast<std::uint64_t>(in[pos - in_lo]);
        }
        idx = idx * cell_count_ + cell;
      }
      std::vector<int> digits = index_to_word(static_cast<std::uint64_t>(table_[idx]), alphabet_size(), level());
      for (int t = 0; t < level(); ++t) out[c - out_range.lo + t] = digits[static_cast<std::size_t>(t)];
    }
  }

 private:
  int radius_;
  std::uint64_t cell_count_;
  std::vector<int> table_;
};

// sigma^j: out_i = in_{i+j}.
class ShiftAtom final : public Atom {
 public:
  ShiftAtom(int n, long long j) : Atom(n, 1), j_(j) {}
  long long exponent() const { return j_; }

  Range input_range(Range out) const override { return Range{out.lo + j_, out.hi + j_}; }

  void run(const int* in, long long in_lo, int* out, Range out_range) const override {
    for (long long i = out_range.lo; i < out_range.hi; ++i) out[i - out_range.lo] = in[i + j_ - in_lo];
  }

  void run_cyclic(const std::vector<int>& in, std::vector<int>& out) const override {
    int p = static_cast<int>(in.size());
    out.resize(in.size());
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(positive_mod(i + j_, p))];
  }

 private:
  long long j_;
};

// xi . a . xi where xi is the spatial reflection x_i -> x_{-i}.  Exact:
// (xi a xi)(x)_i = a(xi x)_{-i}.
class ReflectConjAtom final : public Atom {
 public:
  explicit ReflectConjAtom(AtomPtr inner) : Atom(inner->alphabet_size(), inner->level()), inner_(std::move(inner)) {}
  const AtomPtr& inner() const { return inner_; }

  Range input_range(Range out) const override {
    Range mirrored{1 - out.hi, 1 - out.lo};
    Range inner_out = align_outward(mirrored, inner_->level());
    Range inner_in = inner_->input_range(inner_out);
    return Range{1 - inner_in.hi, 1 - inner_in.lo};
  }

  void run(const int* in, long long in_lo, int* out, Range out_range) const override {
    Range mirrored{1 - out_range.hi, 1 - out_range.lo};
    Range inner_out = align_outward(mirrored, inner_->level());
    Range inner_in = inner_->input_range(inner_out);
    // Reflected view of the input buffer: position p of (xi x) is -p of x.
    std::vector<int> rin(static_cast<std::size_t>(inner_in.length()));
    for (long long p = inner_in.lo; p < inner_in.hi; ++p)
      rin[static_cast<std::size_t>(p - inner_in.lo)] = in[(-p) - in_lo];
    std::vector<int> rout(static_cast<std::size_t>(inner_out.length()));
    run_inner(rin, inner_in.lo, rout, inner_out);
    for (long long i = out_range.lo; i < out_range.hi; ++i)
      out[i - out_range.lo] = rout[static_cast<std::size_t>((-i) - inner_out.lo)];
  }

 private:
  void run_inner(const std::vector<int>& rin, long long in_lo, std::vector<int>& rout, Range out_range) const {
    inner_->run(rin.data(), in_lo, rout.data(), out_range);
  }
  AtomPtr inner_;
};

// View a code over the alphabet n^k at level j as a code over n at level
// k*j, through the grouping conjugacy used by recode().
class RecodeAtom final : public Atom {
 public:
  RecodeAtom(AtomPtr inner, int base, int group)
      : Atom(base, inner->level() * group), inner_(std::move(inner)), base_(base), group_(group) {
    std::uint64_t nk = checked_pow(static_cast<std::uint64_t>(base), static_cast<std::uint64_t>(group));
    if (static_cast<std::uint64_t>(inner_->alphabet_size()) != nk)
      throw std::invalid_argument("inner code alphabet is not base^group");
  }

  Range input_range(Range out) const override {
    Range coarse{detail::floor_div(out.lo, group_), detail::ceil_div(out.hi, group_)};
    Range need = inner_->input_range(align_outward(coarse, inner_->level()));
    return Range{need.lo * group_, need.hi * group_};
  }

  void run(const int* in, long long in_lo, int* out, Range out_range) const override {
    Range coarse{detail::floor_div(out_range.lo, group_), detail::ceil_div(out_range.hi, group_)};
    coarse = align_outward(coarse, inner_->level());
    Range need = inner_->input_range(coarse);
    std::vector<int> cin(static_cast<std::size_t>(need.length()));
    for (long long c = need.lo; c < need.hi; ++c) {
      std::uint64_t v = 0;
      for (int t = 0; t < group_; ++t)
        v = v * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(in[c * group_ + t - in_lo]);
      cin[static_cast<std::size_t>(c - need.lo)] = static_cast<int>(v);
    }
    std::vector<int> cout(static_cast<std::size_t>(coarse.length()));
    inner_->run(cin.data(), need.lo, cout.data(), coarse);
    for (long long i = out_range.lo; i < out_range.hi; ++i) {
      long long c = detail::floor_div(i, group_);
      std::vector<int> digits = index_to_word(static_cast<std::uint64_t>(cout[static_cast<std::size_t>(c - coarse.lo)]),
                                              base_, group_);
      out[i - out_range.lo] = digits[static_cast<std::size_t>(positive_mod(i, group_))];
    }
  }

 private:
  AtomPtr inner_;
  int base_;
  int group_;
};

}  // namespace detail

// Permutation of Per_m(sigma_n), indexed lexicographically by the block
// x_[0, m-1].  images[i] is the index of the image of the i-th point.
struct PermutationTable {
  int n = 2;
  int period = 1;
  std::vector<std::uint32_t> images;

  PermutationTable() = default;
  PermutationTable(int n_, int period_, std::vector<std::uint32_t> images_)
      : n(n_), period(period_), images(std::move(images_)) {
    std::vector<bool> seen(images.size(), false);
    for (std::uint32_t v : images) {
      if (v >= images.size() || seen[v]) throw std::invalid_argument("image table is not a bijection");
      seen[v] = true;
    }
  }

  static PermutationTable identity(int n, int period, std::uint64_t capacity = kDefaultCapacity) {
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(period), capacity);
    std::vector<std::uint32_t> im(count);
    for (std::uint64_t i = 0; i < count; ++i) im[i] = static_cast<std::uint32_t>(i);
    return PermutationTable(n, period, std::move(im));
  }

  std::size_t size() const { return images.size(); }
  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] != i) return false;
    return true;
  }

  PeriodicPoint point(std::uint64_t index) const {
    return PeriodicPoint(Alphabet(n), index_to_word(index, n, period));
  }
  PeriodicPoint apply(const PeriodicPoint& x) const { return point(images[point_index(x, period)]); }

  PermutationTable inverse() const {
    std::vector<std::uint32_t> inv(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) inv[images[i]] = static_cast<std::uint32_t>(i);
    return PermutationTable(n, period, std::move(inv));
  }

  // Function composition: (a.compose_after(b))(x) = a(b(x)).
  PermutationTable compose_after(const PermutationTable& b) const {
    if (n != b.n || period != b.period) throw std::invalid_argument("permutation tables over different ground sets");
    std::vector<std::uint32_t> im(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) im[i] = images[b.images[i]];
    return PermutationTable(n, period, std::move(im));
  }

  bool commutes_with(const PermutationTable& other) const {
    return compose_after(other).images == other.compose_after(*this).images;
  }

  // Multiset of cycle lengths.
  std::vector<int> cycle_type() const {
    std::vector<int> lengths;
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      std::size_t j = i;
      do {
        seen[j] = true;
        j = images[j];
        ++len;
      } while (j != i);
      lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
  }

  bool is_even() const {
    int transpositions = 0;
    for (int len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
  }

  friend bool operator==(const PermutationTable& a, const PermutationTable& b) {
    return a.n == b.n && a.period == b.period && a.images == b.images;
  }
};

// An element of Aut(sigma_n^level) together with its inverse, as a chain of
// local rules applied left to right.
class BlockCode {
 public:
  BlockCode() : alphabet_(2), level_(1) {}

  static BlockCode identity(Alphabet a) {
    BlockCode c;
    c.alphabet_ = a;
    c.level_ = 1;
    return c;
  }

  static BlockCode from_atoms(Alphabet a, std::vector<detail::AtomPtr> fwd, std::vector<detail::AtomPtr> inv,
                              std::string label = {}) {
    BlockCode c;
    c.alphabet_ = a;
    c.fwd_ = std::move(fwd);
    c.inv_ = std::move(inv);
    c.label_ = std::move(label);
    c.level_ = 1;
    for (const auto& atom : c.fwd_) {
      if (atom->alphabet_size() != a.size) throw std::invalid_argument("atom alphabet mismatch");
      c.level_ = std::lcm(c.level_, atom->level());
    }
    for (const auto& atom : c.inv_) c.level_ = std::lcm(c.level_, atom->level());
    return c;
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int level() const { return level_; }
  const std::string& label() const { return label_; }
  BlockCode with_label(std::string label) const {
    BlockCode c = *this;
    c.label_ = std::move(label);
    return c;
  }
  const std::vector<detail::AtomPtr>& forward_chain() const { return fwd_; }
  const std::vector<detail::AtomPtr>& inverse_chain() const { return inv_; }

  BlockCode inverse() const {
    BlockCode c = *this;
    std::swap(c.fwd_, c.inv_);
    return c;
  }

  // Raw input range the forward chain needs to produce `out`.
  detail::Range forward_need(detail::Range out) const {
    detail::Range cur = out;
    for (auto it = fwd_.rbegin(); it != fwd_.rend(); ++it)
      cur = (*it)->input_range(detail::align_outward(cur, (*it)->level()));
    return cur;
  }

  // Radius in cells of size `cell` (a multiple of level()), from the exact
  // window arithmetic of the chain.
  int radius_at(int cell) const {
    if (cell % level_ != 0) throw alignment_error("cell size not a multiple of the level");
    detail::Range need = forward_need(detail::Range{0, cell});
    long long lo_cell = detail::floor_div(need.lo, cell);
    long long hi_cell = detail::floor_div(need.hi - 1, cell);
    return static_cast<int>(std::max(-lo_cell, hi_cell));
  }
  int radius() const { return radius_at(level_); }

  // Evaluate the forward chain on a raw buffer; the buffer must cover
  // forward_need(out).
  void eval_forward(const int* in, long long in_lo, int* out, detail::Range out_range) const {
    std::vector<detail::Range> outs(fwd_.size());
    detail::Range cur = out_range;
    for (std::size_t i = fwd_.size(); i-- > 0;) {
      cur = detail::align_outward(cur, fwd_[i]->level());
      outs[i] = cur;
      cur = fwd_[i]->input_range(cur);
    }
    std::vector<int> buf(in + (cur.lo - in_lo), in + (cur.hi - in_lo));
    long long buf_lo = cur.lo;
    for (std::size_t i = 0; i < fwd_.size(); ++i) {
      std::vector<int> next(static_cast<std::size_t>(outs[i].length()));
      fwd_[i]->run(buf.data(), buf_lo, next.data(), outs[i]);
      buf = std::move(next);
      buf_lo = outs[i].lo;
    }
    for (long long p = out_range.lo; p < out_range.hi; ++p) out[p - out_range.lo] = buf[static_cast<std::size_t>(p - buf_lo)];
  }

 private:
  Alphabet alphabet_;
  int level_;
  std::vector<detail::AtomPtr> fwd_;
  std::vector<detail::AtomPtr> inv_;
  std::string label_;
};

// apply g first, then f; matches the composition notation f . g.
inline BlockCode compose(const BlockCode& f, const BlockCode& g) {
  if (!(f.alphabet() == g.alphabet())) throw std::invalid_argument("composition across different alphabets");
  std::vector<detail::AtomPtr> fwd = g.forward_chain();
  fwd.insert(fwd.end(), f.forward_chain().begin(), f.forward_chain().end());
  std::vector<detail::AtomPtr> inv = f.inverse_chain();
  inv.insert(inv.end(), g.inverse_chain().begin(), g.inverse_chain().end());
  return BlockCode::from_atoms(f.alphabet(), std::move(fwd), std::move(inv));
}

inline PeriodicPoint apply(const BlockCode& f, const PeriodicPoint& x) {
  if (!(x.alphabet() == f.alphabet())) throw std::invalid_argument("point alphabet mismatch");
  if (x.period() % f.level() != 0) throw alignment_error("declared period is not a multiple of the code level");
  std::vector<int> cur = x.block();
  std::vector<int> next;
  for (const auto& atom : f.forward_chain()) {
    atom->run_cyclic(cur, next);
    cur.swap(next);
  }
  return PeriodicPoint(x.alphabet(), std::move(cur));
}

inline PeriodicPoint apply_inverse(const BlockCode& f, const PeriodicPoint& x) { return apply(f.inverse(), x); }

// The code for sigma_n^j.
inline BlockCode shift_power(Alphabet a, long long j, std::string label = {}) {
  if (j == 0) return BlockCode::identity(a).with_label(label.empty() ? "id" : label);
  auto fwd = std::make_shared<detail::ShiftAtom>(a.size, j);
  auto inv = std::make_shared<detail::ShiftAtom>(a.size, -j);
  return BlockCode::from_atoms(a, {fwd}, {inv}, label.empty() ? ("sigma^" + std::to_string(j)) : label);
}

// If the forward chain consists solely of shift atoms, its total exponent.
inline std::optional<long long> as_pure_shift(const BlockCode& f) {
  long long total = 0;
  for (const auto& atom : f.forward_chain()) {
    auto* s = dynamic_cast<const detail::ShiftAtom*>(atom.get());
    if (s == nullptr) return std::nullopt;
    total += s->exponent();
  }
  return total;
}

// xi(x)_i = x_{-i}; the spatial reflection of a point.
inline PeriodicPoint reflect(const PeriodicPoint& x) {
  int k = x.period();
  std::vector<int> b(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = x.symbol(-static_cast<long long>(i));
  return PeriodicPoint(x.alphabet(), std::move(b));
}

// xi . f . xi as a BlockCode; shift powers reflect in closed form.
inline BlockCode reflect_conjugate(const BlockCode& f) {
  auto reflect_chain = [](const std::vector<detail::AtomPtr>& chain) {
    std::vector<detail::AtomPtr> out;
    out.reserve(chain.size());
    for (const auto& atom : chain) {
      if (auto* s = dynamic_cast<const detail::ShiftAtom*>(atom.get())) {
        out.push_back(std::make_shared<detail::ShiftAtom>(s->alphabet_size(), -s->exponent()));
      } else {
        out.push_back(std::make_shared<detail::ReflectConjAtom>(atom));
      }
    }
    return out;
  };
  return BlockCode::from_atoms(f.alphabet(), reflect_chain(f.forward_chain()), reflect_chain(f.inverse_chain()),
                               f.label().empty() ? std::string{} : ("xi." + f.label() + ".xi"));
}

// sigma^{-j} . f . sigma^{j}.
inline BlockCode shift_conjugate(const BlockCode& f, long long j) {
  return compose(shift_power(f.alphabet(), -j), compose(f, shift_power(f.alphabet(), j)));
}

// View a code over alphabet n^group as a code over alphabet n (level
// multiplied by `group`).
inline BlockCode recode_to_base(const BlockCode& f, int base, int group) {
  auto wrap = [&](const std::vector<detail::AtomPtr>& chain) {
    std::vector<detail::AtomPtr> out;
    out.reserve(chain.size());
    for (const auto& atom : chain) out.push_back(std::make_shared<detail::RecodeAtom>(atom, base, group));
    return out;
  };
  return BlockCode::from_atoms(Alphabet(base), wrap(f.forward_chain()), wrap(f.inverse_chain()), f.label());
}

// Exact equality of the underlying maps: window-by-window comparison at the
// common level and the larger of the two radii.  Guarded by `capacity`.
inline bool equals(const BlockCode& f, const BlockCode& g, std::uint64_t capacity = kDefaultCapacity) {
  if (!(f.alphabet() == g.alphabet())) throw std::invalid_argument("codes over different alphabets");
  auto sf = as_pure_shift(f), sg = as_pure_shift(g);
  if (sf && sg) return *sf == *sg;

  int level = std::lcm(f.level(), g.level());
  int radius = std::max(f.radius_at(level), g.radius_at(level));
  std::uint64_t cell_symbols = checked_pow(static_cast<std::uint64_t>(f.alphabet().size),
                                           static_cast<std::uint64_t>(level), capacity);
  std::uint64_t windows = checked_pow(cell_symbols, static_cast<std::uint64_t>(2 * radius + 1), capacity);

  int width = (2 * radius + 1) * level;
  std::vector<int> raw(static_cast<std::size_t>(width));
  std::vector<int> out_f(static_cast<std::size_t>(level));
  std::vector<int> out_g(static_cast<std::size_t>(level));
  long long origin = -static_cast<long long>(radius) * level;
  for (std::uint64_t w = 0; w < windows; ++w) {
    std::uint64_t v = w;
    for (int i = width - 1; i >= 0; --i) {
      raw[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(f.alphabet().size));
      v /= static_cast<std::uint64_t>(f.alphabet().size);
    }
    f.eval_forward(raw.data(), origin, out_f.data(), detail::Range{0, level});
    g.eval_forward(raw.data(), origin, out_g.data(), detail::Range{0, level});
    if (out_f != out_g) return false;
  }
  return true;
}

inline bool is_identity_code(const BlockCode& f, std::uint64_t capacity = kDefaultCapacity) {
  return equals(f, BlockCode::identity(f.alphabet()), capacity);
}

// rho_m: the permutation of Per_m induced by f.  Requires level | m.
inline PermutationTable restrict_to_per(const BlockCode& f, int m, std::uint64_t capacity = kDefaultCapacity) {
  if (m % f.level() != 0) throw alignment_error("period is not a multiple of the code level");
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(f.alphabet().size), static_cast<std::uint64_t>(m), capacity);
  std::vector<std::uint32_t> images(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PeriodicPoint x(f.alphabet(), index_to_word(i, f.alphabet().size, m));
    images[i] = static_cast<std::uint32_t>(point_index(apply(f, x), m));
  }
  return PermutationTable(f.alphabet().size, m, std::move(images));
}

// Check that the stored inverse really inverts f on all of Per_m for every
// multiple m of the level up to `max_period`.
inline bool verify_inverse_on_periods(const BlockCode& f, int max_period,
                                      std::uint64_t capacity = kDefaultCapacity) {
  for (int m = f.level(); m <= max_period; m += f.level()) {
    for (const auto& x : enumerate_periodic(f.alphabet(), m, capacity)) {
      if (!(apply(f.inverse(), apply(f, x)) == x)) return false;
      if (!(apply(f, apply(f.inverse(), x)) == x)) return false;
    }
  }
  return true;
}

}  // namespace stabaut
