// Concrete representations of group automorphisms of the stabilized
// automorphism group: inner automorphisms, the reflection-induced outer
// automorphism, conjugation schedules by profinite integers, and
// composites.  Plus degree, orientation, and defect scanning.

#pragma once

#include <map>
#include <random>

#include "stabaut/perm.hpp"

namespace stabaut {

// A profinite integer: either a genuine integer (a_m = z mod m for all m)
// or a finite residue table, validated for compatibility.
class ProfiniteInteger {
 public:
  ProfiniteInteger() : integer_(0) {}

  static ProfiniteInteger from_integer(long long z) {
    ProfiniteInteger a;
    a.integer_ = z;
    return a;
  }

  static ProfiniteInteger from_residues(std::map<int, long long> residues) {
    ProfiniteInteger a;
    a.integer_.reset();
    for (auto& [m, r] : residues) {
      if (m < 1) throw std::invalid_argument("residue moduli must be >= 1");
      r = positive_mod(r, m);
    }
    a.residues_ = std::move(residues);
    for (const auto& [m, r] : a.residues_) {
      for (const auto& [m2, r2] : a.residues_) {
        if (m2 % m == 0 && positive_mod(r2, m) != r)
          throw std::invalid_argument("incompatible residues: a_" + std::to_string(m2) + " != a_" +
                                      std::to_string(m) + " mod " + std::to_string(m));
      }
    }
    return a;
  }

  bool is_integer() const { return integer_.has_value(); }
  long long integer_value() const { return *integer_; }

  bool has_residue(int m) const { return integer_.has_value() || residues_.count(m) > 0; }

  long long residue(int m) const {
    if (integer_) return positive_mod(*integer_, m);
    auto it = residues_.find(m);
    if (it == residues_.end())
      throw std::invalid_argument("missing residue a_" + std::to_string(m));
    return it->second;
  }

  const std::map<int, long long>& residue_table() const { return residues_; }

  friend bool operator==(const ProfiniteInteger&, const ProfiniteInteger&) = default;

 private:
  std::optional<long long> integer_;
  std::map<int, long long> residues_;
};

// One of the representable automorphisms of the stabilized group.
class GroupAutomorphism {
 public:
  enum class Kind { Inner, Reflection, Profinite, Composite };

  static GroupAutomorphism inner(GroupElement conjugator) {
    GroupAutomorphism p;
    p.kind_ = Kind::Inner;
    p.alphabet_ = conjugator.alphabet();
    p.conjugator_ = std::move(conjugator);
    return p;
  }
  static GroupAutomorphism reflection(Alphabet a) {
    GroupAutomorphism p;
    p.kind_ = Kind::Reflection;
    p.alphabet_ = a;
    return p;
  }
  static GroupAutomorphism profinite(Alphabet a, ProfiniteInteger residues) {
    GroupAutomorphism p;
    p.kind_ = Kind::Profinite;
    p.alphabet_ = a;
    p.residues_ = std::move(residues);
    return p;
  }
  // Parts applied in order: composite([A, B]) sends phi to B(A(phi)).
  static GroupAutomorphism composite(std::vector<GroupAutomorphism> parts) {
    if (parts.empty()) throw std::invalid_argument("composite needs at least one part");
    GroupAutomorphism p;
    p.kind_ = Kind::Composite;
    p.alphabet_ = parts.front().alphabet();
    for (const auto& q : parts) {
      if (!(q.alphabet() == p.alphabet_)) throw std::invalid_argument("composite parts over different alphabets");
    }
    p.parts_ = std::move(parts);
    return p;
  }

  Kind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const GroupElement& conjugator() const { return conjugator_; }
  const ProfiniteInteger& residues() const { return residues_; }
  const std::vector<GroupAutomorphism>& parts() const { return parts_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::Inner:
        return "inner";
      case Kind::Reflection:
        return "reflection";
      case Kind::Profinite:
        return residues_.is_integer() ? ("N(" + std::to_string(residues_.integer_value()) + ")") : "N(table)";
      case Kind::Composite: {
        std::string s = "composite(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + parts_[i].describe();
        return s + ")";
      }
    }
    return {};
  }

 private:
  Kind kind_ = Kind::Reflection;
  Alphabet alphabet_{2};
  GroupElement conjugator_;
  ProfiniteInteger residues_;
  std::vector<GroupAutomorphism> parts_;
};

// The automorphism phi -> Psi(Upsilon(phi)), i.e. the composition
// Psi . Upsilon in the usual right-to-left notation.
inline GroupAutomorphism compose_autos(const GroupAutomorphism& psi, const GroupAutomorphism& upsilon) {
  return GroupAutomorphism::composite({upsilon, psi});
}

// Evaluate Psi on a group element.  The declared level of phi selects the
// conjugating shift exponent for profinite automorphisms.
inline GroupElement apply_psi(const GroupAutomorphism& psi, const GroupElement& phi) {
  switch (psi.kind()) {
    case GroupAutomorphism::Kind::Inner: {
      const GroupElement& c = psi.conjugator();
      return c.then(phi).then(c.inverse()).with_level(phi.declared_level());
    }
    case GroupAutomorphism::Kind::Reflection: {
      // xi . phi . xi, computed factor by factor; shift factors reverse in
      // closed form, everything else through the exact reflection wrapper.
      std::vector<GroupFactor> factors;
      for (const auto& factor : phi.factors()) {
        if (std::holds_alternative<long long>(factor.value)) {
          factors.push_back(GroupFactor::shift(-std::get<long long>(factor.value)));
        } else if (std::holds_alternative<SimpleAuto>(factor.value)) {
          factors.push_back(GroupFactor::explicit_code(reflect_conjugate(embed_simple(std::get<SimpleAuto>(factor.value)))));
        } else {
          factors.push_back(GroupFactor::explicit_code(reflect_conjugate(std::get<BlockCode>(factor.value))));
        }
      }
      return GroupElement(phi.alphabet(), std::move(factors), phi.declared_level());
    }
    case GroupAutomorphism::Kind::Profinite: {
      long long a = psi.residues().residue(phi.declared_level());
      if (a == 0) return phi;
      GroupElement pre = GroupElement::shift(phi.alphabet(), a);
      GroupElement post = GroupElement::shift(phi.alphabet(), -a);
      return pre.then(phi).then(post).with_level(phi.declared_level());
    }
    case GroupAutomorphism::Kind::Composite: {
      GroupElement cur = phi;
      for (const auto& part : psi.parts()) cur = apply_psi(part, cur);
      return cur;
    }
  }
  throw std::logic_error("unreachable");
}

struct DegreeInfo {
  int degree = 1;
  bool orientation_reversing = false;
};

// Minimal d <= bound with Psi(sigma^d) = sigma^{+-d}, with the realized
// sign.
inline DegreeInfo degree(const GroupAutomorphism& psi, int bound, std::uint64_t capacity = kDefaultCapacity) {
  for (int d = 1; d <= bound; ++d) {
    GroupElement image = apply_psi(psi, GroupElement::shift(psi.alphabet(), d));
    BlockCode code = image.evaluate();
    if (equals(code, shift_power(psi.alphabet(), d), capacity)) return DegreeInfo{d, false};
    if (equals(code, shift_power(psi.alphabet(), -d), capacity)) return DegreeInfo{d, true};
  }
  throw std::runtime_error("degree-exceeds-bound: no d <= " + std::to_string(bound) +
                           " with Psi(sigma^d) = sigma^{+-d}");
}

// True iff conjugation by sigma^{a_k} and by sigma^{a_jk} agree on phi as
// block codes; the well-definedness identity behind the profinite embedding.
inline bool check_profinite_welldefined(const ProfiniteInteger& a, const GroupElement& phi, int k, int j,
                                        std::uint64_t capacity = kDefaultCapacity) {
  if (phi.declared_level() != k) throw std::invalid_argument("phi must be declared at level k");
  long long ak = a.residue(k);
  long long ajk = a.residue(j * k);
  BlockCode code = phi.evaluate();
  return equals(shift_conjugate(code, ak), shift_conjugate(code, ajk), capacity);
}

// Transposition of the i-th and j-th points of Per_k as a permutation
// table.
inline PermutationTable per_transposition(int n, int k, std::uint64_t i, std::uint64_t j,
                                          std::uint64_t capacity = kDefaultCapacity) {
  PermutationTable t = PermutationTable::identity(n, k, capacity);
  std::swap(t.images[i], t.images[j]);
  return PermutationTable(n, k, t.images);
}

// alpha = rho_k . Psi . nu_k evaluated on one permutation of Per_k.
inline PermutationTable psi_on_per(const GroupAutomorphism& psi, const PermutationTable& pi,
                                   std::uint64_t capacity = kDefaultCapacity) {
  GroupElement image = apply_psi(psi, GroupElement::simple(nu_k(pi)));
  return rho(image, pi.period, capacity);
}

// Defect scan at level k: alpha kills a 3-cycle iff the image of the simple
// automorphisms meets the kernel of rho_k nontrivially (for N >= 5 any
// nontrivial kernel contains the alternating group, so one 3-cycle
// decides).  Spot-checks homomorphy on a few random pairs as well.
inline bool defect_scan(const GroupAutomorphism& psi, int k, int deg, std::uint64_t seed = 2024,
                        std::uint64_t capacity = kDefaultCapacity) {
  if (k < 3) throw std::invalid_argument("defect scan needs k >= 3");
  if (k % deg != 0) throw std::invalid_argument("defect scan needs deg(Psi) | k");
  int n = psi.alphabet().size;
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), capacity);
  if (count < 8) throw std::invalid_argument("defect scan needs n^k >= 8");

  PermutationTable cycle = PermutationTable::identity(n, k, capacity);
  cycle.images[0] = 1;
  cycle.images[1] = 2;
  cycle.images[2] = 0;
  PermutationTable image = psi_on_per(psi, PermutationTable(n, k, cycle.images), capacity);
  bool defective = image.is_identity();

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    PermutationTable a = PermutationTable::identity(n, k, capacity);
    PermutationTable b = PermutationTable::identity(n, k, capacity);
    std::shuffle(a.images.begin(), a.images.end(), rng);
    std::shuffle(b.images.begin(), b.images.end(), rng);
    a = PermutationTable(n, k, a.images);
    b = PermutationTable(n, k, b.images);
    PermutationTable lhs = psi_on_per(psi, a.compose_after(b), capacity);
    PermutationTable rhs = psi_on_per(psi, a, capacity).compose_after(psi_on_per(psi, b, capacity));
    if (!(lhs == rhs)) throw std::logic_error("rho_k . Psi . nu_k failed a homomorphy spot check");
  }
  return defective;
}

// The admissible levels k <= bound: k >= 3, deg(Psi) | k, not defective.
inline std::vector<int> i_psi(const GroupAutomorphism& psi, int bound, std::uint64_t capacity = kDefaultCapacity) {
  DegreeInfo info = degree(psi, bound, capacity);
  std::vector<int> levels;
  for (int k = 3; k <= bound; ++k) {
    if (k % info.degree != 0) continue;
    if (!defect_scan(psi, k, info.degree, 2024, capacity)) levels.push_back(k);
  }
  return levels;
}

}  // namespace stabaut
