// The spatialization engine.  For a representable group automorphism Psi,
// the map alpha = rho_k . Psi . nu_k is an automorphism of Sym(Per_k) and
// hence inner for n^k >= 8; the conjugating permutation h is recovered from
// the images of transpositions and verified against the defining identity
//
//     rho_k(Psi(nu_k(pi))) = h^{-1} . pi . h.
//
// Orientation-reversing automorphisms are handled by computing the table
// for the orientation-preserving composite with the reflection automorphism
// and post-composing with the reflection action on Per_k.

#pragma once

#include <functional>
#include <map>
#include <set>

#include "stabaut/psi.hpp"

namespace stabaut {

struct verraum_error : std::runtime_error {
  explicit verraum_error(const std::string& what) : std::runtime_error(what) {}
};

// Action of the spatial reflection xi on Per_k.
inline PermutationTable xi_action(int n, int k, std::uint64_t capacity = kDefaultCapacity) {
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), capacity);
  std::vector<std::uint32_t> images(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PeriodicPoint x(Alphabet(n), index_to_word(i, n, k));
    images[i] = static_cast<std::uint32_t>(point_index(reflect(x), k));
  }
  return PermutationTable(n, k, std::move(images));
}

struct ProfiniteRecovery {
  enum class Status { Ok, NotOrbitPreserving, InconsistentResidue };
  Status status = Status::Ok;
  ProfiniteInteger value;
  std::optional<PeriodicPoint> witness;  // set when not orbit preserving

  bool ok() const { return status == Status::Ok; }
};

struct ContinuityRow {
  int input_radius = 0;        // pairs at distance 2^{-input_radius}
  int worst_output_radius = 0; // minimal agreement radius of the images
  int pairs = 0;
};

// A level-indexed compatible family of permutations of Per_k: the
// spatialization evaluated on a set of levels.
struct PeriodicMap {
  Alphabet alphabet{2};
  DegreeInfo degree;
  std::map<int, PermutationTable> entries;
};

class VerraumEngine {
 public:
  explicit VerraumEngine(GroupAutomorphism psi, std::uint64_t capacity = kDefaultCapacity,
                         std::uint64_t seed = 2024, int degree_bound = 12)
      : psi_(std::move(psi)), capacity_(capacity), seed_(seed) {
    degree_ = degree(psi_, degree_bound, capacity_);
    if (degree_.orientation_reversing) {
      // The orientation-preserving composite Xi . Psi used for recovery.
      effective_ = GroupAutomorphism::composite({psi_, GroupAutomorphism::reflection(psi_.alphabet())});
    } else {
      effective_ = psi_;
    }
  }

  const GroupAutomorphism& psi() const { return psi_; }
  const DegreeInfo& degree_info() const { return degree_; }
  int alphabet_size() const { return psi_.alphabet().size; }
  std::uint64_t capacity() const { return capacity_; }

  bool is_admissible(int k) const {
    if (k < 3 || k % degree_.degree != 0) return false;
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
      count *= static_cast<std::uint64_t>(alphabet_size());
      if (count > capacity_) return false;
    }
    return count >= 8;
  }

  // Admissible levels up to the bound, with an explicit defect scan.
  std::vector<int> admissible_levels(int bound) {
    std::vector<int> levels;
    for (int k = 3; k <= bound; ++k) {
      if (!is_admissible(k)) continue;
      if (!defect_scan(psi_, k, degree_.degree, seed_, capacity_)) levels.push_back(k);
    }
    return levels;
  }

  using PartnerFn = std::function<std::pair<std::uint64_t, std::uint64_t>(std::uint64_t, std::uint64_t)>;

  static std::pair<std::uint64_t, std::uint64_t> default_partners(std::uint64_t i, std::uint64_t n) {
    return {(i + 1) % n, (i + 2) % n};
  }

  const PermutationTable& local_verraum(int k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    PermutationTable h = local_verraum_with_partners(k, &default_partners);
    return cache_.emplace(k, std::move(h)).first->second;
  }

  // Recovery with an explicit partner-point choice; the result must not
  // depend on it (uniqueness of the conjugator).
  PermutationTable local_verraum_with_partners(int k, const PartnerFn& partners) {
    if (!is_admissible(k)) throw verraum_error("level " + std::to_string(k) + " is not admissible");
    PermutationTable h = recover_conjugator(effective_, k, partners);
    if (degree_.orientation_reversing) {
      h = h.compose_after(xi_action(alphabet_size(), k, capacity_));
      verify_identity(psi_, k, h);
    }
    return h;
  }

  // Restriction of the level-(ell*k) table to Per_k equals the level-k
  // table.
  bool consistency_check(int k, int ell) {
    const PermutationTable& big = local_verraum(ell * k);
    const PermutationTable& small = local_verraum(k);
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(alphabet_size()), static_cast<std::uint64_t>(k), capacity_);
    for (std::uint64_t i = 0; i < count; ++i) {
      PeriodicPoint x = small.point(i);
      PeriodicPoint y = big.apply(x.with_period_multiple(ell));
      if (k % y.minimal_period() != 0) return false;
      if (point_index(y, k) != small.images[i]) return false;
    }
    return true;
  }

  // h commutes with rho_k(sigma^deg); for orientation-reversing Psi the
  // conjugated identity h . rho(sigma^d) . h^{-1} = rho(sigma^{-d}) holds
  // instead.
  bool shift_commutation_check(int k) {
    const PermutationTable& h = local_verraum(k);
    PermutationTable s = restrict_to_per(shift_power(psi_.alphabet(), degree_.degree), k, capacity_);
    if (!degree_.orientation_reversing) return h.commutes_with(s);
    PermutationTable s_inv = restrict_to_per(shift_power(psi_.alphabet(), -degree_.degree), k, capacity_);
    return h.compose_after(s).compose_after(h.inverse()) == s_inv;
  }

  // Smallest admissible level whose periodic points contain x.
  int admissible_level_for(const PeriodicPoint& x) {
    long long base = std::lcm(static_cast<long long>(x.minimal_period()), static_cast<long long>(degree_.degree));
    for (long long k = base;; k += base) {
      if (k >= 3) {
        std::uint64_t count = 1;
        bool fits = true;
        for (long long i = 0; i < k && fits; ++i) {
          count *= static_cast<std::uint64_t>(alphabet_size());
          if (count > capacity_) fits = false;
        }
        if (!fits) throw capacity_error("no admissible level for the point within capacity");
        return static_cast<int>(k);
      }
    }
  }

  PeriodicPoint global_verraum(const PeriodicPoint& x) {
    int k = admissible_level_for(x);
    const PermutationTable& h = local_verraum(k);
    return h.apply(x.with_period(k));
  }

  // rho_k(Psi(phi)) = h^{-1} . rho_k(phi) . h for every sampled word.
  bool full_group_conjugation_check(int k, const std::vector<GroupElement>& words) {
    const PermutationTable& h = local_verraum(k);
    PermutationTable h_inv = h.inverse();
    for (const auto& w : words) {
      PermutationTable lhs = rho(apply_psi(psi_, w), k, capacity_);
      PermutationTable rhs = h_inv.compose_after(rho(w, k, capacity_).compose_after(h));
      if (!(lhs == rhs)) return false;
    }
    return true;
  }

  // If the spatialization preserves every sigma-orbit, it acts as a shift
  // power on each Per_ell; collect the residues and validate compatibility.
  ProfiniteRecovery profinite_recovery(int bound) {
    if (degree_.degree != 1) throw verraum_error("profinite recovery requires degree one");
    ProfiniteRecovery result;
    std::map<int, long long> residues;
    for (int ell = 1; ell <= bound; ++ell) {
      std::uint64_t count = checked_pow(static_cast<std::uint64_t>(alphabet_size()), static_cast<std::uint64_t>(ell), capacity_);
      std::vector<long long> offsets(count);
      for (std::uint64_t i = 0; i < count; ++i) {
        PeriodicPoint x(psi_.alphabet(), index_to_word(i, alphabet_size(), ell));
        PeriodicPoint y = global_verraum(x);
        long long offset = -1;
        for (int j = 0; j < x.minimal_period(); ++j) {
          if (shift_point(x, j) == y) {
            offset = j;
            break;
          }
        }
        if (offset < 0) {
          result.status = ProfiniteRecovery::Status::NotOrbitPreserving;
          result.witness = x;
          return result;
        }
        offsets[i] = offset;
      }
      std::optional<long long> chosen;
      for (long long c = 0; c < ell && !chosen; ++c) {
        bool all = true;
        for (std::uint64_t i = 0; i < count && all; ++i) {
          PeriodicPoint x(psi_.alphabet(), index_to_word(i, alphabet_size(), ell));
          all = positive_mod(c, x.minimal_period()) == offsets[i];
        }
        if (all) chosen = c;
      }
      if (!chosen) {
        result.status = ProfiniteRecovery::Status::InconsistentResidue;
        return result;
      }
      residues[ell] = *chosen;
    }
    try {
      result.value = ProfiniteInteger::from_residues(residues);
    } catch (const std::invalid_argument&) {
      result.status = ProfiniteRecovery::Status::InconsistentResidue;
      return result;
    }
    result.status = ProfiniteRecovery::Status::Ok;
    return result;
  }

  // Worst-case modulus of continuity of the spatialization on periodic
  // points of minimal period <= depth; descriptive only.
  std::vector<ContinuityRow> continuity_probe(int depth) {
    if (degree_.degree != 1) throw verraum_error("continuity probe requires degree one");
    std::vector<PeriodicPoint> pool;
    std::set<std::vector<int>> seen;
    for (int ell = 1; ell <= depth; ++ell) {
      for (const auto& x : enumerate_periodic(psi_.alphabet(), ell, capacity_)) {
        if (seen.insert(x.primitive_root()).second) pool.push_back(x);
      }
    }
    std::vector<PeriodicPoint> images;
    images.reserve(pool.size());
    for (const auto& x : pool) images.push_back(global_verraum(x));

    std::map<int, std::pair<int, int>> table;  // r_in -> (worst r_out, pairs)
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        Dyadic din = point_distance(pool[i], pool[j]);
        Dyadic dout = point_distance(images[i], images[j]);
        if (din.zero || dout.zero) continue;
        int rin = -din.log2;
        int rout = -dout.log2;
        auto [it, inserted] = table.emplace(rin, std::make_pair(rout, 1));
        if (!inserted) {
          it->second.first = std::min(it->second.first, rout);
          it->second.second += 1;
        }
      }
    }
    std::vector<ContinuityRow> rows;
    for (const auto& [rin, entry] : table) rows.push_back(ContinuityRow{rin, entry.first, entry.second});
    return rows;
  }

  PeriodicMap periodic_map(const std::vector<int>& levels) {
    PeriodicMap map;
    map.alphabet = psi_.alphabet();
    map.degree = degree_;
    for (int k : levels) map.entries.emplace(k, local_verraum(k));
    // Compatibility across comparable levels and commutation at each level.
    for (const auto& [k, table] : map.entries) {
      (void)table;
      for (const auto& [l, table2] : map.entries) {
        (void)table2;
        if (l > k && l % k == 0 && !consistency_check(k, l / k))
          throw verraum_error("periodic map failed the compatibility check");
      }
      if (!shift_commutation_check(k)) throw verraum_error("periodic map failed the commutation check");
    }
    return map;
  }

 private:
  // Conjugator recovery for an orientation-preserving automorphism, by
  // intersecting the supports of the images of two transpositions through
  // each point.
  PermutationTable recover_conjugator(const GroupAutomorphism& psi, int k, const PartnerFn& partners) {
    int n = alphabet_size();
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), capacity_);
    std::map<std::pair<std::uint64_t, std::uint64_t>, PermutationTable> transposition_images;
    auto alpha_of_transposition = [&](std::uint64_t a, std::uint64_t b) -> const PermutationTable& {
      auto key = std::minmax(a, b);
      auto it = transposition_images.find(key);
      if (it == transposition_images.end()) {
        PermutationTable t = per_transposition(n, k, key.first, key.second, capacity_);
        it = transposition_images.emplace(key, psi_on_per(psi, t, capacity_)).first;
      }
      return it->second;
    };

    auto support_of_transposition = [&](const PermutationTable& t) -> std::pair<std::uint64_t, std::uint64_t> {
      std::uint64_t a = count, b = count;
      for (std::uint64_t i = 0; i < t.images.size(); ++i) {
        if (t.images[i] == i) continue;
        if (a == count) {
          a = i;
        } else if (b == count) {
          b = i;
        } else {
          throw verraum_error("not-conjugation: image of a transposition has support larger than 2");
        }
      }
      if (b == count) throw verraum_error("not-conjugation: image of a transposition is not a transposition");
      if (t.images[a] != b || t.images[b] != a)
        throw verraum_error("not-conjugation: image of a transposition is not a transposition");
      return {a, b};
    };

    std::vector<std::uint32_t> h_inverse(count);
    std::vector<bool> used(count, false);
    for (std::uint64_t i = 0; i < count; ++i) {
      auto [j1, j2] = partners(i, count);
      if (j1 == i || j2 == i || j1 == j2) throw std::invalid_argument("partner points must be distinct from the base point");
      auto s1 = support_of_transposition(alpha_of_transposition(i, j1));
      auto s2 = support_of_transposition(alpha_of_transposition(i, j2));
      std::uint64_t image = count;
      int matches = 0;
      for (std::uint64_t candidate : {s1.first, s1.second}) {
        if (candidate == s2.first || candidate == s2.second) {
          image = candidate;
          ++matches;
        }
      }
      if (matches != 1) throw verraum_error("not-conjugation: transposition supports do not meet in a single point");
      if (used[image]) throw verraum_error("not-conjugation: recovered map is not injective");
      used[image] = true;
      h_inverse[i] = static_cast<std::uint32_t>(image);
    }
    PermutationTable h = PermutationTable(n, k, std::move(h_inverse)).inverse();

    // Verify the defining identity on the transposition generators (mostly
    // cached) and on seeded random permutations.
    PermutationTable h_inv = h.inverse();
    auto verify_one = [&](const PermutationTable& pi, const PermutationTable& alpha_pi) {
      PermutationTable expected = h_inv.compose_after(pi.compose_after(h));
      if (!(alpha_pi == expected)) throw verraum_error("verification-failed: recovered conjugator does not satisfy the identity");
    };
    for (std::uint64_t i = 0; i + 1 < count; ++i) {
      verify_one(per_transposition(n, k, i, i + 1, capacity_), alpha_of_transposition(i, i + 1));
    }
    std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(k)));
    for (int trial = 0; trial < 20; ++trial) {
      PermutationTable pi = PermutationTable::identity(n, k, capacity_);
      std::shuffle(pi.images.begin(), pi.images.end(), rng);
      pi = PermutationTable(n, k, pi.images);
      verify_one(pi, psi_on_per(psi, pi, capacity_));
    }
    return h;
  }

  // Direct verification of the defining identity for `psi` itself, used
  // after the orientation-reversing post-composition.
  void verify_identity(const GroupAutomorphism& psi, int k, const PermutationTable& h) {
    int n = alphabet_size();
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), capacity_);
    PermutationTable h_inv = h.inverse();
    std::mt19937_64 rng(seed_ ^ (0xda942042e4dd58b5ull + static_cast<std::uint64_t>(k)));
    for (int trial = 0; trial < 20; ++trial) {
      PermutationTable pi = PermutationTable::identity(n, k, capacity_);
      std::shuffle(pi.images.begin(), pi.images.end(), rng);
      pi = PermutationTable(n, k, pi.images);
      PermutationTable lhs = psi_on_per(psi, pi, capacity_);
      if (!(lhs == h_inv.compose_after(pi.compose_after(h))))
        throw verraum_error("verification-failed: orientation-reversing table does not satisfy the identity");
    }
    for (std::uint64_t i = 0; i + 1 < count; ++i) {
      PermutationTable t = per_transposition(n, k, i, i + 1, capacity_);
      if (!(psi_on_per(psi, t, capacity_) == h_inv.compose_after(t.compose_after(h))))
        throw verraum_error("verification-failed: orientation-reversing table does not satisfy the identity");
    }
  }

  GroupAutomorphism psi_;
  GroupAutomorphism effective_;
  DegreeInfo degree_;
  std::uint64_t capacity_;
  std::uint64_t seed_;
  std::map<int, PermutationTable> cache_;
};

// h_{Psi . Upsilon} = h_Upsilon . h_Psi: the spatialization reverses
// composition order when permutations compose right to left (checked for
// both orders; the identity that holds exactly is the recorded one).
struct ComposeCheck {
  bool recorded_convention_holds = false;  // h_comp == h_upsilon . h_psi
  bool flipped_convention_holds = false;   // h_comp == h_psi . h_upsilon
};

inline ComposeCheck verraum_compose_check(const GroupAutomorphism& psi, const GroupAutomorphism& upsilon, int k,
                                          std::uint64_t capacity = kDefaultCapacity, std::uint64_t seed = 2024) {
  VerraumEngine e_psi(psi, capacity, seed);
  VerraumEngine e_upsilon(upsilon, capacity, seed);
  VerraumEngine e_comp(compose_autos(psi, upsilon), capacity, seed);
  const PermutationTable& h_psi = e_psi.local_verraum(k);
  const PermutationTable& h_upsilon = e_upsilon.local_verraum(k);
  const PermutationTable& h_comp = e_comp.local_verraum(k);
  ComposeCheck out;
  out.recorded_convention_holds = h_comp == h_upsilon.compose_after(h_psi);
  out.flipped_convention_holds = h_comp == h_psi.compose_after(h_upsilon);
  return out;
}

// Cycle type of rho_k(phi).
inline std::vector<int> orbit_structure(const GroupElement& phi, int k, std::uint64_t capacity = kDefaultCapacity) {
  return rho(phi, k, capacity).cycle_type();
}

// ---------------------------------------------------------------------------
// The exceptional fixed-point swap on the 2-shift cannot be a
// spatialization: conjugating the 4-cycle block permutation by the
// fixed-point exchange forces the pattern 1111, while both legal images of
// the test point avoid it.

struct ExceptionalSwapReport {
  int k = 0;
  PeriodicPoint test_point;
  PeriodicPoint swap_side;     // complement . phi . complement applied to z
  PeriodicPoint legal_image_a; // phi(z)
  PeriodicPoint legal_image_b; // phi(sigma z)
  bool swap_side_contains_1111 = false;
  bool legal_orbits_contain_1111 = false;
  bool swap_side_in_legal_orbits = false;
  bool contradiction_confirmed = false;
};

inline bool contains_pattern(const PeriodicPoint& x, const std::vector<int>& pattern) {
  for (int start = 0; start < x.period(); ++start) {
    bool match = true;
    for (std::size_t t = 0; t < pattern.size() && match; ++t)
      match = x.symbol(start + static_cast<long long>(t)) == pattern[static_cast<std::size_t>(t)];
    if (match) return true;
  }
  return false;
}

inline ExceptionalSwapReport exceptional_swap_check(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Alphabet two(2);
  ExceptionalSwapReport report;
  report.k = k;

  // The 4-cycle 11 -> 00 -> 01 -> 10 on level-2 words.
  BlockCode phi = embed_simple(SimpleAuto(two, 2, {1, 2, 3, 0}));
  // The only radius-0 automorphism exchanging the two fixed points.
  BlockCode complement = embed_simple(SimpleAuto(two, 1, {1, 0}));

  // z = periodization of 0^{2k+1} 1 0^{2k}.
  std::vector<int> block(static_cast<std::size_t>(4 * k + 2), 0);
  block[static_cast<std::size_t>(2 * k + 1)] = 1;
  PeriodicPoint z(two, block);
  report.test_point = z;

  if (!(apply(complement, PeriodicPoint(two, {0})) == PeriodicPoint(two, {1})))
    throw std::logic_error("complement must exchange the two fixed points");

  report.swap_side = apply(complement, apply(phi, apply(complement, z)));
  report.legal_image_a = apply(phi, z);
  report.legal_image_b = apply(phi, shift_point(z, 1));

  std::vector<int> ones{1, 1, 1, 1};
  report.swap_side_contains_1111 = contains_pattern(report.swap_side, ones);
  report.legal_orbits_contain_1111 =
      contains_pattern(report.legal_image_a, ones) || contains_pattern(report.legal_image_b, ones);
  report.swap_side_in_legal_orbits = report.swap_side.orbit_key() == report.legal_image_a.orbit_key() ||
                                     report.swap_side.orbit_key() == report.legal_image_b.orbit_key();
  report.contradiction_confirmed = report.swap_side_contains_1111 && !report.legal_orbits_contain_1111 &&
                                   !report.swap_side_in_legal_orbits;
  return report;
}

}  // namespace stabaut
