#include "acceptance_core.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "stabaut/io.hpp"
#include "stabaut/subshift.hpp"
#include "stabaut/two_track.hpp"
#include "stabaut/verraum.hpp"

namespace stabaut::acceptance {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& message) {
    if (!condition) {
      if (!ok) detail << "; ";
      ok = false;
      detail << message;
    }
  }
};

PermutationTable random_permutation(int n, int period, std::mt19937_64& rng) {
  PermutationTable p = PermutationTable::identity(n, period);
  std::shuffle(p.images.begin(), p.images.end(), rng);
  return PermutationTable(n, period, p.images);
}

SimpleAuto random_simple(Alphabet a, int level, std::mt19937_64& rng) {
  SimpleAuto s = SimpleAuto::identity(a, level);
  std::shuffle(s.table.begin(), s.table.end(), rng);
  return SimpleAuto(a, level, s.table);
}

std::vector<int> random_perm_vector(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Mixed words at level k: shift powers, simple automorphisms at divisor
// levels, conjugates, and random products; includes non-inert words.
std::vector<GroupElement> mixed_words(int n, int k, int count, std::mt19937_64& rng) {
  Alphabet a(n);
  std::vector<int> divisors;
  for (int d = 1; d <= k; ++d)
    if (k % d == 0) divisors.push_back(d);
  std::vector<GroupElement> words;
  words.push_back(GroupElement::shift(a, 1).with_level(k));   // non-inert
  words.push_back(GroupElement::shift(a, -2).with_level(k));  // non-inert
  words.push_back(GroupElement::simple(SimpleAuto::identity(a, k)));
  while (static_cast<int>(words.size()) < count) {
    int len = 1 + static_cast<int>(rng() % 3);
    std::vector<GroupFactor> factors;
    for (int i = 0; i < len; ++i) {
      switch (rng() % 3) {
        case 0:
          factors.push_back(GroupFactor::shift(static_cast<long long>(rng() % 5) - 2));
          break;
        default:
          factors.push_back(GroupFactor::simple(random_simple(a, divisors[rng() % divisors.size()], rng)));
          break;
      }
    }
    words.emplace_back(a, std::move(factors), k);
  }
  return words;
}

// The oracle for inner recovery: rho_k of the conjugator, re-declared when
// the engine's degree makes levels admissible that the declaration missed.
PermutationTable inner_oracle(const GroupElement& gamma, int k) {
  if (k % gamma.declared_level() == 0) return rho(gamma, k);
  GroupElement redeclared = gamma.with_level(std::gcd(gamma.declared_level(), k));
  if (!redeclared.verify_level()) throw std::logic_error("conjugator does not commute at the reduced level");
  return rho(redeclared, k);
}

using Clock = std::chrono::steady_clock;

CriterionResult run_criterion(int number, const std::string& name, const std::function<void(Check&)>& body) {
  CriterionResult result;
  result.number = number;
  result.name = name;
  Check check;
  auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  result.passed = check.ok;
  result.detail = check.detail.str();
  return result;
}

// ---------------------------------------------------------------------------

void criterion_section_maps(Check& check, std::uint64_t seed) {
  // Exhaustive on Sym(Per_2(sigma_2)).
  std::vector<std::uint32_t> base{0, 1, 2, 3};
  int cases = 0;
  do {
    PermutationTable pi(2, 2, base);
    check.expect(restrict_to_per(embed_simple(nu_k(pi)), 2) == pi, "rho_2 . nu_2 != id on Sym(Per_2)");
    ++cases;
  } while (std::next_permutation(base.begin(), base.end()));
  check.expect(cases == 24, "expected 24 permutations of Per_2");

  std::mt19937_64 rng(seed);
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}}) {
    for (int trial = 0; trial < 200; ++trial) {
      PermutationTable pi = random_permutation(n, k, rng);
      if (!(restrict_to_per(embed_simple(nu_k(pi)), k) == pi)) {
        check.expect(false, "rho_k . nu_k != id at n=" + std::to_string(n) + " k=" + std::to_string(k));
        return;
      }
    }
  }
}

void criterion_inner_recovery(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  for (int n : {2, 3}) {
    Alphabet a(n);
    std::vector<GroupElement> conjugators = {
        GroupElement::shift(a, 1),
        GroupElement::shift(a, 2),
        GroupElement::simple(random_simple(a, 2, rng)),
        GroupElement::simple(random_simple(a, n == 2 ? 3 : 2, rng)),
        GroupElement::shift(a, -1).then(GroupElement::simple(random_simple(a, 2, rng))),
        GroupElement::simple(random_simple(a, 1, rng)).then(GroupElement::shift(a, 1)),
    };
    int bound = n == 2 ? 6 : 5;
    for (const auto& gamma : conjugators) {
      VerraumEngine engine(GroupAutomorphism::inner(gamma));
      for (int k : engine.admissible_levels(bound)) {
        if (!(engine.local_verraum(k) == inner_oracle(gamma, k))) {
          check.expect(false, "recovered table != rho_k(gamma) at n=" + std::to_string(n) + " k=" + std::to_string(k));
          return;
        }
      }
    }
  }
}

void criterion_profinite_recovery(Check& check, std::uint64_t) {
  Alphabet a(2);
  auto integer5 = ProfiniteInteger::from_integer(5);
  auto table = ProfiniteInteger::from_residues({{1, 0}, {2, 1}, {3, 0}, {4, 3}, {5, 0}, {6, 3}});
  for (const auto& residues : {integer5, table}) {
    VerraumEngine engine(GroupAutomorphism::profinite(a, residues));
    for (int k = 3; k <= 6; ++k) {
      PermutationTable expected = restrict_to_per(shift_power(a, residues.residue(k)), k);
      check.expect(engine.local_verraum(k) == expected, "local table != rho_k(sigma^{a_k}) at k=" + std::to_string(k));
    }
    ProfiniteRecovery rec = engine.profinite_recovery(6);
    check.expect(rec.ok(), "profinite recovery failed");
    if (rec.ok()) {
      for (int m = 1; m <= 6; ++m) {
        check.expect(rec.value.residue(m) == residues.residue(m),
                     "recovered residue differs at modulus " + std::to_string(m));
      }
    }
  }
}

void criterion_compatibility(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  Alphabet a(2);
  std::vector<GroupAutomorphism> psis = {
      GroupAutomorphism::inner(GroupElement::simple(random_simple(a, 2, rng))),
      GroupAutomorphism::inner(GroupElement::shift(a, 1)),
      GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(5)),
      GroupAutomorphism::reflection(a),
      GroupAutomorphism::composite({GroupAutomorphism::reflection(a),
                                    GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(3))}),
  };
  for (const auto& psi : psis) {
    VerraumEngine engine(psi);
    std::vector<int> levels = engine.admissible_levels(8);
    for (int k : levels) {
      if (!engine.shift_commutation_check(k)) {
        check.expect(false, "shift commutation failed for " + psi.describe() + " at k=" + std::to_string(k));
        return;
      }
      for (int l : levels) {
        if (l > k && l % k == 0 && !engine.consistency_check(k, l / k)) {
          check.expect(false, "consistency failed for " + psi.describe() + " at (" + std::to_string(k) + "," +
                                  std::to_string(l) + ")");
          return;
        }
      }
    }
  }
}

void criterion_defect(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 3);
  for (int n : {2, 3}) {
    Alphabet a(n);
    std::vector<GroupAutomorphism> psis = {
        GroupAutomorphism::inner(GroupElement::shift(a, 1)),
        GroupAutomorphism::inner(GroupElement::simple(random_simple(a, 2, rng))),
        GroupAutomorphism::reflection(a),
        GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(7)),
        GroupAutomorphism::composite({GroupAutomorphism::reflection(a),
                                      GroupAutomorphism::inner(GroupElement::shift(a, 1))}),
    };
    for (const auto& psi : psis) {
      DegreeInfo info = degree(psi, 8);
      for (int k = 3; k <= 8; ++k) {
        if (k % info.degree != 0) continue;
        if (defect_scan(psi, k, info.degree, seed)) {
          check.expect(false, "defective level " + std::to_string(k) + " for " + psi.describe() + " at n=" +
                                  std::to_string(n));
          return;
        }
      }
    }
  }
}

void criterion_full_group(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 4);
  Alphabet a(2);
  std::vector<GroupAutomorphism> psis = {
      GroupAutomorphism::inner(GroupElement::simple(random_simple(a, 2, rng))),
      GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(5)),
      GroupAutomorphism::reflection(a),
      GroupAutomorphism::composite({GroupAutomorphism::reflection(a),
                                    GroupAutomorphism::inner(GroupElement::shift(a, 1))}),
  };
  for (const auto& psi : psis) {
    VerraumEngine engine(psi);
    for (int k : engine.admissible_levels(6)) {
      if (!engine.full_group_conjugation_check(k, mixed_words(2, k, 30, rng))) {
        check.expect(false, "conjugation identity failed for " + psi.describe() + " at k=" + std::to_string(k));
        return;
      }
    }
  }
}

void criterion_exceptional_swap(Check& check, std::uint64_t) {
  for (int k : {2, 3}) {
    ExceptionalSwapReport report = exceptional_swap_check(k);
    check.expect(report.swap_side_contains_1111, "swap side missing 1111 at k=" + std::to_string(k));
    check.expect(!report.legal_orbits_contain_1111, "legal orbit contains 1111 at k=" + std::to_string(k));
    check.expect(report.contradiction_confirmed, "contradiction not confirmed at k=" + std::to_string(k));
  }
}

void criterion_centralizers(Check& check, std::uint64_t) {
  // Level-2 simple generators restricted to Per_4(sigma_2).
  PermutationTable g1 = restrict_to_per(embed_simple(SimpleAuto::transposition(Alphabet(2), 2, 0, 1)), 4);
  PermutationTable g2 = restrict_to_per(embed_simple(SimpleAuto(Alphabet(2), 2, {1, 2, 3, 0})), 4);
  auto z = centralizer_in_sym({g1, g2});
  PermutationTable sigma_sq = restrict_to_per(shift_power(Alphabet(2), 2), 4);
  check.expect(z.size() == 2, "centralizer size != 2 over Per_4");
  if (z.size() == 2) {
    check.expect((z[0].is_identity() && z[1] == sigma_sq) || (z[1].is_identity() && z[0] == sigma_sq),
                 "centralizer over Per_4 is not {id, rho_4(sigma^2)}");
  }

  // Full symmetric images have trivial centralizer.
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    PermutationTable t = per_transposition(n, k, 0, 1);
    PermutationTable c = PermutationTable::identity(n, k);
    std::rotate(c.images.begin(), c.images.begin() + 1, c.images.end());
    c = PermutationTable(n, k, c.images);
    (void)count;
    auto zz = centralizer_in_sym({restrict_to_per(embed_simple(nu_k(t)), k), restrict_to_per(embed_simple(nu_k(c)), k)});
    check.expect(zz.size() == 1 && zz[0].is_identity(),
                 "full-Sym centralizer not trivial at n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

std::vector<Subshift> galois_corpus() {
  auto p2 = [](std::vector<int> b) { return PeriodicPoint(Alphabet(2), std::move(b)); };
  auto p3 = [](std::vector<int> b) { return PeriodicPoint(Alphabet(3), std::move(b)); };
  return {
      Subshift::finite(Alphabet(2), 1, {p2({0})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 0, 1, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0}), p2({0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 1, 1}), p2({1})}),
      Subshift::sft_everywhere(Alphabet(2), {{1, 1}}),
      Subshift::sft_everywhere(Alphabet(2), {{0, 0}}),
      Subshift::sft_everywhere(Alphabet(2), {{1, 1, 1}}),
      Subshift::full_shift(Alphabet(2)),
      Subshift::finite(Alphabet(3), 1, {p3({0})}),
      Subshift::finite(Alphabet(3), 1, {p3({0, 1, 2})}),
      Subshift::finite(Alphabet(3), 1, {p3({0, 1})}),
      Subshift::finite(Alphabet(3), 1, {p3({0}), p3({1}), p3({2})}),
      Subshift::finite(Alphabet(3), 1, {p3({0, 0, 1, 2})}),
      Subshift::sft_everywhere(Alphabet(3), {{1, 1}}),
      Subshift::sft_everywhere(Alphabet(3), {{1, 1}, {2, 2}}),
      Subshift::sft_everywhere(Alphabet(3), {{2}}),
      Subshift::sft_everywhere(Alphabet(3), {{0, 0}, {1, 1}, {2, 2}}),
      Subshift::full_shift(Alphabet(3)),
  };
}

void criterion_galois(Check& check, std::uint64_t) {
  const int cutoff = 6;
  std::vector<Subshift> corpus = galois_corpus();
  check.expect(corpus.size() == 20, "corpus size != 20");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Subshift& y = corpus[i];
    Alphabet a = y.alphabet();
    // Word transpositions tau_{va,vb} up to length cutoff+1.  For
    // sigma-invariant Y membership is phase independent, so phase-0
    // members with position-free forbidden words realize Fix(Stp(Y)).
    std::vector<PhasedWordPermutation> members;
    for (int level = 1; level <= cutoff + 1; ++level) {
      std::uint64_t prefixes = checked_pow(static_cast<std::uint64_t>(a.size), static_cast<std::uint64_t>(level - 1));
      for (std::uint64_t v = 0; v < prefixes; ++v) {
        for (int s1 = 0; s1 < a.size; ++s1) {
          for (int s2 = s1 + 1; s2 < a.size; ++s2) {
            SimpleAuto tau = SimpleAuto::transposition(a, level, v * a.size + s1, v * a.size + s2);
            PhasedWordPermutation member{tau, 0};
            if (stp_contains_phased(y, member)) members.push_back(member);
          }
        }
      }
    }
    std::vector<ForbiddenWord> forbidden;
    for (const auto& m : members) {
      for (std::size_t w = 0; w < m.tau.table.size(); ++w) {
        if (m.tau.table[w] == static_cast<int>(w)) continue;
        forbidden.push_back(ForbiddenWord{index_to_word(w, a.size, m.tau.level), 0, 1});
      }
    }
    Subshift fixed = Subshift::sft(a, 1, std::move(forbidden));
    // Y <= Fix(Stp(Y)) and language equality at the cutoff.
    for (int j = 1; j <= cutoff; ++j) {
      auto ly = y.language(j);
      auto lf = fixed.language(j);
      if (!std::includes(lf.begin(), lf.end(), ly.begin(), ly.end())) {
        check.expect(false, "Y not contained in Fix(Stp(Y)) for corpus entry " + std::to_string(i));
        return;
      }
    }
    if (!languages_agree(fixed, y, cutoff)) {
      check.expect(false, "Fix(Stp(Y)) != Y at cutoff for corpus entry " + std::to_string(i));
      return;
    }
  }
}

void criterion_stp_continuity(Check& check, std::uint64_t) {
  struct Case {
    Subshift limit;
    GroupElement phi;
  };
  Subshift golden = Subshift::sft_everywhere(Alphabet(2), {{1, 1}});
  Subshift no00 = Subshift::sft_everywhere(Alphabet(2), {{0, 0}});
  Subshift golden3 = Subshift::sft_everywhere(Alphabet(3), {{1, 1}});
  std::vector<Case> cases;
  // Stabilizing gadgets (the forbidden word appears in the trigger).
  cases.push_back({golden, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 3, 6, 7))});   // 110<->111
  cases.push_back({golden, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 4, 12, 13))}); // 1100<->1101
  cases.push_back({no00, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 3, 0, 1))});     // 000<->001
  cases.push_back({golden3, GroupElement::simple(SimpleAuto::transposition(Alphabet(3), 2, 4, 5))});  // 11<->12
  // Non-members.
  cases.push_back({golden, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 2, 0, 1))});
  cases.push_back({no00, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 2, 2, 3))});
  cases.push_back({golden3, GroupElement::simple(SimpleAuto::transposition(Alphabet(3), 1, 0, 1))});
  cases.push_back({golden, GroupElement::shift(Alphabet(2), 1)});
  int counted = 0;
  for (const auto& c : cases) {
    std::vector<Subshift> sequence;
    for (int m = 1; m <= 7; ++m) sequence.push_back(finite_approximations(c.limit, m));
    StpContinuityResult r = stp_continuity_check(sequence, c.limit, c.phi);
    check.expect(r.agreement_index < static_cast<int>(sequence.size()),
                 "languages never agreed along the sequence");
    check.expect(r.stabilization_index <= r.agreement_index, "stabilization after language agreement");
    ++counted;
  }
  // Constant sequences stabilize at the start.
  for (const Subshift& y : {golden, no00}) {
    std::vector<Subshift> constant(4, y);
    StpContinuityResult r =
        stp_continuity_check(constant, y, GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 3, 6, 7)));
    check.expect(r.stabilization_index == 0, "constant sequence did not stabilize immediately");
    check.expect(r.stabilization_index <= r.agreement_index, "stabilization after language agreement");
    ++counted;
  }
  check.expect(counted == 10, "expected 10 sequences");
}

void criterion_chain_recurrence(Check& check, std::uint64_t) {
  std::vector<Subshift> cr_corpus = {
      Subshift::full_shift(Alphabet(2)),
      Subshift::sft_everywhere(Alphabet(2), {{1, 1}}),
      Subshift::sft_everywhere(Alphabet(2), {{0, 0}}),
      Subshift::sft_everywhere(Alphabet(2), {{1, 1, 1}}),
      Subshift::sft_everywhere(Alphabet(3), {{1, 1}, {2, 2}}),
      Subshift::sft_everywhere(Alphabet(3), {{2}}),
  };
  for (std::size_t i = 0; i < cr_corpus.size(); ++i) {
    const Subshift& y = cr_corpus[i];
    check.expect(is_chain_recurrent(y), "corpus SFT " + std::to_string(i) + " not chain recurrent");
    for (int m = 2; m <= 6; ++m) {
      if (!is_chain_recurrent(markov_approximation(y, m))) {
        check.expect(false, "Markov approximation not chain recurrent at m=" + std::to_string(m));
        return;
      }
    }
    int previous = 0;
    for (int m = 1; m <= 6; ++m) {
      Subshift qm = finite_approximations(y, m);
      if (qm.points().empty()) continue;
      int index = first_language_difference(qm, y, 8).value_or(9);
      check.expect(index >= previous, "approximation metric increased at m=" + std::to_string(m));
      previous = index;
    }
  }
  // The heteroclinic example: language {00, 01, 11} at length 2.
  Subshift hetero = Subshift::sft_everywhere(Alphabet(2), {{1, 0}});
  check.expect(!is_chain_recurrent(hetero), "heteroclinic SFT detected as chain recurrent");
}

void criterion_verraum_subshifts(Check& check, std::uint64_t seed) {
  auto p2 = [](std::vector<int> b) { return PeriodicPoint(Alphabet(2), std::move(b)); };
  std::vector<Subshift> finite_corpus = {
      Subshift::finite(Alphabet(2), 1, {p2({0})}),
      Subshift::finite(Alphabet(2), 1, {p2({1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 1, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 0, 0, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0, 0, 1, 1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0}), p2({1})}),
      Subshift::finite(Alphabet(2), 1, {p2({0}), p2({0, 1})}),
      Subshift::finite(Alphabet(2), 2, {p2({0, 1, 1})}),
  };
  check.expect(finite_corpus.size() == 10, "finite corpus size != 10");

  // The kernel direction: N(a) fixes every finite subshift.
  for (const auto& residues :
       {ProfiniteInteger::from_integer(5), ProfiniteInteger::from_residues({{1, 0}, {2, 1}, {3, 0}, {4, 3}, {5, 0}, {6, 3}})}) {
    VerraumEngine engine(GroupAutomorphism::profinite(Alphabet(2), residues));
    for (const auto& q : finite_corpus) {
      Subshift image = verraum_subshift(engine, q, 4).image;
      if (!(image == Subshift::finite(q.alphabet(), image.step(), q.points()))) {
        check.expect(false, "N(a) moved a finite subshift");
        return;
      }
    }
  }

  // Inner automorphisms push subshifts to the conjugator image.
  std::mt19937_64 rng(seed + 5);
  std::vector<GroupElement> gammas = {
      GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 1, 0, 1)),
      GroupElement::shift(Alphabet(2), 1),
      GroupElement::simple(random_simple(Alphabet(2), 1, rng)).then(GroupElement::shift(Alphabet(2), -1)),
  };
  for (const auto& gamma : gammas) {
    VerraumEngine engine(GroupAutomorphism::inner(gamma));
    for (const auto& q : finite_corpus) {
      Subshift image = verraum_subshift(engine, q, 4).image;
      std::vector<PeriodicPoint> expected;
      for (const auto& x : q.points()) expected.push_back(apply_element(gamma.with_level(1), x));
      Subshift direct = Subshift::finite(q.alphabet(), image.step(), expected);
      if (!(image == direct)) {
        check.expect(false, "Inner image != gamma(Y)");
        return;
      }
    }
  }

  // Stabilizer transport on the sampled family.
  std::vector<GroupElement> family;
  for (const auto& m : galois_family(Alphabet(2), 3)) family.push_back(m.as_element());
  std::vector<GroupAutomorphism> psis = {
      GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(2)),
      GroupAutomorphism::inner(GroupElement::simple(SimpleAuto::transposition(Alphabet(2), 1, 0, 1))),
      GroupAutomorphism::reflection(Alphabet(2)),
  };
  for (const auto& psi : psis) {
    VerraumEngine engine(psi);
    for (const auto& q : finite_corpus) {
      if (!stp_transport_check(engine, q, family)) {
        check.expect(false, "Stp transport failed for " + psi.describe());
        return;
      }
    }
  }
}

void criterion_freeness(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 6);
  Alphabet a(2);
  std::vector<GroupAutomorphism> psis = {
      GroupAutomorphism::inner(GroupElement::simple(random_simple(a, 2, rng))),
      GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(3)),
      GroupAutomorphism::reflection(a),
      GroupAutomorphism::composite({GroupAutomorphism::reflection(a),
                                    GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(1))}),
  };
  int triples = 0;
  for (const auto& psi : psis) {
    VerraumEngine engine(psi);
    for (int k : engine.admissible_levels(4)) {
      for (const auto& w : mixed_words(2, k, 3, rng)) {
        auto before = orbit_structure(w, k);
        auto after = orbit_structure(apply_psi(psi, w), k);
        if (before != after) {
          check.expect(false, "cycle type changed under " + psi.describe());
          return;
        }
        ++triples;
      }
    }
  }
  check.expect(triples >= 20, "expected at least 20 triples, got " + std::to_string(triples));
}

void criterion_two_track(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 7);
  // Twenty random commutator identities at n=5.
  for (int trial = 0; trial < 20; ++trial) {
    int len1 = 1 + static_cast<int>(rng() % 2);
    int len2 = 1 + static_cast<int>(rng() % 2);
    std::vector<int> w1(static_cast<std::size_t>(len1)), w2(static_cast<std::size_t>(len2));
    for (int& c : w1) c = static_cast<int>(rng() % 5);
    for (int& c : w2) c = static_cast<int>(rng() % 5);
    if (!commutator_identity_check(Word(Alphabet(5), w1), Word(Alphabet(5), w2), random_perm_vector(5, rng),
                                   random_perm_vector(5, rng))) {
      check.expect(false, "commutator identity failed at trial " + std::to_string(trial));
      return;
    }
  }

  // gamma = trackswap . sigma, exactly.
  check.expect(equals(gamma_code(5), compose(trackswap(5), base_shift_on_pairs(5))),
               "gamma != trackswap . sigma");

  // All 625 period-2 pair points.
  int maximized = 0;
  for (const auto& x : enumerate_periodic(Alphabet(25), 2)) {
    MaximizeResult r = maximize_top_period(TwoTrackPoint::from_pair(x, 5));
    if (r.point.top.minimal_period() != r.point.pair_point().minimal_period()) {
      check.expect(false, "maximization failed on a period-2 point");
      return;
    }
    ++maximized;
  }
  check.expect(maximized == 625, "expected 625 period-2 points");

  // 200 random period-3 points.
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> block(3);
    for (int& c : block) c = static_cast<int>(rng() % 25);
    MaximizeResult r = maximize_top_period(TwoTrackPoint::from_pair(PeriodicPoint(Alphabet(25), block), 5));
    if (r.point.top.minimal_period() != r.point.pair_point().minimal_period()) {
      check.expect(false, "maximization failed on a period-3 point");
      return;
    }
  }

  check.expect(orbit_separation_check(5, 1), "orbit separation failed at k=1");
  check.expect(orbit_separation_check(5, 2), "orbit separation failed at k=2");
}

void criterion_homomorphism(Check& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 8);
  Alphabet a(2);
  auto flip = GroupAutomorphism::inner(GroupElement::simple(SimpleAuto::transposition(a, 1, 0, 1)));
  auto shift1 = GroupAutomorphism::inner(GroupElement::shift(a, 1));
  auto n1 = GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(1));
  auto n5 = GroupAutomorphism::profinite(a, ProfiniteInteger::from_integer(5));
  auto refl = GroupAutomorphism::reflection(a);
  auto identity = GroupAutomorphism::inner(GroupElement::identity(a));
  std::vector<std::pair<GroupAutomorphism, GroupAutomorphism>> pairs = {
      {n1, n1}, {n1, n5}, {flip, n5},   {flip, shift1}, {shift1, flip},
      {refl, refl}, {refl, flip}, {flip, identity}, {identity, n5}, {shift1, n1},
  };
  (void)rng;
  check.expect(pairs.size() == 10, "expected 10 pairs");
  for (int k : {3, 4}) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      ComposeCheck result = verraum_compose_check(pairs[i].first, pairs[i].second, k);
      if (!result.recorded_convention_holds) {
        check.expect(false, "composition table mismatch for pair " + std::to_string(i) + " at k=" + std::to_string(k));
        return;
      }
    }
  }
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(run_criterion(1, "section maps rho_k . nu_k = id",
                                  [&](Check& c) { criterion_section_maps(c, seed); }));
  results.push_back(run_criterion(2, "spatialization recovery, inner",
                                  [&](Check& c) { criterion_inner_recovery(c, seed); }));
  results.push_back(run_criterion(3, "spatialization recovery, profinite",
                                  [&](Check& c) { criterion_profinite_recovery(c, seed); }));
  results.push_back(run_criterion(4, "compatibility and shift commutation",
                                  [&](Check& c) { criterion_compatibility(c, seed); }));
  results.push_back(run_criterion(5, "defect emptiness", [&](Check& c) { criterion_defect(c, seed); }));
  results.push_back(run_criterion(6, "full-group conjugation", [&](Check& c) { criterion_full_group(c, seed); }));
  results.push_back(run_criterion(7, "exceptional fixed-point swap",
                                  [&](Check& c) { criterion_exceptional_swap(c, seed); }));
  results.push_back(run_criterion(8, "centralizer facts", [&](Check& c) { criterion_centralizers(c, seed); }));
  results.push_back(run_criterion(9, "Galois connection Fix(Stp(Y)) = Y",
                                  [&](Check& c) { criterion_galois(c, seed); }));
  results.push_back(run_criterion(10, "stabilizer continuity", [&](Check& c) { criterion_stp_continuity(c, seed); }));
  results.push_back(run_criterion(11, "chain recurrence closure",
                                  [&](Check& c) { criterion_chain_recurrence(c, seed); }));
  results.push_back(run_criterion(12, "spatialization on subshifts",
                                  [&](Check& c) { criterion_verraum_subshifts(c, seed); }));
  results.push_back(run_criterion(13, "freeness invariant", [&](Check& c) { criterion_freeness(c, seed); }));
  results.push_back(run_criterion(14, "two-track suite", [&](Check& c) { criterion_two_track(c, seed); }));
  results.push_back(run_criterion(15, "spatialization composes", [&](Check& c) { criterion_homomorphism(c, seed); }));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace stabaut::acceptance
