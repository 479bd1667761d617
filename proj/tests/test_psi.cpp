#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stabaut/psi.hpp"

using namespace stabaut;

namespace {

GroupAutomorphism inner_shift(int n, long long j) {
  return GroupAutomorphism::inner(GroupElement::shift(Alphabet(n), j));
}

SimpleAuto sample_simple(int n, int level, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SimpleAuto s = SimpleAuto::identity(Alphabet(n), level);
  std::shuffle(s.table.begin(), s.table.end(), rng);
  return SimpleAuto(Alphabet(n), level, s.table);
}

}  // namespace

TEST_CASE("profinite integers validate compatibility") {
  auto a = ProfiniteInteger::from_residues({{1, 0}, {2, 1}, {4, 3}, {8, 3}});
  REQUIRE(a.residue(4) == 3);
  REQUIRE(a.residue(2) == 1);
  REQUIRE_THROWS_AS(ProfiniteInteger::from_residues({{2, 1}, {4, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(a.residue(3), std::invalid_argument);

  auto z = ProfiniteInteger::from_integer(-5);
  REQUIRE(z.residue(3) == 1);
  REQUIRE(z.residue(4) == 3);
}

TEST_CASE("profinite automorphisms fix level-1 elements") {
  auto psi = GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(5));
  GroupElement sigma = GroupElement::shift(Alphabet(2), 1);
  REQUIRE(equals(apply_psi(psi, sigma).evaluate(), sigma.evaluate()));

  // A symbol permutation is level 1; conjugating by sigma^{a_1} is a no-op.
  SimpleAuto tau = SimpleAuto::transposition(Alphabet(2), 1, 0, 1);
  GroupElement phi = GroupElement::simple(tau);
  REQUIRE(equals(apply_psi(psi, phi).evaluate(), phi.evaluate()));
}

TEST_CASE("inner application matches direct composition") {
  GroupAutomorphism psi = inner_shift(2, 1);
  SimpleAuto tau = sample_simple(2, 2, 23);
  GroupElement phi = GroupElement::simple(tau);
  GroupElement image = apply_psi(psi, phi);
  BlockCode expected = compose(shift_power(Alphabet(2), -1),
                               compose(embed_simple(tau), shift_power(Alphabet(2), 1)));
  REQUIRE(equals(image.evaluate(), expected));
}

TEST_CASE("reflection sends sigma to its inverse") {
  auto psi = GroupAutomorphism::reflection(Alphabet(3));
  GroupElement image = apply_psi(psi, GroupElement::shift(Alphabet(3), 1));
  REQUIRE(as_pure_shift(image.evaluate()).value() == -1);
}

TEST_CASE("apply_psi respects composition of elements") {
  std::vector<GroupAutomorphism> psis = {
      inner_shift(2, 1),
      GroupAutomorphism::reflection(Alphabet(2)),
      GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(3)),
  };
  SimpleAuto tau = sample_simple(2, 2, 31);
  GroupElement a = GroupElement::simple(tau);
  GroupElement b = GroupElement::shift(Alphabet(2), 2).with_level(2);
  for (const auto& psi : psis) {
    GroupElement lhs = apply_psi(psi, a.then(b));
    GroupElement rhs = apply_psi(psi, a).then(apply_psi(psi, b));
    REQUIRE(equals(lhs.evaluate(), rhs.evaluate()));
  }
}

TEST_CASE("profinite well-definedness") {
  auto a = ProfiniteInteger::from_integer(3);
  SimpleAuto tau = sample_simple(2, 2, 37);
  GroupElement phi = GroupElement::simple(tau);
  for (int j = 1; j * 2 <= 8; ++j) REQUIRE(check_profinite_welldefined(a, phi, 2, j));

  auto table = ProfiniteInteger::from_residues({{1, 0}, {2, 1}, {3, 2}, {4, 1}, {6, 5}, {8, 5}, {12, 5}});
  for (int j : {2, 3, 4}) REQUIRE(check_profinite_welldefined(table, phi, 2, j));

  // A deliberately incompatible table (bypassing validation) breaks the
  // identity for some element.
  auto bad = ProfiniteInteger::from_residues({{2, 1}});
  GroupElement wide = GroupElement::simple(tau).with_level(2);
  BlockCode code = wide.evaluate();
  // Conjugation by 1 vs by 0 differ on a non-sigma-commuting element.
  REQUIRE(!equals(shift_conjugate(code, 1), shift_conjugate(code, 0)));
  REQUIRE(bad.residue(2) == 1);
}

TEST_CASE("degree and orientation") {
  REQUIRE(degree(GroupAutomorphism::reflection(Alphabet(2)), 8).degree == 1);
  REQUIRE(degree(GroupAutomorphism::reflection(Alphabet(2)), 8).orientation_reversing);

  auto prof = GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(7));
  REQUIRE(degree(prof, 8).degree == 1);
  REQUIRE(!degree(prof, 8).orientation_reversing);

  // Inner by a genuinely level-2 simple automorphism has degree 2.
  SimpleAuto tau = SimpleAuto::transposition(Alphabet(2), 2, 0, 3);
  auto inner2 = GroupAutomorphism::inner(GroupElement::simple(tau));
  DegreeInfo info = degree(inner2, 8);
  REQUIRE(info.degree == 2);
  REQUIRE(!info.orientation_reversing);

  // Inner by a symbol permutation commutes with sigma: degree 1.
  SimpleAuto flip = SimpleAuto::transposition(Alphabet(2), 1, 0, 1);
  REQUIRE(degree(GroupAutomorphism::inner(GroupElement::simple(flip)), 8).degree == 1);
}

TEST_CASE("degree divisibility: Psi(sigma^m) is a shift power exactly when deg | m") {
  SimpleAuto tau = SimpleAuto::transposition(Alphabet(2), 2, 0, 3);
  auto psi = GroupAutomorphism::inner(GroupElement::simple(tau));
  for (int m = 1; m <= 8; ++m) {
    GroupElement image = apply_psi(psi, GroupElement::shift(Alphabet(2), m));
    bool is_shift = equals(image.evaluate(), shift_power(Alphabet(2), m)) ||
                    equals(image.evaluate(), shift_power(Alphabet(2), -m));
    REQUIRE(is_shift == (m % 2 == 0));
  }
}

TEST_CASE("defect scan is empty for all representable kinds") {
  std::vector<GroupAutomorphism> psis = {
      inner_shift(2, 1),
      GroupAutomorphism::inner(GroupElement::simple(sample_simple(2, 2, 41))),
      GroupAutomorphism::reflection(Alphabet(2)),
      GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(5)),
  };
  for (const auto& psi : psis) {
    DegreeInfo info = degree(psi, 6);
    for (int k = 3; k <= 6; ++k) {
      if (k % info.degree != 0) continue;
      REQUIRE(!defect_scan(psi, k, info.degree));
    }
  }
}

TEST_CASE("admissible level sets") {
  auto prof = GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(2));
  REQUIRE(i_psi(prof, 8) == std::vector<int>{3, 4, 5, 6, 7, 8});

  SimpleAuto tau = SimpleAuto::transposition(Alphabet(2), 2, 0, 3);
  auto inner2 = GroupAutomorphism::inner(GroupElement::simple(tau));
  REQUIRE(i_psi(inner2, 8) == std::vector<int>{4, 6, 8});

  REQUIRE(i_psi(GroupAutomorphism::reflection(Alphabet(2)), 4) == std::vector<int>{3, 4});
}

TEST_CASE("apply_psi preserves the declared level when the degree divides it") {
  std::vector<GroupAutomorphism> psis = {
      inner_shift(2, 1),
      GroupAutomorphism::inner(GroupElement::simple(sample_simple(2, 2, 53))),
      GroupAutomorphism::reflection(Alphabet(2)),
      GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(3)),
  };
  for (const auto& psi : psis) {
    DegreeInfo info = degree(psi, 6);
    for (int k = 2; k <= 4; ++k) {
      if (k % info.degree != 0) continue;
      GroupElement phi = GroupElement::simple(sample_simple(2, k, 59 + static_cast<std::uint64_t>(k)));
      GroupElement image = apply_psi(psi, phi);
      REQUIRE(image.declared_level() == k);
      // The image genuinely commutes with sigma^k.
      REQUIRE(image.verify_level());
    }
  }
}

TEST_CASE("composite automorphisms apply parts in order") {
  auto refl = GroupAutomorphism::reflection(Alphabet(2));
  auto prof = GroupAutomorphism::profinite(Alphabet(2), ProfiniteInteger::from_integer(1));
  auto comp = GroupAutomorphism::composite({refl, prof});
  // phi -> N(1)(Xi(phi)); on sigma this gives sigma^{-1} (reflection), then
  // conjugation fixes it.
  GroupElement image = apply_psi(comp, GroupElement::shift(Alphabet(2), 1));
  REQUIRE(as_pure_shift(image.evaluate()).value() == -1);

  // compose_autos(psi, upsilon) = psi . upsilon applies upsilon first.
  auto both = compose_autos(refl, refl);
  GroupElement fixed = apply_psi(both, GroupElement::shift(Alphabet(2), 1));
  REQUIRE(as_pure_shift(fixed.evaluate()).value() == 1);
}
