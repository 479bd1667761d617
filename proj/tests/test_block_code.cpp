#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stabaut/block_code.hpp"
#include "stabaut/perm.hpp"

using namespace stabaut;

namespace {

PeriodicPoint pt(int n, std::vector<int> b) { return PeriodicPoint(Alphabet(n), std::move(b)); }

SimpleAuto random_simple(Alphabet a, int level, std::mt19937_64& rng) {
  SimpleAuto s = SimpleAuto::identity(a, level);
  std::shuffle(s.table.begin(), s.table.end(), rng);
  return SimpleAuto(a, level, s.table);
}

}  // namespace

TEST_CASE("shift powers act as the shift") {
  BlockCode s1 = shift_power(Alphabet(2), 1);
  REQUIRE(apply(s1, pt(2, {0, 1})) == pt(2, {1, 0}));
  REQUIRE(apply(s1, pt(2, {0, 1, 1})) == pt(2, {1, 1, 0}));
  REQUIRE(equals(shift_power(Alphabet(2), 0), BlockCode::identity(Alphabet(2))));
  REQUIRE(equals(compose(shift_power(Alphabet(2), 2), shift_power(Alphabet(2), -2)),
                 BlockCode::identity(Alphabet(2))));
  REQUIRE(equals(compose(s1, s1), shift_power(Alphabet(2), 2)));
}

TEST_CASE("block permutation cycle 11 -> 00 -> 01 -> 10 on level 2") {
  // Word indices: 00=0, 01=1, 10=2, 11=3.  The cycle maps 11->00, 00->01,
  // 01->10, 10->11.
  std::vector<int> table{1, 2, 3, 0};
  BlockCode f = embed_simple(SimpleAuto(Alphabet(2), 2, table));
  REQUIRE(apply(f, pt(2, {0, 0})) == pt(2, {0, 1}));
  REQUIRE(apply(f, pt(2, {0, 1})) == pt(2, {1, 0}));
  REQUIRE(apply(f, pt(2, {1, 1})) == pt(2, {0, 0}));
  REQUIRE(verify_inverse_on_periods(f, 6));
}

TEST_CASE("identity and alignment errors") {
  BlockCode id = BlockCode::identity(Alphabet(2));
  for (const auto& x : enumerate_periodic(Alphabet(2), 4)) REQUIRE(apply(id, x) == x);
  BlockCode level2 = embed_simple(SimpleAuto::transposition(Alphabet(2), 2, 0, 1));
  REQUIRE_THROWS_AS(apply(level2, pt(2, {0, 1, 0})), alignment_error);
  REQUIRE_THROWS_AS(restrict_to_per(level2, 3), alignment_error);
}

TEST_CASE("compose applies the right factor first") {
  // f = transposition of words 00,01 at level 2; g = sigma.  compose(f, g)
  // must equal "shift, then swap the aligned block".
  BlockCode f = embed_simple(SimpleAuto::transposition(Alphabet(2), 2, 0, 1));
  BlockCode g = shift_power(Alphabet(2), 1);
  PeriodicPoint x = pt(2, {0, 0, 0, 1});
  REQUIRE(apply(compose(f, g), x) == apply(f, apply(g, x)));
}

TEST_CASE("composition of level-2 block permutations matches permutation composition") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SimpleAuto s1 = random_simple(Alphabet(2), 2, rng);
    SimpleAuto s2 = random_simple(Alphabet(2), 2, rng);
    // Oracle: compose word permutations directly, apply s2's table first.
    std::vector<int> composed(4);
    for (int w = 0; w < 4; ++w) composed[static_cast<std::size_t>(w)] = s1.table[static_cast<std::size_t>(s2.table[static_cast<std::size_t>(w)])];
    BlockCode lhs = compose(embed_simple(s1), embed_simple(s2));
    BlockCode rhs = embed_simple(SimpleAuto(Alphabet(2), 2, composed));
    REQUIRE(equals(lhs, rhs));
  }
}

TEST_CASE("equals distinguishes codes and honors the capacity guard") {
  REQUIRE(!equals(BlockCode::identity(Alphabet(2)), shift_power(Alphabet(2), 1)));
  BlockCode wide = shift_power(Alphabet(2), 12);
  BlockCode wide_with_table = compose(embed_simple(SimpleAuto::identity(Alphabet(2), 1)), wide);
  REQUIRE_THROWS_AS(equals(wide, wide_with_table, 1000), capacity_error);
  // Pure-shift comparisons bypass window enumeration entirely.
  REQUIRE(equals(wide, shift_power(Alphabet(2), 12), 10));
}

TEST_CASE("sigma^2 as level-1 code equals shift_power(2)") {
  BlockCode two_steps = compose(shift_power(Alphabet(2), 1), shift_power(Alphabet(2), 1));
  REQUIRE(equals(two_steps, shift_power(Alphabet(2), 2)));
  REQUIRE(apply(shift_power(Alphabet(2), -2), pt(2, {0, 1, 1})) ==
          apply(shift_power(Alphabet(2), 2).inverse(), pt(2, {0, 1, 1})));
}

TEST_CASE("reflection of points") {
  REQUIRE(reflect(pt(2, {0})) == pt(2, {0}));
  // (x_0, x_{-1}, x_{-2}) computed by index reversal.
  PeriodicPoint x = pt(2, {0, 1, 1});
  PeriodicPoint r = reflect(x);
  for (int i = -6; i <= 6; ++i) REQUIRE(r.symbol(i) == x.symbol(-i));
  for (const auto& y : enumerate_periodic(Alphabet(2), 3)) REQUIRE(reflect(reflect(y)) == y);
}

TEST_CASE("reflect conjugation of codes") {
  // xi . sigma . xi = sigma^{-1}, in closed form.
  BlockCode rs = reflect_conjugate(shift_power(Alphabet(2), 1));
  REQUIRE(as_pure_shift(rs).value() == -1);

  // For any code f: reflect(f(x)) = (xi f xi)(reflect(x)).
  std::mt19937_64 rng(11);
  SimpleAuto s = random_simple(Alphabet(2), 2, rng);
  BlockCode f = compose(shift_power(Alphabet(2), 1), embed_simple(s));
  BlockCode rf = reflect_conjugate(f);
  for (const auto& x : enumerate_periodic(Alphabet(2), 4)) {
    REQUIRE(apply(rf, reflect(x)) == reflect(apply(f, x)));
  }
  // Involution: reflecting twice gives back an equal code.
  REQUIRE(equals(reflect_conjugate(rf), f));
}

TEST_CASE("reflection conjugates sigma to its inverse on periodic points") {
  for (int m = 1; m <= 5; ++m) {
    for (const auto& x : enumerate_periodic(Alphabet(2), m)) {
      REQUIRE(reflect(shift_point(reflect(x), 1)) == shift_point(x, -1));
    }
  }
}

TEST_CASE("restrict_to_per tables") {
  PermutationTable rho2 = restrict_to_per(shift_power(Alphabet(2), 1), 2);
  // Per_2 order: 00, 01, 10, 11; sigma swaps 01 and 10.
  REQUIRE(rho2.images == std::vector<std::uint32_t>{0, 2, 1, 3});
  REQUIRE(restrict_to_per(BlockCode::identity(Alphabet(2)), 4).is_identity());

  PermutationTable a = restrict_to_per(shift_power(Alphabet(2), 2), 4);
  PermutationTable b = restrict_to_per(shift_power(Alphabet(2), 1), 4);
  REQUIRE(a == b.compose_after(b));
}

TEST_CASE("rho_m is a homomorphism on samples") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    for (int m : {2, 4, 6}) {
      for (int trial = 0; trial < 5; ++trial) {
        SimpleAuto s = random_simple(Alphabet(n), 2, rng);
        BlockCode f = embed_simple(s);
        BlockCode g = shift_power(Alphabet(n), 1 + trial % 2);
        PermutationTable lhs = restrict_to_per(compose(f, g), m);
        PermutationTable rhs = restrict_to_per(f, m).compose_after(restrict_to_per(g, m));
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("codes commute with sigma^level on points") {
  std::mt19937_64 rng(5);
  SimpleAuto s = random_simple(Alphabet(2), 2, rng);
  BlockCode f = embed_simple(s);
  for (const auto& x : enumerate_periodic(Alphabet(2), 6)) {
    REQUIRE(apply(f, shift_point(x, 2)) == shift_point(apply(f, x), 2));
  }
}

TEST_CASE("shift_conjugate keeps the window tight") {
  SimpleAuto s = SimpleAuto::transposition(Alphabet(2), 3, 0, 5);
  BlockCode conj = shift_conjugate(embed_simple(s), 2);
  REQUIRE(conj.level() == 3);
  REQUIRE(conj.radius() == 1);
  // sigma^{-j} f sigma^{j} agrees with conjugating pointwise.
  BlockCode f = embed_simple(s);
  for (const auto& x : enumerate_periodic(Alphabet(2), 6)) {
    REQUIRE(apply(conj, x) == shift_point(apply(f, shift_point(x, 2)), -2));
  }
}

TEST_CASE("recode_to_base views pair codes over the base alphabet") {
  // The pair-symbol swap (a,b) -> (b,a) over n=2 viewed at base level 2.
  std::vector<int> swap_table{0, 2, 1, 3};
  BlockCode pair_code = embed_simple(SimpleAuto(Alphabet(4), 1, swap_table));
  BlockCode base_code = recode_to_base(pair_code, 2, 2);
  REQUIRE(base_code.level() == 2);
  for (const auto& x : enumerate_periodic(Alphabet(2), 6)) {
    PeriodicPoint via_pairs = recode_inverse(apply(pair_code, recode(x, 2)), 2, 2);
    REQUIRE(apply(base_code, x) == via_pairs);
  }
}

TEST_CASE("composition is associative on the periodic-point action") {
  std::mt19937_64 rng(17);
  BlockCode f = embed_simple(random_simple(Alphabet(2), 2, rng));
  BlockCode g = shift_power(Alphabet(2), 1);
  BlockCode h = embed_simple(random_simple(Alphabet(2), 1, rng));
  for (const auto& x : enumerate_periodic(Alphabet(2), 4)) {
    PeriodicPoint left = apply(compose(compose(f, g), h), x);
    PeriodicPoint right = apply(compose(f, compose(g, h)), x);
    REQUIRE(left == right);
    REQUIRE(left == apply(f, apply(g, apply(h, x))));
  }
}

TEST_CASE("every constructed code has a verified two-sided inverse") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    BlockCode f = compose(embed_simple(random_simple(Alphabet(2), 2, rng)),
                          compose(shift_power(Alphabet(2), 1), embed_simple(random_simple(Alphabet(2), 1, rng))));
    REQUIRE(verify_inverse_on_periods(f, 6));
  }
}
