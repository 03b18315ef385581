#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torcount/torsion.hpp"

using namespace torcount;

namespace {

ShortCurve curve(long long A, long long B) { return ShortCurve(BigInt(A), BigInt(B)); }

CurvePoint pt(long long x, long long y) { return CurvePoint::affine(Rational(x), Rational(y)); }

// Brute-force #E(F_p) by counting (x, y) pairs.
std::uint32_t count_naive(long long a, long long b, long long p) {
  std::uint32_t n = 1;
  for (long long x = 0; x < p; ++x) {
    for (long long y = 0; y < p; ++y) {
      if ((y * y - (x * x * x + a * x + b)) % p == 0) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("group table") {
  CHECK(mazur_groups().size() == 15);
  CHECK(d_value(TorsionGroup::cyclic(1)) == Rational::parse("6/5"));
  CHECK(d_value(TorsionGroup::cyclic(7)) == Rational(12));
  CHECK(d_value(TorsionGroup::product2(8)) == Rational(24));
  CHECK(TorsionGroup::parse("Z/2xZ/6") == TorsionGroup::product2(6));
  CHECK(TorsionGroup::parse("0") == TorsionGroup::cyclic(1));
  CHECK_THROWS(TorsionGroup::parse("Z/11"));
  CHECK(contains_subgroup(TorsionGroup::product2(8), TorsionGroup::cyclic(8)));
  CHECK(contains_subgroup(TorsionGroup::cyclic(12), TorsionGroup::cyclic(4)));
  CHECK_FALSE(contains_subgroup(TorsionGroup::cyclic(12), TorsionGroup::product2(2)));
  CHECK(contains_subgroup(TorsionGroup::product2(6), TorsionGroup::product2(2)));
  CHECK_FALSE(contains_subgroup(TorsionGroup::product2(4), TorsionGroup::cyclic(3)));
  for (const auto& g : mazur_groups()) CHECK(contains_subgroup(g, TorsionGroup::cyclic(1)));
}

TEST_CASE("point arithmetic and orders") {
  const ShortCurve c = curve(0, 1);
  CHECK(point_order(c, pt(2, 3)) == 6);
  CHECK(point_order(c, CurvePoint::at_infinity()) == 1);
  CHECK(point_order(curve(33, -26), pt(3, 10)) == 3);
  CHECK_THROWS_AS(point_order(c, pt(1, 1)), std::invalid_argument);
  CHECK(multiply(c, pt(2, 3), 2) == pt(0, 1));
  CHECK(multiply(c, pt(2, 3), 3) == pt(-1, 0));
  CHECK(multiply(c, pt(2, 3), 6).infinity);
  // (-11, 6): (-1, 4) has order 4 and doubles to (3, 0).
  CHECK(multiply(curve(-11, 6), pt(-1, 4), 2) == pt(3, 0));
  CHECK(point_order(curve(-11, 6), pt(-1, 4)) == 4);
  // y^2 = x^3 - 2 has the point (3, 5) of infinite order.
  CHECK_FALSE(point_order(curve(0, -2), pt(3, 5)).has_value());
}

TEST_CASE("two torsion") {
  CHECK(two_torsion_group(curve(-1, 0)) == TwoTorsion::z2xz2);
  CHECK(two_torsion_group(curve(0, 1)) == TwoTorsion::z2);
  CHECK(two_torsion_group(curve(0, 2)) == TwoTorsion::trivial);
}

TEST_CASE("three torsion witness") {
  auto w = three_torsion_witness(curve(33, -26));
  REQUIRE(w);
  CHECK(w->a == 1);
  CHECK(w->b == 1);
  CHECK(w->point == pt(3, 10));
  w = three_torsion_witness(curve(135, 297));
  REQUIRE(w);
  CHECK(w->a == 1);
  CHECK(w->b == 18);
  CHECK(w->point == pt(3, 27));
  CHECK_FALSE(three_torsion_witness(curve(1, 1)));
  w = three_torsion_witness(curve(0, 4));
  REQUIRE(w);
  CHECK(w->a == 0);
  CHECK(w->point == pt(0, 2));
}

TEST_CASE("point counts mod p") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 31u}) {
    for (long long a = 0; a < p; a += 2) {
      for (long long b = 0; b < p; b += 3) {
        if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
        REQUIRE(count_points_mod_p(a, b, p) == count_naive(a, b, p));
      }
    }
  }
  CHECK(count_points_mod_p(1, 1, 1031) == count_naive(1, 1, 1031));
}

TEST_CASE("order bounds") {
  CHECK(torsion_order_bound(curve(0, 1)) % 6 == 0);
  CHECK(torsion_order_bound(curve(1, 1)) == 1);
  CHECK(torsion_order_bound(curve(-11, 6)) % 4 == 0);
}

TEST_CASE("division factors vanish at torsion x-coordinates") {
  CHECK(division_factor(curve(33, -26), 3).eval(BigInt(3)) == 0);
  CHECK(division_factor(curve(-11, 6), 4).eval(BigInt(-1)) == 0);
  CHECK(division_factor(curve(-43, 166), 7).eval(BigInt(3)) == 0);
  CHECK(division_factor(curve(-43, 166), 7).degree() == 24);
  CHECK(division_factor(curve(1, 2), 5).degree() == 12);
  CHECK_THROWS(division_factor(curve(1, 2), 6));
}

TEST_CASE("torsion subgroup examples") {
  CHECK(torsion_subgroup(curve(0, 1)) == TorsionGroup::cyclic(6));
  CHECK(torsion_subgroup(curve(-1, 0)) == TorsionGroup::product2(2));
  CHECK(torsion_subgroup(curve(1, 0)) == TorsionGroup::cyclic(2));
  CHECK(torsion_subgroup(curve(1, 1)) == TorsionGroup::cyclic(1));
  CHECK(torsion_subgroup(curve(-11, 6)) == TorsionGroup::cyclic(4));
  CHECK(torsion_subgroup(curve(-43, 166)) == TorsionGroup::cyclic(7));
  CHECK(torsion_subgroup(curve(33, -26)) == TorsionGroup::cyclic(3));
}

TEST_CASE("nagell-lutz oracle examples") {
  auto pts = nagell_lutz_oracle(curve(0, 1));
  CHECK(pts.size() == 6);
  for (const auto& p : {pt(-1, 0), pt(0, 1), pt(0, -1), pt(2, 3), pt(2, -3)}) {
    CHECK(std::find(pts.begin(), pts.end(), p) != pts.end());
  }
  CHECK(nagell_lutz_oracle(curve(1, 1)).size() == 1);
  const auto z7 = nagell_lutz_oracle(curve(-43, 166));
  CHECK(z7.size() == 7);
  CHECK(group_from_points(curve(-43, 166), z7) == TorsionGroup::cyclic(7));
  CHECK(group_from_points(curve(-1, 0), nagell_lutz_oracle(curve(-1, 0))) == TorsionGroup::product2(2));
}

TEST_CASE("cubic integer roots") {
  CHECK(cubic_integer_roots(-1, 0) == std::vector<i128>{-1, 0, 1});
  CHECK(cubic_integer_roots(0, 1) == std::vector<i128>{-1});
  CHECK(cubic_integer_roots(0, 2).empty());
  CHECK(cubic_integer_roots(-7, 6) == std::vector<i128>{-3, 1, 2});
  for (int a = -50; a <= 50; ++a) {
    for (int c = -200; c <= 200; ++c) {
      std::vector<i128> expect;
      for (int x = -60; x <= 60; ++x) {
        if (x * x * x + a * x + c == 0) expect.push_back(x);
      }
      REQUIRE(cubic_integer_roots(a, c) == expect);
    }
  }
}

TEST_CASE("torsion agrees with the oracle up to height 10^4") {
  for (long long A = -21; A <= 21; ++A) {
    for (long long B = -99; B <= 99; ++B) {
      if (std::llabs(A * A * A) >= 10000 || B * B >= 10000) continue;
      if (4 * A * A * A + 27 * B * B == 0 || !is_minimal(BigInt(A), BigInt(B))) continue;
      const ShortCurve c = curve(A, B);
      const TorsionGroup g = torsion_subgroup(c);
      INFO(A, " ", B);
      REQUIRE(g == group_from_points(c, nagell_lutz_oracle(c)));
      REQUIRE(torsion_order_bound(c) % static_cast<std::uint64_t>(g.order()) == 0);
      REQUIRE(three_torsion_witness(c).has_value() == (g.n % 3 == 0));
      const auto two = two_torsion_group(c);
      REQUIRE((two == TwoTorsion::z2xz2) == g.product);
      REQUIRE((two == TwoTorsion::trivial) == (g.n % 2 != 0 && !g.product));
    }
  }
}

TEST_CASE("torsion is invariant under twelfth-power scaling") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long long> d(-300, 300);
  for (int i = 0; i < 300; ++i) {
    const long long A = d(rng), B = d(rng);
    if (4 * A * A * A + 27 * B * B == 0 || !is_minimal(BigInt(A), BigInt(B))) continue;
    const ShortCurve c = curve(A, B);
    for (long long u : {2, 3, 5}) {
      const BigInt u4 = BigInt(u * u * u * u);
      const ShortCurve s = minimal_reduce(ShortCurve(u4 * A, u4 * u * u * B));
      REQUIRE(torsion_subgroup(s) == torsion_subgroup(c));
    }
  }
}

TEST_CASE("curves with large torsion") {
  // Tate normal form specializations with known torsion.
  CHECK(torsion_subgroup(minimal_reduce(curve(-1386747, 368636886))) == TorsionGroup::product2(8));
  CHECK(torsion_subgroup(minimal_reduce(curve(-219, 1654))) == TorsionGroup::cyclic(9));
}
