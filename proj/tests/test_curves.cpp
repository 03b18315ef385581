#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torcount/curves.hpp"

using namespace torcount;

namespace {

// Reduction by brute force over u up to the fourth/sixth root bounds.
std::pair<long long, long long> reduce_naive(long long A, long long B) {
  for (bool changed = true; changed;) {
    changed = false;
    for (long long u = 2; u * u * u * u <= std::max(std::llabs(A), 1LL) || u * u * u * u * u * u <= std::llabs(B); ++u) {
      const long long u4 = u * u * u * u, u6 = u4 * u * u;
      if (A % u4 == 0 && B % u6 == 0 && !(A == 0 && B == 0)) {
        A /= u4;
        B /= u6;
        changed = true;
        break;
      }
    }
  }
  return {A, B};
}

}  // namespace

TEST_CASE("disc_core and height") {
  CHECK(disc_core(BigInt(0), BigInt(1)) == 27);
  CHECK(disc_core(BigInt(-1), BigInt(0)) == -4);
  CHECK(disc_core(BigInt(135), BigInt(297)) == BigInt(4) * 135 * 135 * 135 + BigInt(27) * 297 * 297);
  CHECK(disc_core(BigInt(135), BigInt(297)) != 0);
  CHECK(height(BigInt(2), BigInt(3)) == 9);
  CHECK(height(BigInt(-3), BigInt(2)) == 27);
  CHECK(height(BigInt(0), BigInt(0)) == 0);
  CHECK(height(std::int64_t{-3}, std::int64_t{2}) == 27);
  CHECK(disc_core(std::int64_t{-1}, std::int64_t{0}) == -4);
}

TEST_CASE("disc_core scales by u^12") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> d(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    const BigInt A = d(rng), B = d(rng), u = d(rng) % 50;
    const BigInt u4 = u * u * u * u;
    CHECK(disc_core(u4 * A, u4 * u * u * B) == boost::multiprecision::pow(u, 12) * disc_core(A, B));
  }
}

TEST_CASE("minimal_reduce examples") {
  CHECK(minimal_reduce(BigInt(0), BigInt(64)) == std::pair<BigInt, BigInt>(0, 1));
  CHECK(minimal_reduce(BigInt(16), BigInt(64)) == std::pair<BigInt, BigInt>(1, 1));
  CHECK(minimal_reduce(BigInt(-891), BigInt(4374)) == std::pair<BigInt, BigInt>(-11, 6));
  CHECK(minimal_reduce(BigInt(-81), BigInt(0)) == std::pair<BigInt, BigInt>(-1, 0));
  CHECK_THROWS_AS(minimal_reduce(BigInt(-3), BigInt(2)), std::invalid_argument);
  CHECK(is_minimal(BigInt(0), BigInt(1)));
  CHECK_FALSE(is_minimal(BigInt(0), BigInt(64)));
  CHECK(is_minimal(BigInt(-11), BigInt(6)));
  CHECK_THROWS(ShortCurve(BigInt(-3), BigInt(2)));
}

TEST_CASE("minimal_reduce with large prime scale") {
  const BigInt p("1000003");
  const BigInt p4 = p * p * p * p;
  CHECK(minimal_reduce(p4 * 5, p4 * p * p * 7) == std::pair<BigInt, BigInt>(5, 7));
  const BigInt q("2305843009213693951");  // beyond trial division
  const BigInt q4 = q * q * q * q;
  CHECK(minimal_reduce(q4 * 2, q4 * q * q * 3) == std::pair<BigInt, BigInt>(2, 3));
  CHECK(minimal_reduce(BigInt(0), q4 * q * q * 3) == std::pair<BigInt, BigInt>(0, 3));
}

TEST_CASE("minimal_reduce agrees with naive reduction and is idempotent") {
  for (long long A = -150; A <= 150; ++A) {
    for (long long B = -400; B <= 400; ++B) {
      if (4 * A * A * A + 27 * B * B == 0) continue;
      const auto [a, b] = minimal_reduce(BigInt(A), BigInt(B));
      const auto [na, nb] = reduce_naive(A, B);
      REQUIRE(a == na);
      REQUIRE(b == nb);
      REQUIRE(minimal_reduce(a, b) == std::pair<BigInt, BigInt>(a, b));
      REQUIRE(height(a, b) <= height(BigInt(A), BigInt(B)));
      REQUIRE(is_minimal(BigInt(A), BigInt(B)) == (a == A && b == B));
    }
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> d(-10000, 10000);
  for (int i = 0; i < 200000; ++i) {
    const long long A = d(rng), B = d(rng);
    if (4 * A * A * A + 27 * B * B == 0) continue;
    const auto r = minimal_reduce(BigInt(A), BigInt(B));
    REQUIRE(minimal_reduce(r.first, r.second) == r);
  }
}

TEST_CASE("minimal curves have no small twelfth-power obstruction") {
  for (long long A = -99; A <= 99; ++A) {
    for (long long B = -999; B <= 999; ++B) {
      if (4 * A * A * A + 27 * B * B == 0 || !is_minimal(BigInt(A), BigInt(B))) continue;
      for (long long p : {2, 3, 5, 7}) {
        const long long p4 = p * p * p * p, p6 = p4 * p * p;
        const bool divA = A == 0 || A % p4 == 0;
        const bool divB = B == 0 || B % p6 == 0;
        REQUIRE_FALSE((divA && divB && !(A == 0 && B == 0)));
      }
    }
  }
}

TEST_CASE("long_to_short") {
  LongCurve k4{Rational(1), Rational(-1), Rational(-1), Rational(0), Rational(0)};
  auto [A, B] = long_to_short(k4);
  CHECK(A == Rational(-891));
  CHECK(B == Rational(4374));
  CHECK(integral_minimal_model(A, B) == ShortCurve(BigInt(-11), BigInt(6)));

  LongCurve s{Rational(0), Rational(0), Rational(0), Rational(5), Rational(7)};
  auto [A2, B2] = long_to_short(s);
  CHECK(integral_minimal_model(A2, B2) == ShortCurve(BigInt(5), BigInt(7)));

  LongCurve singular{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  CHECK_THROWS(long_to_short(singular));
}

TEST_CASE("long_to_short is invariant under coordinate scaling") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> d(-9, 9);
  for (int i = 0; i < 300; ++i) {
    LongCurve c{Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
    Rational A, B;
    try {
      std::tie(A, B) = long_to_short(c);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const ShortCurve base = integral_minimal_model(A, B);
    for (long long un : {2, 3, -5}) {
      for (long long ud : {1, 7}) {
        const Rational u{BigInt(un), BigInt(ud)};
        // (x, y) -> (u^2 x, u^3 y) divides a_i by u^i.
        LongCurve s{c.a1 / u, c.a2 / pow(u, 2), c.a3 / pow(u, 3), c.a4 / pow(u, 4), c.a6 / pow(u, 6)};
        auto [As, Bs] = long_to_short(s);
        REQUIRE(integral_minimal_model(As, Bs) == base);
      }
    }
  }
}

TEST_CASE("fixed-width minimal_reduce matches the exact one") {
  for (long long A = -200; A <= 200; ++A) {
    for (long long B = -3000; B <= 3000; ++B) {
      if (4 * A * A * A + 27 * B * B == 0) continue;
      const auto [a, b] = minimal_reduce(std::int64_t{A}, std::int64_t{B});
      const auto [ea, eb] = minimal_reduce(BigInt(A), BigInt(B));
      REQUIRE(a == ea);
      REQUIRE(b == eb);
    }
  }
  CHECK(minimal_reduce(std::int64_t{0}, std::int64_t{64}) == std::pair<std::int64_t, std::int64_t>(0, 1));
  const std::int64_t big = 4096LL * 1000000007LL;
  CHECK(minimal_reduce(std::int64_t{0}, big).second == 1000000007LL);
}
