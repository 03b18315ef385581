#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "torcount/arith.hpp"

using namespace torcount;

namespace {

// Trial-division Möbius for cross-checking.
int mobius_naive(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

long double zeta_partial(int s, long N) {
  long double sum = 0.0L;
  for (long n = N; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  // Integral tail from N + 1/2 (midpoint estimate).
  sum += std::pow(static_cast<long double>(N) + 0.5L, 1.0L - s) / (s - 1.0L);
  return sum;
}

}  // namespace

TEST_CASE("mobius small values") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(6) == 1);
  CHECK(mobius(30) == -1);
  CHECK_THROWS_AS(mobius(0), std::invalid_argument);
  for (int n = 1; n <= 20000; ++n) REQUIRE(mobius(static_cast<std::uint64_t>(n)) == mobius_naive(n));
}

TEST_CASE("mobius is multiplicative on coprime pairs") {
  for (std::uint64_t m = 1; m <= 1000; ++m) {
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      if (std::gcd(m, n) != 1) continue;
      REQUIRE(mobius(m * n) == mobius(m) * mobius(n));
    }
  }
}

TEST_CASE("divisor sums of mobius") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    int s = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) s += mobius(d);
    }
    REQUIRE(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("mobius for large arguments") {
  CHECK(mobius(1000000007ULL * 998244353ULL) == 1);
  CHECK(mobius(1000000007ULL * 1000000007ULL) == 0);
  CHECK(mobius(2ULL * 1000000007ULL * 998244353ULL) == -1);
}

TEST_CASE("zeta closed forms") {
  const long double pi = std::numbers::pi_v<long double>;
  CHECK(std::abs(zeta(10) - std::pow(pi, 10) / 93555.0L) < 1e-15L);
  CHECK(std::abs(zeta(4) - std::pow(pi, 4) / 90.0L) < 1e-15L);
  CHECK(std::abs(zeta(6) - std::pow(pi, 6) / 945.0L) < 1e-15L);
  CHECK(std::abs(zeta(2) - pi * pi / 6.0L) < 1e-15L);
  CHECK(std::abs(zeta(10) - 1.000994575127818L) < 1e-14L);
  CHECK_THROWS(zeta(1));
  CHECK_THROWS(zeta(-4));
}

TEST_CASE("zeta agrees with partial sums") {
  for (int s : {3, 4, 5, 6, 10}) {
    CHECK(std::abs(zeta(s) - zeta_partial(s, 1000000)) < 1e-10L);
  }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(BigInt(-1), BigInt(2)));
  CHECK(bernoulli(2) == Rational(BigInt(1), BigInt(6)));
  CHECK(bernoulli(3) == Rational(0));
  CHECK(bernoulli(10) == Rational(BigInt(5), BigInt(66)));
  CHECK(bernoulli(12) == Rational(BigInt(-691), BigInt(2730)));
}

TEST_CASE("valuation") {
  CHECK(valuation(Rational::parse("8/3"), 2) == 3);
  CHECK(valuation(Rational::parse("8/3"), 3) == -1);
  CHECK(valuation(Rational(5), 7) == 0);
  CHECK_THROWS_AS(valuation(Rational(0), 2), std::domain_error);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> dist(-5000, 5000);
  for (int i = 0; i < 2000; ++i) {
    long long a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    if (a == 0 || b == 0 || c == 0 || d == 0) continue;
    const Rational x{BigInt(a), BigInt(b)};
    const Rational y{BigInt(c), BigInt(d)};
    for (std::uint64_t p : {2, 3, 5, 7, 11}) REQUIRE(valuation(x * y, p) == valuation(x, p) + valuation(y, p));
  }
}

TEST_CASE("rational normalization and parsing") {
  const Rational r{BigInt(6), BigInt(-4)};
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(BigInt(0), BigInt(-7)).den() == 1);
  CHECK(Rational::parse(" -10/4 ") == Rational(BigInt(-5), BigInt(2)));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK(Rational::parse("1/3").to_long_double() == doctest::Approx(1.0 / 3.0));
  CHECK(pow(Rational::parse("-2/3"), 3) == Rational::parse("-8/27"));
  CHECK(Rational::parse("2/3") < Rational::parse("3/4"));
}

TEST_CASE("poly_eval") {
  const RatPoly f({Rational::parse("-1/3"), Rational(2)});
  CHECK(poly_eval(f, Rational(1)) == Rational::parse("5/3"));
  CHECK(poly_eval(RatPoly(), Rational(7)) == Rational(0));
  const RatPoly g({Rational::parse("2/27"), Rational::parse("-2/3"), Rational(1)});
  CHECK(poly_eval(g, Rational(1)) == Rational::parse("11/27"));
}

TEST_CASE("polynomial gcd and division") {
  const RatPoly x_minus_1({Rational(-1), Rational(1)});
  const RatPoly x_plus_2({Rational(2), Rational(1)});
  const RatPoly x2_plus_1({Rational(1), Rational(0), Rational(1)});
  const RatPoly a = x_minus_1 * x_plus_2;
  const RatPoly b = x_minus_1 * x2_plus_1;
  CHECK(poly_gcd(a, b) == x_minus_1);
  CHECK(coprime(x_plus_2, x2_plus_1));
  CHECK_FALSE(coprime(a, b));
  auto [q, r] = b.divmod(x_minus_1);
  CHECK(q == x2_plus_1);
  CHECK(r.is_zero());
  CHECK_THROWS(a.divmod(RatPoly()));
}

TEST_CASE("forward difference") {
  const IntPoly p({BigInt(5), BigInt(-3), BigInt(0), BigInt(2)});
  const IntPoly d = p.forward_difference();
  for (int x = -20; x <= 20; ++x) REQUIRE(d.eval(BigInt(x)) == p.eval(BigInt(x + 1)) - p.eval(BigInt(x)));
}

TEST_CASE("integer roots of products of linear and irreducible factors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> rdist(-60, 60);
  std::uniform_int_distribution<int> ndist(0, 4);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<BigInt> roots;
    IntPoly p({BigInt(1)});
    const int k = ndist(rng);
    for (int i = 0; i < k; ++i) {
      const int r = rdist(rng);
      roots.emplace_back(r);
      p = p * IntPoly({BigInt(-r), BigInt(1)});
    }
    // x^2 + c with c > 0, or 2x - 1: no integer roots.
    if (trial % 2 == 0) p = p * IntPoly({BigInt(1 + trial % 7), BigInt(0), BigInt(1)});
    else p = p * IntPoly({BigInt(-1), BigInt(2)});
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    REQUIRE(integer_roots(p) == roots);
  }
}

TEST_CASE("integer roots against exhaustive scan") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cdist(-30, 30);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BigInt> c(static_cast<std::size_t>(1 + trial % 6));
    for (auto& v : c) v = cdist(rng);
    c.back() = c.back() == 0 ? BigInt(1) : c.back();
    const IntPoly p(c);
    const BigInt bound = root_bound(p);
    std::vector<BigInt> expect;
    for (BigInt x = -bound - 2; x <= bound + 2; ++x) {
      if (p.eval(x) == 0) expect.push_back(x);
    }
    REQUIRE(integer_roots(p) == expect);
  }
}

TEST_CASE("integer roots with large coefficients and zero constant term") {
  const BigInt big("123456789012345678901");
  IntPoly p = IntPoly({BigInt(0), BigInt(1)}) * IntPoly({-big, BigInt(1)}) * IntPoly({big + 1, BigInt(1)});
  CHECK(integer_roots(p) == std::vector<BigInt>{-(big + 1), BigInt(0), big});
  CHECK(integer_roots(IntPoly({BigInt(0), BigInt(0), BigInt(3)})) == std::vector<BigInt>{BigInt(0)});
  CHECK_THROWS(integer_roots(IntPoly()));
}

TEST_CASE("integer roots of clustered roots") {
  IntPoly p({BigInt(1)});
  for (int r : {3, 3, 4, 5, 5, 5}) p = p * IntPoly({BigInt(-r), BigInt(1)});
  CHECK(integer_roots(p) == std::vector<BigInt>{BigInt(3), BigInt(4), BigInt(5)});
}

TEST_CASE("factorization") {
  const BigInt n = BigInt("1000000007") * BigInt("998244353") * BigInt(4) * BigInt(9);
  const auto f = factor(n);
  BigInt prod = 1;
  for (const auto& [p, e] : f) {
    REQUIRE(is_probable_prime(p));
    for (int i = 0; i < e; ++i) prod *= p;
  }
  CHECK(prod == n);
  CHECK(f.size() == 4);
  CHECK(factor(BigInt(1)).empty());
  CHECK_THROWS(factor(BigInt(0)));
  const BigInt sq = BigInt("4294967311") * BigInt("4294967311");
  CHECK(factor(sq) == std::vector<std::pair<BigInt, int>>{{BigInt("4294967311"), 2}});
}

TEST_CASE("roots and int128 helpers") {
  CHECK(iroot(BigInt(1000000), 3) == 100);
  CHECK(iroot(BigInt(999999), 3) == 99);
  CHECK(iroot_u64(4096, 12) == 2);
  CHECK(is_square(BigInt(144)));
  CHECK_FALSE(is_square(BigInt(-4)));
  const i128 v = parse_i128("-170141183460469231731687303715884105727");
  CHECK(to_string(v) == "-170141183460469231731687303715884105727");
  CHECK(to_i128(to_big(v)) == v);
  CHECK_THROWS(to_i128(BigInt(1) << 130));
  CHECK_THROWS(parse_i128("12x"));
}

TEST_CASE("height parsing") {
  CHECK(parse_height("1000000") == 1000000);
  CHECK(parse_height("1e6") == 1000000);
  CHECK(parse_height("2e12") == BigInt("2000000000000"));
  CHECK(parse_height("10^6") == 1000000);
  CHECK(parse_height("2^40") == BigInt(1) << 40);
  CHECK_THROWS(parse_height("1.5e6"));
  CHECK_THROWS(parse_height("-5"));
  CHECK_THROWS(parse_height("0"));
  CHECK_THROWS(parse_height("1e"));
  CHECK_THROWS(parse_height(""));
}
