#include "torcount/curves.hpp"

#include <numeric>

namespace torcount {

ShortCurve::ShortCurve(BigInt a, BigInt b) : A(std::move(a)), B(std::move(b)) {
  if (disc_core(A, B) == 0) throw std::invalid_argument("singular curve " + A.str() + " " + B.str());
}

BigInt disc_core(const BigInt& A, const BigInt& B) { return 4 * A * A * A + 27 * B * B; }

BigInt height(const BigInt& A, const BigInt& B) {
  BigInt a3 = abs(A * A * A);
  BigInt b2 = B * B;
  return a3 > b2 ? a3 : b2;
}

namespace {

// Largest u with u^4 | A and u^6 | B (one-sided for a zero coordinate).
BigInt twelfth_power_scale(const BigInt& A, const BigInt& B) {
  BigInt u = 1;
  BigInt a = abs(A), b = abs(B);
  // Every relevant prime divides g, and p^e <= g for e the needed exponent.
  BigInt g;
  unsigned e;
  if (A == 0) {
    g = b;
    e = 6;
  } else if (B == 0) {
    g = a;
    e = 4;
  } else {
    g = gcd(a, b);
    e = 4;
  }
  auto take = [&](const BigInt& p) {
    int va = 0, vb = 0;
    if (A != 0) {
      while (a % p == 0) {
        a /= p;
        ++va;
      }
    }
    if (B != 0) {
      while (b % p == 0) {
        b /= p;
        ++vb;
      }
    }
    int k;
    if (A == 0) k = vb / 6;
    else if (B == 0) k = va / 4;
    else k = std::min(va / 4, vb / 6);
    for (int i = 0; i < k; ++i) u *= p;
    while (g % p == 0) g /= p;
  };
  BigInt root = iroot(g, e);
  for (std::uint32_t p : small_primes()) {
    if (g == 1 || root < p) break;
    if (mpz_divisible_ui_p(g.backend().data(), p) != 0) {
      take(BigInt(p));
      root = iroot(g, e);
    }
  }
  if (g == 1) return u;
  // Remaining prime factors of g all exceed the trial range; only those with
  // p^e | g can matter.
  const BigInt lim = small_primes().back();
  if (boost::multiprecision::pow(lim, e) > g) return u;
  for (const auto& pf : factor(g)) take(pf.first);
  return u;
}

}  // namespace

std::pair<BigInt, BigInt> minimal_reduce(const BigInt& A, const BigInt& B) {
  if (disc_core(A, B) == 0) throw std::invalid_argument("minimal_reduce of a singular curve");
  const BigInt u = twelfth_power_scale(A, B);
  if (u == 1) return {A, B};
  const BigInt u2 = u * u;
  const BigInt u4 = u2 * u2;
  return {A / u4, B / (u4 * u2)};
}

ShortCurve minimal_reduce(const ShortCurve& c) {
  auto [a, b] = minimal_reduce(c.A, c.B);
  return ShortCurve(std::move(a), std::move(b));
}

bool is_minimal(const BigInt& A, const BigInt& B) {
  if (A == 0 && B == 0) return true;
  return twelfth_power_scale(A, B) == 1;
}

std::pair<std::int64_t, std::int64_t> minimal_reduce(std::int64_t A, std::int64_t B) {
  if (A == 0 && B == 0) throw std::invalid_argument("minimal_reduce of a singular curve");
  std::uint64_t a = A < 0 ? -static_cast<std::uint64_t>(A) : static_cast<std::uint64_t>(A);
  std::uint64_t b = B < 0 ? -static_cast<std::uint64_t>(B) : static_cast<std::uint64_t>(B);
  const unsigned e = A == 0 ? 6 : 4;
  std::uint64_t g = A == 0 ? b : (B == 0 ? a : std::gcd(a, b));
  std::int64_t u4 = 1, u6 = 1;
  for (std::uint32_t p : small_primes()) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    if (pe > g) break;
    if (g % p != 0) continue;
    int va = 0, vb = 0;
    while (a != 0 && a % p == 0) {
      a /= p;
      ++va;
    }
    while (b != 0 && b % p == 0) {
      b /= p;
      ++vb;
    }
    while (g % p == 0) g /= p;
    const int k = A == 0 ? vb / 6 : (B == 0 ? va / 4 : std::min(va / 4, vb / 6));
    for (int i = 0; i < k; ++i) {
      u4 *= static_cast<std::int64_t>(p) * p * p * p;
      u6 *= static_cast<std::int64_t>(p) * p * p * p * p * p;
    }
  }
  return {A / u4, B / u6};
}

std::pair<Rational, Rational> long_to_short(const LongCurve& c) {
  const Rational b2 = c.a1 * c.a1 + Rational(4) * c.a2;
  const Rational b4 = Rational(2) * c.a4 + c.a1 * c.a3;
  const Rational b6 = c.a3 * c.a3 + Rational(4) * c.a6;
  const Rational c4 = b2 * b2 - Rational(24) * b4;
  const Rational c6 = -(b2 * b2 * b2) + Rational(36) * b2 * b4 - Rational(216) * b6;
  Rational A = Rational(-27) * c4;
  Rational B = Rational(-54) * c6;
  const Rational d = Rational(4) * A * A * A + Rational(27) * B * B;
  if (d.is_zero()) throw std::invalid_argument("long_to_short: singular curve");
  return {std::move(A), std::move(B)};
}

ShortCurve integral_minimal_model(const Rational& A, const Rational& B) {
  const BigInt v = boost::multiprecision::lcm(A.den(), B.den());
  const BigInt v2 = v * v;
  const BigInt v4 = v2 * v2;
  const Rational As = A * Rational(v4);
  const Rational Bs = B * Rational(v4 * v2);
  auto [a, b] = minimal_reduce(As.num(), Bs.num());
  return ShortCurve(std::move(a), std::move(b));
}

}  // namespace torcount
