#pragma once

// Short and long Weierstrass models, naive height, 12th-power-free reduction.

#include <string>
#include <utility>

#include "torcount/arith.hpp"

namespace torcount {

/// y^2 = x^3 + A x + B with 4A^3 + 27B^2 != 0.
struct ShortCurve {
  BigInt A;
  BigInt B;

  ShortCurve() : A(0), B(1) {}
  // Throws std::invalid_argument when singular.
  ShortCurve(BigInt a, BigInt b);

  friend bool operator==(const ShortCurve& x, const ShortCurve& y) { return x.A == y.A && x.B == y.B; }
  friend bool operator<(const ShortCurve& x, const ShortCurve& y) {
    return x.A < y.A || (x.A == y.A && x.B < y.B);
  }
  std::string to_string() const { return A.str() + " " + B.str(); }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct LongCurve {
  Rational a1, a2, a3, a4, a6;
};

BigInt disc_core(const BigInt& A, const BigInt& B);
// Exact for |A| < 2^41, |B| < 2^61.
inline i128 disc_core(std::int64_t A, std::int64_t B) {
  return 4 * static_cast<i128>(A) * A * A + 27 * static_cast<i128>(B) * B;
}

BigInt height(const BigInt& A, const BigInt& B);
inline i128 height(std::int64_t A, std::int64_t B) {
  const i128 a = A < 0 ? -static_cast<i128>(A) : static_cast<i128>(A);
  const i128 a3 = a * a * a;
  const i128 b2 = static_cast<i128>(B) * B;
  return a3 > b2 ? a3 : b2;
}

/// Divides (A, B) by (u^4, u^6) for the largest u with u^4 | A and u^6 | B
/// (one-sided when A or B is zero). Throws std::invalid_argument if singular.
std::pair<BigInt, BigInt> minimal_reduce(const BigInt& A, const BigInt& B);
ShortCurve minimal_reduce(const ShortCurve& c);

bool is_minimal(const BigInt& A, const BigInt& B);

// Fixed-width minimal_reduce for |A|, |B| < 2^62; the input must be nonsingular.
std::pair<std::int64_t, std::int64_t> minimal_reduce(std::int64_t A, std::int64_t B);

/// Short model (-27 c4, -54 c6) of a long Weierstrass equation.
/// Throws std::invalid_argument if the result is singular.
std::pair<Rational, Rational> long_to_short(const LongCurve& c);

/// Scales rational (A, B) by (v^4, v^6) with v = lcm of the denominators and
/// returns the minimal integral model.
ShortCurve integral_minimal_model(const Rational& A, const Rational& B);

}  // namespace torcount
