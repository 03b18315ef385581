#pragma once

// Exact integer/rational arithmetic shared by every other module.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace torcount {

using BigInt = boost::multiprecision::mpz_int;
using i128 = __int128;

BigInt to_big(i128 v);
// Throws std::overflow_error if v does not fit.
i128 to_i128(const BigInt& v);
bool fits_i128(const BigInt& v);
std::string to_string(i128 v);
// Accepts optional sign and decimal digits.
i128 parse_i128(std::string_view s);

// Floor of the k-th root of a non-negative integer.
BigInt iroot(const BigInt& n, unsigned k);
std::uint64_t iroot_u64(std::uint64_t n, unsigned k);
// true and sets r when n is a perfect square (n >= 0).
bool is_square(const BigInt& n, BigInt* r = nullptr);

/// Parses "1000000", "1e6", "2e12" or "10^6" exactly (integer mantissa and
/// exponent only). Throws std::invalid_argument.
BigInt parse_height(std::string_view text);

/// A rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n, BigInt d);

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  long double to_long_double() const;
  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

Rational pow(const Rational& x, unsigned e);

/// Polynomial over Q; coefficient index = degree.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);

  static RatPoly monomial(Rational c, unsigned degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational eval(const Rational& t) const;
  RatPoly scaled(const Rational& c) const;
  std::string to_string() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division; throws on division by zero polynomial.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Rational poly_eval(const RatPoly& f, const Rational& t);
// Monic gcd; zero if both are zero.
RatPoly poly_gcd(RatPoly a, RatPoly b);
bool coprime(const RatPoly& a, const RatPoly& b);

/// Polynomial over Z, used for division polynomials and root isolation.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt eval(const BigInt& x) const;
  // P(x + 1) - P(x)
  IntPoly forward_difference() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& k, const IntPoly& a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// All integer roots of a nonzero integer polynomial, ascending, without
/// multiplicity. Real roots are isolated on the integer lattice by recursing
/// on forward differences (each difference level splits the line into runs on
/// which the level above is monotone), then each candidate is confirmed by
/// exact evaluation.
std::vector<BigInt> integer_roots(const IntPoly& p);

// Upper bound on |z| over all complex roots (Fujiwara), as a power of two.
BigInt root_bound(const IntPoly& p);

/// Möbius function. Throws std::invalid_argument for n == 0.
int mobius(std::uint64_t n);

/// Riemann zeta at an integer s >= 2. Even s uses the Bernoulli closed form.
long double zeta(int s);

// Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(unsigned n);

/// p-adic valuation of a nonzero rational. Throws std::domain_error on zero.
int valuation(const Rational& x, std::uint64_t p);
int valuation(const BigInt& x, std::uint64_t p);

// Primes below limit, cached per call site by the caller if needed.
std::vector<std::uint32_t> primes_below(std::uint32_t limit);
// Shared table of primes below 2^20.
const std::vector<std::uint32_t>& small_primes();

bool is_probable_prime(const BigInt& n);

class FactorizationTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prime factorization of |n| (n != 0) by trial division and Pollard rho.
/// Throws FactorizationTimeout when rho exceeds its iteration budget.
std::vector<std::pair<BigInt, int>> factor(const BigInt& n,
                                           std::uint64_t rho_budget = 5'000'000);

}  // namespace torcount
