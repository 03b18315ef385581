#pragma once

// One-parameter families y^2 = x^3 + u^w1 f(t) x + u^w2 g(t) whose members
// carry a fixed torsion structure, their specializations, and lower-bound
// enumeration by height.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torcount/arith.hpp"
#include "torcount/curves.hpp"
#include "torcount/torsion.hpp"

namespace torcount {

struct FamilySpec {
  TorsionGroup G;
  RatPoly f, g;
  // (4, 6): A = u^4 f(t), B = u^6 g(t); (2, 3): A = u^2 f(t), B = u^3 g(t).
  int wa = 4, wb = 6;
  int r = 0, s = 0, n = 1, m = 1;
  std::optional<int> ell;
  std::string source;  // "builtin" or the file it came from
};

// Degrees and the reduced fraction n/m = max(r / wa, s / wb).
void fill_parameters(FamilySpec& spec);

// Injective homomorphisms G -> (Q/Z)^2.
int injection_count(const TorsionGroup& G);

// (deg f, deg g, n, m) for the groups with a universal family.
std::optional<std::array<int, 4>> expected_parameters(const TorsionGroup& G);

struct ContainmentResult {
  int tested = 0;
  int skipped = 0;  // singular specializations
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && tested > 0; }
};
/// Random (t, u) with numerators and denominators up to 30; counts how many
/// specializations have torsion containing spec.G.
ContainmentResult containment_check(const FamilySpec& spec, int samples, std::uint64_t seed);

struct Z3SignOutcome {
  ContainmentResult plus, minus;
  int winner = 0;  // +1, -1, or 0 when not exactly one variant passes
};
// g(t) = t^2 + sign (2/3) t + 2/27 with f(t) = 2t - 1/3.
FamilySpec z3_family(int sign);
Z3SignOutcome z3_sign_adjudication(int samples = 50);

/// Z/3, Z/4, Z/2xZ/2. Throws std::runtime_error if a self-test fails.
const std::vector<FamilySpec>& builtin_families();
const FamilySpec& builtin_family(const TorsionGroup& G);

struct FamilyLoadReport {
  std::vector<FamilySpec> families;
  std::vector<std::string> failures;  // "<group>: <invariant>"
};
// Empty when the family passes; otherwise the first broken invariant.
std::optional<std::string> validate_family(const FamilySpec& spec, int samples = 50);
/// Parse errors throw std::runtime_error; per-family failures are reported.
FamilyLoadReport load_families(const std::string& path, int samples = 50);
std::string default_family_file();

/// Minimal model of (u^wa f(t), u^wb g(t)); nullopt when singular.
std::optional<ShortCurve> specialize(const FamilySpec& spec, const Rational& t, const Rational& u);

struct ParamPoint {
  BigInt a, b;
};
/// Unique t = a / b^m with b > 0 and gcd(a, b^m) free of m-th powers.
ParamPoint param_normalize(int m, const Rational& t);

struct FamilyCurve {
  ShortCurve curve;
  BigInt height;
};
struct FamilyEnumeration {
  std::vector<FamilyCurve> curves;  // sorted by (A, B)
  BigInt amax, bmax;                // final sweep box
  std::vector<Rational> singular_t;
};
/// Distinct minimal curves of height < X from t = a / b^m, u = b^n over
/// canonical pairs (a, b); the box doubles until an outer shell yields no
/// curve below X.
FamilyEnumeration enumerate_family(const FamilySpec& spec, const BigInt& X);
// Counts of enumerate_family(spec, max checkpoint) below each checkpoint.
std::vector<std::uint64_t> family_counts(const FamilySpec& spec, const std::vector<BigInt>& checkpoints);

/// Least-squares slope of log N against log X.
long double fit_exponent(const std::vector<std::pair<long double, long double>>& counts);

/// Distinct minimal curves (0, b^2), b != 0, of height < X.
std::uint64_t exceptional_cubic_count(const BigInt& X);

}  // namespace torcount
