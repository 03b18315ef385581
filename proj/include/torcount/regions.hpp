#pragma once

// Integer points in the regions R1, R2, R3 whose images under T_i
// parameterize curves with trivial / 2-torsion / 3-torsion structure, the
// constants describing their areas, and the Möbius sieve down to minimal
// curves.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "torcount/arith.hpp"

namespace torcount {

struct ConstantsReport {
  long double alpha_plus = 0, alpha_minus = 0;
  std::array<long double, 6> alpha{};
  std::array<long double, 6> beta{};
  long double I_plus = 0, I_minus = 0;
  long double area1 = 0, area2 = 0, area3_plus = 0, area3 = 0;
  long double zeta4 = 0, zeta6 = 0, zeta10 = 0;
  long double c1 = 0, c2 = 0, c3 = 0;
};

std::pair<long double, long double> alpha_pm();
// (alpha4, alpha1, alpha3, alpha0): positive and negative roots of
// 3x^4 + 6x^2 + 12x - 1, then of 3x^4 - 6x^2 + 12x - 1.
std::array<long double, 4> quartic_roots();
// alpha0..alpha5. alpha2, alpha5 are -+1/sqrt(3), the abscissae (after the
// beta transform) where 27a^4 = 1.
std::array<long double, 6> alphas();
std::array<long double, 6> betas();
// sign > 0: integral of sqrt(1 + 27a^6) over [beta3, beta4];
// sign < 0: integral of sqrt(27a^6 - 1) over [beta0, beta1].
long double integral_I(int sign);
long double area3_plus();
// Area of R_i(1).
long double region_area(int i);
// area(i) / zeta(12 / d_i)
long double c_constant(int i);
ConstantsReport compute_constants();

// d_i and e_i as exact fractions (num, den).
std::pair<int, int> region_d(int i);
std::pair<int, int> region_e(int i);

// Largest X accepted by the exact region predicates.
inline const i128 kRegionMaxX = [] {
  i128 v = 1;
  for (int k = 0; k < 30; ++k) v *= 10;
  return v;
}();

std::pair<i128, i128> T_map(int i, i128 a, i128 b);

/// height(T_i(a, b)) < X, exactly.
bool in_region(int i, i128 X, i128 a, i128 b);

struct RegionPoint {
  std::int64_t a, b;  // lattice point
  std::int64_t A, B;  // T_i(a, b)
};

/// Visits every integer point of R_i(X) with nonzero discriminant.
void enumerate_region(int i, i128 X, const std::function<void(const RegionPoint&)>& visit);

// Number of lattice points visited by enumerate_region (closed form for i = 1).
std::uint64_t lattice_count(int i, i128 X);

struct EquationCount {
  std::uint64_t lattice = 0;
  std::uint64_t distinct = 0;
};
EquationCount equation_count(int i, i128 X);

struct SievedCount {
  std::uint64_t mobius = 0;  // sum over d of mu(d) * distinct(X / d^12)
  std::uint64_t direct = 0;  // distinct minimal models of the region images
  bool agree = false;
  std::string witness;  // first offending curve when they disagree
};
SievedCount sieved_count(int i, i128 X);

// sieved / X^(1/d_i)
long double empirical_constant(int i, i128 X, std::uint64_t sieved);

struct PiecewiseCheck {
  bool ok = true;
  std::uint64_t tested = 0;
  std::uint64_t skipped = 0;  // points within rounding distance of a boundary
  std::string counterexample;
  int interval = -1;
};
/// Compares the five-interval description of R3 ∩ {b >= 1} with in_region.
PiecewiseCheck piecewise_R3_check(i128 X, std::uint64_t sample, std::uint64_t seed = 1);

}  // namespace torcount
