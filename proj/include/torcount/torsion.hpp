#pragma once

// Exact rational torsion of short Weierstrass curves, plus a slow
// Nagell-Lutz oracle used to cross-check it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torcount/arith.hpp"
#include "torcount/curves.hpp"

namespace torcount {

/// Z/n, or Z/2 x Z/n when product is set.
struct TorsionGroup {
  int n = 1;
  bool product = false;

  static TorsionGroup cyclic(int n) { return {n, false}; }
  static TorsionGroup product2(int n) { return {n, true}; }

  int order() const { return product ? 2 * n : n; }
  // "0", "Z/5", "Z/2xZ/8"
  std::string name() const;
  // Accepts the names above; throws std::invalid_argument otherwise.
  static TorsionGroup parse(std::string_view s);

  friend bool operator==(const TorsionGroup& a, const TorsionGroup& b) {
    return a.n == b.n && a.product == b.product;
  }
};

bool is_mazur(const TorsionGroup& g);
// The 15 groups: 0, Z/2..Z/10, Z/12, Z/2xZ/2, Z/2xZ/4, Z/2xZ/6, Z/2xZ/8.
const std::array<TorsionGroup, 15>& mazur_groups();
// Position in mazur_groups(); throws if not a Mazur group.
int group_index(const TorsionGroup& g);
// true when h has a subgroup isomorphic to g.
bool contains_subgroup(const TorsionGroup& h, const TorsionGroup& g);
// Growth exponent denominator d(G).
Rational d_value(const TorsionGroup& g);

struct CurvePoint {
  bool infinity = true;
  Rational x, y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
  std::string to_string() const;
};

bool on_curve(const ShortCurve& c, const CurvePoint& p);
CurvePoint negate(const CurvePoint& p);
CurvePoint add(const ShortCurve& c, const CurvePoint& p, const CurvePoint& q);
CurvePoint multiply(const ShortCurve& c, const CurvePoint& p, int k);

/// Least n <= 12 with nP = O, or nullopt. Throws std::invalid_argument if P
/// is not on c.
std::optional<int> point_order(const ShortCurve& c, const CurvePoint& p);

enum class TwoTorsion { trivial, z2, z2xz2 };
TwoTorsion two_torsion_group(const ShortCurve& c);
// Integer roots of x^3 + A x + B.
std::vector<BigInt> two_torsion_roots(const ShortCurve& c);

struct ThreeWitness {
  BigInt a, b;
  CurvePoint point;  // (3a^2, 9a^3 + b), of order 3
};
/// (a, b) with A = 6ab + 27a^4 and B = b^2 - 27a^6, if any.
std::optional<ThreeWitness> three_torsion_witness(const ShortCurve& c);

/// #E(F_p) for p >= 5 not dividing the discriminant.
std::uint32_t count_points_mod_p(std::uint64_t a_mod_p, std::uint64_t b_mod_p, std::uint32_t p);

/// gcd of #E(F_p) over at least min_primes good primes p >= 5, extended up to
/// 40 primes while the value is not the order of a Mazur group.
std::uint64_t torsion_order_bound(const ShortCurve& c, int min_primes = 8);

/// Division polynomial factor g_n, where psi_n = g_n for odd n and
/// psi_n = 2y g_n for even n. Supported for 1 <= n <= 7 except 6.
IntPoly division_factor(const ShortCurve& c, int n);
// x^3 + A x + B
IntPoly curve_cubic(const ShortCurve& c);

TorsionGroup torsion_subgroup(const ShortCurve& c);

/// All torsion points (including O): integer points with y = 0 or
/// y^2 | 16|4A^3 + 27B^2| whose order is at most 12. Throws
/// FactorizationTimeout if the discriminant cannot be factored.
std::vector<CurvePoint> nagell_lutz_oracle(const ShortCurve& c);

/// Group structure of a finite subgroup given as its full point set.
TorsionGroup group_from_points(const ShortCurve& c, const std::vector<CurvePoint>& pts);

/// Integer roots of x^3 + a x + c by exact bisection on monotone pieces.
/// Requires |a| < 2^60 and |c| < 2^80.
std::vector<i128> cubic_integer_roots(i128 a, i128 c);

}  // namespace torcount
