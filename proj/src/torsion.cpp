#include "torcount/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace torcount {

namespace {

const std::array<TorsionGroup, 15> kMazur = {
    TorsionGroup::cyclic(1),   TorsionGroup::cyclic(2),   TorsionGroup::cyclic(3),
    TorsionGroup::cyclic(4),   TorsionGroup::cyclic(5),   TorsionGroup::cyclic(6),
    TorsionGroup::cyclic(7),   TorsionGroup::cyclic(8),   TorsionGroup::cyclic(9),
    TorsionGroup::cyclic(10),  TorsionGroup::cyclic(12),  TorsionGroup::product2(2),
    TorsionGroup::product2(4), TorsionGroup::product2(6), TorsionGroup::product2(8),
};

// Denominators d(G), numerators over 5 for the trivial group.
const std::array<std::pair<int, int>, 15> kD = {{
    {6, 5}, {2, 1}, {3, 1}, {4, 1}, {6, 1}, {6, 1}, {12, 1}, {12, 1},
    {18, 1}, {18, 1}, {24, 1}, {3, 1}, {6, 1}, {12, 1}, {24, 1},
}};

bool is_integral(const CurvePoint& p) { return p.infinity || (p.x.is_integer() && p.y.is_integer()); }

}  // namespace

std::string TorsionGroup::name() const {
  if (product) return "Z/2xZ/" + std::to_string(n);
  if (n == 1) return "0";
  return "Z/" + std::to_string(n);
}

TorsionGroup TorsionGroup::parse(std::string_view s) {
  for (const auto& g : kMazur) {
    if (g.name() == s) return g;
  }
  if (s == "1" || s == "Z/1" || s == "trivial") return cyclic(1);
  throw std::invalid_argument("unknown torsion group: " + std::string(s));
}

bool is_mazur(const TorsionGroup& g) {
  return std::find(kMazur.begin(), kMazur.end(), g) != kMazur.end();
}

const std::array<TorsionGroup, 15>& mazur_groups() { return kMazur; }

int group_index(const TorsionGroup& g) {
  auto it = std::find(kMazur.begin(), kMazur.end(), g);
  if (it == kMazur.end()) throw std::invalid_argument("not a Mazur group: " + g.name());
  return static_cast<int>(it - kMazur.begin());
}

bool contains_subgroup(const TorsionGroup& h, const TorsionGroup& g) {
  if (g.product && !h.product) return false;
  return h.n % g.n == 0;
}

Rational d_value(const TorsionGroup& g) {
  const auto& [num, den] = kD[static_cast<std::size_t>(group_index(g))];
  return Rational(BigInt(num), BigInt(den));
}

std::string CurvePoint::to_string() const {
  if (infinity) return "O";
  return "(" + x.to_string() + ", " + y.to_string() + ")";
}

bool on_curve(const ShortCurve& c, const CurvePoint& p) {
  if (p.infinity) return true;
  return p.y * p.y == p.x * p.x * p.x + Rational(c.A) * p.x + Rational(c.B);
}

CurvePoint negate(const CurvePoint& p) {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

CurvePoint add(const ShortCurve& c, const CurvePoint& p, const CurvePoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Rational lambda;
  if (p.x == q.x) {
    if (p.y == -q.y) return CurvePoint::at_infinity();
    lambda = (Rational(3) * p.x * p.x + Rational(c.A)) / (Rational(2) * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rational x3 = lambda * lambda - p.x - q.x;
  Rational y3 = lambda * (p.x - x3) - p.y;
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint multiply(const ShortCurve& c, const CurvePoint& p, int k) {
  CurvePoint acc = CurvePoint::at_infinity();
  CurvePoint base = k < 0 ? negate(p) : p;
  for (int e = std::abs(k); e > 0; e >>= 1) {
    if (e & 1) acc = add(c, acc, base);
    if (e > 1) base = add(c, base, base);
  }
  return acc;
}

std::optional<int> point_order(const ShortCurve& c, const CurvePoint& p) {
  if (!on_curve(c, p)) throw std::invalid_argument("point " + p.to_string() + " is not on the curve");
  if (p.infinity) return 1;
  // Torsion points on an integral model are integral, so a non-integral
  // multiple certifies infinite order.
  CurvePoint q = p;
  for (int n = 1; n <= 12; ++n) {
    if (q.infinity) return n;
    if (!is_integral(q)) return std::nullopt;
    q = add(c, q, p);
  }
  return std::nullopt;
}

IntPoly curve_cubic(const ShortCurve& c) { return IntPoly({c.B, c.A, 0, 1}); }

std::vector<BigInt> two_torsion_roots(const ShortCurve& c) { return integer_roots(curve_cubic(c)); }

TwoTorsion two_torsion_group(const ShortCurve& c) {
  const auto roots = two_torsion_roots(c);
  if (roots.empty()) return TwoTorsion::trivial;
  return roots.size() == 1 ? TwoTorsion::z2 : TwoTorsion::z2xz2;
}

std::optional<ThreeWitness> three_torsion_witness(const ShortCurve& c) {
  auto finish = [&](BigInt a, BigInt b) -> std::optional<ThreeWitness> {
    CurvePoint pt = CurvePoint::affine(Rational(3 * a * a), Rational(9 * a * a * a + b));
    if (point_order(c, pt) != 3) throw std::logic_error("3-torsion witness failed verification");
    return ThreeWitness{std::move(a), std::move(b), std::move(pt)};
  };
  BigInt r;
  if (c.A == 0 && is_square(c.B, &r)) return finish(BigInt(0), r);
  const BigInt amax = iroot(height(c.A, c.B), 12) + 2;
  for (BigInt m = 1; m <= amax; ++m) {
    for (int s : {1, -1}) {
      const BigInt a = s * m;
      const BigInt a2 = a * a;
      const BigInt num = c.A - 27 * a2 * a2;
      const BigInt den = 6 * a;
      if (num % den != 0) continue;
      BigInt b = num / den;
      if (b * b - 27 * a2 * a2 * a2 == c.B) return finish(a, std::move(b));
    }
  }
  return std::nullopt;
}

namespace {

constexpr std::uint32_t kCharLimit = 1024;

struct CharTables {
  // chi[p][v] in {-1, 0, 1}
  std::vector<std::vector<std::int8_t>> chi;
  CharTables() : chi(kCharLimit) {
    for (std::uint32_t p : primes_below(kCharLimit)) {
      auto& t = chi[p];
      t.assign(p, -1);
      t[0] = 0;
      for (std::uint64_t x = 1; x < p; ++x) t[(x * x) % p] = 1;
    }
  }
};

const CharTables& char_tables() {
  static const CharTables tables;
  return tables;
}

std::uint64_t mod_small(const BigInt& v, std::uint32_t p) {
  return mpz_fdiv_ui(v.backend().data(), p);
}

}  // namespace

std::uint32_t count_points_mod_p(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  std::int64_t sum = 0;
  if (p < kCharLimit) {
    const auto& chi = char_tables().chi[p];
    for (std::uint64_t x = 0; x < p; ++x) sum += chi[(x * x % p * x + a * x + b) % p];
  } else {
    for (std::uint64_t x = 0; x < p; ++x) {
      const std::uint64_t v = (x * x % p * x + a * x + b) % p;
      if (v == 0) continue;
      BigInt e;
      mpz_powm_ui(e.backend().data(), BigInt(v).backend().data(), (p - 1) / 2, BigInt(p).backend().data());
      sum += e == 1 ? 1 : -1;
    }
  }
  return static_cast<std::uint32_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

namespace {

bool admissible_order(std::uint64_t n) { return (n >= 1 && n <= 10) || n == 12 || n == 16; }

}  // namespace

std::uint64_t torsion_order_bound(const ShortCurve& c, int min_primes) {
  const BigInt disc = disc_core(c.A, c.B);
  std::uint64_t g = 0;
  int used = 0;
  for (std::uint32_t p : small_primes()) {
    if (p < 5) continue;
    if (mod_small(disc, p) == 0) continue;
    g = std::gcd(g, static_cast<std::uint64_t>(count_points_mod_p(mod_small(c.A, p), mod_small(c.B, p), p)));
    ++used;
    if (g == 1) break;
    if (used >= min_primes && admissible_order(g)) break;
    if (used >= 40) break;
  }
  return g;
}

IntPoly division_factor(const ShortCurve& c, int n) {
  const BigInt& A = c.A;
  const BigInt& B = c.B;
  const IntPoly W = curve_cubic(c);
  auto g3 = [&] { return IntPoly({-A * A, 12 * B, 6 * A, 0, 3}); };
  auto g4 = [&] {
    return IntPoly({2 * (-8 * B * B - A * A * A), 2 * (-4 * A * B), 2 * (-5 * A * A), 2 * (20 * B), 2 * (5 * A), 0, 2});
  };
  switch (n) {
    case 1:
    case 2:
      return IntPoly({1});
    case 3:
      return g3();
    case 4:
      return g4();
    case 5: {
      const IntPoly t = g3();
      return BigInt(16) * (W * W * g4()) - t * t * t;
    }
    case 7: {
      const IntPoly t3 = g3();
      const IntPoly t4 = g4();
      const IntPoly g5 = BigInt(16) * (W * W * t4) - t3 * t3 * t3;
      return g5 * t3 * t3 * t3 - BigInt(16) * (W * W * t4 * t4 * t4);
    }
    default:
      throw std::invalid_argument("division_factor: unsupported n");
  }
}

namespace {

// Affine points (x, +-y) for each integer root x of poly with x^3+Ax+B a square.
std::vector<CurvePoint> points_over_roots(const ShortCurve& c, const IntPoly& poly) {
  std::vector<CurvePoint> out;
  const IntPoly W = curve_cubic(c);
  for (const BigInt& x : integer_roots(poly)) {
    BigInt y;
    if (!is_square(W.eval(x), &y)) continue;
    out.push_back(CurvePoint::affine(Rational(x), Rational(y)));
    if (y != 0) out.push_back(CurvePoint::affine(Rational(x), Rational(BigInt(-y))));
  }
  return out;
}

// Points Q with 2Q = +-P.
std::vector<CurvePoint> halvings(const ShortCurve& c, const CurvePoint& p) {
  const IntPoly W = curve_cubic(c);
  const IntPoly lin({-p.x.num(), 1});
  return points_over_roots(c, BigInt(4) * (lin * W) - division_factor(c, 3));
}

// Points Q with 3Q = +-P.
std::vector<CurvePoint> thirds(const ShortCurve& c, const CurvePoint& p) {
  const IntPoly W = curve_cubic(c);
  const IntPoly lin({-p.x.num(), 1});
  const IntPoly g3 = division_factor(c, 3);
  return points_over_roots(c, lin * g3 * g3 - BigInt(4) * (W * division_factor(c, 4)));
}

std::optional<CurvePoint> point_of_order(const ShortCurve& c, int ell) {
  for (const auto& p : points_over_roots(c, division_factor(c, ell))) {
    if (point_order(c, p) == ell) return p;
  }
  return std::nullopt;
}

}  // namespace

TorsionGroup torsion_subgroup(const ShortCurve& c) {
  const std::uint64_t bound = torsion_order_bound(c);
  if (bound == 1) return TorsionGroup::cyclic(1);

  // 2-primary part: all points of order 2^k, extended by halving.
  const auto roots = two_torsion_roots(c);
  const bool full2 = roots.size() == 3;
  int two_order = 1;
  CurvePoint two_gen = CurvePoint::at_infinity();
  if (!roots.empty()) {
    std::vector<CurvePoint> frontier;
    for (const auto& r : roots) frontier.push_back(CurvePoint::affine(Rational(r), Rational(0)));
    two_order = 2;
    const std::uint64_t cofactor = full2 ? 2 : 1;
    while (bound % (cofactor * 2 * static_cast<std::uint64_t>(two_order)) == 0) {
      std::vector<CurvePoint> next;
      for (const auto& p : frontier) {
        for (auto& q : halvings(c, p)) {
          if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(std::move(q));
        }
      }
      if (next.empty()) break;
      frontier = std::move(next);
      two_order *= 2;
    }
    two_gen = frontier.front();
  }

  int odd_order = 1;
  CurvePoint odd_gen = CurvePoint::at_infinity();
  for (int ell : {3, 5, 7}) {
    if (bound % static_cast<std::uint64_t>(ell) != 0) continue;
    if (auto p = point_of_order(c, ell)) {
      odd_order = ell;
      odd_gen = *p;
      break;
    }
  }
  if (odd_order == 3 && bound % 9 == 0) {
    for (const auto& q : thirds(c, odd_gen)) {
      if (point_order(c, q) == 9) {
        odd_order = 9;
        odd_gen = q;
        break;
      }
    }
  }

  if (point_order(c, two_gen) != two_order || point_order(c, odd_gen) != odd_order) {
    throw std::logic_error("torsion generator failed order confirmation on " + c.to_string());
  }
  const int cyc = two_order * odd_order;
  const TorsionGroup g = full2 ? TorsionGroup::product2(cyc) : TorsionGroup::cyclic(cyc);
  if (!is_mazur(g)) throw std::logic_error("non-Mazur torsion " + g.name() + " on " + c.to_string());
  if (bound % static_cast<std::uint64_t>(g.order()) != 0) {
    throw std::logic_error("torsion order does not divide the reduction bound on " + c.to_string());
  }
  return g;
}

std::vector<i128> cubic_integer_roots(i128 a, i128 c) {
  const i128 lim_a = static_cast<i128>(1) << 60;
  const i128 lim_c = static_cast<i128>(1) << 80;
  if (a >= lim_a || -a >= lim_a || c >= lim_c || -c >= lim_c) {
    throw std::out_of_range("cubic_integer_roots: coefficients too large");
  }
  auto f = [&](i128 x) { return x * x * x + a * x + c; };
  const i128 abs_a = a < 0 ? -a : a;
  const i128 abs_c = c < 0 ? -c : c;
  const i128 ra = to_i128(iroot(to_big(2 * abs_a), 2)) + 1;
  const i128 rc = to_i128(iroot(to_big(2 * abs_c), 3)) + 1;
  const i128 R = std::max(ra, rc) + 1;
  std::vector<std::pair<i128, i128>> pieces;  // (lo, hi) with direction
  std::vector<bool> increasing;
  if (a >= 0) {
    pieces.emplace_back(-R, R);
    increasing.push_back(true);
  } else {
    const i128 fl = to_i128(iroot(to_big(-a / 3), 2));
    pieces.emplace_back(-R, -fl - 1);
    increasing.push_back(true);
    pieces.emplace_back(-fl, fl);
    increasing.push_back(false);
    pieces.emplace_back(fl + 1, R);
    increasing.push_back(true);
  }
  std::vector<i128> roots;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    i128 lo = pieces[i].first, hi = pieces[i].second;
    if (lo > hi) continue;
    const bool inc = increasing[i];
    // First x with f(x) >= 0 (increasing) or f(x) <= 0 (decreasing).
    auto reached = [&](i128 x) { return inc ? f(x) >= 0 : f(x) <= 0; };
    if (!reached(hi)) continue;
    while (lo < hi) {
      const i128 mid = lo + (hi - lo) / 2;
      if (reached(mid)) hi = mid;
      else lo = mid + 1;
    }
    if (f(lo) == 0) roots.push_back(lo);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

TorsionGroup group_from_points(const ShortCurve& c, const std::vector<CurvePoint>& pts) {
  int order2 = 0;
  for (const auto& p : pts) {
    if (!p.infinity && p.y.is_zero()) ++order2;
  }
  (void)c;
  const int n = static_cast<int>(pts.size());
  const TorsionGroup g = order2 == 3 ? TorsionGroup::product2(n / 2) : TorsionGroup::cyclic(n);
  if (!is_mazur(g)) throw std::logic_error("point set is not a Mazur group: " + std::to_string(n) + " points");
  return g;
}

std::vector<CurvePoint> nagell_lutz_oracle(const ShortCurve& c) {
  const BigInt d = abs(disc_core(c.A, c.B)) * 16;
  // y ranges over divisors with y^2 | d.
  std::vector<BigInt> ys{1};
  for (const auto& [p, e] : factor(d)) {
    const std::size_t base = ys.size();
    BigInt pk = 1;
    for (int k = 1; 2 * k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ys.push_back(ys[i] * pk);
    }
  }
  ys.push_back(0);
  std::vector<CurvePoint> pts{CurvePoint::at_infinity()};
  const i128 a = to_i128(c.A);
  for (const BigInt& y : ys) {
    const i128 cc = to_i128(c.B - y * y);
    for (i128 x : cubic_integer_roots(a, cc)) {
      for (int s : {1, -1}) {
        if (s < 0 && y == 0) continue;
        CurvePoint p = CurvePoint::affine(Rational(to_big(x)), Rational(BigInt(s * y)));
        if (point_order(c, p)) pts.push_back(std::move(p));
      }
    }
  }
  return pts;
}

}  // namespace torcount
