#include "torcount/regions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "torcount/curves.hpp"

namespace torcount {

namespace {

using ld = long double;

template <class F>
ld bisect(F f, ld lo, ld hi) {
  ld flo = f(lo);
  if ((flo > 0) == (f(hi) > 0)) throw std::logic_error("bisect: bracket has no sign change");
  for (int it = 0; it < 200 && hi - lo > 1e-18L; ++it) {
    const ld mid = (lo + hi) / 2;
    const ld fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

// Real roots of f in [lo, hi], located by a sign-change scan then bisection.
template <class F>
std::vector<ld> scan_roots(F f, ld lo, ld hi, int steps) {
  std::vector<ld> roots;
  const ld h = (hi - lo) / steps;
  ld x0 = lo, f0 = f(lo);
  for (int k = 1; k <= steps; ++k) {
    const ld x1 = lo + h * k;
    const ld f1 = f(x1);
    if (f0 == 0) roots.push_back(x0);
    else if ((f0 > 0) != (f1 > 0) && f1 != 0) roots.push_back(bisect(f, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

ld simpson_rec(const std::function<ld(ld)>& f, ld a, ld b, ld fa, ld fm, ld fb, ld whole, ld eps, int depth) {
  const ld m = (a + b) / 2;
  const ld lm = (a + m) / 2, rm = (m + b) / 2;
  const ld flm = f(lm), frm = f(rm);
  const ld left = (m - a) / 6 * (fa + 4 * flm + fm);
  const ld right = (b - m) / 6 * (fm + 4 * frm + fb);
  const ld delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) return left + right + delta / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

ld adaptive_simpson(const std::function<ld(ld)>& f, ld a, ld b, ld eps) {
  const ld fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const ld whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, eps, 50);
}

ld to_ld(i128 v) { return static_cast<ld>(v); }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

// Floor of the k-th root of v >= 0.
i128 iroot128(i128 v, unsigned k) { return v <= 0 ? 0 : to_i128(iroot(to_big(v), k)); }

void check_X(i128 X) {
  if (X < 1 || X > kRegionMaxX) throw std::out_of_range("region height must lie in [1, 10^30]");
}

}  // namespace

std::pair<ld, ld> alpha_pm() {
  const ld plus = bisect([](ld x) { return x * x * x + x - 1; }, 0.0L, 1.0L);
  const ld minus = bisect([](ld x) { return x * x * x - x - 1; }, 1.0L, 2.0L);
  return {plus, minus};
}

std::array<ld, 4> quartic_roots() {
  auto fp = [](ld x) { return 3 * x * x * x * x + 6 * x * x + 12 * x - 1; };
  auto fm = [](ld x) { return 3 * x * x * x * x - 6 * x * x + 12 * x - 1; };
  // All roots have |x| < 1 + 12/3.
  const auto rp = scan_roots(fp, -5.5L, 5.5L, 11000);
  const auto rm = scan_roots(fm, -5.5L, 5.5L, 11000);
  if (rp.size() != 2 || rm.size() != 2) throw std::logic_error("quartic_roots: expected two real roots each");
  return {rp[1], rp[0], rm[1], rm[0]};
}

std::array<ld, 6> alphas() {
  const auto q = quartic_roots();
  const ld s = 1.0L / std::sqrt(3.0L);
  return {q[3], q[1], -s, q[2], q[0], s};
}

std::array<ld, 6> betas() {
  const auto a = alphas();
  std::array<ld, 6> b{};
  for (int i = 0; i < 6; ++i) {
    const ld mag = std::sqrt(std::fabs(a[static_cast<std::size_t>(i)]) / 3);
    b[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] < 0 ? -mag : mag;
  }
  b[3] = -std::fabs(b[3]);
  for (int i = 0; i < 5; ++i) {
    if (!(b[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i) + 1])) {
      throw std::logic_error("betas: ordering violated at index " + std::to_string(i));
    }
  }
  return b;
}

ld integral_I(int sign) {
  const auto b = betas();
  if (sign > 0) {
    return adaptive_simpson([](ld a) { return std::sqrt(1 + 27 * std::pow(a, 6)); }, b[3], b[4], 1e-12L);
  }
  auto integrand = [](ld a) {
    const ld r = 27 * std::pow(a, 6) - 1;
    // The left endpoint of the interval is the root of the radicand.
    if (r < -1e-12L) throw std::logic_error("integral_I: negative radicand");
    return std::sqrt(std::max<ld>(r, 0));
  };
  return adaptive_simpson(integrand, b[0], b[1], 1e-12L);
}

ld area3_plus() {
  const auto b = betas();
  auto p4 = [](ld x) { return x * x * x * x; };
  return integral_I(1) - integral_I(-1) + std::log((b[0] * b[1] * b[5]) / (b[2] * b[3] * b[4])) / 6 +
         9.0L / 8 * (p4(b[0]) + p4(b[2]) + p4(b[4]) - p4(b[1]) - p4(b[3]) - p4(b[5]));
}

ld region_area(int i) {
  switch (i) {
    case 1:
      return 4;
    case 2: {
      const auto [p, m] = alpha_pm();
      return 2 * std::log(m / p) + 4.0L / 3 * (p + m);
    }
    case 3:
      return 2 * area3_plus();
    default:
      throw std::invalid_argument("region index must be 1, 2 or 3");
  }
}

std::pair<int, int> region_d(int i) {
  switch (i) {
    case 1:
      return {6, 5};
    case 2:
      return {2, 1};
    case 3:
      return {3, 1};
    default:
      throw std::invalid_argument("region index must be 1, 2 or 3");
  }
}

std::pair<int, int> region_e(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("region index must be 1, 2 or 3");
  return {i + 1, 1};
}

ld c_constant(int i) {
  const auto [dn, dd] = region_d(i);
  // 12 / d_i = 12 dd / dn
  return region_area(i) / zeta(12 * dd / dn);
}

ConstantsReport compute_constants() {
  ConstantsReport r;
  std::tie(r.alpha_plus, r.alpha_minus) = alpha_pm();
  r.alpha = alphas();
  r.beta = betas();
  r.I_plus = integral_I(1);
  r.I_minus = integral_I(-1);
  r.area1 = region_area(1);
  r.area2 = region_area(2);
  r.area3_plus = area3_plus();
  r.area3 = 2 * r.area3_plus;
  r.zeta4 = zeta(4);
  r.zeta6 = zeta(6);
  r.zeta10 = zeta(10);
  r.c1 = r.area1 / r.zeta10;
  r.c2 = r.area2 / r.zeta6;
  r.c3 = r.area3 / r.zeta4;
  return r;
}

std::pair<i128, i128> T_map(int i, i128 a, i128 b) {
  switch (i) {
    case 1:
      return {a, b};
    case 2:
      return {a, b * b * b + a * b};
    case 3: {
      const i128 a2 = a * a;
      return {6 * a * b + 27 * a2 * a2, b * b - 27 * a2 * a2 * a2};
    }
    default:
      throw std::invalid_argument("region index must be 1, 2 or 3");
  }
}

namespace {

// |A|^3 < X and B^2 < X without overflow for X <= 10^30.
bool height_below(i128 A, i128 B, i128 X) {
  const i128 a = abs128(A), b = abs128(B);
  if (a >= (static_cast<i128>(1) << 40) || b >= (static_cast<i128>(1) << 60)) return false;
  return a * a * a < X && b * b < X;
}

struct ScanBox {
  i128 amax, bmax;
};

ScanBox scan_box(int i, i128 X) {
  switch (i) {
    case 1:
      return {iroot128(X - 1, 3), iroot128(X - 1, 2)};
    case 2: {
      const ld x6 = std::pow(to_ld(X), 1.0L / 6);
      return {iroot128(X - 1, 3), static_cast<i128>(alpha_pm().second * x6) + 2};
    }
    case 3: {
      const auto b = betas();
      const ld x12 = std::pow(to_ld(X), 1.0L / 12);
      const ld reach = std::max(std::fabs(b[0]), std::fabs(b[5]));
      const ld x4 = std::pow(to_ld(X), 0.25L);
      return {static_cast<i128>(reach * x12) + 2, static_cast<i128>(2 * std::sqrt(7.0L) * x4) + 2};
    }
    default:
      throw std::invalid_argument("region index must be 1, 2 or 3");
  }
}

}  // namespace

bool in_region(int i, i128 X, i128 a, i128 b) {
  check_X(X);
  // Keep T_i inside 128 bits; anything this large is far outside the region.
  const i128 lim_a = static_cast<i128>(1) << 20, lim_b = static_cast<i128>(1) << 40;
  if (i == 3 && (abs128(a) >= lim_a || abs128(b) >= lim_b)) return false;
  if (i == 2 && (abs128(a) >= lim_b || abs128(b) >= lim_a)) return false;
  if (i == 1 && (abs128(a) >= lim_b || abs128(b) >= (static_cast<i128>(1) << 60))) return false;
  const auto [A, B] = T_map(i, a, b);
  return height_below(A, B, X);
}

void enumerate_region(int i, i128 X, const std::function<void(const RegionPoint&)>& visit) {
  check_X(X);
  const ScanBox box = scan_box(i, X);
  for (i128 a = -box.amax; a <= box.amax; ++a) {
    for (i128 b = -box.bmax; b <= box.bmax; ++b) {
      if (!in_region(i, X, a, b)) continue;
      const auto [A, B] = T_map(i, a, b);
      if (4 * A * A * A + 27 * B * B == 0) continue;
      visit({static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(A),
             static_cast<std::int64_t>(B)});
    }
  }
}

std::uint64_t lattice_count(int i, i128 X) {
  check_X(X);
  if (i == 1) {
    const i128 m = iroot128(X - 1, 3), n = iroot128(X - 1, 2);
    // Singular points (-3t^2, +-2t^3) inside the box.
    i128 singular = 1;
    for (i128 t = 1; 3 * t * t <= m && 2 * t * t * t <= n; ++t) singular += 2;
    return static_cast<std::uint64_t>((2 * m + 1) * (2 * n + 1) - singular);
  }
  std::uint64_t count = 0;
  enumerate_region(i, X, [&](const RegionPoint&) { ++count; });
  return count;
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> distinct_images(int i, i128 X, std::uint64_t* lattice) {
  std::vector<std::pair<std::int64_t, std::int64_t>> v;
  enumerate_region(i, X, [&](const RegionPoint& p) { v.emplace_back(p.A, p.B); });
  if (lattice != nullptr) *lattice = v.size();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

EquationCount equation_count(int i, i128 X) {
  EquationCount r;
  r.distinct = distinct_images(i, X, &r.lattice).size();
  return r;
}

SievedCount sieved_count(int i, i128 X) {
  SievedCount r;
  const auto images = distinct_images(i, X, nullptr);

  // (a) inclusion-exclusion over the scaling d; heights below X/d^12 are the
  // integers below floor((X-1)/d^12) + 1.
  std::int64_t total = 0;
  for (i128 d = 1;; ++d) {
    i128 d12 = 1;
    for (int k = 0; k < 12; ++k) d12 *= d;
    if (d12 >= X) break;
    const int mu = mobius(static_cast<std::uint64_t>(d));
    if (mu == 0) continue;
    const i128 Xd = (X - 1) / d12 + 1;
    const auto level = d == 1 ? images : distinct_images(i, Xd, nullptr);
    total += mu * static_cast<std::int64_t>(level.size());
  }
  r.mobius = static_cast<std::uint64_t>(total);

  // (b) reduce every image to its minimal model and deduplicate.
  std::vector<std::pair<std::int64_t, std::int64_t>> minimal;
  minimal.reserve(images.size());
  for (const auto& [A, B] : images) minimal.push_back(minimal_reduce(A, B));
  std::sort(minimal.begin(), minimal.end());
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  r.direct = minimal.size();
  r.agree = r.mobius == r.direct;
  if (!r.agree) {
    for (const auto& m : minimal) {
      if (!std::binary_search(images.begin(), images.end(), m)) {
        r.witness = std::to_string(m.first) + " " + std::to_string(m.second);
        break;
      }
    }
    if (r.witness.empty()) r.witness = "no minimal model outside the image set";
  }
  return r;
}

ld empirical_constant(int i, i128 X, std::uint64_t sieved) {
  const auto [dn, dd] = region_d(i);
  return static_cast<ld>(sieved) / std::pow(to_ld(X), static_cast<ld>(dd) / dn);
}

PiecewiseCheck piecewise_R3_check(i128 X, std::uint64_t sample, std::uint64_t seed) {
  check_X(X);
  PiecewiseCheck res;
  const auto beta = betas();
  const ld x = to_ld(X);
  const ld s = std::pow(x, 1.0L / 12);
  const ld x3 = std::cbrt(x);
  const ld x2 = std::sqrt(x);
  const ScanBox box = scan_box(3, X);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> da(-static_cast<std::int64_t>(box.amax), static_cast<std::int64_t>(box.amax));
  std::uniform_int_distribution<std::int64_t> db(1, static_cast<std::int64_t>(box.bmax));
  const ld eps = 1e-9L;

  auto A_plus = [&](ld a) { return (x3 - 27 * a * a * a * a) / (6 * a); };
  auto A_minus = [&](ld a) { return (-x3 - 27 * a * a * a * a) / (6 * a); };
  auto B_plus = [&](ld a) { return std::sqrt(x2 + 27 * std::pow(a, 6)); };
  auto B_minus = [&](ld a) { return std::sqrt(std::max<ld>(0, -x2 + 27 * std::pow(a, 6))); };

  for (std::uint64_t k = 0; k < sample; ++k) {
    const std::int64_t ai = da(rng), bi = db(rng);
    const ld a = static_cast<ld>(ai), b = static_cast<ld>(bi);
    int interval = -1;
    bool near = false;
    for (int j = 0; j < 5; ++j) {
      const ld lo = beta[static_cast<std::size_t>(j)] * s, hi = beta[static_cast<std::size_t>(j) + 1] * s;
      if (std::fabs(a - lo) < eps * (1 + std::fabs(lo)) || std::fabs(a - hi) < eps * (1 + std::fabs(hi))) near = true;
      if (lo < a && a < hi) interval = j;
    }
    bool predicted = false;
    if (interval >= 0) {
      ld f = 0, g = 0;
      switch (interval) {
        case 0:
          f = A_minus(a);
          g = B_minus(a);
          break;
        case 1:
          f = A_minus(a);
          g = A_plus(a);
          break;
        case 2:
          f = A_minus(a);
          break;
        case 3:
          f = B_plus(a);
          break;
        default:
          f = A_plus(a);
          break;
      }
      if (std::fabs(b - f) < eps * (1 + std::fabs(f)) || std::fabs(b - g) < eps * (1 + std::fabs(g))) near = true;
      predicted = g < b && b < f;
    }
    if (near) {
      ++res.skipped;
      continue;
    }
    ++res.tested;
    if (predicted != in_region(3, X, ai, bi)) {
      res.ok = false;
      res.interval = interval;
      res.counterexample = "a=" + std::to_string(ai) + " b=" + std::to_string(bi);
      return res;
    }
  }
  return res;
}

}  // namespace torcount
