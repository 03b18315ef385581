#include "torcount/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace torcount {

namespace {

Rational q(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

RatPoly poly(std::vector<Rational> c) { return RatPoly(std::move(c)); }

// (-27 c4, -54 c6) of a long Weierstrass equation with polynomial coefficients.
std::pair<RatPoly, RatPoly> long_to_short_poly(const RatPoly& a1, const RatPoly& a2, const RatPoly& a3,
                                               const RatPoly& a4, const RatPoly& a6) {
  const RatPoly b2 = a1 * a1 + a2.scaled(4);
  const RatPoly b4 = a4.scaled(2) + a1 * a3;
  const RatPoly b6 = a3 * a3 + a6.scaled(4);
  const RatPoly c4 = b2 * b2 - b4.scaled(24);
  const RatPoly c6 = (b2 * b4).scaled(36) - b2 * b2 * b2 - b6.scaled(216);
  return {c4.scaled(-27), c6.scaled(-54)};
}

FamilySpec z4_family() {
  // y^2 + xy - ty = x^3 - tx^2
  const RatPoly t = RatPoly::monomial(1, 1);
  auto [f, g] = long_to_short_poly(poly({1}), t.scaled(-1), t.scaled(-1), RatPoly(), RatPoly());
  FamilySpec s;
  s.G = TorsionGroup::cyclic(4);
  s.f = f;
  s.g = g;
  s.source = "builtin";
  fill_parameters(s);
  return s;
}

FamilySpec z2xz2_family() {
  FamilySpec s;
  s.G = TorsionGroup::product2(2);
  s.f = poly({q(-1, 3), q(1, 3), q(-1, 3)});
  s.g = poly({q(-2, 27), q(3, 27), q(3, 27), q(-2, 27)});
  s.wa = 2;
  s.wb = 3;
  s.source = "builtin";
  fill_parameters(s);
  return s;
}

BigInt lcm_denominators(const FamilySpec& spec) {
  BigInt M = 1;
  for (const auto* p : {&spec.f, &spec.g}) {
    for (const auto& c : p->coeffs()) M = boost::multiprecision::lcm(M, c.den());
  }
  return M;
}

std::vector<BigInt> integer_coeffs(const RatPoly& p, const BigInt& scale) {
  std::vector<BigInt> out;
  for (const auto& c : p.coeffs()) {
    const Rational v = c * Rational(scale);
    if (!v.is_integer()) throw std::logic_error("scaled family coefficient is not integral");
    out.push_back(v.num());
  }
  return out;
}

BigInt ipow(const BigInt& x, int e) {
  BigInt r = 1;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

// sum_k c_k a^k b^(top - m k)
BigInt homogeneous_eval(const std::vector<BigInt>& c, const BigInt& a, const BigInt& b, int top, int m) {
  BigInt acc = 0;
  BigInt apow = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int e = top - m * static_cast<int>(k);
    if (c[k] != 0) acc += c[k] * apow * ipow(b, e);
    apow *= a;
  }
  return acc;
}

bool canonical_pair(const BigInt& a, const BigInt& b, int m) {
  if (a == 0) return b == 1;
  BigInt g = boost::multiprecision::gcd(a, b);
  if (g == 1) return true;
  if (m == 1) return false;
  // v_p(a) < m for every p dividing gcd(a, b)
  BigInt rest = abs(a);
  for (const auto& [p, e] : factor(g)) {
    (void)e;
    if (valuation(rest, static_cast<std::uint64_t>(p.convert_to<unsigned long long>())) >= m) return false;
  }
  return true;
}

}  // namespace

void fill_parameters(FamilySpec& spec) {
  if (spec.f.is_zero() || spec.g.is_zero()) throw std::invalid_argument("family polynomials must be nonzero");
  spec.r = spec.f.degree();
  spec.s = spec.g.degree();
  const Rational x = Rational(BigInt(spec.r), BigInt(spec.wa));
  const Rational y = Rational(BigInt(spec.s), BigInt(spec.wb));
  const Rational mx = x < y ? y : x;
  spec.n = mx.num().convert_to<int>();
  spec.m = mx.den().convert_to<int>();
  spec.ell.reset();
  if (spec.wa == 4 && spec.r > 0 && spec.r % 4 == 0 && spec.s == 6 * (spec.r / 4)) spec.ell = spec.r / 4;
}

int injection_count(const TorsionGroup& G) {
  const int N = G.n;
  Rational k = Rational(BigInt(N) * N);
  for (int p = 2; p <= N; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (prime && N % p == 0) k *= Rational(BigInt(p * p - 1), BigInt(p * p));
  }
  if (G.product) k *= Rational(2);
  return k.num().convert_to<int>();
}

std::optional<std::array<int, 4>> expected_parameters(const TorsionGroup& G) {
  static const std::map<std::string, std::array<int, 4>> rows = {
      {"Z/3", {1, 2, 1, 3}},     {"Z/4", {2, 3, 1, 2}},      {"Z/5", {4, 6, 1, 1}},
      {"Z/6", {4, 6, 1, 1}},     {"Z/7", {8, 12, 2, 1}},     {"Z/8", {8, 12, 2, 1}},
      {"Z/9", {12, 18, 3, 1}},   {"Z/10", {12, 18, 3, 1}},   {"Z/12", {16, 24, 4, 1}},
      {"Z/2xZ/4", {4, 6, 1, 1}}, {"Z/2xZ/6", {8, 12, 2, 1}}, {"Z/2xZ/8", {16, 24, 4, 1}},
  };
  const auto it = rows.find(G.name());
  if (it == rows.end()) return std::nullopt;
  return it->second;
}

ContainmentResult containment_check(const FamilySpec& spec, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> num(-30, 30), den(1, 30), mag(1, 30), sign(0, 1);
  ContainmentResult res;
  for (int attempt = 0; res.tested < samples && attempt < 20 * samples; ++attempt) {
    const Rational t = q(num(rng), den(rng));
    const Rational u = q(sign(rng) ? mag(rng) : -mag(rng), den(rng));
    const auto c = specialize(spec, t, u);
    if (!c) {
      ++res.skipped;
      continue;
    }
    ++res.tested;
    const TorsionGroup tors = torsion_subgroup(*c);
    if (!contains_subgroup(tors, spec.G)) {
      if (res.failures++ == 0) {
        res.first_failure = "t=" + t.to_string() + " u=" + u.to_string() + " curve " + c->to_string() + " has " +
                            tors.name();
      }
    }
  }
  return res;
}

FamilySpec z3_family(int sign) {
  FamilySpec s;
  s.G = TorsionGroup::cyclic(3);
  s.f = poly({q(-1, 3), 2});
  s.g = poly({q(2, 27), q(sign < 0 ? -2 : 2, 3), 1});
  s.source = "builtin";
  fill_parameters(s);
  return s;
}

Z3SignOutcome z3_sign_adjudication(int samples) {
  Z3SignOutcome out;
  out.plus = containment_check(z3_family(1), samples, 101);
  out.minus = containment_check(z3_family(-1), samples, 101);
  if (out.plus.ok() != out.minus.ok()) out.winner = out.plus.ok() ? 1 : -1;
  return out;
}

const std::vector<FamilySpec>& builtin_families() {
  static const std::vector<FamilySpec> fams = [] {
    const auto z3 = z3_sign_adjudication();
    if (z3.winner == 0) throw std::runtime_error("Z/3 family: no unique sign passes containment");
    std::vector<FamilySpec> out = {z3_family(z3.winner), z4_family(), z2xz2_family()};
    for (const auto& s : out) {
      const auto r = containment_check(s, 50, 7);
      if (!r.ok()) throw std::runtime_error(s.G.name() + " family fails containment: " + r.first_failure);
    }
    return out;
  }();
  return fams;
}

const FamilySpec& builtin_family(const TorsionGroup& G) {
  for (const auto& s : builtin_families()) {
    if (s.G == G) return s;
  }
  throw std::invalid_argument("no builtin family for " + G.name());
}

std::optional<std::string> validate_family(const FamilySpec& spec, int samples) {
  if (spec.f.is_zero() || spec.g.is_zero()) return "f and g must be nonzero";
  if (!((spec.wa == 4 && spec.wb == 6) || (spec.wa == 2 && spec.wb == 3))) return "weight must be [4,6] or [2,3]";
  if (!coprime(spec.f, spec.g)) return "f and g are not coprime";
  if (spec.n != 1 && spec.m != 1) return "neither n nor m equals 1";
  if (spec.G.order() > 4) {
    const int k = injection_count(spec.G);
    if (k % 24 != 0) return "k = " + std::to_string(k) + " is not divisible by 24";
    const int ell = k / 24;
    if (spec.r != 4 * ell || spec.s != 6 * ell) {
      return "degree law: deg f = " + std::to_string(spec.r) + ", deg g = " + std::to_string(spec.s) +
             ", expected " + std::to_string(4 * ell) + ", " + std::to_string(6 * ell);
    }
  }
  if (const auto row = expected_parameters(spec.G)) {
    const std::array<int, 4> got = {spec.r, spec.s, spec.n, spec.m};
    if (got != *row) {
      return "(r,s,n,m) = (" + std::to_string(spec.r) + "," + std::to_string(spec.s) + "," + std::to_string(spec.n) +
             "," + std::to_string(spec.m) + ") does not match the expected parameters";
    }
  }
  const auto c = containment_check(spec, samples, 11);
  if (!c.ok()) return "torsion containment fails: " + c.first_failure;
  return std::nullopt;
}

FamilyLoadReport load_families(const std::string& path, int samples) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("family file " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("family file " + path + ": expected a JSON array");
  FamilyLoadReport report;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    FamilySpec spec;
    std::string label = "entry " + std::to_string(i);
    try {
      label = e.at("group").get<std::string>();
      spec.G = TorsionGroup::parse(label);
      const auto w = e.at("weight").get<std::vector<int>>();
      if (w.size() != 2) throw std::runtime_error("weight must have two entries");
      spec.wa = w[0];
      spec.wb = w[1];
      std::vector<Rational> f, g;
      for (const auto& c : e.at("f")) f.push_back(Rational::parse(c.get<std::string>()));
      for (const auto& c : e.at("g")) g.push_back(Rational::parse(c.get<std::string>()));
      spec.f = RatPoly(f);
      spec.g = RatPoly(g);
    } catch (const std::exception& ex) {
      throw std::runtime_error("family file " + path + ", " + label + ": " + ex.what());
    }
    spec.source = path;
    if (spec.f.is_zero() || spec.g.is_zero()) {
      report.failures.push_back(label + ": f and g must be nonzero");
      continue;
    }
    fill_parameters(spec);
    if (auto bad = validate_family(spec, samples)) {
      report.failures.push_back(label + ": " + *bad);
      continue;
    }
    report.families.push_back(std::move(spec));
  }
  return report;
}

std::string default_family_file() { return std::string(TORCOUNT_DATA_DIR) + "/kubert_families.json"; }

std::optional<ShortCurve> specialize(const FamilySpec& spec, const Rational& t, const Rational& u) {
  if (u.is_zero()) throw std::invalid_argument("u must be nonzero");
  const Rational A = pow(u, static_cast<unsigned>(spec.wa)) * spec.f.eval(t);
  const Rational B = pow(u, static_cast<unsigned>(spec.wb)) * spec.g.eval(t);
  if (Rational(4) * A * A * A + Rational(27) * B * B == Rational(0)) return std::nullopt;
  return integral_minimal_model(A, B);
}

ParamPoint param_normalize(int m, const Rational& t) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (t.is_zero()) throw std::invalid_argument("t must be nonzero");
  BigInt b = 1;
  if (t.den() != 1) {
    for (const auto& [p, e] : factor(t.den())) b *= ipow(p, (e + m - 1) / m);
  }
  const BigInt bm = ipow(b, m);
  return {t.num() * (bm / t.den()), b};
}

FamilyEnumeration enumerate_family(const FamilySpec& spec, const BigInt& X) {
  // u -> M u; for weight (2, 3) M is squared so the scaling stays an isomorphism
  const BigInt M0 = lcm_denominators(spec);
  const BigInt M = spec.wa == 2 ? M0 * M0 : M0;
  const auto fi = integer_coeffs(spec.f, ipow(M, spec.wa));
  const auto gi = integer_coeffs(spec.g, ipow(M, spec.wb));
  const int topA = spec.n * spec.wa, topB = spec.n * spec.wb;
  if (topA < spec.m * spec.r || topB < spec.m * spec.s) throw std::logic_error("family exponents inconsistent");

  std::map<ShortCurve, BigInt> found;
  std::vector<Rational> singular;
  // Returns true when (a, b) gives a curve of height below X.
  auto visit = [&](const BigInt& a, const BigInt& b) {
    if (!canonical_pair(a, b, spec.m)) return false;
    const BigInt A = homogeneous_eval(fi, a, b, topA, spec.m);
    const BigInt B = homogeneous_eval(gi, a, b, topB, spec.m);
    if (disc_core(A, B) == 0) {
      const Rational t = Rational(a, ipow(b, spec.m));
      if (std::find(singular.begin(), singular.end(), t) == singular.end()) singular.push_back(t);
      return false;
    }
    auto [Ar, Br] = minimal_reduce(A, B);
    BigInt h = height(Ar, Br);
    if (h >= X) return false;
    found.emplace(ShortCurve(std::move(Ar), std::move(Br)), std::move(h));
    return true;
  };
  // a in [-amax, amax] with alo < |a| <= ahi, or b in (blo, bhi].
  auto sweep = [&](const BigInt& alo, const BigInt& ahi, const BigInt& blo, const BigInt& bhi) {
    bool any = false;
    for (BigInt b = blo + 1; b <= bhi; ++b) {
      for (BigInt a = -ahi; a <= ahi; ++a) {
        if (abs(a) <= alo && b <= blo) continue;
        any = visit(a, b) || any;
      }
    }
    return any;
  };

  BigInt amax = 1, bmax = 1;
  sweep(BigInt(-1), amax, BigInt(0), bmax);
  for (bool grew = true; grew;) {
    grew = false;
    // a-direction strip over the current b range
    bool any = false;
    for (BigInt b = 1; b <= bmax; ++b) {
      for (BigInt a = amax + 1; a <= 2 * amax; ++a) {
        any = visit(a, b) || any;
        any = visit(-a, b) || any;
      }
    }
    if (any) {
      amax *= 2;
      grew = true;
    }
    if (sweep(amax, amax, bmax, 2 * bmax)) {
      bmax *= 2;
      grew = true;
    }
  }

  FamilyEnumeration out;
  out.amax = amax;
  out.bmax = bmax;
  out.singular_t = std::move(singular);
  for (auto& [c, h] : found) out.curves.push_back({c, h});
  return out;
}

std::vector<std::uint64_t> family_counts(const FamilySpec& spec, const std::vector<BigInt>& checkpoints) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) throw std::invalid_argument("checkpoints must increase");
  const auto e = enumerate_family(spec, checkpoints.back());
  std::vector<std::uint64_t> out;
  for (const auto& X : checkpoints) {
    out.push_back(static_cast<std::uint64_t>(
        std::count_if(e.curves.begin(), e.curves.end(), [&](const FamilyCurve& c) { return c.height < X; })));
  }
  return out;
}

long double fit_exponent(const std::vector<std::pair<long double, long double>>& counts) {
  if (counts.size() < 3) throw std::invalid_argument("fit_exponent needs at least 3 points");
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& [X, N] = counts[i];
    if (!(N > 0) || !(X > 0)) throw std::invalid_argument("fit_exponent needs positive X and N");
    if (i > 0 && !(X > counts[i - 1].first)) throw std::invalid_argument("fit_exponent needs increasing X");
    sx += std::log(X);
    sy += std::log(N);
  }
  const auto n = static_cast<long double>(counts.size());
  const long double mx = sx / n, my = sy / n;
  long double sxx = 0, sxy = 0;
  for (const auto& [X, N] : counts) {
    sxx += (std::log(X) - mx) * (std::log(X) - mx);
    sxy += (std::log(X) - mx) * (std::log(N) - my);
  }
  return sxy / sxx;
}

std::uint64_t exceptional_cubic_count(const BigInt& X) {
  if (X <= 1) return 0;
  // cube-free c >= 1 with c^4 < X
  const BigInt cmax = iroot(X - 1, 4);
  const BigInt dmax = iroot(cmax, 3);
  if (dmax > 100000000) throw std::invalid_argument("height too large for exceptional_cubic_count");
  BigInt total = 0;
  for (std::uint64_t d = 1; d <= dmax.convert_to<std::uint64_t>(); ++d) {
    const int mu = mobius(d);
    if (mu != 0) total += mu * (cmax / (BigInt(d) * d * d));
  }
  return total.convert_to<std::uint64_t>();
}

}  // namespace torcount
