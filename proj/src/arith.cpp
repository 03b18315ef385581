#include "torcount/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/multiprecision/miller_rabin.hpp>

namespace torcount {

namespace mp = boost::multiprecision;

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<unsigned long long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long long>(u & 0xFFFFFFFFFFFFFFFFULL);
  return neg ? BigInt(-r) : r;
}

bool fits_i128(const BigInt& v) {
  if (v == 0) return true;
  const BigInt a = abs(v);
  // |v| <= 2^127 - 1 (the asymmetric minimum is not needed anywhere)
  return mp::msb(a) < 127;
}

i128 to_i128(const BigInt& v) {
  if (!fits_i128(v)) throw std::overflow_error("integer does not fit in 128 bits");
  const BigInt a = abs(v);
  const auto lo = static_cast<unsigned long long>(a & BigInt(0xFFFFFFFFFFFFFFFFULL));
  const auto hi = static_cast<unsigned long long>(a >> 64);
  const i128 r = static_cast<i128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  return v < 0 ? -r : r;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 parse_i128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("malformed integer: " + std::string(s));
  unsigned __int128 u = 0;
  const unsigned __int128 limit = (static_cast<unsigned __int128>(1) << 127) - 1;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer: " + std::string(s));
    u = u * 10 + static_cast<unsigned>(s[i] - '0');
    if (u > limit) throw std::overflow_error("integer does not fit in 128 bits");
  }
  const auto r = static_cast<i128>(u);
  return neg ? -r : r;
}

BigInt parse_height(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty() || s.size() > 400) throw std::invalid_argument("malformed height: " + std::string(text));
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("malformed height: " + std::string(text));
    }
    return BigInt(std::string(s));
  };
  BigInt value;
  if (auto pos = text.find_first_of("eE"); pos != std::string_view::npos) {
    const BigInt e = digits(text.substr(pos + 1));
    if (e > 1000) throw std::invalid_argument("height exponent too large: " + std::string(text));
    value = digits(text.substr(0, pos)) * mp::pow(BigInt(10), static_cast<unsigned>(e));
  } else if (auto caret = text.find('^'); caret != std::string_view::npos) {
    const BigInt e = digits(text.substr(caret + 1));
    if (e > 1000) throw std::invalid_argument("height exponent too large: " + std::string(text));
    value = mp::pow(digits(text.substr(0, caret)), static_cast<unsigned>(e));
  } else {
    value = digits(text);
  }
  if (value < 1) throw std::invalid_argument("height must be at least 1: " + std::string(text));
  return value;
}

BigInt iroot(const BigInt& n, unsigned k) {
  if (n < 0) throw std::domain_error("iroot of a negative number");
  BigInt r;
  mpz_root(r.backend().data(), n.backend().data(), k);
  return r;
}

std::uint64_t iroot_u64(std::uint64_t n, unsigned k) {
  return static_cast<std::uint64_t>(iroot(BigInt(n), k));
}

bool is_square(const BigInt& n, BigInt* r) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.backend().data()) == 0) return false;
  if (r != nullptr) *r = sqrt(n);
  return true;
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::domain_error("zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational component");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed rational: " + std::string(s));
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits);
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
}

long double Rational::to_long_double() const {
  // Scale so both parts fit comfortably in long double.
  const auto nb = num_ == 0 ? 0u : static_cast<unsigned>(mp::msb(abs(num_)));
  const auto db = static_cast<unsigned>(mp::msb(den_));
  const unsigned shift_n = nb > 100 ? nb - 100 : 0;
  const unsigned shift_d = db > 100 ? db - 100 : 0;
  const long double n = static_cast<long double>(num_ >> shift_n);
  const long double d = static_cast<long double>(den_ >> shift_d);
  return std::ldexp(n / d, static_cast<int>(shift_n) - static_cast<int>(shift_d));
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational pow(const Rational& x, unsigned e) {
  return Rational(mp::pow(x.num(), e), mp::pow(x.den(), e));
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(Rational c, unsigned degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Rational& RatPoly::coeff(int i) const {
  static const Rational zero;
  if (i < 0 || i > degree()) return zero;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational RatPoly::eval(const Rational& t) const {
  // Horner over a common denominator: sum c_i n^i d^(deg-i) / d^deg.
  if (coeffs_.empty()) return Rational();
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

RatPoly RatPoly::scaled(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& x : v) x *= c;
  return RatPoly(std::move(v));
}

std::string RatPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!s.empty()) s += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) s += "-";
    const Rational a = c.sign() < 0 ? -c : c;
    if (i == 0 || !(a == Rational(1))) s += "(" + a.to_string() + ")";
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.coeffs_.size()) v[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) v[i] += b.coeffs_[i];
  }
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + b.scaled(Rational(-1)); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = d.degree();
  if (degree() < dd) return {RatPoly(), *this};
  std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1));
  for (int i = degree(); i >= dd; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] / d.leading();
    quo[static_cast<std::size_t>(i - dd)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * d.coeffs_[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

Rational poly_eval(const RatPoly& f, const Rational& t) { return f.eval(t); }

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.leading());
}

bool coprime(const RatPoly& a, const RatPoly& b) { return poly_gcd(a, b).degree() == 0; }

// ---------------------------------------------------------------------------
// IntPoly and integer roots

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

IntPoly IntPoly::forward_difference() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<BigInt> shifted = c_;
  const std::size_t n = shifted.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1 + 1; j-- > i;) shifted[j] += shifted[j + 1];
  }
  for (std::size_t i = 0; i <= n; ++i) shifted[i] -= c_[i];
  return IntPoly(std::move(shifted));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] -= b.c_[i];
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& k, const IntPoly& a) {
  std::vector<BigInt> v = a.c_;
  for (auto& x : v) x *= k;
  return IntPoly(std::move(v));
}

BigInt root_bound(const IntPoly& p) {
  if (p.degree() < 1) return BigInt(1);
  const auto& c = p.coeffs();
  const int n = p.degree();
  const long lead_bits = static_cast<long>(mp::msb(abs(c[static_cast<std::size_t>(n)]))) + 1;
  long best = 0;
  for (int k = 1; k <= n; ++k) {
    const auto& a = c[static_cast<std::size_t>(n - k)];
    if (a == 0) continue;
    const long e = static_cast<long>(mp::msb(abs(a))) + 1 - lead_bits + 1;
    if (e <= 0) continue;
    best = std::max(best, (e + k - 1) / k);
  }
  return BigInt(1) << static_cast<unsigned>(best + 1);
}

namespace {

struct SignRun {
  BigInt lo, hi;
  int sign;  // +1: all values >= 0 on [lo, hi]; -1: all <= 0
};

int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// First k in [lo, hi] with pred(k), assuming pred is monotone false..true.
template <class Pred>
std::optional<BigInt> first_true(BigInt lo, BigInt hi, Pred pred) {
  if (!pred(hi)) return std::nullopt;
  while (lo < hi) {
    BigInt mid = lo + ((hi - lo) >> 1);
    if (pred(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

void split_monotone(const IntPoly& p, const BigInt& lo, const BigInt& hi, bool increasing,
                    std::vector<SignRun>& out) {
  const int towards = increasing ? 1 : -1;
  auto k = first_true(lo, hi, [&](const BigInt& x) { return sign_of(p.eval(x)) == towards; });
  if (!k) {
    out.push_back({lo, hi, -towards});
  } else if (*k == lo) {
    out.push_back({lo, hi, towards});
  } else {
    out.push_back({lo, *k - 1, -towards});
    out.push_back({*k, hi, towards});
  }
}

template <class Fn>
void for_each_monotone_segment(const IntPoly& p, const BigInt& lo, const BigInt& hi, Fn fn);

std::vector<SignRun> sign_runs(const IntPoly& p, const BigInt& lo, const BigInt& hi) {
  if (p.degree() <= 0) {
    const int s = p.is_zero() ? 1 : (p.coeffs()[0] >= 0 ? 1 : -1);
    return {{lo, hi, s}};
  }
  if (lo == hi) return {{lo, hi, p.eval(lo) >= 0 ? 1 : -1}};
  std::vector<SignRun> raw;
  for_each_monotone_segment(p, lo, hi, [&](const BigInt& a, const BigInt& b, bool inc) {
    split_monotone(p, a, b, inc, raw);
  });
  std::vector<SignRun> merged;
  for (auto& r : raw) {
    if (!merged.empty() && merged.back().sign == r.sign) merged.back().hi = r.hi;
    else merged.push_back(std::move(r));
  }
  return merged;
}

// Calls fn(a, b, increasing) for consecutive integer segments covering
// [lo, hi] on which p is monotone.
template <class Fn>
void for_each_monotone_segment(const IntPoly& p, const BigInt& lo, const BigInt& hi, Fn fn) {
  const auto druns = sign_runs(p.forward_difference(), lo, hi - 1);
  for (std::size_t i = 0; i < druns.size(); ++i) {
    const auto& r = druns[i];
    const BigInt seg_hi = (i + 1 < druns.size()) ? r.hi : r.hi + 1;
    fn(r.lo, seg_hi, r.sign > 0);
  }
}

}  // namespace

std::vector<BigInt> integer_roots(const IntPoly& p_in) {
  if (p_in.is_zero()) throw std::invalid_argument("integer_roots of the zero polynomial");
  std::vector<BigInt> roots;
  std::vector<BigInt> c = p_in.coeffs();
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  if (shift > 0) {
    roots.emplace_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  }
  const IntPoly p(std::move(c));
  if (p.degree() == 1) {
    const auto& a = p.coeffs()[1];
    const auto& b = p.coeffs()[0];
    if (b % a == 0) roots.emplace_back(-b / a);
  } else if (p.degree() >= 2) {
    const BigInt bound = root_bound(p);
    for_each_monotone_segment(p, -bound, bound, [&](const BigInt& a, const BigInt& b, bool inc) {
      const int towards = inc ? 1 : -1;
      auto k = first_true(a, b, [&](const BigInt& x) {
        const int s = sign_of(p.eval(x));
        return s == 0 || s == towards;
      });
      if (!k) return;
      for (BigInt x = *k; x <= b && p.eval(x) == 0; ++x) roots.push_back(x);
    });
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Number-theoretic functions

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(1u << 20);
  return primes;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius(0) is undefined");
  int result = 1;
  std::uint64_t m = n;
  for (std::uint32_t p : small_primes()) {
    const std::uint64_t pp = p;
    if (pp * pp > m) break;
    if (m % pp != 0) continue;
    m /= pp;
    if (m % pp == 0) return 0;
    result = -result;
  }
  if (m == 1) return result;
  const std::uint64_t last = small_primes().back();
  if (m < last * last) return -result;
  for (const auto& [p, e] : factor(BigInt(m))) {
    if (e > 1) return 0;
    result = -result;
  }
  return result;
}

Rational bernoulli(unsigned n) {
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex mu;
  std::lock_guard lock(mu);
  while (cache.size() <= n) {
    const unsigned m = static_cast<unsigned>(cache.size());
    Rational acc;
    BigInt binom = 1;  // C(m+1, k)
    for (unsigned k = 0; k < m; ++k) {
      acc += Rational(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-acc / Rational(static_cast<long long>(m + 1)));
  }
  return cache[n];
}

long double zeta(int s) {
  if (s < 2) throw std::domain_error("zeta requires an integer s >= 2");
  if (s % 2 == 0) {
    const unsigned k = static_cast<unsigned>(s / 2);
    const Rational b = bernoulli(2 * k);
    BigInt fact = 1;
    for (unsigned i = 2; i <= 2 * k; ++i) fact *= i;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double mag = std::abs(b.to_long_double()) * std::pow(two_pi, static_cast<long double>(s)) /
                            (2.0L * static_cast<long double>(fact));
    return mag;
  }
  // Odd s: partial sum plus Euler-Maclaurin tail.
  const int n_terms = 200;
  long double sum = 0.0L;
  for (int n = n_terms - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  const long double N = n_terms;
  const long double ls = s;
  sum += std::pow(N, 1.0L - ls) / (ls - 1.0L) + 0.5L * std::pow(N, -ls) + ls * std::pow(N, -ls - 1.0L) / 12.0L -
         ls * (ls + 1.0L) * (ls + 2.0L) * std::pow(N, -ls - 3.0L) / 720.0L;
  return sum;
}

int valuation(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation needs a prime p");
  int v = 0;
  BigInt y = x;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, std::uint64_t p) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  return valuation(x.num(), p) - valuation(x.den(), p);
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return mp::miller_rabin_test(n, 25);
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
BigInt rho_brent(const BigInt& n, unsigned long c, std::uint64_t& budget) {
  auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
  BigInt y = 2, x, ys, g = 1, q = 1;
  std::uint64_t r = 1;
  const std::uint64_t m = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = f(y);
        q = (q * abs(x - y)) % n;
      }
      g = gcd(q, n);
      k += m;
      if (budget < lim) return 0;
      budget -= lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

}  // namespace

std::vector<std::pair<BigInt, int>> factor(const BigInt& n_in, std::uint64_t rho_budget) {
  if (n_in == 0) throw std::invalid_argument("cannot factor zero");
  BigInt n = abs(n_in);
  std::map<BigInt, int> found;
  for (std::uint32_t p : small_primes()) {
    if (p > 10000) break;
    if (BigInt(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++found[BigInt(p)];
    }
  }
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  std::uint64_t budget = rho_budget;
  while (!stack.empty()) {
    BigInt m = std::move(stack.back());
    stack.pop_back();
    if (m == 1) continue;
    if (is_probable_prime(m)) {
      ++found[m];
      continue;
    }
    if (mpz_perfect_power_p(m.backend().data()) != 0) {
      const unsigned bits = static_cast<unsigned>(mp::msb(m)) + 1;
      bool split = false;
      for (unsigned k = bits; k >= 2 && !split; --k) {
        const BigInt r = iroot(m, k);
        if (r > 1 && mp::pow(r, k) == m) {
          for (unsigned i = 0; i < k; ++i) stack.push_back(r);
          split = true;
        }
      }
      if (split) continue;
    }
    BigInt d = 0;
    for (unsigned long c = 1; d == 0; ++c) {
      if (budget == 0) throw FactorizationTimeout("factorization budget exhausted for " + m.str());
      d = rho_brent(m, c, budget);
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
  return {found.begin(), found.end()};
}

}  // namespace torcount
