#include "torcount/census.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "torcount/curves.hpp"
#include "torcount/families.hpp"

namespace torcount {

namespace {

constexpr std::array<std::uint32_t, 12> kTablePrimes = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};

// #E(F_p) for every (a, b) mod p, 0 where the reduction is singular.
struct PointCountTables {
  std::array<std::vector<std::uint16_t>, kTablePrimes.size()> counts;

  PointCountTables() {
    for (std::size_t k = 0; k < kTablePrimes.size(); ++k) {
      const std::uint32_t p = kTablePrimes[k];
      auto& t = counts[k];
      t.assign(static_cast<std::size_t>(p) * p, 0);
      for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t b = 0; b < p; ++b) {
          const std::uint64_t d = (4ULL * a * a * a + 27ULL * b * b) % p;
          if (d != 0) t[a * p + b] = static_cast<std::uint16_t>(count_points_mod_p(a, b, p));
        }
      }
    }
  }
};

const PointCountTables& tables() {
  static const PointCountTables t;
  return t;
}

std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

bool divisible_by_power(std::int64_t v, std::int64_t p, int e) {
  std::int64_t q = 1;
  for (int k = 0; k < e; ++k) {
    if (q > abs64(v) / p) return false;
    q *= p;
  }
  return v % q == 0;
}

struct Tally {
  std::vector<std::array<std::uint64_t, 15>> first;  // by first checkpoint above the height
  std::array<std::optional<Exemplar>, 15> exemplars;
};

bool exemplar_less(const Exemplar& x, const Exemplar& y) {
  if (x.height != y.height) return x.height < y.height;
  if (x.A != y.A) return x.A < y.A;
  return x.B < y.B;
}

void offer(std::optional<Exemplar>& slot, const Exemplar& e) {
  if (!slot || exemplar_less(e, *slot)) slot = e;
}

std::int64_t amax_for(std::int64_t X) { return static_cast<std::int64_t>(iroot_u64(static_cast<std::uint64_t>(X - 1), 3)); }
std::int64_t bmax_for(std::int64_t X) { return static_cast<std::int64_t>(iroot_u64(static_cast<std::uint64_t>(X - 1), 2)); }

void check_height(std::int64_t X) {
  if (X < 1) throw std::invalid_argument("census height must be at least 1");
  if (X > kCensusMaxX) throw std::invalid_argument("census height above 10^18");
}

void census_row(std::int64_t A, std::int64_t X, const std::vector<std::int64_t>& cps, Tally& tally) {
  const std::int64_t bmax = bmax_for(X);
  const i128 a3 = static_cast<i128>(abs64(A)) * abs64(A) * abs64(A);
  // p^6 for the primes with p^4 | A
  std::vector<std::int64_t> sixth;
  if (A != 0) {
    for (std::uint32_t p : small_primes()) {
      const std::int64_t q = p;
      if (q * q > abs64(A) / (q * q)) break;
      if (divisible_by_power(A, q, 4)) sixth.push_back(q * q * q * q * q * q);
    }
  }
  for (std::int64_t B = -bmax; B <= bmax; ++B) {
    if (disc_core(A, B) == 0) continue;
    if (A == 0) {
      if (!is_minimal_small(A, B)) continue;
    } else if (std::any_of(sixth.begin(), sixth.end(), [B](std::int64_t q) { return B % q == 0; })) {
      continue;
    }
    const TorsionGroup g = census_torsion(A, B);
    const int gi = group_index(g);
    const i128 b2 = static_cast<i128>(B) * B;
    const i128 h = a3 > b2 ? a3 : b2;
    const auto k = static_cast<std::size_t>(
        std::upper_bound(cps.begin(), cps.end(), h, [](i128 v, std::int64_t c) { return v < c; }) - cps.begin());
    ++tally.first[k][static_cast<std::size_t>(gi)];
    offer(tally.exemplars[static_cast<std::size_t>(gi)], Exemplar{A, B, h});
  }
}

}  // namespace

bool is_minimal_small(std::int64_t A, std::int64_t B) {
  if (A == 0 && B == 0) return false;
  for (std::uint32_t p : small_primes()) {
    const std::int64_t q = p;
    if (A != 0) {
      if (q * q > abs64(A) / (q * q)) break;
      if (divisible_by_power(A, q, 4) && (B == 0 || divisible_by_power(B, q, 6))) return false;
    } else {
      if (q * q * q > abs64(B) / (q * q * q)) break;
      if (divisible_by_power(B, q, 6)) return false;
    }
  }
  return true;
}

TorsionGroup census_torsion(std::int64_t A, std::int64_t B) {
  const auto& t = tables();
  std::uint64_t g = 0;
  for (std::size_t k = 0; k < kTablePrimes.size(); ++k) {
    const std::uint32_t p = kTablePrimes[k];
    const std::uint16_t n = t.counts[k][mod_p(A, p) * p + mod_p(B, p)];
    if (n == 0) continue;
    g = std::gcd(g, static_cast<std::uint64_t>(n));
    if (g == 1) return TorsionGroup::cyclic(1);
  }
  return torsion_subgroup(ShortCurve(BigInt(A), BigInt(B)));
}

void enumerate_minimal(std::int64_t X, const std::function<void(std::int64_t, std::int64_t)>& visit) {
  check_height(X);
  const std::int64_t amax = amax_for(X), bmax = bmax_for(X);
  for (std::int64_t A = -amax; A <= amax; ++A) {
    for (std::int64_t B = -bmax; B <= bmax; ++B) {
      if (disc_core(A, B) != 0 && is_minimal_small(A, B)) visit(A, B);
    }
  }
}

std::uint64_t count_minimal(std::int64_t X) {
  std::uint64_t n = 0;
  enumerate_minimal(X, [&](std::int64_t, std::int64_t) { ++n; });
  return n;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t X) {
  check_height(X);
  std::vector<std::int64_t> out;
  for (std::int64_t c = 10; c <= X; c *= 10) {
    out.push_back(c);
    if (c > X / 10) break;
  }
  if (out.empty() || out.back() != X) out.push_back(X);
  return out;
}

CensusTable run_census(std::int64_t X, std::vector<std::int64_t> checkpoints, int threads) {
  check_height(X);
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
  if (checkpoints.empty() || checkpoints.back() != X) checkpoints.push_back(X);
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] < 1 || checkpoints[k] > X) throw std::invalid_argument("checkpoint outside [1, X]");
    if (k > 0 && checkpoints[k] <= checkpoints[k - 1]) throw std::invalid_argument("checkpoints must increase");
  }
  tables();
  const std::size_t nc = checkpoints.size();
  const std::int64_t amax = amax_for(X);
  constexpr std::int64_t kStripe = 8;
  const std::int64_t stripes = (2 * amax + 1 + kStripe - 1) / kStripe;

  std::vector<Tally> tallies(static_cast<std::size_t>(threads));
  for (auto& t : tallies) t.first.assign(nc + 1, {});
  auto work = [&](int id) {
    for (std::int64_t s = id; s < stripes; s += threads) {
      const std::int64_t lo = -amax + s * kStripe;
      const std::int64_t hi = std::min(amax, lo + kStripe - 1);
      for (std::int64_t A = lo; A <= hi; ++A) census_row(A, X, checkpoints, tallies[static_cast<std::size_t>(id)]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }

  CensusTable table;
  table.checkpoints = checkpoints;
  table.exact.assign(nc, {});
  table.contains.assign(nc, {});
  table.total.assign(nc, 0);
  std::array<std::uint64_t, 15> running{};
  for (std::size_t k = 0; k < nc; ++k) {
    for (const auto& t : tallies) {
      for (std::size_t g = 0; g < 15; ++g) running[g] += t.first[k][g];
    }
    table.exact[k] = running;
  }
  for (const auto& t : tallies) {
    for (std::size_t g = 0; g < 15; ++g) {
      if (t.exemplars[g]) offer(table.exemplars[g], *t.exemplars[g]);
    }
  }
  const auto& groups = mazur_groups();
  for (std::size_t k = 0; k < nc; ++k) {
    for (std::size_t g = 0; g < 15; ++g) {
      table.total[k] += table.exact[k][g];
      for (std::size_t h = 0; h < 15; ++h) {
        if (contains_subgroup(groups[h], groups[g])) table.contains[k][g] += table.exact[k][h];
      }
    }
  }
  return table;
}

std::vector<SlopeEntry> slope_report(const CensusTable& table, std::int64_t min_checkpoint) {
  std::vector<SlopeEntry> out;
  const auto& groups = mazur_groups();
  for (std::size_t g = 0; g < 15; ++g) {
    SlopeEntry e;
    e.group = groups[g];
    e.reference = 1 / d_value(groups[g]).to_long_double();
    std::vector<std::pair<long double, long double>> cpts, epts;
    for (std::size_t k = 0; k < table.checkpoints.size(); ++k) {
      if (table.checkpoints[k] < min_checkpoint) continue;
      const auto X = static_cast<long double>(table.checkpoints[k]);
      if (table.contains[k][g] > 0) cpts.emplace_back(X, static_cast<long double>(table.contains[k][g]));
      if (table.exact[k][g] > 0) epts.emplace_back(X, static_cast<long double>(table.exact[k][g]));
    }
    if (cpts.size() >= 3) {
      e.contains_slope = fit_exponent(cpts);
      e.deviation = std::fabs(*e.contains_slope - e.reference);
    } else {
      e.note = "insufficient data";
    }
    if (epts.size() >= 3) e.exact_slope = fit_exponent(epts);
    out.push_back(e);
  }
  return out;
}

std::string census_csv(const CensusTable& table) {
  std::ostringstream os;
  os << "X,group,exact_count,contains_count\n";
  const auto& groups = mazur_groups();
  for (std::size_t k = 0; k < table.checkpoints.size(); ++k) {
    for (std::size_t g = 0; g < 15; ++g) {
      os << table.checkpoints[k] << ',' << groups[g].name() << ',' << table.exact[k][g] << ','
         << table.contains[k][g] << '\n';
    }
  }
  return os.str();
}

std::string census_json(const CensusTable& table) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  const auto& groups = mazur_groups();
  for (std::size_t k = 0; k < table.checkpoints.size(); ++k) {
    for (std::size_t g = 0; g < 15; ++g) {
      rows.push_back({{"X", table.checkpoints[k]},
                      {"group", groups[g].name()},
                      {"exact_count", table.exact[k][g]},
                      {"contains_count", table.contains[k][g]}});
    }
  }
  ordered_json ex = ordered_json::object();
  for (std::size_t g = 0; g < 15; ++g) {
    if (const auto& e = table.exemplars[g]) {
      ex[groups[g].name()] = {{"A", e->A}, {"B", e->B}, {"height", to_string(e->height)}};
    }
  }
  ordered_json out = {{"rows", rows}, {"least_height_curves", ex}};
  return out.dump(2) + "\n";
}

}  // namespace torcount
