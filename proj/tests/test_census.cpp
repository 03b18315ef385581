#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "torcount/census.hpp"
#include "torcount/curves.hpp"
#include "torcount/regions.hpp"

using namespace torcount;

namespace {

std::int64_t height64(std::int64_t A, std::int64_t B) {
  const std::int64_t a = std::llabs(A);
  return std::max(a * a * a, B * B);
}

}  // namespace

TEST_CASE("enumerate_minimal examples") {
  std::vector<std::pair<std::int64_t, std::int64_t>> seen;
  enumerate_minimal(2, [&](std::int64_t A, std::int64_t B) { seen.emplace_back(A, B); });
  CHECK(seen.size() == 8);
  bool has64 = false;
  enumerate_minimal(100000, [&](std::int64_t A, std::int64_t B) { has64 = has64 || (A == 0 && B == 64); });
  CHECK_FALSE(has64);
  CHECK_THROWS(enumerate_minimal(0, [](std::int64_t, std::int64_t) {}));
}

TEST_CASE("fixed-width minimality agrees with the exact test") {
  for (std::int64_t A = -300; A <= 300; ++A) {
    for (std::int64_t B = -3000; B <= 3000; ++B) {
      if (A == 0 && B == 0) continue;
      REQUIRE(is_minimal_small(A, B) == is_minimal(BigInt(A), BigInt(B)));
    }
  }
  std::mt19937_64 rng(5);
  const std::int64_t big[] = {0, 1, 16, 81, 4096, 531441, 1LL << 40, 15625LL * 15625LL * 15625LL};
  std::uniform_int_distribution<std::int64_t> small(-50, 50);
  for (int k = 0; k < 20000; ++k) {
    const std::int64_t A = small(rng) * big[rng() % 8] + (k % 3 == 0 ? 0 : small(rng));
    const std::int64_t B = small(rng) * big[rng() % 8] * (k % 2 ? 64 : 729);
    if (A == 0 && B == 0) continue;
    INFO(A, " ", B);
    REQUIRE(is_minimal_small(A, B) == is_minimal(BigInt(A), BigInt(B)));
  }
}

TEST_CASE("census torsion matches the full computation") {
  enumerate_minimal(200000, [&](std::int64_t A, std::int64_t B) {
    REQUIRE(census_torsion(A, B) == torsion_subgroup(ShortCurve(BigInt(A), BigInt(B))));
  });
}

TEST_CASE("minimal count matches a direct scan") {
  const std::int64_t X = 100000;
  std::uint64_t brute = 0;
  for (std::int64_t A = -46; A <= 46; ++A) {
    for (std::int64_t B = -316; B <= 316; ++B) {
      if (height64(A, B) >= X || 4 * A * A * A + 27 * B * B == 0) continue;
      if (is_minimal(BigInt(A), BigInt(B))) ++brute;
    }
  }
  CHECK(count_minimal(X) == brute);
}

TEST_CASE("census table invariants") {
  const auto t = run_census(100, {});
  REQUIRE(t.checkpoints == std::vector<std::int64_t>{100});
  CHECK(census_csv(t).size() > 0);
  std::size_t lines = 0;
  for (char c : census_csv(t)) lines += c == '\n';
  CHECK(lines == 16);

  const std::int64_t X = 1000000;
  const auto table = run_census(X, default_checkpoints(X));
  CHECK(table.checkpoints == std::vector<std::int64_t>{10, 100, 1000, 10000, 100000, 1000000});
  const auto& groups = mazur_groups();
  for (std::size_t k = 0; k < table.checkpoints.size(); ++k) {
    std::uint64_t sum = 0;
    for (std::size_t g = 0; g < 15; ++g) {
      sum += table.exact[k][g];
      CHECK(table.exact[k][g] <= table.contains[k][g]);
      if (k > 0) CHECK(table.contains[k - 1][g] <= table.contains[k][g]);
    }
    CHECK(sum == table.total[k]);
    CHECK(table.total[k] == count_minimal(table.checkpoints[k]));
    CHECK(table.contains[k][0] == table.total[k]);
  }
  // Recount contains-counts curve by curve.
  std::array<std::uint64_t, 15> contains{};
  enumerate_minimal(X, [&](std::int64_t A, std::int64_t B) {
    const auto G = census_torsion(A, B);
    for (std::size_t g = 0; g < 15; ++g) contains[g] += contains_subgroup(G, groups[g]);
  });
  CHECK(contains == table.contains.back());
  // Exemplars have minimal height within their bucket.
  for (std::size_t g = 0; g < 15; ++g) {
    const auto& e = table.exemplars[g];
    CHECK(e.has_value() == (table.exact.back()[g] > 0));
    if (!e) continue;
    CHECK(census_torsion(e->A, e->B) == groups[g]);
    std::optional<i128> least;
    enumerate_minimal(X, [&](std::int64_t A, std::int64_t B) {
      if (census_torsion(A, B) == groups[g] && (!least || height64(A, B) < *least)) least = height64(A, B);
    });
    CHECK(least == e->height);
  }
}

TEST_CASE("census is independent of thread count") {
  const std::int64_t X = 3000000;
  const auto one = run_census(X, default_checkpoints(X), 1);
  for (int threads : {2, 3, 7}) {
    const auto many = run_census(X, default_checkpoints(X), threads);
    CHECK(many.exact == one.exact);
    CHECK(many.contains == one.contains);
    CHECK(census_json(many) == census_json(one));
  }
}

TEST_CASE("contains counts equal the region sieve") {
  const std::int64_t X = 1000000;
  const auto table = run_census(X, {1000, 10000, 100000, 1000000});
  const int z2 = group_index(TorsionGroup::cyclic(2)), z3 = group_index(TorsionGroup::cyclic(3));
  for (std::size_t k = 0; k < table.checkpoints.size(); ++k) {
    const auto s1 = sieved_count(1, table.checkpoints[k]);
    const auto s2 = sieved_count(2, table.checkpoints[k]);
    const auto s3 = sieved_count(3, table.checkpoints[k]);
    CHECK(s1.mobius == table.total[k]);
    CHECK(s2.mobius == table.contains[k][static_cast<std::size_t>(z2)]);
    CHECK(s3.mobius == table.contains[k][static_cast<std::size_t>(z3)]);
  }
}

TEST_CASE("slope report") {
  const std::int64_t X = 10000000;
  const auto table = run_census(X, default_checkpoints(X));
  const auto rep = slope_report(table, 10000);
  REQUIRE(rep.size() == 15);
  CHECK(rep[0].contains_slope.has_value());
  CHECK(std::fabs(*rep[0].contains_slope - 5.0L / 6) < 0.02L);
  const auto z9 = static_cast<std::size_t>(group_index(TorsionGroup::cyclic(9)));
  CHECK(rep[z9].note == "insufficient data");
  CHECK_FALSE(rep[z9].contains_slope.has_value());
  // Total count against 4 X^(5/6) / zeta(10).
  const long double c = static_cast<long double>(table.total.back()) / std::pow(1e7L, 5.0L / 6);
  CHECK(std::fabs(c - c_constant(1)) / c_constant(1) < 0.03L);
}

TEST_CASE("checkpoint validation") {
  CHECK_THROWS(run_census(100, {10, 10}));
  CHECK_THROWS(run_census(100, {1000}));
  CHECK_THROWS(run_census(100, {}, 0));
  CHECK_THROWS(run_census(kCensusMaxX + 1, {}));
}
