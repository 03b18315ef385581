#pragma once

// Exhaustive census of minimal curves y^2 = x^3 + Ax + B by naive height,
// tallied by torsion subgroup at a list of height checkpoints.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torcount/arith.hpp"
#include "torcount/torsion.hpp"

namespace torcount {

// Largest height accepted by the census (A and B then fit in 32 bits).
inline constexpr std::int64_t kCensusMaxX = 1'000'000'000'000'000'000LL;

/// Visits every (A, B) with |A|^3 < X, B^2 < X, 4A^3 + 27B^2 != 0 and no
/// p with p^4 | A, p^6 | B, in increasing (A, B) order.
void enumerate_minimal(std::int64_t X, const std::function<void(std::int64_t, std::int64_t)>& visit);
std::uint64_t count_minimal(std::int64_t X);

// Fixed-width minimality test; agrees with is_minimal for |A|, |B| < 2^62.
bool is_minimal_small(std::int64_t A, std::int64_t B);

/// torsion_subgroup with a table-driven mod-p filter in front.
TorsionGroup census_torsion(std::int64_t A, std::int64_t B);

struct Exemplar {
  std::int64_t A = 0, B = 0;
  i128 height = 0;
};

struct CensusTable {
  std::vector<std::int64_t> checkpoints;
  // Indexed [checkpoint][group_index].
  std::vector<std::array<std::uint64_t, 15>> exact;
  std::vector<std::array<std::uint64_t, 15>> contains;
  std::vector<std::uint64_t> total;
  // Least-height curve per exact group, ties broken by (A, B).
  std::array<std::optional<Exemplar>, 15> exemplars;
};

// Powers of ten from 10 up to X, then X itself if it is not a power of ten.
std::vector<std::int64_t> default_checkpoints(std::int64_t X);

/// Checkpoints must be increasing and at most X; X is appended if missing.
CensusTable run_census(std::int64_t X, std::vector<std::int64_t> checkpoints, int threads = 1);

struct SlopeEntry {
  TorsionGroup group;
  std::optional<long double> contains_slope;
  std::optional<long double> exact_slope;
  long double reference = 0;  // 1 / d(G)
  std::optional<long double> deviation;
  std::string note;  // "insufficient data" when fewer than 3 nonzero points
};
std::vector<SlopeEntry> slope_report(const CensusTable& table, std::int64_t min_checkpoint = 0);

std::string census_csv(const CensusTable& table);
std::string census_json(const CensusTable& table);

}  // namespace torcount
