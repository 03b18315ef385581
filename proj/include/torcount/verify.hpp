#pragma once

// The acceptance suite: each criterion computed at a fixed scale against a
// pinned tolerance, plus findings where reference decimals disagree.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace torcount {

struct CriterionResult {
  std::string id;
  std::string status;  // "pass", "fail", "skipped" or "finding"
  std::string measured;
  std::string expected;
  std::string tolerance;
  std::string detail;  // witness on failure, notes otherwise
  double seconds = 0;
};

struct VerifyOptions {
  // Census height; below 10^8 only the criteria that do not depend on the
  // census scale are run.
  std::int64_t max_height = 100'000'000;
  int threads = 1;
  std::string family_file;  // defaults to the bundled Kubert data
  int containment_samples = 1000;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  std::vector<CriterionResult> findings;
  bool ok() const;
  std::string json(const std::string& timestamp) const;
};

using VerifyProgress = std::function<void(const CriterionResult&)>;
VerifyReport run_verify(const VerifyOptions& opts, const VerifyProgress& progress = {});

// One line per criterion: "AC3 PASS measured=... expected=... tol=...".
std::string format_line(const CriterionResult& r);

}  // namespace torcount
