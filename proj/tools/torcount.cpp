#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "torcount/census.hpp"
#include "torcount/families.hpp"
#include "torcount/regions.hpp"
#include "torcount/verify.hpp"

using namespace torcount;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr long double kC2Printed = 3.1969L;
constexpr long double kC3Printed = 1.5221L;

struct HeightArg {
  std::string text = "1e6";
  BigInt value() const { return parse_height(text); }
};

std::int64_t census_height(const BigInt& X) {
  if (X < 1 || X > kCensusMaxX) throw std::invalid_argument("census height must lie in [1, 10^18]");
  return X.convert_to<std::int64_t>();
}

i128 region_height(const BigInt& X) {
  if (X < 1 || X > BigInt(to_string(kRegionMaxX))) throw std::invalid_argument("region height must lie in [1, 10^30]");
  i128 v = 0;
  for (char c : X.str()) v = v * 10 + (c - '0');
  return v;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Mismatch when relative difference exceeds 1e-3.
std::string consistency(long double formula, long double printed) {
  return std::fabs(formula - printed) / printed < 1e-3L ? "consistent" : "formula/printed mismatch";
}

int cmd_census(const HeightArg& h, const std::vector<std::string>& cps_text, int threads, const std::string& csv,
               const std::string& json) {
  const std::int64_t X = census_height(h.value());
  std::vector<std::int64_t> cps;
  for (const auto& c : cps_text) cps.push_back(census_height(parse_height(c)));
  if (cps.empty()) cps = default_checkpoints(X);
  const CensusTable t = run_census(X, cps, threads);
  if (!csv.empty()) write_out(csv, census_csv(t));
  if (!json.empty()) write_out(json, census_json(t));
  if (csv.empty() && json.empty()) std::cout << census_csv(t);
  return 0;
}

int cmd_constants(bool as_json) {
  const ConstantsReport r = compute_constants();
  const auto z3 = z3_sign_adjudication();
  const long double c3_formula = 2 * r.area3_plus / r.zeta4;
  const std::string z3_sign = z3.winner < 0 ? "minus" : z3.winner > 0 ? "plus" : "undecided";
  if (as_json) {
    ordered_json j;
    j["alpha_plus"] = r.alpha_plus;
    j["alpha_minus"] = r.alpha_minus;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["I_plus"] = r.I_plus;
    j["I_minus"] = r.I_minus;
    j["area1"] = r.area1;
    j["area2"] = r.area2;
    j["area3_plus"] = r.area3_plus;
    j["area3"] = r.area3;
    j["zeta4"] = r.zeta4;
    j["zeta6"] = r.zeta6;
    j["zeta10"] = r.zeta10;
    j["c1"] = r.c1;
    j["c2"] = {{"formula", r.c2}, {"printed", kC2Printed}, {"flag", consistency(r.c2, kC2Printed)}};
    j["c3"] = {{"formula", c3_formula},
               {"printed", kC3Printed},
               {"flag", consistency(c3_formula, kC3Printed)},
               {"half", c3_formula / 2}};
    j["z3_sign"] = {{"winner", z3_sign},
                    {"g", z3.winner < 0 ? "t^2 - 2/3 t + 2/27" : "t^2 + 2/3 t + 2/27"}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("alpha+ = %.10Lf\nalpha- = %.10Lf\n", r.alpha_plus, r.alpha_minus);
  for (int k = 0; k < 6; ++k) std::printf("alpha%d = %.10Lf  beta%d = %.10Lf\n", k, r.alpha[k], k, r.beta[k]);
  std::printf("I+ = %.10Lf\nI- = %.10Lf\n", r.I_plus, r.I_minus);
  std::printf("area1 = %.10Lf\narea2 = %.10Lf\narea3+ = %.10Lf\narea3 = %.10Lf\n", r.area1, r.area2, r.area3_plus,
              r.area3);
  std::printf("zeta(4) = %.12Lf\nzeta(6) = %.12Lf\nzeta(10) = %.12Lf\n", r.zeta4, r.zeta6, r.zeta10);
  std::printf("c1 = %.12Lf\n", r.c1);
  std::printf("c2 = %.10Lf (printed %.4Lf: %s)\n", r.c2, kC2Printed, consistency(r.c2, kC2Printed).c_str());
  std::printf("c3 = %.10Lf (printed %.4Lf: %s), c3/2 = %.10Lf\n", c3_formula, kC3Printed,
              consistency(c3_formula, kC3Printed).c_str(), c3_formula / 2);
  std::printf("Z/3 family sign: %s\n", z3_sign.c_str());
  return 0;
}

int cmd_regions(int i, const HeightArg& h, bool as_json) {
  const i128 X = region_height(h.value());
  const auto eq = equation_count(i, X);
  const auto s = sieved_count(i, X);
  const long double emp = empirical_constant(i, X, s.mobius);
  if (!s.agree) std::cerr << "warning: sieve methods disagree at " << s.witness << "\n";
  if (as_json) {
    ordered_json j;
    j["lattice"] = std::to_string(eq.lattice);
    j["distinct"] = std::to_string(eq.distinct);
    j["sieved"] = std::to_string(s.mobius);
    j["empirical_constant"] = emp;
    j["c_formula"] = c_constant(i);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "lattice " << eq.lattice << "\ndistinct " << eq.distinct << "\nsieved " << s.mobius
            << "\nempirical_constant " << emp << "\nc_formula " << c_constant(i) << "\n";
  return 0;
}

int cmd_families(const std::string& group, const HeightArg& h, const std::string& file, bool as_json, bool as_csv) {
  const TorsionGroup G = TorsionGroup::parse(group);
  const BigInt X = h.value();
  if (X < 1) throw std::invalid_argument("max height must be at least 1");
  std::optional<FamilySpec> spec;
  if (file.empty() && G.order() <= 4 && G.n != 1) {
    spec = builtin_family(G);
  } else {
    const auto rep = load_families(file.empty() ? default_family_file() : file);
    for (const auto& f : rep.failures) std::cerr << "validation failure: " << f << "\n";
    for (const auto& s : rep.families) {
      if (s.G == G) spec = s;
    }
    if (!spec && G.order() <= 4 && G.n != 1) spec = builtin_family(G);
  }
  if (!spec) throw std::invalid_argument("no valid family for " + G.name());

  // X / 10^k for k = 6 .. 0, dropping checkpoints below 10
  std::vector<BigInt> cps;
  BigInt scale = 1000000;
  for (int k = 6; k >= 0; --k, scale /= 10) {
    if (X / scale >= 10) cps.push_back(X / scale);
  }
  if (cps.empty() || cps.back() != X) cps.push_back(X);
  const auto counts = family_counts(*spec, cps);
  std::vector<std::pair<long double, long double>> pts;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    if (counts[k] > 0) pts.emplace_back(cps[k].convert_to<long double>(), static_cast<long double>(counts[k]));
  }
  std::optional<long double> slope;
  if (pts.size() >= 3) slope = fit_exponent(pts);
  const long double ref = 1 / d_value(G).to_long_double();

  if (as_csv) {
    std::cout << "X,count\n";
    for (std::size_t k = 0; k < cps.size(); ++k) std::cout << cps[k].str() << "," << counts[k] << "\n";
    return 0;
  }
  if (as_json) {
    ordered_json j;
    j["group"] = G.name();
    j["max_height"] = X.str();
    j["count"] = std::to_string(counts.back());
    j["exponent"] = slope ? ordered_json(*slope) : ordered_json(nullptr);
    j["reference"] = ref;
    j["n"] = spec->n;
    j["m"] = spec->m;
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < cps.size(); ++k) rows.push_back({{"X", cps[k].str()}, {"count", std::to_string(counts[k])}});
    j["checkpoints"] = rows;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << G.name() << " count " << counts.back() << " below " << X.str() << "\n";
  if (slope) {
    std::printf("fitted exponent %.4Lf (1/d = %.4Lf)\n", *slope, ref);
  } else {
    std::cout << "fitted exponent: insufficient data\n";
  }
  return 0;
}

int cmd_verify(const HeightArg& h, const std::string& report, const std::string& file, int threads, int samples) {
  VerifyOptions opts;
  opts.max_height = census_height(h.value());
  opts.threads = threads;
  opts.family_file = file;
  opts.containment_samples = samples;
  const auto rep = run_verify(opts, [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; });
  for (const auto& f : rep.findings) std::cout << "finding " << format_line(f) << "\n";
  if (!report.empty()) write_out(report, rep.json(utc_now()));
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting elliptic curves with prescribed torsion by naive height"};
  app.require_subcommand(1);
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* census = app.add_subcommand("census", "Exact torsion census of minimal curves below a height");
  HeightArg census_h;
  std::vector<std::string> census_cps;
  int census_threads = hw;
  std::string census_csv_path, census_json_path;
  census->add_option("--max-height", census_h.text, "Height bound X (e.g. 1e8)")->required();
  census->add_option("--checkpoints", census_cps, "Heights at which to record counts");
  census->add_option("--threads", census_threads)->check(CLI::PositiveNumber);
  census->add_option("--csv", census_csv_path, "CSV output path");
  census->add_option("--json", census_json_path, "JSON output path");

  auto* constants = app.add_subcommand("constants", "Region constants and their reference decimals");
  bool constants_json = false;
  constants->add_flag("--json", constants_json);

  auto* regions = app.add_subcommand("regions", "Lattice and sieved counts for one region");
  int region_i = 1;
  HeightArg region_h;
  bool region_json = false;
  regions->add_option("--i", region_i, "Region index")->required()->check(CLI::Range(1, 3));
  regions->add_option("--max-height", region_h.text)->required();
  regions->add_flag("--json", region_json);

  auto* families = app.add_subcommand("families", "Enumerate a parametric family below a height");
  std::string fam_group, fam_file;
  HeightArg fam_h;
  bool fam_json = false, fam_csv = false;
  families->add_option("--group", fam_group, "Torsion group, e.g. Z/4 or Z/2xZ/8")->required();
  families->add_option("--max-height", fam_h.text)->required();
  families->add_option("--family-file", fam_file);
  auto* fj = families->add_flag("--json", fam_json);
  families->add_flag("--csv", fam_csv)->excludes(fj);

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  HeightArg verify_h{"1e8"};
  std::string verify_report, verify_file;
  int verify_threads = hw, verify_samples = 1000;
  verify->add_option("--max-height", verify_h.text, "Census height; below 1e8 runs a subset");
  verify->add_option("--report", verify_report, "JSON report path");
  verify->add_option("--family-file", verify_file);
  verify->add_option("--threads", verify_threads)->check(CLI::PositiveNumber);
  verify->add_option("--samples", verify_samples, "Containment samples per family")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*census) return cmd_census(census_h, census_cps, census_threads, census_csv_path, census_json_path);
    if (*constants) return cmd_constants(constants_json);
    if (*regions) return cmd_regions(region_i, region_h, region_json);
    if (*families) return cmd_families(fam_group, fam_h, fam_file, fam_json, fam_csv);
    if (*verify) return cmd_verify(verify_h, verify_report, verify_file, verify_threads, verify_samples);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
