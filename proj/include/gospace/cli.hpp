#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gospace/catalog.hpp"

namespace gospace::cli {

inline constexpr const char* report_schema = "gospace-report/1";

/// Bad config, reported with exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& known_analyses();

struct GridPoint {
  std::vector<Rational> values;  // one per block, or one per m-basis vector when `diagonal`
  bool diagonal = false;
};

struct AnalysisConfig {
  std::string space;
  std::vector<GridPoint> grid;
  std::vector<std::string> analyses;
  std::size_t budget = 64;
  std::uint64_t seed = 1;
  std::string mode = "rational";  // or "float"
  SignatureMode signature = SignatureMode::riemannian;
  std::optional<std::string> output;
};

/// Reads the config object. Keys: space, lambdas | lambda_grid | lambda_axes |
/// diagonal | diagonal_grid, analyses, sample_budget, seed, scalar_mode,
/// signature, output. Throws ConfigError.
AnalysisConfig parse_config(const nlohmann::json& j);
AnalysisConfig load_config(const std::string& path);

/// Builds the space and every metric once; throws ConfigError on a bad reference.
void validate(const AnalysisConfig& cfg);

struct PointResult {
  nlohmann::json line;
  double seconds = 0;
  bool error = false;  // an analysis threw
};

/// One result per grid point, in grid order. Points are spread over `jobs`
/// workers; single-point runs hand the workers to the analyses instead.
std::vector<PointResult> run_analysis(const AnalysisConfig& cfg, std::size_t jobs);

/// JSON lines, one per point, without timings.
std::string format_report(const std::vector<PointResult>& results);

/// Timing envelope kept next to the report.
nlohmann::json timing_envelope(const AnalysisConfig& cfg, const std::vector<PointResult>& results, double total);

/// index,point,analysis,verdict,value rows for plotting.
std::string sweep_csv(const std::vector<PointResult>& results);

struct VerifySummary {
  std::size_t lines = 0;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> messages;
  bool ok() const { return failed == 0; }
};

/// Re-checks every certificate of a report independently of how it was produced.
VerifySummary verify_report(std::istream& in);

/// Identifiers, descriptions, citations and expected verdicts.
nlohmann::json catalog_json();

}  // namespace gospace::cli
