#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gospace/cli.hpp"

using namespace gospace;
using nlohmann::json;

namespace {

constexpr int exit_config = 2;
constexpr int exit_crash = 1;
constexpr int exit_unverified = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("gospace");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GOSPACE_LOG")) {
    auto lvl = spdlog::level::from_str(env);
    // from_str maps unknown names to off
    if (lvl == spdlog::level::off && std::string(env) != "off") spdlog::warn("GOSPACE_LOG='{}' not understood", env);
    else spdlog::set_level(lvl);
  }
}

struct RunFlags {
  std::string config;
  std::string mode;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t jobs = 1;
  std::string out;
};

void add_run_flags(CLI::App* sub, RunFlags& f) {
  sub->add_option("config", f.config, "JSON config file")->required();
  sub->add_option("--mode", f.mode, "scalar mode")->check(CLI::IsMember({"rational", "float"}));
  sub->add_option("--budget", f.budget, "sample budget")->check(CLI::PositiveNumber);
  sub->add_option_function<std::uint64_t>("--seed", [&f](const std::uint64_t& s) {
    f.seed = s;
    f.seed_set = true;
  }, "random seed");
  sub->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "output path (default: config 'output' or stdout)");
}

cli::AnalysisConfig configure(const RunFlags& f) {
  auto cfg = cli::load_config(f.config);
  if (!f.mode.empty()) cfg.mode = f.mode;
  if (f.budget) cfg.budget = f.budget;
  if (f.seed_set) cfg.seed = f.seed;
  if (!f.out.empty()) cfg.output = f.out;
  return cfg;
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path || *path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw cli::ConfigError("cannot write '" + *path + "'");
  out << text;
}

int run(const RunFlags& f, bool csv) {
  const auto cfg = configure(f);
  const auto t0 = std::chrono::steady_clock::now();
  auto results = cli::run_analysis(cfg, f.jobs);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg.output, csv ? cli::sweep_csv(results) : cli::format_report(results));
  if (cfg.output && *cfg.output != "-") {
    // timings stay out of the report so reruns compare byte for byte
    std::ofstream side(*cfg.output + ".timings.json");
    side << cli::timing_envelope(cfg, results, total).dump(2) << '\n';
  }
  spdlog::info("{} points in {:.3f} s", results.size(), total);
  for (const auto& r : results)
    if (r.error) return exit_crash;
  return 0;
}

int list_catalog(const std::string& filter, bool as_json) {
  auto all = cli::catalog_json();
  json shown = json::array();
  for (const auto& e : all)
    if (filter.empty() || e["id"].get<std::string>().find(filter) != std::string::npos ||
        e["citation"].get<std::string>().find(filter) != std::string::npos)
      shown.push_back(e);
  if (as_json) {
    std::cout << shown.dump(2) << '\n';
    return 0;
  }
  for (const auto& e : shown) {
    std::cout << e["id"].get<std::string>() << (e["stub"].get<bool>() ? " [stub]" : "") << "\n  "
              << e["description"].get<std::string>() << "\n  cite: " << e["citation"].get<std::string>() << '\n';
    for (const auto& v : e["verdicts"]) {
      std::cout << "    " << v["kind"].get<std::string>();
      for (const char* k : {"lambdas", "diagonal"})
        if (v.contains(k)) std::cout << ' ' << k << '=' << v[k].dump();
      std::cout << ": " << v["expected"].get<std::string>() << '\n';
    }
  }
  return 0;
}

int check_catalog(const std::string& filter, std::uint64_t seed, std::size_t jobs) {
  int failed = 0;
  for (const auto& e : catalog()) {
    if (e.stub || (!filter.empty() && e.id.find(filter) == std::string::npos)) continue;
    const auto s = e.build();
    for (const auto& v : e.verdicts) {
      VerdictRunOptions opt;
      opt.seed = seed;
      opt.jobs = jobs;
      auto r = run_verdict(e, s, v, opt);
      failed += !r.pass;
      std::cout << (r.pass ? "PASS " : "FAIL ") << e.id << ' ' << to_string(v.kind) << ": " << r.observed << '\n';
    }
  }
  return failed ? exit_unverified : 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"gospace: homogeneous geodesics in reductive homogeneous spaces"};
  app.require_subcommand(1);

  std::string filter;
  bool as_json = false, check = false;
  std::uint64_t cat_seed = 1;
  std::size_t cat_jobs = 1;
  auto* cat = app.add_subcommand("catalog", "list catalog entries");
  cat->add_option("--filter", filter, "substring of id or citation");
  cat->add_flag("--json", as_json, "JSON output");
  cat->add_flag("--check", check, "run every expected verdict");
  cat->add_option("--seed", cat_seed, "random seed for --check");
  cat->add_option("--jobs", cat_jobs, "worker threads for --check")->check(CLI::PositiveNumber);

  RunFlags analyze_flags, sweep_flags;
  auto* analyze = app.add_subcommand("analyze", "run analyses, JSON-lines report");
  add_run_flags(analyze, analyze_flags);
  auto* sweep = app.add_subcommand("sweep", "run analyses, CSV summary");
  add_run_flags(sweep, sweep_flags);

  std::string report;
  auto* verify = app.add_subcommand("verify", "re-check the certificates of a report");
  verify->add_option("report", report, "report file, - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*cat) return check ? check_catalog(filter, cat_seed, cat_jobs) : list_catalog(filter, as_json);
    if (*analyze) return run(analyze_flags, false);
    if (*sweep) return run(sweep_flags, true);
    if (*verify) {
      cli::VerifySummary sum;
      if (report == "-") {
        sum = cli::verify_report(std::cin);
      } else {
        std::ifstream in(report);
        if (!in) throw cli::ConfigError("cannot open report '" + report + "'");
        sum = cli::verify_report(in);
      }
      for (const auto& m : sum.messages) std::cerr << m << '\n';
      std::cout << sum.lines << " lines, " << sum.checked << " certificates checked, " << sum.failed << " failed\n";
      return sum.ok() ? 0 : exit_unverified;
    }
  } catch (const cli::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return exit_config;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return exit_crash;
  }
  return 0;
}
