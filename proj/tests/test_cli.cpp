#include <doctest.h>

#include <sstream>

#include "gospace/cli.hpp"

using namespace gospace;
using nlohmann::json;

namespace {

cli::AnalysisConfig cfg_of(const char* text) { return cli::parse_config(json::parse(text)); }

}  // namespace

TEST_CASE("config parsing") {
  auto c = cfg_of(R"j({"space": "flag_so5_u2()", "lambda_axes": [[1, 2], ["1/2", 0.25, 3]],
                      "analyses": ["go-check", "go-check"], "sample_budget": 5, "seed": 9})j");
  REQUIRE(c.grid.size() == 6);
  CHECK(c.grid[0].values == std::vector<Rational>{1, Rational(1, 2)});
  CHECK(c.grid[1].values == std::vector<Rational>{1, Rational(1, 4)});
  CHECK(c.grid[5].values == std::vector<Rational>{2, 3});
  CHECK(c.analyses.size() == 1);
  CHECK(c.budget == 5);
  CHECK(c.seed == 9);
  CHECK(c.mode == "rational");

  CHECK(cfg_of(R"j({"space": "sphere(2)", "analyses": ["go-check"]})j").grid.size() == 1);

  for (const char* bad : {R"j([])j", R"j({"analyses": ["go-check"]})j", R"j({"space": "sphere(2)"})j",
                          R"j({"space": "sphere(2)", "analyses": ["nothing"]})j",
                          R"j({"space": "sphere(2)", "analyses": ["go-check"], "sample_budget": 0})j",
                          R"j({"space": "sphere(2)", "analyses": ["go-check"], "scalar_mode": "complex"})j",
                          R"j({"space": "sphere(2)", "analyses": ["go-check"], "lambdas": [1], "diagonal": [1, 1]})j",
                          R"j({"space": "sphere(2)", "analyses": ["go-check"], "lambdas": ["x"]})j",
                          R"j({"space": "sphere(2)", "analyses": ["go-check"], "colour": 1})j"})
    CHECK_THROWS_AS(cfg_of(bad), cli::ConfigError);
}

TEST_CASE("validation against the space") {
  CHECK_THROWS_AS(cli::validate(cfg_of(R"j({"space": "nowhere()", "analyses": ["go-check"]})j")), cli::ConfigError);
  CHECK_THROWS_AS(cli::validate(cfg_of(R"j({"space": "sphere(2)", "analyses": ["go-check"], "lambdas": [1, 2]})j")),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::validate(cfg_of(R"j({"space": "sphere(2)", "analyses": ["go-check"], "lambdas": [-1]})j")),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::validate(cfg_of(R"j({"space": "wallach(2,2,2)", "analyses": ["gordon"]})j")), cli::ConfigError);
  CHECK_THROWS_AS(cli::validate(cfg_of(R"j({"space": "lorentz3(e11)", "diagonal": [1, 1, -1],
                                           "signature": "pseudo", "analyses": ["go-check"]})j")),
                  cli::ConfigError);
  CHECK_NOTHROW(cli::validate(cfg_of(R"j({"space": "tamaru(1,2)", "analyses": ["gordon"]})j")));
}

TEST_CASE("flag sweep gives three go records") {
  auto c = cfg_of(R"j({"space": "flag_so5_u2()", "lambda_grid": [[1, 1], [1, 2], [1, 3]],
                      "analyses": ["go-check"], "sample_budget": 16})j");
  auto r = cli::run_analysis(c, 2);
  REQUIRE(r.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r[i].line["index"] == i);
    CHECK(r[i].line["analyses"]["go-check"]["status"] == "go_on_samples");
    CHECK(!r[i].error);
  }
}

TEST_CASE("wallach not_go record carries a verifiable witness") {
  auto c = cfg_of(R"j({"space": "wallach(2,2,2)", "lambdas": [1, 2, 3], "analyses": ["go-check"],
                      "sample_budget": 8})j");
  auto r = cli::run_analysis(c, 1);
  const auto& g = r[0].line["analyses"]["go-check"];
  CHECK(g["status"] == "not_go");
  CHECK(g.contains("counterexample"));
  CHECK(g.contains("certificate"));

  std::istringstream good(cli::format_report(r));
  auto ok = cli::verify_report(good);
  CHECK(ok.ok());
  CHECK(ok.checked == 1);

  // tampering is caught: a zero certificate, and a counterexample that is in fact geodesic
  json bad = r[0].line;
  for (auto& y : bad["analyses"]["go-check"]["certificate"]) y = "0";
  std::istringstream zero(bad.dump() + "\n");
  CHECK(!cli::verify_report(zero).ok());
  bad = r[0].line;
  for (auto& x : bad["analyses"]["go-check"]["counterexample"]) x = "0";
  bad["analyses"]["go-check"]["counterexample"][0] = "1";
  std::istringstream axis(bad.dump() + "\n");
  CHECK(!cli::verify_report(axis).ok());

  std::istringstream junk("{not json\n");
  CHECK(!cli::verify_report(junk).ok());
}

TEST_CASE("float mode re-verifies refutations exactly") {
  auto c = cfg_of(R"j({"space": "wallach(2,2,2)", "lambdas": [1, 1, 2], "analyses": ["go-check", "naturally-reductive"],
                      "sample_budget": 8, "scalar_mode": "float"})j");
  auto r = cli::run_analysis(c, 1);
  const auto& g = r[0].line["analyses"]["go-check"];
  CHECK(g["status"] == "not_go");
  CHECK(g["reverified"] == "rational");
  std::istringstream in(cli::format_report(r));
  auto v = cli::verify_report(in);
  CHECK(v.ok());
  CHECK(v.checked == 2);
}

TEST_CASE("every analysis runs and re-verifies") {
  const char* configs[] = {
      R"j({"space": "sphere_hopf(1)", "lambdas": [1, 3], "analyses": ["geodesic-vectors", "go-check",
          "naturally-reductive", "gordon", "two-step", "oracle-crosscheck"], "sample_budget": 6})j",
      R"j({"space": "tamaru_control()", "analyses": ["gordon"], "sample_budget": 6})j",
      R"j({"space": "lorentz3(e11)", "diagonal": [1, 1, -1], "signature": "pseudo",
          "analyses": ["pseudo", "geodesic-vectors"], "sample_budget": 6})j",
      R"j({"space": "su2_trivial()", "diagonal": [1, 2, 3], "analyses": ["geodesic-vectors", "oracle-crosscheck"],
          "sample_budget": 6, "scalar_mode": "float"})j"};
  for (const char* text : configs) {
    CAPTURE(text);
    auto r = cli::run_analysis(cfg_of(text), 1);
    for (const auto& p : r) CHECK(!p.error);
    std::istringstream in(cli::format_report(r));
    auto v = cli::verify_report(in);
    CHECK(v.ok());
    CHECK(v.checked > 0);
  }
  auto hopf = cli::run_analysis(cfg_of(configs[0]), 1)[0].line["analyses"];
  CHECK(hopf["two-step"]["verdict"] == true);
  CHECK(hopf["oracle-crosscheck"]["agree"] == hopf["oracle-crosscheck"]["total"]);
  auto ctl = cli::run_analysis(cfg_of(configs[1]), 1)[0].line["analyses"];
  CHECK(ctl["gordon"].contains("failure"));
  auto lor = cli::run_analysis(cfg_of(configs[2]), 1)[0].line["analyses"];
  CHECK(!lor["pseudo"]["nonzero_k"].empty());
  CHECK(lor["pseudo"]["constraint_violations"] == 0);
}

TEST_CASE("reports are identical for any job count") {
  auto c = cfg_of(R"j({"space": "wallach(2,2,2)", "lambda_grid": [[1, 1, 1], [1, 2, 3], [2, 1, 1]],
                      "analyses": ["geodesic-vectors", "go-check", "naturally-reductive", "oracle-crosscheck"],
                      "sample_budget": 8, "seed": 4})j");
  const auto one = cli::format_report(cli::run_analysis(c, 1));
  CHECK(one == cli::format_report(cli::run_analysis(c, 8)));
  c.grid.resize(1);
  CHECK(cli::format_report(cli::run_analysis(c, 1)) == cli::format_report(cli::run_analysis(c, 8)));
}

TEST_CASE("sweep CSV and catalog listing") {
  auto c = cfg_of(R"j({"space": "wallach(2,2,2)", "lambda_grid": [[1, 1, 1], [1, 2, 3]],
                      "analyses": ["go-check"], "sample_budget": 4})j");
  const auto csv = cli::sweep_csv(cli::run_analysis(c, 1));
  CHECK(csv.rfind("index,point,analysis,verdict,value\n", 0) == 0);
  CHECK(csv.find("0,1;1;1,go-check,go_on_samples,") != std::string::npos);
  CHECK(csv.find("1,1;2;3,go-check,not_go,") != std::string::npos);

  auto cat = cli::catalog_json();
  CHECK(cat.size() == catalog().size());
  for (const auto& e : cat) {
    CHECK(!e["id"].get<std::string>().empty());
    CHECK(!e["citation"].get<std::string>().empty());
  }
}
