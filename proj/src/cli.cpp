#include "gospace/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "gospace/coordinate_oracle.hpp"
#include "gospace/parallel.hpp"
#include "gospace/two_step.hpp"

namespace gospace::cli {

using nlohmann::json;

const std::vector<std::string>& known_analyses() {
  static const std::vector<std::string> a = {"geodesic-vectors", "go-check", "naturally-reductive", "gordon",
                                             "two-step",         "pseudo",   "oracle-crosscheck"};
  return a;
}

// ---------------------------------------------------------------- config

namespace {

Rational read_rational(const json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_number_float()) return parse_rational(v.dump());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
  throw ConfigError(what + ": expected a number or a rational string");
}

std::vector<Rational> read_point(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ConfigError(what + ": expected a nonempty array");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(read_rational(x, what));
  return out;
}

std::vector<GridPoint> read_grid(const json& j) {
  std::vector<GridPoint> grid;
  int forms = 0;
  for (const char* k : {"lambdas", "lambda_grid", "lambda_axes", "diagonal", "diagonal_grid"}) forms += j.contains(k);
  if (forms > 1) throw ConfigError("give only one of lambdas, lambda_grid, lambda_axes, diagonal, diagonal_grid");
  if (j.contains("lambdas")) grid.push_back({read_point(j["lambdas"], "lambdas"), false});
  if (j.contains("diagonal")) grid.push_back({read_point(j["diagonal"], "diagonal"), true});
  for (const char* k : {"lambda_grid", "diagonal_grid"}) {
    if (!j.contains(k)) continue;
    if (!j[k].is_array()) throw ConfigError(std::string(k) + ": expected an array of points");
    for (const auto& p : j[k]) grid.push_back({read_point(p, k), std::string(k) == "diagonal_grid"});
  }
  if (j.contains("lambda_axes")) {
    // cartesian product, last block varying fastest
    const json& ax = j["lambda_axes"];
    if (!ax.is_array() || ax.empty()) throw ConfigError("lambda_axes: expected one value list per block");
    std::vector<std::vector<Rational>> axes;
    for (const auto& a : ax) axes.push_back(read_point(a, "lambda_axes"));
    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
      GridPoint p;
      for (std::size_t b = 0; b < axes.size(); ++b) p.values.push_back(axes[b][idx[b]]);
      grid.push_back(std::move(p));
      std::size_t b = axes.size();
      while (b > 0 && ++idx[b - 1] == axes[b - 1].size()) idx[--b] = 0;
      if (b == 0) break;
    }
  }
  return grid;
}

}  // namespace

AnalysisConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> keys = {"space",       "lambdas", "lambda_grid",   "lambda_axes",
                                                "diagonal",    "diagonal_grid", "analyses", "sample_budget",
                                                "seed",        "scalar_mode",   "signature", "output"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("unknown config key '" + k + "'");
  AnalysisConfig c;
  if (!j.contains("space") || !j["space"].is_string()) throw ConfigError("config needs a string 'space'");
  c.space = j["space"].get<std::string>();
  c.grid = read_grid(j);
  if (c.grid.empty()) c.grid.push_back({});  // standard metric
  if (!j.contains("analyses") || !j["analyses"].is_array() || j["analyses"].empty())
    throw ConfigError("config needs a nonempty 'analyses' array");
  for (const auto& a : j["analyses"]) {
    if (!a.is_string()) throw ConfigError("analyses: expected strings");
    const auto name = a.get<std::string>();
    const auto& known = known_analyses();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError("unknown analysis '" + name + "'");
    if (std::find(c.analyses.begin(), c.analyses.end(), name) == c.analyses.end()) c.analyses.push_back(name);
  }
  if (j.contains("sample_budget")) {
    if (!j["sample_budget"].is_number_integer() || j["sample_budget"].get<long long>() < 1)
      throw ConfigError("sample_budget must be an integer >= 1");
    c.budget = j["sample_budget"].get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("scalar_mode")) {
    c.mode = j["scalar_mode"].is_string() ? j["scalar_mode"].get<std::string>() : "";
    if (c.mode != "rational" && c.mode != "float") throw ConfigError("scalar_mode must be 'rational' or 'float'");
  }
  if (j.contains("signature")) {
    try {
      c.signature = parse_signature(j["signature"].get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("signature: ") + e.what());
    }
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output must be a path string");
    c.output = j["output"].get<std::string>();
  }
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

namespace {

ReductiveSpace<Rational> space_of(const std::string& id) {
  // catalog ids and inline specs share the parser
  return build_space(id);
}

InvariantMetric<Rational> metric_of(const ReductiveSpace<Rational>& space, const GridPoint& p, SignatureMode mode) {
  if (p.values.empty()) {
    if (mode == SignatureMode::pseudo) throw InvalidArgument("pseudo signature needs lambdas or a diagonal");
    return standard_metric(space);
  }
  if (p.diagonal) {
    if (p.values.size() != space.dim_m())
      throw InvalidArgument("diagonal needs " + std::to_string(space.dim_m()) + " entries");
    return metric_from_matrix(space, Matrix<Rational>::diagonal(p.values), mode);
  }
  return metric_from_lambdas(space, Vec<Rational>(p.values), mode);
}

bool wants(const AnalysisConfig& c, const std::string& a) {
  return std::find(c.analyses.begin(), c.analyses.end(), a) != c.analyses.end();
}

}  // namespace

void validate(const AnalysisConfig& cfg) {
  std::optional<ReductiveSpace<Rational>> space;
  try {
    space = space_of(cfg.space);
  } catch (const std::exception& e) {
    throw ConfigError("space '" + cfg.space + "': " + e.what());
  }
  if (cfg.budget < 1) throw ConfigError("sample_budget must be >= 1");
  if (cfg.grid.empty()) throw ConfigError("empty metric grid");
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    try {
      metric_of(*space, cfg.grid[i], cfg.signature);
    } catch (const std::exception& e) {
      throw ConfigError("grid point " + std::to_string(i) + ": " + e.what());
    }
    if (cfg.grid[i].diagonal && wants(cfg, "two-step"))
      throw ConfigError("two-step needs block lambdas, not a diagonal metric");
  }
  if (wants(cfg, "gordon") && space->submodules().size() != 2)
    throw ConfigError("gordon needs a two-block chain space");
  if (cfg.signature == SignatureMode::pseudo)
    for (const char* a : {"go-check", "two-step", "oracle-crosscheck", "gordon"})
      if (wants(cfg, a)) throw ConfigError(std::string(a) + " is riemannian only");
}

// ---------------------------------------------------------------- analyses

namespace {

json jv(const Rational& q) { return to_string(q); }
json jv(double d) { return d; }

template <class T>
json jvec(const Vec<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jv(x));
  return a;
}

json jpoint(const GridPoint& p) {
  json o;
  o[p.diagonal ? "diagonal" : "lambdas"] = jvec(Vec<Rational>(p.values));
  if (p.values.empty()) o = json{{"standard", true}};
  return o;
}

Vec<Rational> to_rational(const Vec<double>& v) {
  Vec<Rational> out;
  for (double x : v) out.push_back(rationalize(x, std::int64_t(1) << 20));
  return out;
}

// both scalar readings of the same space and metric
struct Setting {
  const ReductiveSpace<Rational>& qs;
  const InvariantMetric<Rational>& qm;
  std::size_t budget;
  std::uint64_t seed;
  std::size_t jobs;
};

template <class T>
json geodesic_vectors(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const Setting& st) {
  SearchOptions opt;
  opt.budget = st.budget;
  opt.seed = st.seed;
  opt.jobs = st.jobs;
  json list = json::array();
  json per = json::object();
  for (auto strat : {SearchStrategy::axes, SearchStrategy::pair_grid, SearchStrategy::random}) {
    auto r = find_geodesic_vectors(s, m, strat, opt);
    per[to_string(strat)] = r.hits.size();
    for (const auto& h : r.hits)
      list.push_back({{"strategy", to_string(strat)}, {"x", jvec(h.x)}, {"a", jvec(h.a)}, {"exact", h.exact}});
  }
  return {{"count", list.size()}, {"per_strategy", per}, {"vectors", list}};
}

template <class T>
json go(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const Setting& st) {
  GoOptions opt;
  opt.budget = st.budget;
  opt.seed = st.seed;
  opt.jobs = st.jobs;
  auto v = go_check(s, m, opt);
  json r = {{"status", to_string(v.status)},
            {"samples_tested", v.samples_tested},
            {"structured_samples", v.structured_samples},
            {"naturally_reductive", v.naturally_reductive}};
  if (v.status != GoStatus::not_go) return r;
  r["failing_sample"] = *v.failing_sample;
  if constexpr (ScalarTraits<T>::exact) {
    r["counterexample"] = jvec(*v.counterexample);
    r["certificate"] = jvec(v.certificate);
  } else {
    // a float refutation counts only after an exact rerun
    const Vec<Rational> x = to_rational(*v.counterexample);
    auto c = geodesic_completion(st.qs, st.qm, x);
    if (c.solvable()) {
      r["status"] = to_string(GoStatus::undecided);
      r["float_status"] = "not_go";
    } else {
      r["counterexample"] = jvec(x);
      r["certificate"] = jvec(c.certificate);
      r["reverified"] = "rational";
    }
  }
  return r;
}

template <class T>
json natural(const ReductiveSpace<T>& s, const InvariantMetric<T>& m) {
  auto r = naturally_reductive_check(s, m);
  json o = {{"holds", r.holds}, {"max_residual", r.max_residual}};
  if (r.triple) {
    o["triple"] = {(*r.triple)[0], (*r.triple)[1], (*r.triple)[2]};
    o["residual"] = jv(r.residual);
  }
  return o;
}

Vec<Rational> on_block(const ReductiveSpace<Rational>& s, std::size_t b, const Vec<Rational>& v) {
  Vec<Rational> out = zeros<Rational>(s.dim_m());
  for (std::size_t j = 0; j < v.size(); ++j) out[s.submodules()[b][j]] = v[j];
  return out;
}

template <class T>
json gordon(const ReductiveSpace<T>& s, const Setting& st) {
  const std::size_t nb = st.qs.submodules()[0].size(), nf = st.qs.submodules()[1].size();
  std::vector<char> ok(st.budget, 0);
  auto pair = [&](std::size_t i) {
    return std::make_pair(on_block(st.qs, 1, go_random_sample<Rational>(nf, st.seed, 2 * i)),
                          on_block(st.qs, 0, go_random_sample<Rational>(nb, st.seed, 2 * i + 1)));
  };
  parallel_for(st.budget, st.jobs, [&](std::size_t i) {
    auto [f, c] = pair(i);
    ok[i] = gordon_criterion(s, vec_cast<T>(f), vec_cast<T>(c)).solvable();
  });
  std::size_t solved = 0;
  for (char c : ok) solved += c;
  json r = {{"pairs", st.budget}, {"solvable", solved}};
  for (std::size_t i = 0; i < st.budget; ++i) {
    if (ok[i]) continue;
    auto [f, c] = pair(i);
    auto exact = gordon_criterion(st.qs, f, c);
    if (exact.solvable()) {
      r["undecided"] = i;
      continue;
    }
    r["failure"] = {{"index", i}, {"v_F", jvec(f)}, {"v_C", jvec(c)}, {"certificate", jvec(exact.certificate)}};
    break;
  }
  return r;
}

template <class T>
json two_step(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const Setting& st) {
  const std::size_t nb = s.submodules().size();
  if (!naturally_reductive_check(s, standard_metric(s)).holds)
    return {{"applicable", false}, {"reason", "standard metric not naturally reductive for this decomposition"}};
  std::optional<std::pair<std::size_t, std::size_t>> ab;
  for (std::size_t a = 0; a < nb && !ab; ++a)
    for (std::size_t b = 0; b < nb && !ab; ++b)
      if (a != b && bracket_condition(s, a, b)) ab = {a, b};
  if (!ab) return {{"applicable", false}, {"reason", "no block pair with [m_a, m_b] in m_a"}};
  const auto [a, b] = *ab;
  const std::size_t na = s.submodules()[a].size(), nbb = s.submodules()[b].size();
  std::vector<TwoStepCheck<T>> checks(st.budget);
  auto curve = [&](std::size_t i) {
    const Vec<Rational> xa = on_block(st.qs, a, go_random_sample<Rational>(na, st.seed, 2 * i));
    const Vec<Rational> xb = on_block(st.qs, b, go_random_sample<Rational>(nbb, st.seed, 2 * i + 1));
    return construct_two_step(s, m, a, b, vec_cast<T>(xa), vec_cast<T>(xb));
  };
  parallel_for(st.budget, st.jobs, [&](std::size_t i) { checks[i] = is_two_step_geodesic(s, m, curve(i)); });
  bool all = true;
  double mx = 0;
  json r = {{"applicable", true}, {"module_a", a}, {"module_b", b}, {"samples", st.budget}};
  for (std::size_t i = 0; i < st.budget; ++i) {
    mx = std::max(mx, checks[i].max_residual);
    if (!checks[i].verdict && all) {
      all = false;
      r["failing_sample"] = i;
    }
  }
  const auto c = curve(0);
  r["verdict"] = all;
  r["max_residual"] = mx;
  r["lambda"] = jv(*c.lambda);
  r["example"] = {{"X", jvec(c.X)}, {"Y", jvec(c.Y)}, {"Z", jvec(c.Z)}, {"verdict", checks[0].verdict}};
  return r;
}

template <class T>
json pseudo(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const Setting& st) {
  const std::size_t dg = s.dim_g();
  std::vector<Vec<T>> cands;
  for (std::size_t i = 0; i < dg; ++i) {
    cands.push_back(unit<T>(dg, i));
    for (std::size_t j = i + 1; j < dg; ++j)
      for (int sign : {1, -1}) {
        Vec<T> v = unit<T>(dg, i);
        v[j] = T(sign);
        cands.push_back(std::move(v));
      }
  }
  for (std::size_t i = 0; i < st.budget; ++i) cands.push_back(go_random_sample<T>(dg, st.seed, i));
  std::vector<PseudoResult<T>> res(cands.size());
  parallel_for(cands.size(), st.jobs, [&](std::size_t i) {
    if (!all_zero(s.proj_m(cands[i]), 0.0)) res[i] = pseudo_geodesic_test(s, m, cands[i]);
  });
  std::size_t with_k = 0, violations = 0;
  json nz = json::array();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!res[i].k) continue;
    ++with_k;
    if (!res[i].null_constraint_ok) ++violations;
    if (!is_zero(*res[i].k, 1.0)) nz.push_back({{"V", jvec(cands[i])}, {"k", jv(*res[i].k)}, {"null", res[i].null}});
  }
  return {{"tested", cands.size()}, {"with_k", with_k}, {"nonzero_k", nz}, {"constraint_violations", violations}};
}

template <class T>
json oracle(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const Setting& st) {
  SearchOptions opt;
  opt.jobs = st.jobs;
  std::vector<Vec<T>> cands;
  for (auto strat : {SearchStrategy::axes, SearchStrategy::pair_grid}) {
    for (const auto& h : find_geodesic_vectors(s, m, strat, opt).hits) {
      if (cands.size() >= 3) break;
      cands.push_back(s.embed(h.a, h.x));
    }
  }
  const std::size_t refuted = std::min<std::size_t>(st.budget, 3);
  for (std::size_t i = 0; i < refuted; ++i) cands.push_back(s.embed_m(go_random_sample<T>(s.dim_m(), st.seed, i)));
  const NormalChart chart(s, m);
  json cases = json::array();
  std::size_t agree = 0;
  double worst_in = 0, best_out = -1;
  for (const auto& X : cands) {
    auto c = compare_with_oracle(chart, s, m, X, st.jobs);
    agree += c.agree();
    if (c.algebraic) worst_in = std::max(worst_in, c.residual);
    else best_out = best_out < 0 ? c.residual : std::min(best_out, c.residual);
    cases.push_back({{"X", jvec(X)}, {"algebraic", c.algebraic}, {"residual", c.residual}, {"agree", c.agree()}});
  }
  json r = {{"cases", cases}, {"agree", agree}, {"total", cands.size()}, {"threshold", oracle_threshold}};
  if (worst_in > 0 && best_out >= 0) r["separation"] = best_out / worst_in;
  return r;
}

template <class T>
json run_point(const ReductiveSpace<T>& s, const InvariantMetric<T>& m, const AnalysisConfig& cfg, const Setting& st,
               bool& error) {
  json out = json::object();
  for (const auto& a : cfg.analyses) {
    try {
      if (a == "geodesic-vectors") out[a] = geodesic_vectors(s, m, st);
      else if (a == "go-check") out[a] = go(s, m, st);
      else if (a == "naturally-reductive") out[a] = natural(s, m);
      else if (a == "gordon") out[a] = gordon(s, st);
      else if (a == "two-step") out[a] = two_step(s, m, st);
      else if (a == "pseudo") out[a] = pseudo(s, m, st);
      else if (a == "oracle-crosscheck") out[a] = oracle(s, m, st);
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", a, e.what());
      out[a] = {{"error", e.what()}};
      error = true;
    }
  }
  return out;
}

}  // namespace

std::vector<PointResult> run_analysis(const AnalysisConfig& cfg, std::size_t jobs) {
  validate(cfg);
  const auto space = space_of(cfg.space);
  const std::size_t n = cfg.grid.size();
  jobs = std::max<std::size_t>(jobs, 1);
  const std::size_t outer = n > 1 ? jobs : 1;
  const std::size_t inner = n > 1 ? 1 : jobs;
  std::vector<PointResult> out(n);
  const auto sd = space.convert<double>();
  parallel_for(n, outer, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto metric = metric_of(space, cfg.grid[i], cfg.signature);
    spdlog::debug("point {} of {}", i + 1, n);
    Setting st{space, metric, cfg.budget, cfg.seed, inner};
    json line = {{"schema", report_schema},
                 {"index", i},
                 {"space", cfg.space},
                 {"mode", cfg.mode},
                 {"signature", to_string(cfg.signature)},
                 {"point", jpoint(cfg.grid[i])},
                 {"seed", cfg.seed},
                 {"budget", cfg.budget}};
    bool error = false;
    if (cfg.mode == "float") line["analyses"] = run_point(sd, metric.convert<double>(), cfg, st, error);
    else line["analyses"] = run_point(space, metric, cfg, st, error);
    line["status"] = error ? "error" : "ok";
    out[i].line = std::move(line);
    out[i].error = error;
    out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return out;
}

std::string format_report(const std::vector<PointResult>& results) {
  std::string s;
  for (const auto& r : results) s += r.line.dump() + "\n";
  return s;
}

json timing_envelope(const AnalysisConfig& cfg, const std::vector<PointResult>& results, double total) {
  json pts = json::array();
  for (const auto& r : results) pts.push_back({{"index", r.line.value("index", 0)}, {"seconds", r.seconds}});
  const auto now = std::chrono::system_clock::now();
  return {{"schema", report_schema},
          {"space", cfg.space},
          {"finished_unix", std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()},
          {"total_seconds", total},
          {"points", pts}};
}

// ---------------------------------------------------------------- sweep CSV

namespace {

std::pair<std::string, std::string> summary(const std::string& name, const json& a) {
  auto num = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (a.contains("error")) return {"error", ""};
  if (name == "geodesic-vectors") return {a["count"].get<std::size_t>() ? "found" : "none", num(a["count"])};
  if (name == "go-check") return {a["status"], num(a["samples_tested"])};
  if (name == "naturally-reductive") return {a["holds"].get<bool>() ? "holds" : "fails", num(a["max_residual"])};
  if (name == "gordon")
    return {a["solvable"] == a["pairs"] ? "all_solvable" : (a.contains("failure") ? "fails" : "undecided"),
            num(a["solvable"])};
  if (name == "two-step") {
    if (!a["applicable"].get<bool>()) return {"not_applicable", ""};
    return {a["verdict"].get<bool>() ? "two_step" : "not_two_step", num(a["max_residual"])};
  }
  if (name == "pseudo") return {a["nonzero_k"].empty() ? "no_nonzero_k" : "nonzero_k", num(a["nonzero_k"].size())};
  if (name == "oracle-crosscheck")
    return {a["agree"] == a["total"] ? "agree" : "disagree", a.contains("separation") ? num(a["separation"]) : ""};
  return {"?", ""};
}

}  // namespace

std::string sweep_csv(const std::vector<PointResult>& results) {
  std::ostringstream os;
  os << "index,point,analysis,verdict,value\n";
  for (const auto& r : results) {
    const json& p = r.line["point"];
    std::string pt;
    for (const char* k : {"lambdas", "diagonal"})
      if (p.contains(k))
        for (const auto& v : p[k]) pt += (pt.empty() ? "" : ";") + v.get<std::string>();
    if (pt.empty()) pt = "standard";
    for (const auto& [name, a] : r.line["analyses"].items()) {
      auto [verdict, value] = summary(name, a);
      os << r.line["index"].get<std::size_t>() << ',' << pt << ',' << name << ',' << verdict << ',' << value << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- verify

namespace {

template <class T>
Vec<T> read_vec(const json& a) {
  Vec<T> v;
  for (const auto& x : a) {
    if constexpr (ScalarTraits<T>::exact) {
      v.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : parse_rational(x.dump()));
    } else {
      v.push_back(x.is_string() ? to_double(parse_rational(x.get<std::string>())) : x.get<double>());
    }
  }
  return v;
}

struct Verifier {
  VerifySummary& sum;
  std::size_t line;
  void check(bool ok, const std::string& what) {
    ++sum.checked;
    if (!ok) {
      ++sum.failed;
      sum.messages.push_back("line " + std::to_string(line) + ": " + what + " does not re-verify");
    }
  }
};

template <class T>
void verify_typed(const json& an, const ReductiveSpace<T>& s, const InvariantMetric<T>& m, Verifier& v) {
  if (an.contains("geodesic-vectors") && an["geodesic-vectors"].contains("vectors"))
    for (const auto& h : an["geodesic-vectors"]["vectors"]) {
      const Vec<T> X = s.embed(read_vec<T>(h["a"]), read_vec<T>(h["x"]));
      if (ScalarTraits<T>::exact && h["exact"].get<bool>())
        v.check(is_geodesic_vector(s, m, X).verdict, "geodesic vector");
      else
        v.check(is_geodesic_vector(s, m, X).residual < 1e-8 * lemma_scale(m, X), "geodesic vector (float)");
    }
  if (an.contains("naturally-reductive") && an["naturally-reductive"].contains("triple")) {
    const auto& t = an["naturally-reductive"]["triple"];
    auto e = [&](std::size_t i) { return unit<T>(s.dim_m(), t[i].get<std::size_t>()); };
    const T r = naturally_reductive_residual(s, m, e(0), e(1), e(2));
    const T want = read_vec<T>(json::array({an["naturally-reductive"]["residual"]}))[0];
    v.check(!is_zero(r, std::max(1.0, m.gram.max_abs())) && is_zero(T(r - want), std::max(1.0, m.gram.max_abs())),
            "naturally reductive witness");
  }
  if (an.contains("two-step") && an["two-step"].contains("example")) {
    const auto& ex = an["two-step"]["example"];
    auto chk = multi_step_check(s, m, read_vec<T>(ex["X"]), read_vec<T>(ex["Y"]), read_vec<T>(ex["Z"]));
    v.check(chk.verdict == ex["verdict"].get<bool>(), "two-step example");
  }
  if (an.contains("pseudo"))
    for (const auto& c : an["pseudo"]["nonzero_k"]) {
      auto r = pseudo_geodesic_test(s, m, read_vec<T>(c["V"]));
      const T k = read_vec<T>(json::array({c["k"]}))[0];
      v.check(r.k && is_zero(T(*r.k - k), 1.0) && r.null == c["null"].get<bool>() && r.null_constraint_ok,
              "pseudo constant k");
    }
}

}  // namespace

VerifySummary verify_report(std::istream& in) {
  VerifySummary sum;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.empty()) continue;
    ++sum.lines;
    Verifier v{sum, lineno};
    json line;
    try {
      line = json::parse(text);
    } catch (const json::parse_error& e) {
      v.check(false, std::string("JSON (") + e.what() + ")");
      continue;
    }
    if (line.value("schema", "") != report_schema) {
      v.check(false, "schema");
      continue;
    }
    try {
      const auto space = space_of(line["space"].get<std::string>());
      const SignatureMode mode = parse_signature(line["signature"].get<std::string>());
      GridPoint p;
      const json& pt = line["point"];
      if (pt.contains("lambdas")) p.values = read_vec<Rational>(pt["lambdas"]);
      if (pt.contains("diagonal")) {
        p.values = read_vec<Rational>(pt["diagonal"]);
        p.diagonal = true;
      }
      const auto metric = metric_of(space, p, mode);
      const json& an = line["analyses"];
      // exact certificates are checked exactly in either mode
      if (an.contains("go-check") && an["go-check"].contains("certificate")) {
        const auto& g = an["go-check"];
        auto c = geodesic_completion(space, metric, read_vec<Rational>(g["counterexample"]));
        v.check(verify_infeasibility(c.system, c.rhs, read_vec<Rational>(g["certificate"])), "not_go certificate");
      }
      if (an.contains("gordon") && an["gordon"].contains("failure")) {
        const auto& f = an["gordon"]["failure"];
        auto [a, b] = gordon_system(space, read_vec<Rational>(f["v_F"]), read_vec<Rational>(f["v_C"]));
        v.check(verify_infeasibility(a, b, read_vec<Rational>(f["certificate"])), "gordon certificate");
      }
      if (line["mode"] == "float")
        verify_typed(an, space.convert<double>(), metric.convert<double>(), v);
      else
        verify_typed(an, space, metric, v);
    } catch (const std::exception& e) {
      v.check(false, std::string("report line (") + e.what() + ")");
    }
  }
  return sum;
}

// ---------------------------------------------------------------- catalog listing

json catalog_json() {
  json out = json::array();
  for (const auto& e : catalog()) {
    json vs = json::array();
    for (const auto& v : e.verdicts) {
      json o = {{"kind", to_string(v.kind)}, {"expected", v.expected}, {"citation", v.citation}};
      if (!v.lambdas.empty()) o["lambdas"] = jvec(Vec<Rational>(v.lambdas));
      if (!v.diagonal.empty()) o["diagonal"] = jvec(Vec<Rational>(v.diagonal));
      vs.push_back(std::move(o));
    }
    out.push_back({{"id", e.id},
                   {"description", e.description},
                   {"citation", e.citation},
                   {"notes", e.notes},
                   {"stub", e.stub},
                   {"compact", e.compact},
                   {"signature", to_string(e.signature)},
                   {"verdicts", vs}});
  }
  return out;
}

}  // namespace gospace::cli
