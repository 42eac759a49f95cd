#include "gospace/catalog.hpp"

#include <cctype>
#include <sstream>

#include "gospace/two_step.hpp"

namespace gospace {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::go: return "go";
    case VerdictKind::not_go: return "not_go";
    case VerdictKind::naturally_reductive: return "naturally_reductive";
    case VerdictKind::not_naturally_reductive: return "not_naturally_reductive";
    case VerdictKind::axis_geodesics: return "axis_geodesics";
    case VerdictKind::geodesics_exist: return "geodesics_exist";
    case VerdictKind::gordon_solvable: return "gordon_solvable";
    case VerdictKind::gordon_fails: return "gordon_fails";
    case VerdictKind::two_step: return "two_step";
    case VerdictKind::null_k: return "null_k";
    case VerdictKind::no_null_k: return "no_null_k";
    case VerdictKind::sweep_only: return "sweep_only";
  }
  return "?";
}

namespace {

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

ExpectedVerdict lam(VerdictKind kind, std::vector<Rational> lambdas, std::string expected, std::string citation,
                    std::size_t samples = 32) {
  ExpectedVerdict v;
  v.kind = kind;
  v.lambdas = std::move(lambdas);
  v.expected = std::move(expected);
  v.citation = std::move(citation);
  v.samples = samples;
  return v;
}

ExpectedVerdict diag(VerdictKind kind, std::vector<Rational> d, std::string expected, std::string citation) {
  ExpectedVerdict v;
  v.kind = kind;
  v.diagonal = std::move(d);
  v.expected = std::move(expected);
  v.citation = std::move(citation);
  return v;
}

CatalogEntry entry(std::string id, std::string description, std::string citation, std::vector<ExpectedVerdict> v,
                   std::string notes = "") {
  CatalogEntry e;
  e.id = id;
  e.description = std::move(description);
  e.citation = std::move(citation);
  e.verdicts = std::move(v);
  e.notes = std::move(notes);
  e.build = [id] { return build_space(id); };
  return e;
}

CatalogEntry stub(std::string id, std::string description, std::string citation) {
  CatalogEntry e;
  e.id = std::move(id);
  e.description = std::move(description);
  e.citation = std::move(citation);
  e.stub = true;
  e.notes = "exceptional group, no constructor";
  return e;
}

std::vector<CatalogEntry> make_catalog() {
  using K = VerdictKind;
  const std::string hopf = "homogeneous Hopf bundle U(n)×U(1) ⊂ U(n+1), two-step geodesics";
  const std::string tamaru = "Tamaru: g.o. spaces fibered over irreducible symmetric spaces";
  const std::string wallach = "generalized Wallach spaces (Nikonorov; Chen–Kang–Liang): g.o. iff standard metric";
  std::vector<CatalogEntry> c;

  for (int n : {1, 2}) {
    std::vector<ExpectedVerdict> v;
    for (Rational l : {Rational(1, 2), Rational(2), Rational(5)})
      v.push_back(lam(K::two_step, q({1, l}), "every submodule-pair curve is a two-step geodesic", hopf, 16));
    v.push_back(lam(K::not_naturally_reductive, q({1, 2}), "deformed metric is not naturally reductive", hopf));
    c.push_back(entry("sphere_hopf(" + std::to_string(n) + ")", "S^" + std::to_string(2 * n + 1) + " = U(" +
                          std::to_string(n + 1) + ")/U(" + std::to_string(n) + "), blocks CP^n tangent and fibre",
                      hopf, std::move(v)));
  }

  {
    std::vector<ExpectedVerdict> v;
    for (Rational l : {Rational(1, 2), Rational(1), Rational(2), Rational(3)})
      v.push_back(lam(K::go, q({1, l}), "go_on_samples", "two-parameter g.o. family on SO(5)/U(2) (Tamaru)", 64));
    v.push_back(lam(K::naturally_reductive, q({1, 1}), "standard metric is naturally reductive", "standard metric"));
    for (Rational l : {Rational(1, 2), Rational(2), Rational(3)})
      v.push_back(lam(K::not_naturally_reductive, q({1, l}), "exact failing triple",
                      "g.o. but not naturally reductive for λ₁ ≠ λ₂"));
    c.push_back(entry("flag_so5_u2()", "generalized flag manifold SO(5)/U(2) ≅ Sp(2)/U(1)·Sp(1), two summands",
                      "Tamaru; also identified with Sp(2)/U(1)·Sp(1)", std::move(v)));
  }

  for (int n : {4, 5}) {
    std::vector<ExpectedVerdict> v;
    for (auto l : {q({1, 1}), q({1, 2}), q({3, 1})})
      v.push_back(lam(K::geodesics_exist, l, "nonempty list of geodesic vectors", "Stiefel manifolds SO(n)/SO(n−2)"));
    c.push_back(entry("stiefel(" + std::to_string(n) + ")",
                      "Stiefel manifold SO(" + std::to_string(n) + ")/SO(" + std::to_string(n - 2) + ")",
                      "Stiefel manifolds SO(n)/SO(n−2)", std::move(v),
                      "first block R^{n−2}⊗R² is not irreducible for n = 4, only block-diagonal metrics are used"));
  }

  {
    ExpectedVerdict v = diag(K::axis_geodesics, q({1, 2, 3}), "exactly the three axes", "Marinosci");
    v.count = 3;
    c.push_back(entry("su2_trivial()", "SU(2)/{e} with left-invariant diagonal metrics", "Marinosci", {v}));
  }

  for (auto [k, l, m] : {std::array<int, 3>{1, 1, 2}, {2, 2, 2}, {3, 2, 2}}) {
    std::vector<ExpectedVerdict> v;
    v.push_back(lam(K::go, q({1, 1, 1}), "go_on_samples", wallach));
    v.push_back(lam(K::not_go, q({1, 2, 3}), "not_go with exact counterexample", wallach));
    v.push_back(lam(K::not_go, q({1, 1, 2}), "not_go with exact counterexample", wallach));
    const std::string id =
        "wallach(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ")";
    c.push_back(entry(id,
                      "SO(" + std::to_string(k + l + m) + ")/(SO(" + std::to_string(k) + ")×SO(" + std::to_string(l) +
                          ")×SO(" + std::to_string(m) + "))",
                      wallach, std::move(v),
                      k == 1 && l == 1 ? "SO(4)/SO(2): the blocks m_13 and m_23 are equivalent, diagonal metrics only"
                                       : ""));
  }

  {
    std::vector<ExpectedVerdict> v;
    for (auto l : {q({1, 1, 1}), q({1, 2, 3}), q({5, 1, 2})})
      v.push_back(lam(K::go, l, "go_on_samples", "product of irreducible symmetric spaces: g.o. for every metric"));
    c.push_back(entry("wallach_product()", "S² × S³ × S² as a generalized Wallach space",
                      "product of irreducible symmetric spaces", std::move(v)));
  }

  for (auto [row, n] : {std::array<int, 2>{1, 2}, {2, 1}, {5, 2}, {8, 1}, {9, 1}}) {
    std::vector<ExpectedVerdict> v;
    v.push_back(lam(K::gordon_solvable, {}, "solvable for every random (v_F, v_C)", tamaru, 64));
    for (auto l : {q({1, 2}), q({2, 1}), q({1, Rational(1, 3)})})
      v.push_back(lam(K::go, l, "go_on_samples for g_{a,b}", tamaru));
    c.push_back(entry("tamaru(" + std::to_string(row) + "," + std::to_string(n) + ")",
                      "Tamaru list row " + std::to_string(row) + ", base G/H then fibre H/K", tamaru, std::move(v)));
  }

  c.push_back(entry("tamaru_control()", "(so(5), so(4), so(2)⊕so(2)), not in the Tamaru list", tamaru,
                    {lam(K::gordon_fails, {}, "exact witness on some (v_F, v_C)", tamaru, 64)}));

  {
    const std::string cite = "M-spaces (H.C. Wang): SO(5)/SU(2) and Sp(n)/Sp(n−1) admit non-standard g.o. metrics";
    std::vector<ExpectedVerdict> v;
    v.push_back(lam(K::go, q({1, 1, 1}), "go_on_samples", cite));
    v.push_back(lam(K::go, q({2, 2, 1}), "go_on_samples, fibre-constant metric", cite));
    v.push_back(lam(K::sweep_only, q({1, 2, 3}), "reported only", cite));
    c.push_back(entry("m_space_so5_su2()", "M-space SO(5)/SU(2), blocks s, m₁, m₂", cite, v));
    c.push_back(entry("m_space_sp2_sp1()", "M-space Sp(2)/Sp(1), blocks s, m₁, m₂", cite, v,
                      "the exceptional case carries no metric family, sweeps report what they find"));
  }

  {
    const std::string cite = "three-dimensional Lorentzian Lie groups (Calvaruso–Marinosci)";
    for (const std::string name : {"su2", "sl2r", "heisenberg", "e11", "e2"}) {
      ExpectedVerdict v;
      if (name == "e11") {
        v = diag(K::null_k, q({1, 1, -1}), "V = (1,0,1) is null with k = 1", cite);
        v.vector = q({1, 0, 1});
      } else {
        v = diag(K::no_null_k, q({1, 1, -1}), "no k ≠ 0 on the integer scan [−2,2]³", cite);
      }
      CatalogEntry e = entry("lorentz3(" + name + ")", "Lorentzian left-invariant metric on " + name, cite, {v},
                             "empirical scan only");
      e.signature = SignatureMode::pseudo;
      e.compact = false;
      c.push_back(std::move(e));
    }
  }

  for (int n : {2, 4})
    c.push_back(entry("sphere(" + std::to_string(n) + ")", "round sphere SO(" + std::to_string(n + 1) + ")/SO(" +
                          std::to_string(n) + ")",
                      "symmetric space", {lam(K::go, q({1}), "go_on_samples", "symmetric space"),
                                          lam(K::naturally_reductive, q({1}), "naturally reductive", "symmetric space")}));
  c.push_back(entry("lie_group(so,5)", "SO(5) with the bi-invariant metric", "bi-invariant metric",
                    {lam(K::go, q({1}), "go_on_samples", "bi-invariant metric")}));

  const std::string t = "Tamaru list, exceptional row";
  for (const char* r : {"tamaru(3)", "tamaru(4)", "tamaru(12)", "tamaru(13)", "tamaru(14)", "tamaru(15)"})
    c.push_back(stub(r, "exceptional entry (g2, spin(7) or e6) of the Tamaru list", t));
  for (const char* r : {"wallach(e6)", "wallach(e7)", "wallach(e8)", "wallach(f4)"})
    c.push_back(stub(r, "generalized Wallach space with exceptional G", wallach));
  return c;
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("build_space: bad integer '" + s + "' in " + spec);
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = make_catalog();
  return c;
}

const CatalogEntry& find_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  // "wallach" and "wallach()" style shorthands
  for (const auto& e : catalog())
    if (e.id == id + "()") return e;
  throw InvalidArgument("unknown catalog entry '" + id + "'");
}

ReductiveSpace<Rational> build_space(const std::string& spec) {
  std::string name = spec;
  std::vector<std::string> args;
  const auto open = spec.find('(');
  if (open != std::string::npos) {
    if (spec.back() != ')') throw InvalidArgument("build_space: missing ')' in " + spec);
    name = spec.substr(0, open);
    args = split_args(spec.substr(open + 1, spec.size() - open - 2));
  }
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw InvalidArgument("build_space: " + name + " takes " + std::to_string(n) + " arguments, got " +
                            std::to_string(args.size()));
  };
  auto arg = [&](std::size_t i) { return to_int(args[i], spec); };
  namespace s = spaces;
  if (name == "sphere_hopf") return want(1), s::sphere_hopf(arg(0));
  if (name == "flag_so5_u2") return want(0), s::flag_so5_u2();
  if (name == "stiefel") return want(1), s::stiefel(arg(0));
  if (name == "su2_trivial") return want(0), s::lie_group(Family::su, {2});
  if (name == "wallach") return want(3), s::wallach(arg(0), arg(1), arg(2));
  if (name == "wallach_product") return want(0), s::wallach_product();
  if (name == "tamaru") return want(2), s::tamaru(arg(0), arg(1));
  if (name == "tamaru_control") return want(0), s::tamaru_control();
  if (name == "m_space_so5_su2") return want(0), s::m_space_so5_su2();
  if (name == "m_space_sp2_sp1") return want(0), s::m_space_sp2_sp1();
  if (name == "sphere") return want(1), s::sphere(arg(0));
  if (name == "lorentz3") {
    want(1);
    const std::string f = args[0] == "su2" ? "su" : args[0];
    return s::lorentz3(parse_family(f));
  }
  if (name == "lie_group") {
    if (args.empty()) throw InvalidArgument("build_space: lie_group needs a family");
    std::vector<int> params;
    for (std::size_t i = 1; i < args.size(); ++i) params.push_back(arg(i));
    return s::lie_group(parse_family(args[0]), params);
  }
  for (const auto& e : catalog())
    if (e.stub && e.id == spec) throw InvalidArgument("build_space: " + spec + " is a catalog stub without constructor");
  throw InvalidArgument("build_space: unknown space '" + spec + "'");
}

InvariantMetric<Rational> verdict_metric(const ReductiveSpace<Rational>& space, const ExpectedVerdict& v,
                                         SignatureMode mode) {
  if (!v.diagonal.empty()) {
    if (v.diagonal.size() != space.dim_m()) throw InvalidArgument("verdict_metric: diagonal has wrong length");
    return metric_from_matrix(space, Matrix<Rational>::diagonal(v.diagonal), mode);
  }
  if (v.lambdas.empty()) return standard_metric(space);
  return metric_from_lambdas(space, v.lambdas, mode);
}

std::optional<GeodesicCertificate<Rational>> first_geodesic_vector(const ReductiveSpace<Rational>& space,
                                                                   const InvariantMetric<Rational>& metric,
                                                                   std::uint64_t seed) {
  for (auto s : {SearchStrategy::axes, SearchStrategy::pair_grid, SearchStrategy::random, SearchStrategy::optimize}) {
    SearchOptions opt;
    opt.seed = seed;
    opt.budget = s == SearchStrategy::optimize ? 16 : 32;
    auto r = find_geodesic_vectors(space, metric, s, opt);
    if (!r.hits.empty()) return r.hits.front();
  }
  return std::nullopt;
}

namespace {

std::string vec_text(const Vec<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

// v placed on the basis indices of one block
Vec<Rational> on_block(const ReductiveSpace<Rational>& space, std::size_t block, const Vec<Rational>& v) {
  Vec<Rational> out = zeros<Rational>(space.dim_m());
  const auto& idx = space.submodules()[block];
  for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = v[j];
  return out;
}

// [X, v_F] = 0 and [X + v_F, v_C] = 0, checked directly
bool gordon_holds(const ReductiveSpace<Rational>& space, const Vec<Rational>& X, const Vec<Rational>& vf,
                  const Vec<Rational>& vc) {
  const Vec<Rational> x = space.embed_k(X), f = space.embed_m(vf), c = space.embed_m(vc);
  Vec<Rational> xf = x;
  for (std::size_t i = 0; i < xf.size(); ++i) xf[i] += f[i];
  return all_zero(space.bracket(x, f), 0.0) && all_zero(space.bracket(xf, c), 0.0);
}

}  // namespace

VerdictOutcome run_verdict(const CatalogEntry& entry, const ReductiveSpace<Rational>& space, const ExpectedVerdict& v,
                           const VerdictRunOptions& opt) {
  if (entry.stub) throw InvalidArgument("run_verdict: " + entry.id + " is a stub");
  VerdictOutcome out;
  const bool needs_metric = v.kind != VerdictKind::gordon_solvable && v.kind != VerdictKind::gordon_fails;
  std::optional<InvariantMetric<Rational>> metric;
  if (needs_metric) metric = verdict_metric(space, v, entry.signature);
  std::ostringstream obs;
  switch (v.kind) {
    case VerdictKind::go:
    case VerdictKind::not_go:
    case VerdictKind::sweep_only: {
      GoOptions g;
      g.budget = v.samples;
      g.seed = opt.seed;
      g.jobs = opt.jobs;
      auto r = go_check(space, *metric, g);
      obs << to_string(r.status) << " after " << r.samples_tested << " samples";
      if (r.status == GoStatus::not_go) {
        auto c = geodesic_completion(space, *metric, *r.counterexample);
        const bool verified = verify_completion_certificate(c);
        obs << ", counterexample " << vec_text(*r.counterexample) << (verified ? " (certificate verified)" : "");
        out.pass = v.kind == VerdictKind::not_go && verified;
      } else {
        out.pass = v.kind == VerdictKind::go;
      }
      if (v.kind == VerdictKind::sweep_only) out.pass = true;
      break;
    }
    case VerdictKind::naturally_reductive:
    case VerdictKind::not_naturally_reductive: {
      auto r = naturally_reductive_check(space, *metric);
      if (r.holds) {
        obs << "naturally reductive";
        out.pass = v.kind == VerdictKind::naturally_reductive;
      } else {
        const auto& t = *r.triple;
        const auto e = [&](std::size_t i) { return unit<Rational>(space.dim_m(), i); };
        const Rational again = naturally_reductive_residual(space, *metric, e(t[0]), e(t[1]), e(t[2]));
        obs << "fails at (X,Z,Y) = (" << t[0] << "," << t[1] << "," << t[2] << ") with residual "
            << to_string(r.residual);
        out.pass = v.kind == VerdictKind::not_naturally_reductive && sgn(again) != 0 && again == r.residual;
      }
      break;
    }
    case VerdictKind::axis_geodesics: {
      SearchOptions so;
      so.jobs = opt.jobs;
      auto axes = find_geodesic_vectors(space, *metric, SearchStrategy::axes, so);
      auto pairs = find_geodesic_vectors(space, *metric, SearchStrategy::pair_grid, so);
      std::size_t axis_hits = 0;
      for (const auto& h : axes.hits) {
        std::size_t nz = 0;
        for (const auto& c : h.x) nz += sgn(c) != 0;
        axis_hits += nz == 1 && h.exact;
      }
      obs << axis_hits << " axis vectors, " << pairs.hits.size() << " mixed pair vectors";
      out.pass = axis_hits == v.count && axes.hits.size() == v.count && pairs.hits.empty();
      break;
    }
    case VerdictKind::geodesics_exist: {
      auto h = first_geodesic_vector(space, *metric, opt.seed);
      if (h) obs << "geodesic vector x = " << vec_text(h->x) << ", a = " << vec_text(h->a);
      else obs << "no geodesic vector found";
      out.pass = h.has_value() && h->exact;
      break;
    }
    case VerdictKind::gordon_solvable:
    case VerdictKind::gordon_fails: {
      if (space.submodules().size() != 2) throw InvalidArgument("gordon verdict needs a two-block chain space");
      const std::size_t nb = space.submodules()[0].size(), nf = space.submodules()[1].size();
      std::vector<char> solved(v.samples, 0);
      parallel_for(v.samples, opt.jobs, [&](std::size_t i) {
        const Vec<Rational> vf = on_block(space, 1, go_random_sample<Rational>(nf, opt.seed, 2 * i));
        const Vec<Rational> vc = on_block(space, 0, go_random_sample<Rational>(nb, opt.seed, 2 * i + 1));
        auto r = gordon_criterion(space, vf, vc);
        solved[i] = r.solvable() && gordon_holds(space, *r.X, vf, vc);
      });
      std::size_t ok = 0;
      for (char s : solved) ok += s;
      obs << ok << "/" << v.samples << " pairs solvable";
      out.pass = v.kind == VerdictKind::gordon_solvable ? ok == v.samples : ok < v.samples;
      break;
    }
    case VerdictKind::two_step: {
      std::optional<std::size_t> failing;
      auto [all, mx] = verify_two_step_samples(space, *metric, v.samples, opt.seed, opt.jobs, &failing);
      obs << (all ? "all" : "not all") << " of " << v.samples << " curves two-step, max |G_W| " << mx;
      out.pass = all;
      break;
    }
    case VerdictKind::null_k: {
      auto r = pseudo_geodesic_test(space, *metric, space.embed_m(v.vector));
      if (r.k) obs << "k = " << to_string(*r.k) << (r.null ? ", null" : ", not null");
      else obs << "no k";
      out.pass = r.k && sgn(*r.k) != 0 && r.null;
      break;
    }
    case VerdictKind::no_null_k: {
      std::size_t found = 0, tested = 0;
      const std::size_t dm = space.dim_m();
      std::vector<int> c(dm, -2);
      for (;;) {
        Vec<Rational> V(dm);
        bool nz = false;
        for (std::size_t i = 0; i < dm; ++i) {
          V[i] = c[i];
          nz = nz || c[i] != 0;
        }
        if (nz) {
          ++tested;
          auto r = pseudo_geodesic_test(space, *metric, space.embed_m(V));
          if (r.k && sgn(*r.k) != 0) ++found;
        }
        std::size_t i = 0;
        while (i < dm && c[i] == 2) c[i++] = -2;
        if (i == dm) break;
        ++c[i];
      }
      obs << found << " of " << tested << " integer vectors give k ≠ 0";
      out.pass = found == 0;
      break;
    }
  }
  out.observed = obs.str();
  return out;
}

}  // namespace gospace
