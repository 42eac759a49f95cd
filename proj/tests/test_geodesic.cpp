#include "doctest.h"
#include "gospace/geodesic.hpp"
#include "gospace/spaces.hpp"
#include "test_util.hpp"

using namespace gospace;
using gospace::testing::random_vector;

namespace {

using Q = Rational;

spaces::QSpace su2_normalized() { return spaces::lie_group(Family::su, {2}, Rational(1, 2)); }

InvariantMetric<Q> diag_metric(const spaces::QSpace& s, const Vec<Q>& d, SignatureMode mode = SignatureMode::riemannian) {
  return metric_from_matrix(s, Matrix<Q>::diagonal(d), mode);
}

Vec<Q> lam(std::initializer_list<Rational> l) { return Vec<Q>(l); }

}  // namespace

TEST_CASE("bi-invariant su(2): every vector is geodesic") {
  auto s = su2_normalized();
  auto m = standard_metric(s);
  CHECK(is_geodesic_vector(s, m, unit<Q>(3, 0)).verdict);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) CHECK(is_geodesic_vector(s, m, random_vector(rng, 3)).verdict);
  CHECK_THROWS_AS(is_geodesic_vector(s, m, zeros<Q>(3)), InvalidArgument);
}

TEST_CASE("su(2) with diag(1,2,3): e1 + e2 fails along e3 with value -1, axes pass") {
  auto s = su2_normalized();
  auto m = diag_metric(s, {Q(1), Q(2), Q(3)});
  auto c = is_geodesic_vector(s, m, Vec<Q>{1, 1, 0});
  CHECK_FALSE(c.verdict);
  REQUIRE(c.witness_index.has_value());
  CHECK(*c.witness_index == 2);
  CHECK(c.witness_value == -1);
  CHECK(is_geodesic_vector(s, m, Vec<Q>{0, 1, 0}).verdict);
  CHECK(is_geodesic_vector(s, m, Vec<Q>{0, 0, 5}).verdict);
  // default normalisation B(e, e) = 2 doubles the value
  auto s2 = spaces::lie_group(Family::su, {2});
  auto c2 = is_geodesic_vector(s2, diag_metric(s2, {Q(1), Q(2), Q(3)}), Vec<Q>{1, 1, 0});
  CHECK(c2.witness_value == -2);
}

TEST_CASE("equivalent conditions agree") {
  SUBCASE("standard metric, a = 0") {
    auto s = spaces::flag_so5_u2();
    auto m = standard_metric(s);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) CHECK(check_equivalent_conditions(s, m, zeros<Q>(4), random_vector(rng, 6)).all());
  }
  SUBCASE("so(5)/u(2), lambda = (1, 2): random, completed and perturbed samples") {
    auto s = spaces::flag_so5_u2();
    auto m = metric_from_lambdas(s, lam({1, 2}));
    std::mt19937_64 rng(3);
    int true_count = 0;
    for (int i = 0; i < 1000; ++i) {
      auto x = random_vector(rng, 6);
      Vec<Q> a = random_vector(rng, 4);
      if (i % 3 == 0) a = *geodesic_completion(s, m, x).a;
      auto c = check_equivalent_conditions(s, m, a, x);
      CHECK(c.agree());
      true_count += c.all();
      if (i % 3 == 0) {
        CHECK(c.all());
        Vec<Q> wrong = a;
        wrong[i % 4] += Q(1, 3);
        CHECK(check_equivalent_conditions(s, m, wrong, x).agree());
        CHECK_FALSE(check_equivalent_conditions(s, m, wrong, x).all());
      }
    }
    CHECK(true_count >= 334);
  }
}

TEST_CASE("geodesic completion") {
  SUBCASE("standard metric gives a = 0") {
    auto s = spaces::flag_so5_u2();
    auto c = geodesic_completion(s, standard_metric(s), Vec<Q>{1, 2, 0, -1, 3, 1});
    REQUIRE(c.solvable());
    CHECK(all_zero(*c.a, 0.0));
  }
  SUBCASE("so(5)/u(2) completions exist and are sound") {
    auto s = spaces::flag_so5_u2();
    auto m = metric_from_lambdas(s, lam({1, 2}));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
      auto x = random_vector(rng, 6);
      auto c = geodesic_completion(s, m, x);
      REQUIRE(c.solvable());
      CHECK(is_geodesic_vector(s, m, s.embed(*c.a, x)).verdict);
    }
  }
  SUBCASE("minimum norm: the completion is B-orthogonal to the solution kernel") {
    auto s = spaces::wallach(2, 2, 2);
    auto m = standard_metric(s);
    auto x = unit<Q>(12, 0);
    auto c = geodesic_completion(s, m, x);
    REQUIRE(c.solvable());
    auto sol = solve(c.system, c.rhs);
    for (const auto& n : sol.null_basis) {
      Q ip = 0;
      for (std::size_t i = 0; i < n.size(); ++i) ip += n[i] * (*c.a)[i] * s.k_gram()[i];
      CHECK(ip == 0);
    }
  }
  SUBCASE("Wallach (1,2,3) has an exact unsolvable witness") {
    auto s = spaces::wallach(2, 2, 2);
    auto m = metric_from_lambdas(s, lam({1, 2, 3}));
    std::mt19937_64 rng(5);
    bool found = false;
    for (int i = 0; i < 50 && !found; ++i) {
      auto x = random_vector(rng, 12);
      auto c = geodesic_completion(s, m, x);
      if (!c.solvable()) {
        found = true;
        CHECK(verify_completion_certificate(c));
        CHECK(c.rank_augmented == c.rank + 1);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("go_check verdicts") {
  GoOptions opt;
  opt.budget = 40;
  opt.seed = 11;
  SUBCASE("standard metrics") {
    for (const auto& s : {spaces::flag_so5_u2(), spaces::wallach(2, 2, 2), spaces::stiefel(4), spaces::sphere_hopf(2),
                          spaces::sphere(2)}) {
      auto v = go_check(s, standard_metric(s), opt);
      CHECK(v.status == GoStatus::go_on_samples);
      CHECK(v.naturally_reductive);
      CHECK(v.samples_tested == v.structured_samples + opt.budget);
    }
  }
  SUBCASE("so(5)/u(2) family") {
    auto s = spaces::flag_so5_u2();
    for (const Q& l2 : {Q(1, 2), Q(2), Q(3)}) {
      auto v = go_check(s, metric_from_lambdas(s, {Q(1), l2}), opt);
      CHECK(v.status == GoStatus::go_on_samples);
      CHECK_FALSE(v.naturally_reductive);
    }
  }
  SUBCASE("Wallach off the standard point") {
    auto s = spaces::wallach(2, 2, 2);
    auto v = go_check(s, metric_from_lambdas(s, lam({1, 2, 3})), opt);
    CHECK(v.status == GoStatus::not_go);
    REQUIRE(v.counterexample.has_value());
    auto c = geodesic_completion(s, metric_from_lambdas(s, lam({1, 2, 3})), *v.counterexample);
    CHECK_FALSE(c.solvable());
    CHECK(verify_infeasibility(c.system, c.rhs, v.certificate));
  }
  SUBCASE("parallel evaluation gives the same first failure") {
    auto s = spaces::wallach(2, 2, 2);
    auto m = metric_from_lambdas(s, lam({1, 1, 2}));
    auto v1 = go_check(s, m, opt);
    GoOptions o8 = opt;
    o8.jobs = 8;
    auto v8 = go_check(s, m, o8);
    CHECK(v1.status == v8.status);
    CHECK(v1.failing_sample == v8.failing_sample);
    CHECK(v1.counterexample == v8.counterexample);
  }
  SUBCASE("zero budget is rejected") {
    auto s = spaces::sphere(2);
    GoOptions bad;
    bad.budget = 0;
    CHECK_THROWS_AS(go_check(s, standard_metric(s), bad), InvalidArgument);
  }
}

TEST_CASE("scaling all lambdas changes no verdict") {
  auto s = spaces::wallach(2, 2, 2);
  GoOptions opt;
  opt.budget = 20;
  for (const auto& l : {lam({1, 1, 1}), lam({1, 2, 3}), lam({2, 2, 1})}) {
    auto v1 = go_check(s, metric_from_lambdas(s, l), opt);
    Vec<Q> scaled_l = l;
    for (auto& x : scaled_l) x *= Q(7, 3);
    auto v2 = go_check(s, metric_from_lambdas(s, scaled_l), opt);
    CHECK(v1.status == v2.status);
    CHECK(v1.failing_sample == v2.failing_sample);
  }
}

TEST_CASE("isometry invariance under Ad(k) for k in K") {
  auto s = spaces::flag_so5_u2();
  auto m = metric_from_lambdas(s, lam({1, 3}));
  // Cayley transform of an element of u(2): rational, lies in U(2)
  const auto& g = s.algebra();
  auto z = g.to_matrix(s.k_basis()[0] + scaled(Q(1, 2), s.k_basis()[2]));
  const std::size_t n = z.rows();
  auto id = Matrix<Q>::identity(n);
  auto cay = *inverse(id - z) * (id + z);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    auto X = random_vector(rng, s.dim_g());
    if (i % 2 == 0) {
      auto x = s.proj_m(X);
      X = s.embed(*geodesic_completion(s, m, x).a, x);
    }
    auto moved = s.from_original(adjoint_group_action(g, cay, s.to_original(X)));
    CHECK(is_geodesic_vector(s, m, X).verdict == is_geodesic_vector(s, m, moved).verdict);
    CHECK(geodesic_completion(s, m, s.proj_m(X)).solvable() == geodesic_completion(s, m, s.proj_m(moved)).solvable());
  }
}

TEST_CASE("natural reductivity") {
  SUBCASE("standard metric holds") {
    for (const auto& s : {spaces::flag_so5_u2(), spaces::wallach(2, 2, 2), spaces::lie_group(Family::so, {4})})
      CHECK(naturally_reductive_check(s, standard_metric(s)).holds);
  }
  SUBCASE("su(2) diag(1,1,2) fails at (e1, e2, e3) with residual 1") {
    auto s = su2_normalized();
    auto r = naturally_reductive_check(s, diag_metric(s, {Q(1), Q(1), Q(2)}));
    CHECK_FALSE(r.holds);
    REQUIRE(r.triple.has_value());
    // ⟨[e1,e2], e3⟩ + ⟨e1, [e3,e2]⟩ = λ3 − λ1
    CHECK(*r.triple == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(r.residual == 1);
    auto m = diag_metric(s, {Q(1), Q(1), Q(2)});
    // ad(e3) is still skew: λ1 = λ2
    CHECK(naturally_reductive_residual(s, m, unit<Q>(3, 0), unit<Q>(3, 2), unit<Q>(3, 1)) == 0);
  }
  SUBCASE("product of identical factors with equal lambda") {
    auto g = std::make_shared<const LieAlgebra<Q>>(
        direct_product({construct_classical(Family::su, {2}), construct_classical(Family::su, {2})}));
    auto s = reductive_complement(g, {}, "su2+su2");
    CHECK(naturally_reductive_check(s, standard_metric(s)).holds);
    CHECK(naturally_reductive_check(s, metric_from_lambdas(s, lam({3}))).holds);
  }
  SUBCASE("so(5)/u(2) with unequal lambdas fails") {
    auto s = spaces::flag_so5_u2();
    auto r = naturally_reductive_check(s, metric_from_lambdas(s, lam({1, 2})));
    CHECK_FALSE(r.holds);
    REQUIRE(r.triple);
    auto m = metric_from_lambdas(s, lam({1, 2}));
    const auto& t = *r.triple;
    CHECK(naturally_reductive_residual(s, m, unit<Q>(6, t[0]), unit<Q>(6, t[1]), unit<Q>(6, t[2])) == r.residual);
  }
}

TEST_CASE("Gordon criterion") {
  SUBCASE("zero vectors") {
    auto s = spaces::tamaru(1, 2);
    auto r = gordon_criterion(s, zeros<Q>(s.dim_m()), zeros<Q>(s.dim_m()));
    REQUIRE(r.solvable());
    CHECK(all_zero(*r.X, 0.0));
  }
  auto random_pair = [](const spaces::QSpace& s, std::mt19937_64& rng) {
    auto f = random_vector(rng, s.dim_m());
    auto c = f;
    for (std::size_t i = 0; i < s.dim_m(); ++i) {
      if (s.block_of(i) == 0) f[i] = 0;
      else c[i] = 0;
    }
    return std::make_pair(f, c);
  };
  SUBCASE("listed triples solve on random inputs") {
    std::mt19937_64 rng(7);
    for (const auto& s : {spaces::tamaru(1, 2), spaces::tamaru(5, 2), spaces::tamaru(2, 1), spaces::tamaru(9, 1)}) {
      for (int i = 0; i < 30; ++i) {
        auto [f, c] = random_pair(s, rng);
        auto r = gordon_criterion(s, f, c);
        REQUIRE(r.solvable());
        // re-check both brackets exactly
        Vec<Q> X = s.embed_k(*r.X);
        CHECK(all_zero(s.bracket(X, s.embed_m(f)), 0.0));
        CHECK(all_zero(s.bracket(X + s.embed_m(f), s.embed_m(c)), 0.0));
      }
    }
  }
  SUBCASE("torus control fails") {
    auto s = spaces::tamaru_control();
    std::mt19937_64 rng(8);
    int failures = 0;
    for (int i = 0; i < 20; ++i) {
      auto [f, c] = random_pair(s, rng);
      failures += !gordon_criterion(s, f, c).solvable();
    }
    CHECK(failures >= 1);
  }
  SUBCASE("vectors in the wrong block are rejected") {
    auto s = spaces::tamaru(1, 2);
    auto v = unit<Q>(s.dim_m(), 0);  // block 0 is the base
    CHECK_THROWS_AS(gordon_criterion(s, v, zeros<Q>(s.dim_m())), InvalidArgument);
  }
}

TEST_CASE("pseudo-Riemannian test") {
  SUBCASE("positive definite metric reduces to the geodesic lemma") {
    auto s = su2_normalized();
    auto m = diag_metric(s, {Q(1), Q(2), Q(3)});
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
      Vec<Q> v = i % 4 == 0 ? unit<Q>(3, static_cast<std::size_t>(i / 4) % 3) : random_vector(rng, 3);
      auto r = pseudo_geodesic_test(s, m, v);
      const bool geo = is_geodesic_vector(s, m, v).verdict;
      CHECK((r.k.has_value() && *r.k == 0) == geo);
    }
  }
  SUBCASE("Lorentzian E(1,1): null directions with nonzero k") {
    auto s = spaces::lorentz3(Family::e11);
    auto m = diag_metric(s, {Q(1), Q(1), Q(-1)}, SignatureMode::pseudo);
    int nonzero = 0, inconsistent = 0;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          Vec<Q> v{a, b, c};
          auto r = pseudo_geodesic_test(s, m, v);
          if (r.k && *r.k != 0) {
            ++nonzero;
            CHECK(r.null);
            CHECK(r.null_constraint_ok);
            CHECK(m.inner(v, v) == 0);
          }
          if (!r.k) ++inconsistent;
        }
    CHECK(nonzero > 0);
    CHECK(inconsistent > 0);
    auto r = pseudo_geodesic_test(s, m, Vec<Q>{1, 0, 1});
    REQUIRE(r.k);
    CHECK(*r.k == 1);
  }
}

TEST_CASE("find_geodesic_vectors") {
  SUBCASE("su(2) distinct lambdas: exactly the axes") {
    auto s = su2_normalized();
    auto m = diag_metric(s, {Q(1), Q(2), Q(3)});
    CHECK(find_geodesic_vectors(s, m, SearchStrategy::axes).hits.size() == 3);
    CHECK(find_geodesic_vectors(s, m, SearchStrategy::pair_grid).hits.empty());
  }
  SUBCASE("standard metric certifies every basis vector") {
    auto s = spaces::wallach(2, 2, 2);
    auto r = find_geodesic_vectors(s, standard_metric(s), SearchStrategy::axes);
    CHECK(r.hits.size() == s.dim_m());
  }
  SUBCASE("Stiefel SO(4)/SO(2) with lambda = (1, 2)") {
    auto s = spaces::stiefel(4);
    auto m = metric_from_lambdas(s, lam({1, 2}));
    for (auto st : {SearchStrategy::axes, SearchStrategy::pair_grid, SearchStrategy::random, SearchStrategy::optimize}) {
      SearchOptions o;
      o.budget = 8;
      auto r = find_geodesic_vectors(s, m, st, o);
      CHECK_FALSE(r.hits.empty());
      for (const auto& h : r.hits)
        if (h.exact) CHECK(is_geodesic_vector(s, m, s.embed(h.a, h.x)).verdict);
    }
  }
  SUBCASE("optimizer hits on su(2) are certified axis directions") {
    auto s = su2_normalized();
    auto m = diag_metric(s, {Q(1), Q(2), Q(3)});
    SearchOptions o;
    o.budget = 6;
    auto r = find_geodesic_vectors(s, m, SearchStrategy::optimize, o);
    CHECK_FALSE(r.hits.empty());
    for (const auto& h : r.hits) {
      CHECK(h.exact);
      int nonzero = 0;
      for (const auto& c : h.x) nonzero += c != 0;
      CHECK(nonzero == 1);
    }
  }
  SUBCASE("optimizer is deterministic") {
    auto s = spaces::flag_so5_u2().convert<double>();
    auto m = metric_from_lambdas(s, Vec<double>{1.0, 2.0});
    auto a = optimize_geodesic_vectors(s, m, 5, 3, 1);
    auto b = optimize_geodesic_vectors(s, m, 5, 3, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x == b[i].x);
  }
}

TEST_CASE("float mode agrees with rational mode") {
  auto s = spaces::wallach(2, 2, 2);
  GoOptions opt;
  opt.budget = 20;
  for (const auto& l : {lam({1, 1, 1}), lam({1, 2, 3})}) {
    auto mq = metric_from_lambdas(s, l);
    auto vq = go_check(s, mq, opt);
    auto sd = s.convert<double>();
    auto vd = go_check(sd, mq.convert<double>(), opt);
    CHECK(vq.status == vd.status);
    CHECK(vq.failing_sample == vd.failing_sample);
  }
}
