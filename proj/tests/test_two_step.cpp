#include <doctest.h>

#include "gospace/spaces.hpp"
#include "gospace/two_step.hpp"
#include "test_util.hpp"

using namespace gospace;
using gospace::testing::random_vector;
using Q = Rational;

namespace {

// random m-vector supported on one block
Vec<Q> block_vector(const ReductiveSpace<Q>& s, std::size_t block, std::mt19937_64& rng) {
  Vec<Q> v = zeros<Q>(s.dim_m());
  auto r = random_vector(rng, s.submodules()[block].size());
  for (std::size_t j = 0; j < r.size(); ++j) v[s.submodules()[block][j]] = r[j];
  return v;
}

InvariantMetric<Q> hopf_metric(const ReductiveSpace<Q>& s, const Q& lambda) {
  return metric_from_lambdas(s, Vec<Q>{Q(1), lambda});
}

}  // namespace

TEST_CASE("G_W with X = Y = 0 is the geodesic lemma") {
  auto s = spaces::lie_group(Family::su, {2});
  auto m = metric_from_lambdas(s, Vec<Q>{Q(1)}).lambda_matrix;
  m(0, 0) = 1;
  m(1, 1) = 2;
  m(2, 2) = 3;
  auto metric = metric_from_matrix(s, m, SignatureMode::riemannian);
  const Vec<Q> zero = zeros<Q>(3);
  SUBCASE("axis: zero for all t") {
    const Vec<Q> z = s.embed_m(unit<Q>(3, 2));
    REQUIRE(is_geodesic_vector(s, metric, z).verdict);
    for (double t : {0.0, 1.0 / 3, 1.0, 2.7, -2.0})
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(std::abs(g_w_value(s, metric, zero, zero, z, unit<Q>(3, j), t)) < 1e-13);
  }
  SUBCASE("non-geodesic: constant and equal to the lemma value") {
    Vec<Q> z = s.embed_m(Vec<Q>{Q(1), Q(1), Q(0)});
    auto lemma = geodesic_lemma_values(s, metric, z);
    for (double t : {0.0, 1.0, -2.5})
      for (std::size_t j = 0; j < 3; ++j) {
        // ⟨Z_m, [W, Z]_m⟩ = −⟨[Z, W]_m, Z_m⟩
        CHECK(g_w_value(s, metric, zero, zero, z, unit<Q>(3, j), t) == doctest::Approx(-to_double(lemma[j])));
      }
  }
}

TEST_CASE("G_W at t = 0 against direct expansion") {
  std::mt19937_64 rng(11);
  auto s = spaces::wallach(1, 1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Vec<Q> lam{Q(1) + Q(trial % 3), Q(2), Q(1, 2) + Q(trial % 2)};
    auto metric = metric_from_lambdas(s, lam);
    const Vec<Q> X = random_vector(rng, s.dim_g()), Y = random_vector(rng, s.dim_g()),
                 Z = random_vector(rng, s.dim_g()), W = random_vector(rng, s.dim_m());
    // T(0) = Id: ⟨(X+Y+Z)_m, [W, X+Y+Z]_m⟩ + ⟨W, [X, Y+Z]_m + [Y, Z]_m⟩
    const Vec<Q> v = X + Y + Z;
    Vec<Q> wv = s.proj_m(s.bracket(s.embed_m(W), v));
    Vec<Q> rest = s.proj_m(s.bracket(X, Y) + s.bracket(X, Z) + s.bracket(Y, Z));
    Q direct = Q(0);
    for (std::size_t i = 0; i < s.dim_m(); ++i)
      for (std::size_t j = 0; j < s.dim_m(); ++j)
        direct += metric.gram(i, j) * (s.proj_m(v)[i] * wv[j] + W[i] * rest[j]);
    auto exact = g_w_exact(s, metric, X, Y, Z, W, Q(0));
    REQUIRE(exact);
    CHECK(*exact == direct);
    CHECK(g_w_value(s, metric, X, Y, Z, W, 0.0) == doctest::Approx(to_double(direct)).epsilon(1e-12));
  }
}

TEST_CASE("G_W is linear in W") {
  std::mt19937_64 rng(5);
  auto s = spaces::sphere_hopf(2);
  auto metric = hopf_metric(s, Q(3));
  for (int trial = 0; trial < 10; ++trial) {
    const Vec<Q> X = random_vector(rng, s.dim_g()), Y = random_vector(rng, s.dim_g()), Z = random_vector(rng, s.dim_g());
    const Vec<Q> w1 = random_vector(rng, s.dim_m()), w2 = random_vector(rng, s.dim_m());
    const Q alpha(-5, 3);
    for (double t : {0.0, 0.4, -1.3}) {
      const double lhs = g_w_value(s, metric, X, Y, Z, scaled(alpha, w1) + w2, t);
      const double rhs = to_double(alpha) * g_w_value(s, metric, X, Y, Z, w1, t) + g_w_value(s, metric, X, Y, Z, w2, t);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(10));
    }
  }
}

TEST_CASE("bracket condition") {
  auto hopf = spaces::sphere_hopf(2);
  CHECK(bracket_condition(hopf, 0, 1));
  CHECK_FALSE(bracket_condition(hopf, 1, 0));
  CHECK_THROWS_AS(bracket_condition(hopf, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(bracket_condition(hopf, 0, 2), InvalidArgument);
  auto w = spaces::wallach(1, 1, 2);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      if (a != b) CHECK_FALSE(bracket_condition(w, a, b));
  // factors commute in a product
  auto p = spaces::wallach_product();
  CHECK(bracket_condition(p, 0, 1));
  CHECK(bracket_condition(p, 2, 1));
}

TEST_CASE("reduction to the geodesic lemma is exact") {
  std::mt19937_64 rng(3);
  auto s = spaces::wallach(1, 1, 2);
  auto metric = metric_from_lambdas(s, Vec<Q>{Q(1), Q(2), Q(3)});
  const Vec<Q> zero = zeros<Q>(s.dim_g());
  int agree = 0, accepted = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Vec<Q> x = random_vector(rng, s.dim_m());
    if (trial % 3 == 0) {  // single block vectors are geodesic
      x = zeros<Q>(s.dim_m());
      x[s.submodules()[trial % 2][0]] = Q(trial + 1);
    }
    const Vec<Q> X = s.embed_m(x);
    auto chk = is_two_step_geodesic(s, metric, X, zero);
    CHECK(chk.exact);
    const bool lemma = is_geodesic_vector(s, metric, X).verdict;
    agree += chk.verdict == lemma;
    accepted += chk.verdict;
  }
  CHECK(agree == 60);
  CHECK(accepted >= 20);
}

TEST_CASE("nilpotent transport is evaluated exactly") {
  auto s = spaces::lorentz3(Family::heisenberg);
  auto metric = standard_metric(s);
  std::mt19937_64 rng(9);
  const Vec<Q> X = random_vector(rng, 3), Y = random_vector(rng, 3);
  auto chk = is_two_step_geodesic(s, metric, X, Y);
  CHECK(chk.exact);
  // exact values agree with the floating evaluation
  for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 3}, {-27, 10}})
    for (std::size_t j = 0; j < 3; ++j) {
      auto e = g_w_exact(s, metric, X, Y, zeros<Q>(3), unit<Q>(3, j), Q(p, q));
      REQUIRE(e);
      CHECK(to_double(*e) ==
            doctest::Approx(g_w_value(s, metric, X, Y, zeros<Q>(3), unit<Q>(3, j), double(p) / double(q))).scale(1));
    }
}

TEST_CASE("construction on the Hopf sphere") {
  auto s = spaces::sphere_hopf(2);
  std::mt19937_64 rng(21);
  SUBCASE("lambda = 2: zeros at sample t for every basis W") {
    auto metric = hopf_metric(s, Q(2));
    for (int trial = 0; trial < 5; ++trial) {
      auto c = construct_two_step(s, metric, 0, 1, block_vector(s, 0, rng), block_vector(s, 1, rng));
      CHECK(*c.lambda == Q(2));
      CHECK(c.construction == "submodule_pair");
      for (double t : {0.0, 1.0 / 3, 1.0, 2.7})
        for (std::size_t j = 0; j < s.dim_m(); ++j)
          CHECK(std::abs(g_w_value(s, metric, c.X, c.Y, c.Z, unit<Q>(s.dim_m(), j), t)) < 1e-10);
      auto chk = is_two_step_geodesic(s, metric, c);
      CHECK(chk.verdict);
      CHECK(chk.max_residual < 1e-10);
      CHECK_FALSE(chk.exact);
    }
  }
  SUBCASE("velocity at t = 0 is X_a + X_b") {
    auto metric = hopf_metric(s, Q(5));
    auto xa = block_vector(s, 0, rng), xb = block_vector(s, 1, rng);
    auto c = construct_two_step(s, metric, 0, 1, xa, xb);
    CHECK(s.proj_m(c.initial_velocity_g()) == xa + xb);
  }
  SUBCASE("equal lambdas give Y = 0 and a geodesic vector") {
    auto metric = hopf_metric(s, Q(1));
    auto c = construct_two_step(s, metric, 0, 1, block_vector(s, 0, rng), block_vector(s, 1, rng));
    CHECK(all_zero(c.Y, 0.0));
    CHECK(is_geodesic_vector(s, metric, c.X).verdict);
    auto chk = is_two_step_geodesic(s, metric, c);
    CHECK(chk.verdict);
    CHECK(chk.exact);
    CHECK(chk.max_residual == 0);
  }
  SUBCASE("wrong lambda in the curve is rejected") {
    auto metric = hopf_metric(s, Q(2));
    auto c = construct_two_step(s, hopf_metric(s, Q(3)), 0, 1, block_vector(s, 0, rng), block_vector(s, 1, rng));
    auto chk = is_two_step_geodesic(s, metric, c);
    CHECK_FALSE(chk.verdict);
    CHECK(chk.max_residual > 1e-3);
    CHECK(chk.witness_w.has_value());
  }
  SUBCASE("energy is constant") {
    auto metric = hopf_metric(s, Q(1, 2));
    auto c = construct_two_step(s, metric, 0, 1, block_vector(s, 0, rng), block_vector(s, 1, rng));
    const double e0 = two_step_energy(s, metric, c, 0.0);
    for (double t : default_t_grid().floating) CHECK(std::abs(two_step_energy(s, metric, c, t) - e0) < 1e-10 * e0);
  }
  SUBCASE("hypothesis violations") {
    auto metric = hopf_metric(s, Q(2));
    auto xa = block_vector(s, 0, rng), xb = block_vector(s, 1, rng);
    CHECK_THROWS_AS(construct_two_step(s, metric, 1, 0, xb, xa), InvalidArgument);
    CHECK_THROWS_AS(construct_two_step(s, metric, 0, 1, xa + xb, xb), InvalidArgument);
    CHECK_THROWS_AS(construct_two_step(s, metric, 0, 1, xa, xa), InvalidArgument);
  }
}

TEST_CASE("generic pairs fail the G_W test") {
  std::mt19937_64 rng(17);
  auto s = spaces::wallach(1, 1, 2);
  auto metric = metric_from_lambdas(s, Vec<Q>{Q(1), Q(2), Q(3)});
  for (int trial = 0; trial < 5; ++trial) {
    auto chk = is_two_step_geodesic(s, metric, s.embed_m(random_vector(rng, s.dim_m())),
                                    s.embed_m(random_vector(rng, s.dim_m())));
    CHECK_FALSE(chk.verdict);
    CHECK(chk.max_residual > 1e-3);
  }
}

TEST_CASE("commuting blocks give homogeneous geodesics for any lambda") {
  std::mt19937_64 rng(4);
  auto s = spaces::wallach_product();
  auto metric = metric_from_lambdas(s, Vec<Q>{Q(1), Q(7, 2), Q(2)});
  for (int trial = 0; trial < 5; ++trial) {
    auto xa = block_vector(s, 0, rng), xb = block_vector(s, 1, rng);
    auto c = construct_two_step(s, metric, 0, 1, xa, xb);
    CHECK(*c.lambda == Q(7, 2));
    CHECK(is_geodesic_vector(s, metric, s.embed_m(xa + xb)).verdict);
    CHECK(is_two_step_geodesic(s, metric, c).verdict);
  }
}

TEST_CASE("submersion family on the Hopf chain") {
  auto ch = spaces::hopf_chain(2);
  SUBCASE("lambda = 2") {
    auto f = submersion_two_step_family(ch.g, ch.h, ch.k, Q(2), 12, 7, 4);
    CHECK(f.verdict);
    CHECK(f.samples == 12);
    CHECK(f.max_residual < 1e-10);
    CHECK(f.space.block_dims() == std::vector<std::size_t>{4, 1});
    CHECK(f.regime == "cheeger_deformation");
  }
  SUBCASE("lambda = 1 is the homogeneous case") {
    auto f = submersion_two_step_family(ch.g, ch.h, ch.k, Q(1), 6);
    CHECK(f.verdict);
    CHECK(f.max_residual == 0);
    CHECK(f.regime == "homogeneous");
  }
  SUBCASE("lambda = 1 + 1/100") {
    auto f = submersion_two_step_family(ch.g, ch.h, ch.k, Q(101, 100), 6);
    CHECK(f.verdict);
    CHECK(f.regime == "cheeger_deformation");
  }
  SUBCASE("jobs do not change the result") {
    auto a = submersion_two_step_family(ch.g, ch.h, ch.k, Q(1, 3), 8, 3, 1);
    auto b = submersion_two_step_family(ch.g, ch.h, ch.k, Q(1, 3), 8, 3, 8);
    CHECK(a.verdict == b.verdict);
    CHECK(a.max_residual == b.max_residual);
  }
  SUBCASE("chain violation") {
    std::vector<Vec<Q>> h_bad{ch.k.front()};
    CHECK_THROWS(submersion_two_step_family(ch.g, h_bad, ch.k, Q(2), 2));
  }
}

TEST_CASE("four-step recipe") {
  auto s = spaces::sphere(5);  // isotropy so(5), irreducible: grouping impossible
  CHECK_THROWS_AS(two_step_recipe(s, {0}, Q(2)), InvalidArgument);
  auto hopf = spaces::sphere_hopf(2).with_submodules({{0, 1, 2, 3, 4}}, "u3/u2");
  auto r = two_step_recipe(hopf, {1}, Q(2), 6);
  CHECK(r.irreducible_dims == std::vector<std::size_t>{1, 4});
  CHECK(r.naturally_reductive_base);
  CHECK(r.bracket_condition);
  CHECK(r.verdict);
  auto wrong = two_step_recipe(hopf, {0}, Q(2), 6);
  CHECK_FALSE(wrong.bracket_condition);
  CHECK_FALSE(wrong.verdict);
}
