#include "doctest.h"
#include "gospace/homogeneous.hpp"
#include "test_util.hpp"

using namespace gospace;
using gospace::testing::random_vector;

namespace {

using Alg = std::shared_ptr<const LieAlgebra<Rational>>;

Alg make(Family f, std::vector<int> p) { return std::make_shared<const LieAlgebra<Rational>>(construct_classical(f, p)); }

Matrix<Rational> embed_block(const Matrix<Rational>& m, std::size_t size, std::size_t offset) {
  Matrix<Rational> out(size, size);
  out.set_block(offset, offset, m);
  return out;
}

// so(n) basis index of E_ij − E_ji (i < j)
std::size_t so_index(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += n - a - 1;
  return idx + (j - i - 1);
}

ReductiveSpace<Rational> so5_u2() {
  auto g = make(Family::so, {5});
  Matrix<Rational> j(5, 5);
  j(1, 0) = 1;
  j(0, 1) = -1;
  j(3, 2) = 1;
  j(2, 3) = -1;
  auto k = centralizer(*g, {g->expand_or_throw(j)});
  return reductive_complement(g, k, "so5/u2");
}

ReductiveSpace<Rational> wallach222() {
  auto g = make(Family::so, {6});
  std::vector<Vec<Rational>> k{unit<Rational>(15, so_index(6, 0, 1)), unit<Rational>(15, so_index(6, 2, 3)),
                               unit<Rational>(15, so_index(6, 4, 5))};
  return reductive_complement(g, k, "wallach");
}

ReductiveSpace<Rational> hopf() {
  auto g = make(Family::u, {3});
  auto u2 = construct_classical(Family::u, {2});
  std::vector<Matrix<Rational>> k_mats;
  for (const auto& b : u2.basis()) k_mats.push_back(embed_block(b, 6, 0));
  auto k = expand_all(*g, k_mats);
  auto h = k;
  Matrix<Rational> fibre(6, 6);
  fibre(5, 4) = 1;
  fibre(4, 5) = -1;
  h.push_back(g->expand_or_throw(fibre));
  return chain_complement(g, h, k, "hopf");
}

}  // namespace

TEST_CASE("trivial isotropy gives m = g") {
  auto g = make(Family::su, {2});
  auto s = reductive_complement(g, {}, "su2");
  CHECK(s.dim_k() == 0);
  CHECK(s.dim_m() == 3);
  CHECK(s.verify().ok());
  CHECK(s.submodules().size() == 1);
}

TEST_CASE("so(3)/so(2) is the round sphere with one block") {
  auto g = make(Family::so, {3});
  auto s = reductive_complement(g, {unit<Rational>(3, 0)}, "S2");
  CHECK(s.dim_m() == 2);
  CHECK(s.verify().ok());
  auto d = decompose_isotropy(s);
  CHECK(d.block_dims == std::vector<std::size_t>{2});
  CHECK(d.method == "irreducible");
}

TEST_CASE("so(5)/u(2) splits into blocks of dimensions 2 and 4") {
  auto s = so5_u2();
  CHECK(s.dim_k() == 4);
  CHECK(s.dim_m() == 6);
  auto d = decompose_isotropy(s, 7);
  CHECK(d.block_dims == std::vector<std::size_t>{2, 4});
  CHECK(d.equivalent_pairs.empty());
  CHECK(d.space.verify().ok());
  // same answer for a different random perturbation
  auto d2 = decompose_isotropy(s, 12345);
  CHECK(d2.block_dims == d.block_dims);
  CHECK(d2.space.m_basis() == d.space.m_basis());
}

TEST_CASE("generalized Wallach (2,2,2): irreducible blocks refine the coarse 3-block grouping") {
  auto s = wallach222();
  CHECK(s.dim_m() == 12);
  auto d = decompose_isotropy(s);
  CHECK(d.block_dims == std::vector<std::size_t>(6, 2));
  CHECK(d.equivalent_pairs.empty());
  // coarse grouping by index pairs (12), (13), (23)
  std::vector<std::vector<std::size_t>> coarse(3);
  for (std::size_t i = 0; i < s.dim_m(); ++i) {
    const auto& v = s.to_original(s.m_basis_vector(i));
    std::size_t idx = 0;
    while (sgn(v[idx]) == 0) ++idx;
    // recover (a, b) of E_ab
    std::size_t a = 0, rest = idx;
    while (rest >= 6 - a - 1) rest -= 6 - a - 1, ++a;
    const std::size_t b = a + 1 + rest;
    const std::size_t ga = a / 2, gb = b / 2;
    coarse[ga == 0 ? (gb == 1 ? 0 : 1) : 2].push_back(i);
  }
  for (const auto& c : coarse) CHECK(c.size() == 4);
  CHECK(s.with_submodules(coarse).verify().ok());
}

TEST_CASE("Hopf chain: CP2 block and one-dimensional fibre") {
  auto s = hopf();
  CHECK(s.dim_k() == 4);
  CHECK(s.block_dims() == std::vector<std::size_t>{4, 1});
  CHECK(s.verify().ok());
  // fibre direction is diag(0, 0, i) up to scale
  auto fib = s.algebra().to_matrix(s.m_basis()[4]);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i < 4 || j < 4) CHECK(sgn(fib(i, j)) == 0);
  CHECK(sgn(fib(5, 4)) != 0);
  CHECK(fib(5, 4) == -fib(4, 5));
}

TEST_CASE("chain with k not inside h is rejected") {
  auto g = make(Family::so, {3});
  CHECK_THROWS_AS(chain_complement(g, {unit<Rational>(3, 0)}, {unit<Rational>(3, 1)}, "bad"), InvalidArgument);
}

TEST_CASE("non-subalgebra is rejected") {
  auto g = make(Family::so, {3});
  CHECK_THROWS_AS(reductive_complement(g, {unit<Rational>(3, 0), unit<Rational>(3, 1)}, "bad"), InvalidArgument);
}

TEST_CASE("adapted coordinates round trip and projections") {
  auto s = so5_u2();
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    auto v = random_vector(rng, s.dim_g());
    auto w = s.to_original(v);
    CHECK(s.from_original(w) == v);
    CHECK(s.embed(s.proj_k(v), s.proj_m(v)) == v);
    // adapted bracket agrees with the original one
    auto u = random_vector(rng, s.dim_g());
    CHECK(s.to_original(s.bracket(v, u)) == s.algebra().bracket(w, s.to_original(u)));
  }
}

TEST_CASE("metric_from_lambdas") {
  auto s = decompose_isotropy(so5_u2()).space;
  auto m1 = metric_from_lambdas(s, {Rational(1), Rational(1)});
  CHECK(m1.is_identity());
  auto m2 = metric_from_lambdas(s, {Rational(1), Rational(3, 2)});
  CHECK(m2.lambda_matrix(0, 0) == 1);
  CHECK(m2.lambda_matrix(5, 5) == Rational(3, 2));
  CHECK(m2.gram(5, 5) == Rational(3, 2) * s.m_gram()[5]);
  CHECK_THROWS_AS(metric_from_lambdas(s, {Rational(1), Rational(0)}), InvalidArgument);
  CHECK_THROWS_AS(metric_from_lambdas(s, {Rational(1), Rational(-1)}), InvalidArgument);
  CHECK_THROWS_AS(metric_from_lambdas(s, {Rational(1)}), InvalidArgument);
  CHECK_THROWS_AS(metric_from_lambdas(s, {Rational(1), Rational(0)}, SignatureMode::pseudo), InvalidArgument);
  auto p = metric_from_lambdas(s, {Rational(1), Rational(-2)}, SignatureMode::pseudo);
  CHECK(p.mode == SignatureMode::pseudo);
}

TEST_CASE("metric equivariance") {
  auto s = so5_u2();
  Matrix<Rational> lam = Matrix<Rational>::identity(6);
  lam(0, 0) = 2;
  CHECK_FALSE(is_equivariant(s, lam));
  CHECK_THROWS_AS(metric_from_matrix(s, lam, SignatureMode::riemannian), InvalidArgument);
  // Λ-invariance: ad(a) is skew for every invariant metric
  auto d = decompose_isotropy(s).space;
  auto m = metric_from_lambdas(d, {Rational(2), Rational(5, 3)});
  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    auto x = random_vector(rng, d.dim_m());
    auto y = random_vector(rng, d.dim_m());
    auto a = random_vector(rng, d.dim_k());
    auto ax = d.proj_m(d.bracket(d.embed_k(a), d.embed_m(x)));
    auto ay = d.proj_m(d.bracket(d.embed_k(a), d.embed_m(y)));
    CHECK(m.inner(ax, y) + m.inner(x, ay) == 0);
  }
}

TEST_CASE("float conversion keeps the decomposition") {
  auto s = decompose_isotropy(so5_u2()).space.convert<double>();
  CHECK(s.verify().ok());
  auto m = metric_from_lambdas(s, {1.0, 2.0});
  CHECK(m.gram(5, 5) == doctest::Approx(2.0 * s.m_gram()[5]));
}

TEST_CASE("repeated modules fall back to isotypic components") {
  // so(4)/so(2): two copies of the standard so(2)-module plus a trivial line
  auto g = make(Family::so, {4});
  auto s = reductive_complement(g, {unit<Rational>(6, so_index(4, 0, 1))}, "V2(R4)");
  auto d = decompose_isotropy(s, 5);
  CHECK(d.method == "isotypic");
  CHECK(d.block_dims == std::vector<std::size_t>{1, 4});
  CHECK(d.space.verify().ok());
}
