#include "gospace/geodesic.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace gospace {

std::string to_string(GoStatus s) {
  switch (s) {
    case GoStatus::go_on_samples: return "go_on_samples";
    case GoStatus::not_go: return "not_go";
    case GoStatus::naturally_reductive: return "naturally_reductive";
    case GoStatus::undecided: return "undecided";
  }
  return "undecided";
}

std::string to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::axes: return "axes";
    case SearchStrategy::pair_grid: return "pair_grid";
    case SearchStrategy::random: return "random";
    case SearchStrategy::optimize: return "optimize";
  }
  return "axes";
}

SearchStrategy parse_strategy(const std::string& s) {
  if (s == "axes") return SearchStrategy::axes;
  if (s == "pair_grid") return SearchStrategy::pair_grid;
  if (s == "random") return SearchStrategy::random;
  if (s == "optimize") return SearchStrategy::optimize;
  throw InvalidArgument("unknown search strategy: " + s);
}

Vec<double> halton_point(std::size_t index, std::size_t dim) {
  static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
  Vec<double> p(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const unsigned base = primes[d % (sizeof(primes) / sizeof(primes[0]))];
    // beyond the table, shift the index so coordinates do not repeat
    std::size_t i = index + 7 * (d / (sizeof(primes) / sizeof(primes[0])));
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    p[d] = 2.0 * r - 1.0;
  }
  return p;
}

namespace {

using Mat = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

struct Problem {
  std::size_t dk, dm, dg;
  Mat q;                       // metric Gram matrix on m
  std::vector<Mat> brackets;   // brackets[l](:, j) = [e_l, e_{dk+j}]_m

  Problem(const ReductiveSpace<double>& s, const InvariantMetric<double>& m)
      : dk(s.dim_k()), dm(s.dim_m()), dg(s.dim_g()), q(dm, dm) {
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dm; ++j) q(i, j) = m.gram(i, j);
    for (std::size_t l = 0; l < dg; ++l) {
      Mat b = Mat::Zero(dm, dm);
      for (std::size_t j = 0; j < dm; ++j)
        for (const auto& [idx, c] : s.adapted().bracket_terms(l, dk + j))
          if (idx >= dk) b(idx - dk, j) += c;
      brackets.push_back(std::move(b));
    }
  }

  // lemma residuals r_j = ⟨[a + x, e_j]_m, x⟩ (first dm entries) and |x|² − 1
  void evaluate(const VecX& z, VecX& r, Mat* jac) const {
    const VecX x = z.head(dm);
    const VecX w = q * x;
    Mat u = Mat::Zero(dm, dm);  // column j = [X, e_j]_m
    for (std::size_t l = 0; l < dg; ++l) {
      const double c = l < dk ? z(dm + l) : x(l - dk);
      if (c != 0.0) u += c * brackets[l];
    }
    r.resize(dm + 1);
    r.head(dm) = u.transpose() * w;
    r(dm) = x.squaredNorm() - 1.0;
    if (!jac) return;
    jac->setZero(dm + 1, dm + dk);
    const Mat qu = q * u;
    for (std::size_t l = 0; l < dg; ++l) {
      const VecX col = brackets[l].transpose() * w;  // ∂r/∂X_l
      const Eigen::Index target = l < dk ? static_cast<Eigen::Index>(dm + l) : static_cast<Eigen::Index>(l - dk);
      jac->block(0, target, dm, 1) += col;
    }
    jac->block(0, 0, dm, dm) += qu.transpose();
    jac->block(dm, 0, 1, dm) = 2.0 * x.transpose();
  }

  // least-squares a for fixed x
  VecX best_a(const VecX& x) const {
    if (dk == 0) return VecX(0);
    const VecX w = q * x;
    Mat a(dm, dk);
    for (std::size_t i = 0; i < dk; ++i) a.col(i) = brackets[i].transpose() * w;
    Mat u = Mat::Zero(dm, dm);
    for (std::size_t p = 0; p < dm; ++p) u += x(p) * brackets[dk + p];
    const VecX b = u.transpose() * w;
    return a.completeOrthogonalDecomposition().solve(-b);
  }
};

OptimizerHit run_seed(const Problem& pb, const VecX& x0, std::size_t index) {
  OptimizerHit hit;
  hit.seed_index = index;
  VecX z(pb.dm + pb.dk);
  z.head(pb.dm) = x0.normalized();
  z.tail(pb.dk) = pb.best_a(z.head(pb.dm));
  VecX r;
  Mat jac;
  pb.evaluate(z, r, &jac);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < 400 && cost > 1e-28; ++it) {
    const Mat jtj = jac.transpose() * jac;
    const VecX g = jac.transpose() * r;
    Mat damped = jtj;
    damped.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
    const VecX step = damped.ldlt().solve(-g);
    VecX z2 = z + step;
    VecX r2;
    pb.evaluate(z2, r2, nullptr);
    const double cost2 = r2.squaredNorm();
    if (cost2 < cost) {
      z = z2;
      pb.evaluate(z, r, &jac);
      cost = cost2;
      mu = std::max(mu / 3.0, 1e-12);
    } else {
      mu *= 4.0;
      if (mu > 1e12) break;
    }
  }
  hit.x.assign(z.data(), z.data() + pb.dm);
  hit.a.assign(z.data() + pb.dm, z.data() + pb.dm + pb.dk);
  hit.residual = r.head(pb.dm).cwiseAbs().maxCoeff();
  hit.converged = hit.residual < 1e-11 && std::abs(r(pb.dm)) < 1e-9;
  return hit;
}

}  // namespace

std::vector<OptimizerHit> optimize_geodesic_vectors(const ReductiveSpace<double>& space,
                                                    const InvariantMetric<double>& metric, std::size_t seeds,
                                                    std::uint64_t seed, std::size_t jobs) {
  const Problem pb(space, metric);
  std::vector<OptimizerHit> hits(seeds);
  parallel_for(seeds, jobs, [&](std::size_t s) {
    Vec<double> p = halton_point(static_cast<std::size_t>(seed % 100003) * 1009 + s + 1, pb.dm);
    VecX x0 = Eigen::Map<VecX>(p.data(), static_cast<Eigen::Index>(p.size()));
    if (x0.norm() < 1e-6) x0(0) = 1.0;
    hits[s] = run_seed(pb, x0, s);
  });
  return hits;
}

}  // namespace gospace
