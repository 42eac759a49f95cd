#include "gospace/homogeneous.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace gospace {

std::string to_string(SignatureMode m) { return m == SignatureMode::riemannian ? "riemannian" : "pseudo"; }

SignatureMode parse_signature(const std::string& s) {
  if (s == "riemannian") return SignatureMode::riemannian;
  if (s == "pseudo" || s == "pseudo_riemannian" || s == "lorentzian") return SignatureMode::pseudo;
  throw InvalidArgument("unknown signature mode: " + s);
}

namespace {

using Mat = Eigen::MatrixXd;

// Null space of a (real) matrix through the spectrum of AᵀA.
Mat float_nullspace(const Mat& a) {
  Mat ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Mat> es(ata);
  const auto& ev = es.eigenvalues();
  const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) < 1e-10 * top) keep.push_back(i);
  Mat out(a.cols(), static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<int>(j)) = es.eigenvectors().col(keep[j]);
  return out;
}

Mat vec_to_mat(const Eigen::VectorXd& v, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

// Linear commutation constraints X ↦ X R − R X for all R, vectorised row-major.
Mat commutation_system(const std::vector<Mat>& rs, int n) {
  Mat sys = Mat::Zero(static_cast<Eigen::Index>(rs.size()) * n * n, n * n);
  for (std::size_t a = 0; a < rs.size(); ++a) {
    const Mat& r = rs[a];
    const Eigen::Index base = static_cast<Eigen::Index>(a) * n * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          sys(base + i * n + j, i * n + l) += r(l, j);
          sys(base + i * n + j, l * n + j) -= r(i, l);
        }
  }
  return sys;
}

std::vector<std::vector<int>> cluster(const Eigen::VectorXd& ev) {
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < ev.size(); ++i) {
    if (groups.empty() || std::abs(ev(i) - ev(groups.back().back())) > 1e-8 * scale) groups.emplace_back();
    groups.back().push_back(i);
  }
  return groups;
}

// Exact rational projector from a float one; nullopt if it does not verify.
std::optional<Matrix<Rational>> exact_projector(const Mat& p, const std::vector<Matrix<Rational>>& actions) {
  const int n = static_cast<int>(p.rows());
  Matrix<Rational> q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational r = rationalize(p(i, j), 10000);
      if (std::abs(r.get_d() - p(i, j)) > 1e-8) return std::nullopt;
      q(i, j) = r;
    }
  if (!(q * q == q)) return std::nullopt;
  for (const auto& r : actions)
    if (!(q * r == r * q)) return std::nullopt;
  return q;
}

// Clusters of the spectrum of a B-symmetric operator (given in orthonormal
// coordinates) turned into exact invariant projectors in m-coordinates.
std::optional<std::vector<Matrix<Rational>>> projectors_from(const Mat& h, const Eigen::VectorXd& sqrt_g,
                                                             const std::vector<Matrix<Rational>>& actions) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
  std::vector<Matrix<Rational>> out;
  for (const auto& grp : cluster(es.eigenvalues())) {
    Mat qv(h.rows(), static_cast<int>(grp.size()));
    for (std::size_t j = 0; j < grp.size(); ++j) qv.col(static_cast<int>(j)) = es.eigenvectors().col(grp[j]);
    Mat pt = qv * qv.transpose();
    Mat p = sqrt_g.cwiseInverse().asDiagonal() * pt * sqrt_g.asDiagonal();
    auto q = exact_projector(p, actions);
    if (!q) return std::nullopt;
    out.push_back(std::move(*q));
  }
  return out;
}

Mat random_symmetric_combination(const std::vector<Mat>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const int n = basis.empty() ? 0 : static_cast<int>(basis.front().rows());
  Mat s = Mat::Zero(n, n);
  for (const auto& c : basis) s += nd(rng) * c;
  s = (0.5 * (s + s.transpose())).eval();
  const double nrm = s.norm();
  return nrm > 0 ? Mat(s / nrm) : s;
}

std::size_t leading_index(const std::vector<Vec<Rational>>& vs) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) {
        best = std::min(best, i);
        break;
      }
  return best;
}

}  // namespace

IsotropyDecomposition decompose_isotropy(const ReductiveSpace<Rational>& space, std::uint64_t seed) {
  const int n = static_cast<int>(space.dim_m());
  Eigen::VectorXd sqrt_g(n);
  for (int i = 0; i < n; ++i) {
    const double g = space.m_gram()[static_cast<std::size_t>(i)].get_d();
    if (!(g > 0)) throw InvalidArgument("decompose_isotropy: B must be positive definite on m");
    sqrt_g(i) = std::sqrt(g);
  }
  std::vector<Matrix<Rational>> actions;
  std::vector<Mat> ortho;  // ad(a)|_m in B-orthonormal coordinates (skew)
  Mat casimir = Mat::Zero(n, n);
  for (std::size_t a = 0; a < space.dim_k(); ++a) {
    actions.push_back(space.isotropy_action(a));
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = actions.back()(i, j).get_d() * sqrt_g(i) / sqrt_g(j);
    ortho.push_back(r);
    casimir -= r * r / space.k_gram()[a].get_d();
  }

  // commutant of the isotropy action
  std::vector<Mat> commutant;
  if (ortho.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Mat e = Mat::Zero(n, n);
        e(i, j) = 1;
        commutant.push_back(e);
      }
  } else {
    Mat ns = float_nullspace(commutation_system(ortho, n));
    for (int c = 0; c < ns.cols(); ++c) commutant.push_back(vec_to_mat(ns.col(c), n));
  }

  std::mt19937_64 rng(seed);
  const double cas_scale = std::max(1.0, casimir.norm());
  std::string method = "irreducible";
  auto projectors = projectors_from(casimir + 0.37 * cas_scale * random_symmetric_combination(commutant, rng), sqrt_g,
                                    actions);
  if (!projectors) {
    // repeated modules: separate isotypic components with the centre of the commutant
    method = "isotypic";
    const int d = static_cast<int>(commutant.size());
    Mat sys = Mat::Zero(static_cast<Eigen::Index>(d) * n * n, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Mat c = commutant[i] * commutant[j] - commutant[j] * commutant[i];
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) sys(static_cast<Eigen::Index>(j) * n * n + p * n + q, i) = c(p, q);
      }
    Mat zs = float_nullspace(sys);
    std::vector<Mat> centre;
    for (int c = 0; c < zs.cols(); ++c) {
      Mat z = Mat::Zero(n, n);
      for (int i = 0; i < d; ++i) z += zs(i, c) * commutant[i];
      centre.push_back(z);
    }
    projectors = projectors_from(casimir + 0.37 * cas_scale * random_symmetric_combination(centre, rng), sqrt_g,
                                 actions);
    if (!projectors) throw MathError("decompose_isotropy: could not separate the spectrum exactly");
  }

  // exact block bases from the projector images
  struct Block {
    std::vector<Vec<Rational>> vectors;  // m-coordinates
    std::size_t lead;
  };
  std::vector<Block> blocks;
  auto form = [&space](const Vec<Rational>& a, const Vec<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i] * space.m_gram()[i];
    return s;
  };
  for (const auto& p : *projectors) {
    auto e = rref(p.transpose());
    std::vector<Vec<Rational>> rows;
    for (std::size_t r = 0; r < e.rank(); ++r) rows.push_back(e.reduced.row(r));
    auto vs = orthogonalize(rows, form);
    blocks.push_back({vs, leading_index(vs)});
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.vectors.size() != b.vectors.size()) return a.vectors.size() < b.vectors.size();
    return a.lead < b.lead;
  });

  std::vector<Vec<Rational>> m_basis;
  std::vector<std::vector<std::size_t>> parts;
  for (const auto& b : blocks) {
    parts.emplace_back();
    for (const auto& v : b.vectors) {
      Vec<Rational> orig = zeros<Rational>(space.dim_g());
      for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) axpy(v[i], space.m_basis()[i], orig);
      parts.back().push_back(m_basis.size());
      m_basis.push_back(std::move(orig));
    }
  }
  ReductiveSpace<Rational> refined(space.algebra_ptr(), space.k_basis(), std::move(m_basis), parts, space.id());
  if (!refined.verify().ok()) throw MathError("decompose_isotropy: refined blocks failed exact verification");

  IsotropyDecomposition out{refined, refined.block_dims(), {}, method};
  // equivalent pairs: nonzero intertwiners between blocks of equal dimension
  std::vector<Matrix<Rational>> acts;
  for (std::size_t a = 0; a < refined.dim_k(); ++a) acts.push_back(refined.isotropy_action(a));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const std::size_t di = parts[i].size(), dj = parts[j].size();
      if (di != dj) continue;
      // unknown S: dj×di with S·R_i = R_j·S
      Matrix<Rational> sys(acts.size() * dj * di, dj * di);
      for (std::size_t a = 0; a < acts.size(); ++a)
        for (std::size_t r = 0; r < dj; ++r)
          for (std::size_t c = 0; c < di; ++c) {
            const std::size_t row = a * dj * di + r * di + c;
            for (std::size_t l = 0; l < di; ++l) {
              Rational ri = acts[a](parts[i][l], parts[i][c]);
              if (sgn(ri) != 0) sys(row, r * di + l) += ri;
              Rational rj = acts[a](parts[j][r], parts[j][l]);
              if (sgn(rj) != 0) sys(row, l * di + c) -= rj;
            }
          }
      if (acts.empty() || !nullspace(sys).empty()) out.equivalent_pairs.emplace_back(i, j);
    }
  return out;
}

}  // namespace gospace
