#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "gospace/expm.hpp"
#include "gospace/homogeneous.hpp"
#include "gospace/two_step.hpp"

namespace gospace {

/// t ↦ g(t) as an ambient matrix.
using GroupCurve = std::function<Matrix<double>(double)>;

/// Chart u ↦ exp(Σ u_i e_i)·o around the origin, u in the m-basis coordinates.
/// Nothing here uses the geodesic lemma: the metric is pulled back through
/// D(u) = (1 − exp(−ad u))/ad u and geodesics are tested by the ODE.
class NormalChart {
 public:
  template <class T>
  NormalChart(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, double radius = 0.5)
      : NormalChart(space.template convert<double>(), metric.template convert<double>(), radius, 0) {}

  std::size_t dim() const { return dm_; }
  double radius() const { return radius_; }
  const ReductiveSpace<double>& space() const { return space_; }
  const InvariantMetric<double>& metric() const { return metric_; }

  /// ‖u‖ measured with |B| on the m-basis.
  double coordinate_norm(const Vec<double>& u) const;

  /// D(u) restricted to m and projected back to m (dm × dm).
  Matrix<double> transport(const Vec<double>& u) const;

  /// g_ij(u) = ⟨P_m D(u) e_i, P_m D(u) e_j⟩.
  Matrix<double> metric_components(const Vec<double>& u) const;

  /// Γ^k_ij at index (k·dm + i)·dm + j from central differences of the metric.
  std::vector<double> christoffel(const Vec<double>& u, double step = 1e-4) const;

  /// exp(u) as an ambient matrix.
  Matrix<double> group_element(const Vec<double>& u) const;

  /// Adapted coordinates of an ambient matrix (least squares in the Frobenius product).
  Vec<double> coordinates(const Matrix<double>& m) const;

  /// u with exp(−u) g ∈ K, by Newton on the m-part of log(exp(−u) g).
  /// Throws MathError when Newton fails or the solution leaves the chart.
  Vec<double> factor(const Matrix<double>& g, const Vec<double>& guess) const;

  /// Starting guess: the m-part of log g.
  Vec<double> initial_guess(const Matrix<double>& g) const;

 private:
  NormalChart(ReductiveSpace<double> space, InvariantMetric<double> metric, double radius, int);
  void check_radius(const Vec<double>& u, const char* where) const;

  ReductiveSpace<double> space_;
  InvariantMetric<double> metric_;
  double radius_;
  std::size_t dk_, dm_, dg_;
  std::vector<Matrix<double>> ambient_;   // adapted basis as ambient matrices
  Matrix<double> frobenius_inv_;          // inverse Gram of the basis in the Frobenius product
};

/// u(t) for a group curve: factor(g(t)) starting from the m-part of log g(t).
Vec<double> factor_curve(const NormalChart& chart, const GroupCurve& curve, double t);

/// exp(tX)·o.
template <class T>
GroupCurve orbit_curve(const ReductiveSpace<T>& space, const Vec<T>& X) {
  const Matrix<double> m = space.adapted().to_matrix(X).template cast<double>();
  return [m](double t) {
    Matrix<double> a = m;
    a *= t;
    return expm(a);
  };
}

/// exp(tX) exp(tY) exp(tZ)·o.
template <class T>
GroupCurve two_step_group_curve(const ReductiveSpace<T>& space, const TwoStepCurve<T>& c) {
  const Matrix<double> x = space.adapted().to_matrix(c.X).template cast<double>();
  const Matrix<double> y = space.adapted().to_matrix(c.Y).template cast<double>();
  const Matrix<double> z = space.adapted().to_matrix(c.Z).template cast<double>();
  return [x, y, z](double t) {
    Matrix<double> a = x, b = y, d = z;
    a *= t;
    b *= t;
    d *= t;
    return expm(a) * expm(b) * expm(d);
  };
}

struct ResidualOptions {
  // k with ⟨[V, W]_m, V_m⟩ = k⟨V_m, W⟩; when nonzero ∇γ̇ γ̇ = −kγ̇ for the
  // commutator bracket and the curve is resampled in the affine parameter s = e^{−kt}
  double pregeodesic_k = 0;
  double step_scale = 1e-3;     // h = step_scale·(1 + ‖u‖)
  double christoffel_step = 1e-4;
  bool richardson = true;       // Γ from (4Γ(h/2) − Γ(h))/3
  std::size_t jobs = 1;
};

struct ResidualTrace {
  std::vector<double> t;         // grid (in s when reparametrised)
  std::vector<double> residual;  // |B|-norm of ü + Γ(u̇, u̇)
  std::vector<double> energy;    // g(u̇, u̇)
  double max_residual = 0;
};

/// Geodesic ODE residual of the curve on the grid, with 5-point central differences.
ResidualTrace geodesic_residual(const NormalChart& chart, const GroupCurve& curve, const std::vector<double>& t_grid,
                                const ResidualOptions& opt = {});

/// Symmetric grid of 2n+1 points in [−T, T], T chosen so that the curve with
/// initial speed ‖V_m‖ stays well inside the chart.
std::vector<double> residual_grid(const NormalChart& chart, const Vec<double>& v_m, std::size_t n = 4);

/// t,residual,energy lines with a header.
void write_residual_csv(std::ostream& out, const ResidualTrace& trace);

/// Residual threshold separating geodesic from non-geodesic orbits in the
/// crosscheck; accepted orbits sit near 1e-8 or below, refuted ones near 1e-2.
inline constexpr double oracle_threshold = 1e-5;

struct OracleComparison {
  bool algebraic = false;  // is_geodesic_vector
  double residual = 0;     // max ODE residual of exp(tX)·o
  bool oracle() const { return residual < oracle_threshold; }
  bool agree() const { return algebraic == oracle(); }
};

/// Algebraic verdict and ODE residual for the orbit of X (Riemannian metrics).
template <class T>
OracleComparison compare_with_oracle(const NormalChart& chart, const ReductiveSpace<T>& space,
                                     const InvariantMetric<T>& metric, const Vec<T>& X, std::size_t jobs = 1) {
  OracleComparison out;
  out.algebraic = is_geodesic_vector(space, metric, X).verdict;
  ResidualOptions opt;
  opt.jobs = jobs;
  const Vec<double> vm = vec_cast<double>(space.proj_m(X));
  out.residual = geodesic_residual(chart, orbit_curve(space, X), residual_grid(chart, vm), opt).max_residual;
  return out;
}

}  // namespace gospace
