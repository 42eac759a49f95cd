#include "gospace/coordinate_oracle.hpp"

#include <cmath>
#include <ostream>

#include "gospace/parallel.hpp"

namespace gospace {

NormalChart::NormalChart(ReductiveSpace<double> space, InvariantMetric<double> metric, double radius, int)
    : space_(std::move(space)),
      metric_(std::move(metric)),
      radius_(radius),
      dk_(space_.dim_k()),
      dm_(space_.dim_m()),
      dg_(space_.dim_g()) {
  if (!(radius_ > 0)) throw InvalidArgument("NormalChart: radius must be positive");
  ambient_ = space_.adapted().basis();
  Matrix<double> fr(dg_, dg_);
  for (std::size_t i = 0; i < dg_; ++i)
    for (std::size_t j = 0; j < dg_; ++j) {
      double s = 0;
      for (std::size_t p = 0; p < ambient_[i].data().size(); ++p) s += ambient_[i].data()[p] * ambient_[j].data()[p];
      fr(i, j) = s;
    }
  auto inv = inverse(fr);
  if (!inv) throw MathError("NormalChart: basis matrices are dependent");
  frobenius_inv_ = std::move(*inv);
}

double NormalChart::coordinate_norm(const Vec<double>& u) const {
  double s = 0;
  for (std::size_t i = 0; i < dm_; ++i) s += std::abs(space_.m_gram()[i]) * u[i] * u[i];
  return std::sqrt(s);
}

void NormalChart::check_radius(const Vec<double>& u, const char* where) const {
  if (u.size() != dm_) throw InvalidArgument(std::string(where) + ": coordinate vector has wrong dimension");
  if (coordinate_norm(u) > radius_) throw InvalidArgument(std::string(where) + ": point outside the chart radius");
}

Matrix<double> NormalChart::transport(const Vec<double>& u) const {
  check_radius(u, "transport");
  Matrix<double> ad = space_.adapted().ad(space_.embed_m(u));
  ad *= -1.0;
  // series tail below 1e-14, well under the 1e-13 target
  const Matrix<double> d = phi1(ad, 1e-14);
  return d.block(dk_, dk_, dm_, dm_);
}

Matrix<double> NormalChart::metric_components(const Vec<double>& u) const {
  const Matrix<double> p = transport(u);
  Matrix<double> g = p.transpose() * metric_.gram * p;
  // symmetrise the rounding
  for (std::size_t i = 0; i < dm_; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i) = 0.5 * (g(i, j) + g(j, i));
  return g;
}

std::vector<double> NormalChart::christoffel(const Vec<double>& u, double step) const {
  if (!(step > 0)) throw InvalidArgument("christoffel: step must be positive");
  check_radius(u, "christoffel");
  std::vector<Matrix<double>> dg(dm_);
  for (std::size_t l = 0; l < dm_; ++l) {
    Vec<double> up = u, um = u;
    up[l] += step;
    um[l] -= step;
    Matrix<double> d = metric_components(up);
    d -= metric_components(um);
    d *= 1.0 / (2.0 * step);
    dg[l] = std::move(d);
  }
  auto ginv = inverse(metric_components(u));
  if (!ginv) throw MathError("christoffel: degenerate metric");
  std::vector<double> gamma(dm_ * dm_ * dm_, 0.0);
  for (std::size_t i = 0; i < dm_; ++i)
    for (std::size_t j = i; j < dm_; ++j)
      for (std::size_t k = 0; k < dm_; ++k) {
        double s = 0;
        for (std::size_t l = 0; l < dm_; ++l) s += (*ginv)(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[(k * dm_ + i) * dm_ + j] = gamma[(k * dm_ + j) * dm_ + i] = 0.5 * s;
      }
  return gamma;
}

Matrix<double> NormalChart::group_element(const Vec<double>& u) const {
  Matrix<double> a(ambient_[0].rows(), ambient_[0].cols());
  for (std::size_t i = 0; i < dm_; ++i)
    if (u[i] != 0.0) {
      Matrix<double> t = ambient_[dk_ + i];
      t *= u[i];
      a += t;
    }
  return expm(a);
}

Vec<double> NormalChart::coordinates(const Matrix<double>& m) const {
  Vec<double> rhs(dg_, 0.0);
  for (std::size_t i = 0; i < dg_; ++i) {
    double s = 0;
    for (std::size_t p = 0; p < m.data().size(); ++p) s += ambient_[i].data()[p] * m.data()[p];
    rhs[i] = s;
  }
  return frobenius_inv_ * rhs;
}

Vec<double> NormalChart::initial_guess(const Matrix<double>& g) const {
  return space_.proj_m(coordinates(logm(g)));
}

Vec<double> NormalChart::factor(const Matrix<double>& g, const Vec<double>& guess) const {
  auto residual = [&](const Vec<double>& u) {
    Vec<double> neg = u;
    for (auto& x : neg) x = -x;
    return space_.proj_m(coordinates(logm(group_element(neg) * g)));
  };
  Vec<double> u = guess;
  Vec<double> f = residual(u);
  const double fd = 1e-7;
  for (int it = 0; it < 60; ++it) {
    if (max_abs(f) < 1e-14) break;
    Matrix<double> jac(dm_, dm_);
    for (std::size_t j = 0; j < dm_; ++j) {
      Vec<double> up = u;
      up[j] += fd;
      const Vec<double> fj = residual(up);
      for (std::size_t i = 0; i < dm_; ++i) jac(i, j) = (fj[i] - f[i]) / fd;
    }
    auto ji = inverse(jac);
    if (!ji) throw MathError("factor_curve: singular Newton step");
    const Vec<double> step = *ji * f;
    Vec<double> next = u - step;
    Vec<double> fn = residual(next);
    // a stalled step at rounding level ends the iteration
    if (max_abs(fn) >= max_abs(f) && max_abs(f) < 1e-12) break;
    u = std::move(next);
    f = std::move(fn);
  }
  if (!(max_abs(f) < 1e-12)) throw MathError("factor_curve: Newton iteration did not converge");
  check_radius(u, "factor_curve");
  return u;
}

Vec<double> factor_curve(const NormalChart& chart, const GroupCurve& curve, double t) {
  const Matrix<double> g = curve(t);
  return chart.factor(g, chart.initial_guess(g));
}

ResidualTrace geodesic_residual(const NormalChart& chart, const GroupCurve& curve, const std::vector<double>& t_grid,
                                const ResidualOptions& opt) {
  if (t_grid.empty()) throw InvalidArgument("geodesic_residual: empty grid");
  const std::size_t dm = chart.dim();
  const double k = -opt.pregeodesic_k;
  // σ(s) = γ(ln(s)/k) is affinely parametrised when ∇γ̇ γ̇ = kγ̇
  GroupCurve c = curve;
  std::vector<double> grid = t_grid;
  if (k != 0.0) {
    c = [curve, k](double s) {
      if (!(s > 0)) throw InvalidArgument("geodesic_residual: affine parameter left (0, ∞)");
      return curve(std::log(s) / k);
    };
    for (auto& t : grid) t = std::exp(k * t);
  }
  ResidualTrace trace;
  trace.t = grid;
  trace.residual.assign(grid.size(), 0.0);
  trace.energy.assign(grid.size(), 0.0);
  parallel_for(grid.size(), opt.jobs, [&](std::size_t p) {
    const double t = grid[p];
    const Vec<double> u0 = factor_curve(chart, c, t);
    const double h = opt.step_scale * (1.0 + chart.coordinate_norm(u0));
    std::vector<Vec<double>> u(5);
    u[2] = u0;
    for (int s : {-2, -1, 1, 2}) u[static_cast<std::size_t>(s + 2)] = chart.factor(c(t + s * h), u0);
    Vec<double> v(dm), a(dm);
    for (std::size_t i = 0; i < dm; ++i) {
      v[i] = (-u[4][i] + 8.0 * u[3][i] - 8.0 * u[1][i] + u[0][i]) / (12.0 * h);
      a[i] = (-u[4][i] + 16.0 * u[3][i] - 30.0 * u[2][i] + 16.0 * u[1][i] - u[0][i]) / (12.0 * h * h);
    }
    // one Richardson step removes the h² term, which is not invariant under a change of frame
    auto gamma = chart.christoffel(u0, opt.christoffel_step);
    if (opt.richardson) {
      const auto half = chart.christoffel(u0, 0.5 * opt.christoffel_step);
      for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] = (4.0 * half[i] - gamma[i]) / 3.0;
    }
    Vec<double> r = a;
    for (std::size_t kk = 0; kk < dm; ++kk)
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = 0; j < dm; ++j) r[kk] += gamma[(kk * dm + i) * dm + j] * v[i] * v[j];
    const Matrix<double> g = chart.metric_components(u0);
    trace.residual[p] = chart.coordinate_norm(r);
    trace.energy[p] = dot(v, g * v);
  });
  for (double r : trace.residual) trace.max_residual = std::max(trace.max_residual, r);
  return trace;
}

std::vector<double> residual_grid(const NormalChart& chart, const Vec<double>& v_m, std::size_t n) {
  const double speed = chart.coordinate_norm(v_m);
  if (!(speed > 0)) throw InvalidArgument("residual_grid: zero velocity");
  const double T = 0.3 * chart.radius() / speed;
  std::vector<double> out;
  for (std::size_t j = 0; j <= 2 * n; ++j)
    out.push_back(T * (static_cast<double>(j) - static_cast<double>(n)) / static_cast<double>(n == 0 ? 1 : n));
  return out;
}

void write_residual_csv(std::ostream& out, const ResidualTrace& trace) {
  out << "t,residual,energy\n";
  out.precision(17);
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    out << trace.t[i] << ',' << trace.residual[i] << ',' << trace.energy[i] << '\n';
}

}  // namespace gospace
