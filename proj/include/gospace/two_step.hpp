#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gospace/expm.hpp"
#include "gospace/geodesic.hpp"

namespace gospace {

/// γ(t) = exp(tX) exp(tY) exp(tZ)·o, all three in adapted g-coordinates.
template <class T>
struct TwoStepCurve {
  Vec<T> X;
  Vec<T> Y;
  Vec<T> Z;
  // set by construct_two_step
  std::optional<std::size_t> module_a;
  std::optional<std::size_t> module_b;
  std::optional<T> lambda;   // λ_b / λ_a
  std::string construction;  // "" for hand-made curves

  Vec<T> initial_velocity_g() const { return X + Y + Z; }
};

// ---------------------------------------------------------------- transport

/// Matrix of T(t) = Ad(exp(−tZ) exp(−tY)) = exp(−t ad Z) exp(−t ad Y) on adapted coordinates.
template <class T>
Matrix<double> transport_matrix(const ReductiveSpace<T>& space, const Vec<T>& Y, const Vec<T>& Z, double t) {
  Matrix<double> ay = space.adapted().ad(Y).template cast<double>();
  Matrix<double> az = space.adapted().ad(Z).template cast<double>();
  ay *= -t;
  az *= -t;
  return expm(az) * expm(ay);
}

/// exp(s·A) as a finite sum when A is nilpotent; nullopt otherwise.
template <class T>
std::optional<Matrix<T>> nilpotent_exp(const Matrix<T>& a, const T& s) {
  const std::size_t n = a.rows();
  Matrix<T> out = Matrix<T>::identity(n);
  Matrix<T> term = Matrix<T>::identity(n);
  if (s == T(0)) return out;
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * a;
    if (term.is_zero(0.0)) return out;
    Matrix<T> add = term;
    T c(1);
    for (std::size_t j = 1; j <= k; ++j) c *= s;
    for (std::size_t j = 2; j <= k; ++j) c /= T(static_cast<long>(j));
    add *= c;
    out += add;
  }
  return std::nullopt;
}

/// Exact transport at rational t when ad Y and ad Z are nilpotent (in particular Y = Z = 0).
template <class T>
std::optional<Matrix<T>> exact_transport(const ReductiveSpace<T>& space, const Vec<T>& Y, const Vec<T>& Z, const T& t) {
  auto ey = nilpotent_exp(space.adapted().ad(Y), T(-t));
  if (!ey) return std::nullopt;
  auto ez = nilpotent_exp(space.adapted().ad(Z), T(-t));
  if (!ez) return std::nullopt;
  return *ez * *ey;
}

// ---------------------------------------------------------------- G_W

/// G_W for a given transport matrix.
template <class T>
T g_w_with_transport(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Matrix<T>& tr,
                     const Vec<T>& X, const Vec<T>& Y, const Vec<T>& Z, const Vec<T>& W) {
  const Vec<T> tx = tr * X;
  const Vec<T> ty = tr * Y;
  const Vec<T> v = tx + ty + Z;
  const Vec<T> wv = space.proj_m(space.bracket(space.embed_m(W), v));
  const Vec<T> second = space.proj_m(space.bracket(tx, ty + Z) + space.bracket(ty, Z));
  return metric.inner(space.proj_m(v), wv) + metric.inner(W, second);
}

/// G_W(t) = ⟨(TX)_m + (TY)_m + Z_m, [W, TX + TY + Z]_m⟩ + ⟨W, [TX, TY + Z]_m + [TY, Z]_m⟩,
/// evaluated in floating point.
template <class T>
double g_w_value(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X, const Vec<T>& Y,
                 const Vec<T>& Z, const Vec<T>& W, double t) {
  if (W.size() != space.dim_m()) throw InvalidArgument("g_w_value: W must be in m");
  if (X.size() != space.dim_g() || Y.size() != space.dim_g() || Z.size() != space.dim_g())
    throw InvalidArgument("g_w_value: X, Y, Z must be in g");
  if constexpr (std::is_same_v<T, double>) {
    return g_w_with_transport(space, metric, transport_matrix(space, Y, Z, t), X, Y, Z, W);
  } else {
    const auto sd = space.template convert<double>();
    const auto md = metric.template convert<double>();
    return g_w_with_transport(sd, md, transport_matrix(sd, vec_cast<double>(Y), vec_cast<double>(Z), t),
                              vec_cast<double>(X), vec_cast<double>(Y), vec_cast<double>(Z), vec_cast<double>(W));
  }
}

/// Exact G_W(t) at rational t; nullopt when the transport is not polynomial in t.
template <class T>
std::optional<T> g_w_exact(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X,
                           const Vec<T>& Y, const Vec<T>& Z, const Vec<T>& W, const T& t) {
  auto tr = exact_transport(space, Y, Z, t);
  if (!tr) return std::nullopt;
  return g_w_with_transport(space, metric, *tr, X, Y, Z, W);
}

// ---------------------------------------------------------------- identity test on the t-grid

struct TGrid {
  std::vector<std::array<long, 2>> rational;  // numerator, denominator
  std::vector<double> floating;
};

/// {0, ±1/7, ±1/3, ±1, ±27/10} and 16 pseudo-random points in [−3, 3].
TGrid default_t_grid();

template <class T>
struct TwoStepCheck {
  bool verdict = false;
  double max_residual = 0;
  double tolerance = 0;
  bool exact = false;                        // rational points were evaluated exactly
  std::optional<std::size_t> witness_w;      // m-basis W of the first failure
  std::optional<double> witness_t;
  std::size_t points = 0;
};

struct TwoStepOptions {
  std::size_t jobs = 1;
  double tolerance = 1e-10;
};

/// Checks G_W ≡ 0 for every m-basis W on the t-grid. Exact zero is demanded at the
/// rational points whenever the transport is exactly computable.
template <class T>
TwoStepCheck<T> multi_step_check(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X,
                                 const Vec<T>& Y, const Vec<T>& Z, const TwoStepOptions& opt = {}) {
  if (all_zero(space.proj_m(X + Y + Z), 0.0)) throw InvalidArgument("two-step check: zero initial velocity");
  const TGrid grid = default_t_grid();
  const std::size_t dm = space.dim_m();
  const double s = max_abs(X) + max_abs(Y) + max_abs(Z);
  TwoStepCheck<T> out;
  out.tolerance = opt.tolerance * std::max(1.0, metric.gram.max_abs() * s * s * (1.0 + s));
  const std::size_t nr = grid.rational.size();
  const std::size_t np = nr + grid.floating.size();
  out.points = np;

  const auto sd = space.template convert<double>();
  const auto md = metric.template convert<double>();
  const Vec<double> xd = vec_cast<double>(X), yd = vec_cast<double>(Y), zd = vec_cast<double>(Z);

  struct Point {
    double worst = 0;
    std::optional<std::size_t> fail;
    bool exact = false;
  };
  std::vector<Point> pts(np);
  parallel_for(np, opt.jobs, [&](std::size_t p) {
    Point& pt = pts[p];
    if constexpr (ScalarTraits<T>::exact) {
      if (p < nr) {
        const T t = T(grid.rational[p][0], grid.rational[p][1]);
        if (auto tr = exact_transport(space, Y, Z, t)) {
          pt.exact = true;
          for (std::size_t j = 0; j < dm; ++j) {
            const T v = g_w_with_transport(space, metric, *tr, X, Y, Z, unit<T>(dm, j));
            pt.worst = std::max(pt.worst, std::abs(to_double(v)));
            if (v != T(0) && !pt.fail) pt.fail = j;
          }
          return;
        }
      }
    }
    const double t = p < nr ? static_cast<double>(grid.rational[p][0]) / static_cast<double>(grid.rational[p][1])
                            : grid.floating[p - nr];
    const Matrix<double> tr = transport_matrix(sd, yd, zd, t);
    for (std::size_t j = 0; j < dm; ++j) {
      const double v = std::abs(g_w_with_transport(sd, md, tr, xd, yd, zd, unit<double>(dm, j)));
      pt.worst = std::max(pt.worst, v);
      if (v > out.tolerance && !pt.fail) pt.fail = j;
    }
  });
  out.verdict = true;
  out.exact = ScalarTraits<T>::exact;
  for (std::size_t p = 0; p < np; ++p) {
    out.max_residual = std::max(out.max_residual, pts[p].worst);
    if (p < nr && !pts[p].exact) out.exact = false;
    if (pts[p].fail && out.verdict) {
      out.verdict = false;
      out.witness_w = pts[p].fail;
      out.witness_t = p < nr ? static_cast<double>(grid.rational[p][0]) / static_cast<double>(grid.rational[p][1])
                             : grid.floating[p - nr];
    }
  }
  return out;
}

template <class T>
TwoStepCheck<T> is_two_step_geodesic(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X,
                                     const Vec<T>& Y, const TwoStepOptions& opt = {}) {
  return multi_step_check(space, metric, X, Y, zeros<T>(space.dim_g()), opt);
}

template <class T>
TwoStepCheck<T> is_two_step_geodesic(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric,
                                     const TwoStepCurve<T>& c, const TwoStepOptions& opt = {}) {
  return multi_step_check(space, metric, c.X, c.Y, c.Z, opt);
}

/// ⟨V_m, V_m⟩ with V = TX + TY + Z, the squared speed of γ at t.
template <class T>
double two_step_energy(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const TwoStepCurve<T>& c,
                       double t) {
  const auto sd = space.template convert<double>();
  const auto md = metric.template convert<double>();
  const Vec<double> y = vec_cast<double>(c.Y), z = vec_cast<double>(c.Z);
  const Matrix<double> tr = transport_matrix(sd, y, z, t);
  const Vec<double> v = sd.proj_m(tr * vec_cast<double>(c.X) + tr * y + z);
  return md.inner(v, v);
}

// ---------------------------------------------------------------- construction

/// [m_a, m_b] ⊆ m_a, checked on basis brackets with exact zero tests.
template <class T>
bool bracket_condition(const ReductiveSpace<T>& space, std::size_t a, std::size_t b) {
  const auto& blocks = space.submodules();
  if (a >= blocks.size() || b >= blocks.size()) throw InvalidArgument("bracket_condition: block index out of range");
  if (a == b) throw InvalidArgument("bracket_condition: blocks must differ");
  const std::size_t dk = space.dim_k();
  for (auto i : blocks[a])
    for (auto j : blocks[b])
      for (const auto& [idx, c] : space.adapted().bracket_terms(dk + i, dk + j)) {
        if (is_zero(c, 0.0)) continue;
        if (idx < dk || space.block_of(idx - dk) != a) return false;
      }
  return true;
}

/// λ with Λ = λ·Id on the block, or nullopt.
template <class T>
std::optional<T> block_scalar(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, std::size_t block) {
  const auto& idx = space.submodules().at(block);
  const T lam = metric.lambda_matrix(idx.front(), idx.front());
  for (auto i : idx)
    for (std::size_t r = 0; r < space.dim_m(); ++r) {
      const T want = r == i ? lam : T(0);
      if (!is_zero(T(metric.lambda_matrix(r, i) - want), std::max(1.0, std::abs(to_double(lam))))) return std::nullopt;
    }
  return lam;
}

/// γ(t) = exp t(X_a + λX_b) exp t(1−λ)X_b·o with λ = λ_b/λ_a.
template <class T>
TwoStepCurve<T> construct_two_step(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, std::size_t a,
                                   std::size_t b, const Vec<T>& X_a, const Vec<T>& X_b) {
  if (!bracket_condition(space, a, b)) throw InvalidArgument("construct_two_step: [m_a, m_b] is not contained in m_a");
  if (metric.mode != SignatureMode::riemannian) throw InvalidArgument("construct_two_step: metric must be riemannian");
  if (!naturally_reductive_check(space, standard_metric(space)).holds)
    throw InvalidArgument("construct_two_step: the background form is not naturally reductive");
  if (X_a.size() != space.dim_m() || X_b.size() != space.dim_m())
    throw InvalidArgument("construct_two_step: X_a, X_b must be m-vectors");
  for (std::size_t i = 0; i < space.dim_m(); ++i) {
    if (!is_zero(X_a[i], 0.0) && space.block_of(i) != a) throw InvalidArgument("construct_two_step: X_a leaves m_a");
    if (!is_zero(X_b[i], 0.0) && space.block_of(i) != b) throw InvalidArgument("construct_two_step: X_b leaves m_b");
  }
  auto la = block_scalar(space, metric, a);
  auto lb = block_scalar(space, metric, b);
  if (!la || !lb) throw InvalidArgument("construct_two_step: metric is not a multiple of B on m_a and m_b");
  TwoStepCurve<T> c;
  const T lam = *lb / *la;
  c.X = space.embed_m(X_a + scaled(lam, X_b));
  c.Y = space.embed_m(scaled(T(T(1) - lam), X_b));
  c.Z = zeros<T>(space.dim_g());
  c.module_a = a;
  c.module_b = b;
  c.lambda = lam;
  c.construction = "submodule_pair";
  return c;
}

// ---------------------------------------------------------------- submersion families

template <class T>
struct TwoStepFamily {
  ReductiveSpace<T> space;
  InvariantMetric<T> metric;
  bool verdict = false;
  std::size_t samples = 0;
  double max_residual = 0;
  std::string regime;  // "homogeneous" at λ = 1, "cheeger_deformation" for λ > 1
  std::optional<std::size_t> failing_sample;
};

template <class T>
std::string lambda_regime(const T& lambda) {
  if (lambda == T(1)) return "homogeneous";
  return to_double(lambda) > 1.0 ? "cheeger_deformation" : "contraction";
}

/// Runs construct_two_step + is_two_step_geodesic on random velocities of m_0 ⊕ m_1.
template <class T>
std::pair<bool, double> verify_two_step_samples(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric,
                                                std::size_t samples, std::uint64_t seed, std::size_t jobs,
                                                std::optional<std::size_t>* failing = nullptr) {
  const auto& blocks = space.submodules();
  if (blocks.size() != 2) throw InvalidArgument("two-step family: expected two blocks");
  std::vector<double> worst(samples, 0.0);
  std::vector<char> ok(samples, 1);
  parallel_for(samples, jobs, [&](std::size_t i) {
    Vec<T> xa = zeros<T>(space.dim_m()), xb = zeros<T>(space.dim_m());
    const Vec<T> ra = go_random_sample<T>(blocks[0].size(), seed, 2 * i);
    const Vec<T> rb = go_random_sample<T>(blocks[1].size(), seed, 2 * i + 1);
    for (std::size_t j = 0; j < blocks[0].size(); ++j) xa[blocks[0][j]] = ra[j];
    for (std::size_t j = 0; j < blocks[1].size(); ++j) xb[blocks[1][j]] = rb[j];
    auto c = construct_two_step(space, metric, 0, 1, xa, xb);
    auto chk = is_two_step_geodesic(space, metric, c);
    worst[i] = chk.max_residual;
    ok[i] = chk.verdict;
  });
  double mx = 0;
  bool all = true;
  for (std::size_t i = 0; i < samples; ++i) {
    mx = std::max(mx, worst[i]);
    if (!ok[i] && all) {
      all = false;
      if (failing) *failing = i;
    }
  }
  return {all, mx};
}

/// G/K with K ⊂ H ⊂ G and metric B|m₁ + λB|m₂ (m₁ = base G/H, m₂ = fibre H/K).
template <class T>
TwoStepFamily<T> submersion_two_step_family(std::shared_ptr<const LieAlgebra<T>> algebra,
                                            const std::vector<Vec<T>>& h_generators,
                                            const std::vector<Vec<T>>& k_generators, const T& lambda,
                                            std::size_t samples = 16, std::uint64_t seed = 1, std::size_t jobs = 1) {
  auto space = chain_complement(algebra, h_generators, k_generators, algebra->name() + "/chain");
  if (space.submodules().size() != 2) throw InvalidArgument("submersion_two_step_family: H = K or H = G");
  auto metric = metric_from_lambdas(space, Vec<T>{T(1), lambda});
  TwoStepFamily<T> out{space, metric, false, 0, 0.0, "", std::nullopt};
  auto [all, mx] = verify_two_step_samples(out.space, out.metric, samples, seed, jobs, &out.failing_sample);
  out.verdict = all;
  out.max_residual = mx;
  out.samples = samples;
  out.regime = lambda_regime(lambda);
  return out;
}

// ---------------------------------------------------------------- four-step recipe

struct TwoStepRecipe {
  std::vector<std::size_t> irreducible_dims;  // after decompose_isotropy
  std::string method;
  std::optional<ReductiveSpace<Rational>> grouped;  // m₁ = chosen blocks, m₂ = the rest
  bool naturally_reductive_base = false;
  bool bracket_condition = false;
  bool verdict = false;
  double max_residual = 0;
  std::string reason;
};

/// Decompose the isotropy module, group blocks into m₁ ⊕ m₂, test [m₁, m₂] ⊆ m₁,
/// then verify the family B|m₁ + λB|m₂ on samples.
TwoStepRecipe two_step_recipe(const ReductiveSpace<Rational>& space, const std::vector<std::size_t>& group_one,
                              const Rational& lambda, std::size_t samples = 8, std::uint64_t seed = 1,
                              std::size_t jobs = 1);

}  // namespace gospace
