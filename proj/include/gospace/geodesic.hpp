#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gospace/homogeneous.hpp"
#include "gospace/parallel.hpp"

namespace gospace {

// ---------------------------------------------------------------- geodesic lemma

template <class T>
struct GeodesicCertificate {
  bool verdict = false;
  Vec<T> a;                         // k-part of X
  Vec<T> x;                         // m-part of X
  std::optional<Vec<T>> completion;  // a(x) when produced by the completion solver
  std::optional<std::size_t> witness_index;  // m-basis direction where the lemma fails
  T witness_value = T(0);
  double residual = 0;              // max |⟨[X, e]_m, X_m⟩| over the m-basis
  bool exact = ScalarTraits<T>::exact;
};

/// ⟨[X, e_j]_m, X_m⟩ for every m-basis vector e_j (X in adapted coordinates).
template <class T>
Vec<T> geodesic_lemma_values(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X) {
  const std::size_t dk = space.dim_k(), dm = space.dim_m();
  if (X.size() != space.dim_g()) throw InvalidArgument("geodesic vector has wrong dimension");
  const Vec<T> xm = space.proj_m(X);
  const Vec<T> w = metric.gram * xm;
  Vec<T> out(dm, T(0));
  const auto& alg = space.adapted();
  for (std::size_t j = 0; j < dm; ++j) {
    T s(0);
    for (std::size_t i = 0; i < space.dim_g(); ++i) {
      if (X[i] == T(0)) continue;
      for (const auto& [idx, c] : alg.bracket_terms(i, dk + j))
        if (idx >= dk && w[idx - dk] != T(0)) s += X[i] * c * w[idx - dk];
    }
    out[j] = s;
  }
  return out;
}

template <class T>
double lemma_scale(const InvariantMetric<T>& metric, const Vec<T>& X) {
  return std::max(1.0, metric.gram.max_abs() * max_abs(X) * max_abs(X));
}

/// X is a geodesic vector iff ⟨[X, Y]_m, X_m⟩ = 0 for all Y ∈ m.
template <class T>
GeodesicCertificate<T> is_geodesic_vector(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric,
                                          const Vec<T>& X) {
  if (all_zero(X, 0.0)) throw InvalidArgument("is_geodesic_vector: X = 0");
  auto vals = geodesic_lemma_values(space, metric, X);
  GeodesicCertificate<T> cert;
  cert.a = space.proj_k(X);
  cert.x = space.proj_m(X);
  cert.residual = max_abs(vals);
  const double scale = lemma_scale(metric, X);
  cert.verdict = true;
  for (std::size_t j = 0; j < vals.size(); ++j)
    if (!is_zero(vals[j], scale)) {
      cert.verdict = false;
      cert.witness_index = j;
      cert.witness_value = vals[j];
      break;
    }
  return cert;
}

// ---------------------------------------------------------------- equivalent conditions

struct EquivalentConditions {
  bool lemma = false;   // ⟨[a+x, y]_m, x⟩ = 0 via the geodesic lemma
  bool bracket_in_k = false;    // [a + x, Λx] ∈ k
  bool skew_identity = false;   // ⟨[a, x], y⟩ = ⟨x, [x, y]_m⟩
  bool orthogonality = false;   // ⟨[a + x, y]_m, x⟩ = 0
  bool all() const { return lemma && bracket_in_k && skew_identity && orthogonality; }
  bool agree() const {
    return lemma == bracket_in_k && bracket_in_k == skew_identity && skew_identity == orthogonality;
  }
};

template <class T>
EquivalentConditions check_equivalent_conditions(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric,
                                                 const Vec<T>& a, const Vec<T>& x) {
  if (all_zero(x, 0.0)) throw InvalidArgument("check_equivalent_conditions: x = 0");
  EquivalentConditions out;
  const Vec<T> X = space.embed(a, x);
  const double scale = lemma_scale(metric, X);
  out.lemma = is_geodesic_vector(space, metric, X).verdict;
  const Vec<T> lx = space.embed_m(metric.apply(x));
  out.bracket_in_k = all_zero(space.proj_m(space.bracket(X, lx)), scale);
  const Vec<T> ax = space.proj_m(space.bracket(space.embed_k(a), space.embed_m(x)));
  out.skew_identity = true;
  out.orthogonality = true;
  for (std::size_t j = 0; j < space.dim_m(); ++j) {
    const Vec<T> e = unit<T>(space.dim_m(), j);
    const Vec<T> xy = space.proj_m(space.bracket(space.embed_m(x), space.embed_m(e)));
    if (!is_zero(T(metric.inner(ax, e) - metric.inner(x, xy)), scale)) out.skew_identity = false;
    const Vec<T> axy = space.proj_m(space.bracket(X, space.embed_m(e)));
    if (!is_zero(metric.inner(axy, x), scale)) out.orthogonality = false;
  }
  return out;
}

// ---------------------------------------------------------------- completion

template <class T>
struct Completion {
  std::optional<Vec<T>> a;   // minimum B-norm solution in k
  Vec<T> certificate;        // y ∈ m-coordinates with yᵀA = 0, yᵀb ≠ 0 when unsolvable
  Matrix<T> system;          // A: column i = [k_i, Λx]_m
  Vec<T> rhs;                // b = −[x, Λx]_m
  std::size_t rank = 0;
  std::size_t rank_augmented = 0;
  bool solvable() const { return a.has_value(); }
};

/// Solves [a, Λx]_m = −[x, Λx]_m for a ∈ k.
template <class T>
Completion<T> geodesic_completion(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& x) {
  if (x.size() != space.dim_m()) throw InvalidArgument("geodesic_completion: x has wrong dimension");
  if (all_zero(x, 0.0)) throw InvalidArgument("geodesic_completion: x = 0");
  const std::size_t dk = space.dim_k(), dm = space.dim_m();
  const Vec<T> lx = space.embed_m(metric.apply(x));
  Completion<T> out;
  out.system = Matrix<T>(dm, dk);
  const auto& alg = space.adapted();
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t l = 0; l < space.dim_g(); ++l) {
      if (lx[l] == T(0)) continue;
      for (const auto& [idx, c] : alg.bracket_terms(i, l))
        if (idx >= dk) out.system(idx - dk, i) += c * lx[l];
    }
  Vec<T> xl = space.proj_m(space.bracket(space.embed_m(x), lx));
  out.rhs.resize(dm);
  for (std::size_t j = 0; j < dm; ++j) out.rhs[j] = -xl[j];
  auto sol = solve(out.system, out.rhs);
  out.rank = sol.rank;
  out.rank_augmented = sol.rank_augmented;
  if (sol.consistent()) {
    out.a = min_norm_solution(sol, Matrix<T>::diagonal(space.k_gram()));
  } else {
    out.certificate = sol.certificate;
  }
  return out;
}

/// Independent check of an unsolvability certificate.
template <class T>
bool verify_completion_certificate(const Completion<T>& c) {
  return !c.certificate.empty() && verify_infeasibility(c.system, c.rhs, c.certificate);
}

// ---------------------------------------------------------------- natural reductivity

template <class T>
struct NaturalReductivity {
  bool holds = true;
  // failing triple (X, Z, Y) of m-basis indices for ⟨[X,Z]_m, Y⟩ + ⟨X, [Y,Z]_m⟩
  std::optional<std::array<std::size_t, 3>> triple;
  T residual = T(0);
  double max_residual = 0;
};

template <class T>
T naturally_reductive_residual(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& X,
                               const Vec<T>& Z, const Vec<T>& Y) {
  auto xz = space.proj_m(space.bracket(space.embed_m(X), space.embed_m(Z)));
  auto yz = space.proj_m(space.bracket(space.embed_m(Y), space.embed_m(Z)));
  return metric.inner(xz, Y) + metric.inner(X, yz);
}

/// Checks that ad(Z)_m is skew for the metric, ⟨[X,Z]_m, Y⟩ + ⟨X, [Y,Z]_m⟩ = 0,
/// over all m-basis triples, for the given decomposition only.
template <class T>
NaturalReductivity<T> naturally_reductive_check(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric) {
  const std::size_t dk = space.dim_k(), dm = space.dim_m();
  const auto& alg = space.adapted();
  const auto& q = metric.gram;
  NaturalReductivity<T> out;
  const double scale = std::max(1.0, q.max_abs());
  // ⟨[e_x, e_z]_m, e_y⟩
  auto pair = [&](std::size_t xi, std::size_t zi, std::size_t yi) {
    T s(0);
    for (const auto& [idx, c] : alg.bracket_terms(dk + xi, dk + zi))
      if (idx >= dk && q(idx - dk, yi) != T(0)) s += c * q(idx - dk, yi);
    return s;
  };
  for (std::size_t xi = 0; xi < dm; ++xi)
    for (std::size_t yi = 0; yi < dm; ++yi)
      for (std::size_t zi = 0; zi < dm; ++zi) {
        T r = pair(xi, zi, yi) + pair(yi, zi, xi);
        out.max_residual = std::max(out.max_residual, std::abs(to_double(r)));
        if (out.holds && !is_zero(r, scale)) {
          out.holds = false;
          out.triple = std::array<std::size_t, 3>{xi, zi, yi};
          out.residual = r;
          if constexpr (ScalarTraits<T>::exact) return out;
        }
      }
  return out;
}

// ---------------------------------------------------------------- g.o. check

enum class GoStatus { go_on_samples, not_go, naturally_reductive, undecided };
std::string to_string(GoStatus s);

struct GoOptions {
  std::size_t budget = 64;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

template <class T>
struct GoVerdict {
  GoStatus status = GoStatus::undecided;
  std::size_t samples_tested = 0;
  std::size_t structured_samples = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> failing_sample;
  std::optional<Vec<T>> counterexample;   // x ∈ m with unsolvable completion
  Vec<T> certificate;                     // left certificate for that system
  bool naturally_reductive = false;       // for the given decomposition
  std::optional<Vec<T>> lambdas;
};

/// Rational sample with small height, independent per index.
template <class T>
Vec<T> go_random_sample(std::size_t dim, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  Vec<T> v(dim);
  bool nonzero = false;
  while (!nonzero) {
    for (auto& c : v) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      nonzero = nonzero || sgn(q) != 0;
      c = scalar_cast<T>(q);
    }
  }
  return v;
}

/// Structured samples e_i + e_j for basis vectors in different submodules,
/// followed by `budget` random samples.
template <class T>
std::vector<Vec<T>> go_samples(const ReductiveSpace<T>& space, std::size_t budget, std::uint64_t seed,
                               std::size_t* structured = nullptr) {
  const std::size_t dm = space.dim_m();
  std::vector<Vec<T>> out;
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = i + 1; j < dm; ++j) {
      if (space.block_of(i) == space.block_of(j)) continue;
      Vec<T> v = unit<T>(dm, i);
      v[j] = T(1);
      out.push_back(std::move(v));
    }
  if (structured) *structured = out.size();
  for (std::size_t s = 0; s < budget; ++s) out.push_back(go_random_sample<T>(dm, seed, s));
  return out;
}

/// Sample-based g.o. test: every sample must admit a completion a(x). A
/// failure comes with an exact left certificate of unsolvability.
template <class T>
GoVerdict<T> go_check(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const GoOptions& opt = {}) {
  if (opt.budget < 1) throw InvalidArgument("go_check: sample budget must be at least 1");
  GoVerdict<T> v;
  v.budget = opt.budget;
  v.seed = opt.seed;
  v.lambdas = metric.lambdas;
  v.naturally_reductive = naturally_reductive_check(space, metric).holds;
  auto samples = go_samples(space, opt.budget, opt.seed, &v.structured_samples);
  const std::size_t first = parallel_first_failure(samples.size(), opt.jobs, [&](std::size_t i) {
    return !geodesic_completion(space, metric, samples[i]).solvable();
  });
  if (first < samples.size()) {
    auto c = geodesic_completion(space, metric, samples[first]);
    v.status = GoStatus::not_go;
    v.failing_sample = first;
    v.samples_tested = first + 1;
    v.counterexample = samples[first];
    v.certificate = c.certificate;
    return v;
  }
  v.status = GoStatus::go_on_samples;
  v.samples_tested = samples.size();
  return v;
}

// ---------------------------------------------------------------- Gordon criterion

template <class T>
struct GordonResult {
  std::optional<Vec<T>> X;   // k-coordinates, minimum B-norm
  Vec<T> certificate;
  bool solvable() const { return X.has_value(); }
};

/// Linear system A X = b in the k-coordinates of X for [X, v_F] = 0 and
/// [X + v_F, v_C] = 0 (first dim g rows, then the next dim g rows).
template <class T>
std::pair<Matrix<T>, Vec<T>> gordon_system(const ReductiveSpace<T>& chain, const Vec<T>& v_F, const Vec<T>& v_C) {
  if (chain.submodules().size() != 2) throw InvalidArgument("gordon_criterion: expected a two-block chain space");
  if (v_F.size() != chain.dim_m() || v_C.size() != chain.dim_m())
    throw InvalidArgument("gordon_criterion: vectors have wrong dimension");
  for (std::size_t i = 0; i < chain.dim_m(); ++i) {
    if (chain.block_of(i) == 0 && !is_zero(v_F[i], 0.0)) throw InvalidArgument("gordon_criterion: v_F must lie in h ∩ k^⊥");
    if (chain.block_of(i) == 1 && !is_zero(v_C[i], 0.0)) throw InvalidArgument("gordon_criterion: v_C must lie in h^⊥");
  }
  const std::size_t dk = chain.dim_k(), dg = chain.dim_g();
  const Vec<T> f = chain.embed_m(v_F), c = chain.embed_m(v_C);
  Matrix<T> a(2 * dg, dk);
  for (std::size_t i = 0; i < dk; ++i) {
    const Vec<T> kf = chain.bracket(chain.k_basis_vector(i), f);
    const Vec<T> kc = chain.bracket(chain.k_basis_vector(i), c);
    for (std::size_t r = 0; r < dg; ++r) {
      a(r, i) = kf[r];
      a(dg + r, i) = kc[r];
    }
  }
  Vec<T> b(2 * dg, T(0));
  const Vec<T> fc = chain.bracket(f, c);
  for (std::size_t r = 0; r < dg; ++r) b[dg + r] = -fc[r];
  return {std::move(a), std::move(b)};
}

/// For a chain space (block 0 tangent to G/H, block 1 tangent to the fibre
/// H/K) find X ∈ k with [X, v_F] = 0 and [X + v_F, v_C] = 0.
template <class T>
GordonResult<T> gordon_criterion(const ReductiveSpace<T>& chain, const Vec<T>& v_F, const Vec<T>& v_C) {
  auto [a, b] = gordon_system(chain, v_F, v_C);
  auto sol = solve(a, b);
  GordonResult<T> out;
  if (sol.consistent()) out.X = min_norm_solution(sol, Matrix<T>::diagonal(chain.k_gram()));
  else out.certificate = sol.certificate;
  return out;
}

// ---------------------------------------------------------------- pseudo-Riemannian variant

template <class T>
struct PseudoResult {
  std::optional<T> k;        // constant with ⟨[V,e]_m, V_m⟩ = k⟨V_m, e⟩
  bool null = false;         // ⟨V_m, V_m⟩ = 0
  bool null_constraint_ok = true;  // k ≠ 0 forces a null curve
};

template <class T>
PseudoResult<T> pseudo_geodesic_test(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric, const Vec<T>& V) {
  if (all_zero(V, 0.0)) throw InvalidArgument("pseudo_geodesic_test: V = 0");
  const Vec<T> r = geodesic_lemma_values(space, metric, V);
  const Vec<T> vm = space.proj_m(V);
  const Vec<T> s = metric.gram * vm;  // ⟨V_m, e_j⟩
  const double scale = lemma_scale(metric, V);
  PseudoResult<T> out;
  out.null = is_zero(metric.inner(vm, vm), scale);
  std::optional<T> k;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (!is_zero(s[j], scale)) {
      k = r[j] / s[j];
      break;
    }
  if (!k) {
    // V_m = 0: every equation reads 0 = 0
    if (all_zero(r, scale)) out.k = T(0);
    return out;
  }
  for (std::size_t j = 0; j < s.size(); ++j)
    if (!is_zero(T(r[j] - *k * s[j]), scale)) return out;
  if (is_zero(*k, scale)) *k = T(0);
  out.k = k;
  out.null_constraint_ok = is_zero(*k, scale) || out.null;
  return out;
}

// ---------------------------------------------------------------- search

enum class SearchStrategy { axes, pair_grid, random, optimize };
std::string to_string(SearchStrategy s);
SearchStrategy parse_strategy(const std::string& s);

struct SearchOptions {
  std::size_t budget = 32;  // random samples or optimizer seeds
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

template <class T>
struct SearchResult {
  std::vector<GeodesicCertificate<T>> hits;
  std::vector<std::string> notes;  // per-seed optimizer failures
};

struct OptimizerHit {
  std::size_t seed_index = 0;
  Vec<double> x;
  Vec<double> a;
  double residual = 0;
  bool converged = false;
};

/// Levenberg–Marquardt on ⟨[a + x, e_j]_m, x⟩ = 0 with |x| = 1 from Halton
/// seeds keyed by `seed`.
std::vector<OptimizerHit> optimize_geodesic_vectors(const ReductiveSpace<double>& space,
                                                    const InvariantMetric<double>& metric, std::size_t seeds,
                                                    std::uint64_t seed, std::size_t jobs);

/// Halton point in [−1, 1]^dim.
Vec<double> halton_point(std::size_t index, std::size_t dim);

template <class T>
std::optional<GeodesicCertificate<T>> certify_candidate(const ReductiveSpace<T>& space,
                                                        const InvariantMetric<T>& metric, const Vec<T>& x) {
  if (all_zero(x, 0.0)) return std::nullopt;
  auto c = geodesic_completion(space, metric, x);
  if (!c.solvable()) return std::nullopt;
  auto cert = is_geodesic_vector(space, metric, space.embed(*c.a, x));
  if (!cert.verdict) return std::nullopt;
  cert.completion = c.a;
  return cert;
}

template <class T>
SearchResult<T> find_geodesic_vectors(const ReductiveSpace<T>& space, const InvariantMetric<T>& metric,
                                      SearchStrategy strategy, const SearchOptions& opt = {}) {
  const std::size_t dm = space.dim_m();
  SearchResult<T> out;
  std::vector<Vec<T>> candidates;
  switch (strategy) {
    case SearchStrategy::axes:
      for (std::size_t i = 0; i < dm; ++i) candidates.push_back(unit<T>(dm, i));
      break;
    case SearchStrategy::pair_grid: {
      const Rational cs[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2)};
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = i + 1; j < dm; ++j)
          for (const auto& c : cs) {
            Vec<T> v = unit<T>(dm, i);
            v[j] = scalar_cast<T>(c);
            candidates.push_back(std::move(v));
          }
      break;
    }
    case SearchStrategy::random:
      for (std::size_t s = 0; s < opt.budget; ++s) candidates.push_back(go_random_sample<T>(dm, opt.seed, s));
      break;
    case SearchStrategy::optimize: {
      auto sd = space.template convert<double>();
      auto md = metric.template convert<double>();
      auto hits = optimize_geodesic_vectors(sd, md, opt.budget, opt.seed, opt.jobs);
      for (const auto& h : hits) {
        if (!h.converged) {
          out.notes.push_back("seed " + std::to_string(h.seed_index) + ": no convergence (residual " +
                              std::to_string(h.residual) + ")");
          continue;
        }
        // polish: small-height rational direction, certified exactly
        double top = 0;
        for (double v : h.x) top = std::max(top, std::abs(v));
        Vec<T> xr(dm);
        for (std::size_t i = 0; i < dm; ++i) {
          Rational q = std::abs(h.x[i]) < 1e-9 * top ? Rational(0) : rationalize(h.x[i] / top, 64);
          xr[i] = scalar_cast<T>(q);
        }
        if (auto cert = certify_candidate(space, metric, xr)) {
          out.hits.push_back(std::move(*cert));
          continue;
        }
        // irrational direction: keep the float hit, flagged inexact
        GeodesicCertificate<T> cert;
        cert.verdict = true;
        cert.exact = false;
        cert.x = vec_cast<T>(h.x);
        cert.a = vec_cast<T>(h.a);
        cert.completion = cert.a;
        cert.residual = h.residual;
        out.hits.push_back(std::move(cert));
      }
      return out;
    }
  }
  std::vector<std::optional<GeodesicCertificate<T>>> found(candidates.size());
  parallel_for(candidates.size(), opt.jobs,
               [&](std::size_t i) { found[i] = certify_candidate(space, metric, candidates[i]); });
  for (auto& f : found)
    if (f) out.hits.push_back(std::move(*f));
  return out;
}

}  // namespace gospace
