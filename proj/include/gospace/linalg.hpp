#pragma once

#include <optional>
#include <vector>

#include "gospace/matrix.hpp"

namespace gospace {

// Gauss-Jordan elimination. Exact for Rational; for double uses partial
// pivoting and treats entries below tolerance * max|A| as zero.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

template <class T>
Echelon<T> rref(Matrix<T> a, std::size_t pivot_limit = static_cast<std::size_t>(-1)) {
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  const std::size_t limit = std::min(nc, pivot_limit);
  const double scale = std::max(1.0, a.max_abs());
  Echelon<T> e;
  std::size_t row = 0;
  for (std::size_t c = 0; c < limit && row < nr; ++c) {
    std::size_t piv = nr;
    if constexpr (ScalarTraits<T>::exact) {
      for (std::size_t i = row; i < nr; ++i)
        if (!is_zero(a(i, c))) {
          piv = i;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t i = row; i < nr; ++i) {
        double v = std::abs(a(i, c));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < nr && is_zero(a(piv, c), scale)) piv = nr;
    }
    if (piv == nr) continue;
    if (piv != row)
      for (std::size_t j = 0; j < nc; ++j) std::swap(a(piv, j), a(row, j));
    T inv = T(1) / a(row, c);
    for (std::size_t j = c; j < nc; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == row || a(i, c) == T(0)) continue;
      T f = a(i, c);
      for (std::size_t j = c; j < nc; ++j) a(i, j) -= f * a(row, j);
    }
    if constexpr (!ScalarTraits<T>::exact) {
      for (std::size_t i = 0; i < nr; ++i)
        if (i != row) a(i, c) = 0.0;
    }
    e.pivot_cols.push_back(c);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).rank();
}

/// Basis of {x : A x = 0}.
template <class T>
std::vector<Vec<T>> nullspace(const Matrix<T>& a) {
  auto e = rref(a);
  const std::size_t nc = a.cols();
  std::vector<bool> is_pivot(nc, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(nc, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Result of solving A x = b. When inconsistent, `certificate` holds y with
/// yᵀA = 0 and yᵀb ≠ 0, which proves unsolvability independently of the solver.
template <class T>
struct LinearSolution {
  std::optional<Vec<T>> solution;   // particular solution (free variables zero)
  std::vector<Vec<T>> null_basis;   // basis of ker A
  Vec<T> certificate;               // left certificate when inconsistent
  std::size_t rank = 0;
  std::size_t rank_augmented = 0;
  bool consistent() const { return solution.has_value(); }
};

template <class T>
LinearSolution<T> solve(const Matrix<T>& a, const Vec<T>& b) {
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  if (b.size() != nr) throw InvalidArgument("solve: rhs length mismatch");
  // [A | b | I] with pivots restricted to the A and b columns
  Matrix<T> m(nr, nc + 1 + nr);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = a(i, j);
    m(i, nc) = b[i];
    m(i, nc + 1 + i) = T(1);
  }
  // pivots only in the A block: the b column never becomes a pivot here, so
  // rows with zero A-part expose inconsistency directly
  auto e = rref(m, nc);
  LinearSolution<T> out;
  out.rank = e.rank();
  const double scale = std::max({1.0, a.max_abs(), max_abs(b)});
  std::size_t bad_row = nr;
  for (std::size_t r = e.rank(); r < nr; ++r) {
    if (!is_zero(e.reduced(r, nc), scale)) {
      bad_row = r;
      break;
    }
  }
  out.rank_augmented = out.rank + (bad_row < nr ? 1 : 0);
  std::vector<bool> is_pivot(nc, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(nc, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    out.null_basis.push_back(std::move(v));
  }
  if (bad_row < nr) {
    out.certificate.resize(nr);
    for (std::size_t i = 0; i < nr; ++i) out.certificate[i] = e.reduced(bad_row, nc + 1 + i);
    return out;
  }
  Vec<T> x(nc, T(0));
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivot_cols[r]] = e.reduced(r, nc);
  out.solution = std::move(x);
  return out;
}

/// Checks a left certificate: yᵀA = 0 and yᵀb ≠ 0.
template <class T>
bool verify_infeasibility(const Matrix<T>& a, const Vec<T>& b, const Vec<T>& y) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  const double scale = std::max({1.0, a.max_abs(), max_abs(b)}) * std::max(1.0, max_abs(y));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    T s(0);
    for (std::size_t i = 0; i < a.rows(); ++i) s += y[i] * a(i, j);
    if (!is_zero(s, scale)) return false;
  }
  return !is_zero(dot(y, b), scale);
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (!a.square()) throw InvalidArgument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = T(1);
  }
  auto e = rref(m, n);
  if (e.rank() < n) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

/// Minimum-norm solution of A x = b in the norm xᵀ G x (G symmetric positive
/// definite). Returns nullopt when the system is inconsistent.
template <class T>
std::optional<Vec<T>> min_norm_solution(const LinearSolution<T>& sol, const Matrix<T>& gram) {
  if (!sol.solution) return std::nullopt;
  Vec<T> x = *sol.solution;
  const auto& n = sol.null_basis;
  if (n.empty()) return x;
  // x - N (Nᵀ G N)^{-1} Nᵀ G x
  const std::size_t k = n.size();
  Matrix<T> ngn(k, k);
  Vec<T> ngx(k, T(0));
  std::vector<Vec<T>> gn;
  gn.reserve(k);
  for (const auto& v : n) gn.push_back(gram * v);
  Vec<T> gx = gram * x;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) ngn(i, j) = dot(n[i], gn[j]);
    ngx[i] = dot(n[i], gx);
  }
  auto s = solve(ngn, ngx);
  if (!s.solution) throw MathError("min_norm_solution: singular Gram matrix on kernel");
  for (std::size_t i = 0; i < k; ++i) axpy(T(-(*s.solution)[i]), n[i], x);
  return x;
}

/// Gram–Schmidt without normalisation w.r.t. a symmetric form (square-root free,
/// exact over the rationals). Drops vectors that are dependent on earlier ones.
/// Throws when a vector is isotropic but nonzero modulo the earlier span.
template <class T, class Form>
std::vector<Vec<T>> orthogonalize(const std::vector<Vec<T>>& vectors, Form&& form) {
  std::vector<Vec<T>> out;
  std::vector<T> norms;
  for (const auto& v0 : vectors) {
    Vec<T> v = v0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      T c = form(v, out[i]) / norms[i];
      axpy(T(-c), out[i], v);
    }
    if (all_zero(v, std::max(1.0, max_abs(v0)))) continue;
    T n = form(v, v);
    if (is_zero(n, std::max(1.0, max_abs(v) * max_abs(v))))
      throw MathError("orthogonalize: isotropic vector, form degenerate on span");
    out.push_back(std::move(v));
    norms.push_back(std::move(n));
  }
  return out;
}

}  // namespace gospace
