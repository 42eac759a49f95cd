#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gospace/expm.hpp"
#include "gospace/linalg.hpp"
#include "gospace/matrix.hpp"

namespace gospace {

/// How the invariant form was fixed on one ideal of the algebra.
enum class FormConvention {
  negative_killing,  // B = −Killing (times the ideal's scale)
  trace_extension,   // u(n): −Killing of su(n) extended to the centre by the same trace form
  identity,          // abelian or non-compact ideal: identity in the constructed basis
};

std::string to_string(FormConvention c);

struct Ideal {
  std::string label;
  std::size_t offset = 0;
  std::size_t size = 0;
  FormConvention convention = FormConvention::negative_killing;
  Rational scale = 1;
};

/// Matrix Lie algebra with a fixed basis, structure constants
/// [e_i, e_j] = Σ_k c(i,j,k) e_k and an invariant symmetric form B.
/// Immutable after construction; safe to share between threads.
template <class T>
class LieAlgebra {
 public:
  using Terms = std::vector<std::pair<std::size_t, T>>;

  LieAlgebra(std::string name, std::vector<Matrix<T>> basis, Matrix<T> form, std::vector<Ideal> ideals)
      : name_(std::move(name)), basis_(std::move(basis)), form_(std::move(form)), ideals_(std::move(ideals)) {
    if (basis_.empty()) throw InvalidArgument("LieAlgebra: empty basis");
    ambient_ = basis_.front().rows();
    for (const auto& b : basis_)
      if (b.rows() != ambient_ || b.cols() != ambient_) throw InvalidArgument("LieAlgebra: basis shape mismatch");
    if (form_.rows() != dim() || form_.cols() != dim()) throw InvalidArgument("LieAlgebra: form shape mismatch");
    init_expansion();
    const std::size_t n = dim();
    structure_.assign(n * n * n, T(0));
    terms_.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto c = expand(commutator(basis_[i], basis_[j]));
        if (!c) throw MathError("LieAlgebra " + name_ + ": basis does not close under the bracket");
        for (std::size_t k = 0; k < n; ++k) {
          if (is_zero((*c)[k], 0.0)) continue;
          if constexpr (!ScalarTraits<T>::exact) {
            if (std::abs((*c)[k]) < 1e-14) continue;
          }
          structure_[index(i, j, k)] = (*c)[k];
          structure_[index(j, i, k)] = -(*c)[k];
          terms_[i * n + j].emplace_back(k, (*c)[k]);
          terms_[j * n + i].emplace_back(k, -(*c)[k]);
        }
      }
    }
    diagonal_form_ = true;
    for (std::size_t i = 0; i < n && diagonal_form_; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !is_zero(form_(i, j), 0.0)) {
          diagonal_form_ = false;
          break;
        }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_size() const { return ambient_; }
  const std::vector<Matrix<T>>& basis() const { return basis_; }
  const Matrix<T>& form() const { return form_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  bool form_is_diagonal() const { return diagonal_form_; }

  const T& structure(std::size_t i, std::size_t j, std::size_t k) const { return structure_[index(i, j, k)]; }
  const Terms& bracket_terms(std::size_t i, std::size_t j) const { return terms_[i * dim() + j]; }

  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    check(x);
    check(y);
    const std::size_t n = dim();
    Vec<T> out(n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || y[j] == T(0)) continue;
        const auto& t = terms_[i * n + j];
        if (t.empty()) continue;
        T xy = x[i] * y[j];
        for (const auto& [k, c] : t) out[k] += xy * c;
      }
    }
    return out;
  }

  Vec<T> basis_bracket(std::size_t i, std::size_t j) const {
    Vec<T> out(dim(), T(0));
    for (const auto& [k, c] : bracket_terms(i, j)) out[k] = c;
    return out;
  }

  T form_value(const Vec<T>& x, const Vec<T>& y) const {
    check(x);
    check(y);
    T s(0);
    if (diagonal_form_) {
      for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] != T(0) && y[i] != T(0)) s += x[i] * form_(i, i) * y[i];
      return s;
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == T(0)) continue;
      for (std::size_t j = 0; j < dim(); ++j) s += x[i] * form_(i, j) * y[j];
    }
    return s;
  }

  Matrix<T> to_matrix(const Vec<T>& x) const {
    check(x);
    Matrix<T> m(ambient_, ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (x[i] != T(0)) m += x[i] * basis_[i];
    return m;
  }

  /// Coordinates of an ambient matrix in the basis; nullopt when the matrix
  /// is not in the span (exactly in rational mode, to 1e-9 relative otherwise).
  std::optional<Vec<T>> expand(const Matrix<T>& m) const {
    if (m.rows() != ambient_ || m.cols() != ambient_) throw InvalidArgument("expand: ambient size mismatch");
    const std::size_t n = dim();
    Vec<T> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = m.data()[pivots_[r]];
    Vec<T> c = selector_inv_ * v;
    // membership: reconstruct and compare
    Matrix<T> back = to_matrix(c);
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < m.data().size(); ++i)
      if (!is_zero(back.data()[i] - m.data()[i], scale)) return std::nullopt;
    return c;
  }

  Vec<T> expand_or_throw(const Matrix<T>& m) const {
    auto c = expand(m);
    if (!c) throw MathError("matrix is not in the span of the basis of " + name_);
    return *c;
  }

  /// Matrix of ad(x) in the basis: column j holds [x, e_j].
  Matrix<T> ad(const Vec<T>& x) const {
    check(x);
    const std::size_t n = dim();
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : terms_[i * n + j]) m(k, j) += x[i] * c;
    }
    return m;
  }

  /// tr(ad x ad y) on basis pairs.
  Matrix<T> killing_form() const {
    const std::size_t n = dim();
    std::vector<Matrix<T>> ads;
    ads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ads.push_back(ad(unit<T>(n, i)));
    Matrix<T> k(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        k(i, j) = (ads[i] * ads[j]).trace();
        k(j, i) = k(i, j);
      }
    return k;
  }

  /// Same algebra, new basis given by coordinate vectors in the current basis.
  LieAlgebra change_basis(const std::vector<Vec<T>>& new_basis, std::string new_name) const {
    if (new_basis.size() != dim()) throw InvalidArgument("change_basis: need dim vectors");
    std::vector<Matrix<T>> mats;
    mats.reserve(dim());
    for (const auto& v : new_basis) mats.push_back(to_matrix(v));
    Matrix<T> f(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i; j < dim(); ++j) {
        f(i, j) = form_value(new_basis[i], new_basis[j]);
        f(j, i) = f(i, j);
      }
    return LieAlgebra(std::move(new_name), std::move(mats), std::move(f), {});
  }

  template <class U>
  LieAlgebra<U> convert() const {
    std::vector<Matrix<U>> b;
    b.reserve(dim());
    for (const auto& m : basis_) b.push_back(m.template cast<U>());
    return LieAlgebra<U>(name_, std::move(b), form_.template cast<U>(), ideals_);
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim() + j) * dim() + k; }
  void check(const Vec<T>& x) const {
    if (x.size() != dim()) throw InvalidArgument("algebra element has wrong dimension for " + name_);
  }

  void init_expansion() {
    const std::size_t n = dim();
    const std::size_t flat = ambient_ * ambient_;
    Matrix<T> rows(n, flat);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < flat; ++p) rows(i, p) = basis_[i].data()[p];
    auto e = rref(rows);
    if (e.rank() != n) throw MathError("LieAlgebra " + name_ + ": basis matrices are linearly dependent");
    pivots_ = e.pivot_cols;
    Matrix<T> sel(n, n);  // sel(r, i) = basis_i at pivot r
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < n; ++i) sel(r, i) = basis_[i].data()[pivots_[r]];
    auto inv = inverse(sel);
    if (!inv) throw MathError("LieAlgebra " + name_ + ": singular coordinate selector");
    selector_inv_ = std::move(*inv);
  }

  std::string name_;
  std::vector<Matrix<T>> basis_;
  Matrix<T> form_;
  std::vector<Ideal> ideals_;
  std::size_t ambient_ = 0;
  std::vector<T> structure_;
  std::vector<Terms> terms_;
  std::vector<std::size_t> pivots_;
  Matrix<T> selector_inv_;
  bool diagonal_form_ = false;
};

enum class Family { so, su, sp, u, abelian, sl2r, heisenberg, e11, e2 };

Family parse_family(const std::string& name);
std::string to_string(Family f);

/// Matrix realisation of a classical algebra with a B-orthogonal rational basis.
/// Complex algebras are realised as real matrices of doubled size. `form_scale`
/// multiplies the invariant form of the (single) ideal.
LieAlgebra<Rational> construct_classical(Family family, const std::vector<int>& params,
                                         const Rational& form_scale = 1);

/// Block-diagonal direct sum; the form is block diagonal.
LieAlgebra<Rational> direct_product(const std::vector<LieAlgebra<Rational>>& factors);

/// Smallest subalgebra containing the generators (coordinates in L), returned
/// as a basis (not orthogonalised).
template <class T>
std::vector<Vec<T>> lie_closure(const LieAlgebra<T>& l, const std::vector<Vec<T>>& generators) {
  std::vector<Vec<T>> span;
  auto independent = [&](const Vec<T>& v) {
    auto rows = span;
    rows.push_back(v);
    return rank(Matrix<T>::from_rows(rows)) == rows.size();
  };
  for (const auto& g : generators)
    if (!all_zero(g, 0.0) && independent(g)) span.push_back(g);
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto b = l.bracket(span[i], span[j]);
      if (!all_zero(b, max_abs(span[i]) * max_abs(span[j])) && independent(b)) span.push_back(b);
    }
  return span;
}

/// Ad(g) X = g X g⁻¹ re-expanded in the basis. Throws MathError when the
/// result leaves the span (g is not in the group).
template <class T>
Vec<T> adjoint_group_action(const LieAlgebra<T>& l, const Matrix<T>& g, const Vec<T>& x) {
  auto gi = inverse(g);
  if (!gi) throw InvalidArgument("adjoint_group_action: group element is singular");
  Matrix<T> conj = g * l.to_matrix(x) * *gi;
  auto c = l.expand(conj);
  if (!c) throw MathError("adjoint_group_action: g X g^-1 is not in the algebra");
  return *c;
}

/// exp(t X) as an ambient matrix (float; the exponential is transcendental).
template <class T>
Matrix<double> matrix_exponential(const LieAlgebra<T>& l, const Vec<T>& x, double t) {
  Matrix<double> m = l.to_matrix(x).template cast<double>();
  m *= t;
  return expm(m);
}

}  // namespace gospace
