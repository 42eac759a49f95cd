#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gospace/lie_algebra.hpp"

namespace gospace {

enum class SignatureMode { riemannian, pseudo };

std::string to_string(SignatureMode m);
SignatureMode parse_signature(const std::string& s);

struct ReductivityReport {
  bool k_subalgebra = false;
  bool reductive = false;            // [k, m] ⊆ m
  bool orthogonal = false;           // B(k, m) = 0
  bool submodules_invariant = false;
  bool ok() const { return k_subalgebra && reductive && orthogonal && submodules_invariant; }
};

/// g = k ⊕ m with B-orthogonal bases of k and m and a partition of the m-basis
/// into ad(k)-invariant submodules. Internally the algebra is re-expressed in
/// the adapted basis (k-basis first, then m-basis) so that projections onto k
/// and m are coordinate slices.
template <class T>
class ReductiveSpace {
 public:
  ReductiveSpace(std::shared_ptr<const LieAlgebra<T>> algebra, std::vector<Vec<T>> k_basis,
                 std::vector<Vec<T>> m_basis, std::vector<std::vector<std::size_t>> submodules, std::string id)
      : algebra_(std::move(algebra)),
        k_basis_(std::move(k_basis)),
        m_basis_(std::move(m_basis)),
        submodules_(std::move(submodules)),
        id_(std::move(id)) {
    if (k_basis_.size() + m_basis_.size() != algebra_->dim())
      throw InvalidArgument("ReductiveSpace: dim k + dim m must equal dim g");
    if (m_basis_.empty()) throw InvalidArgument("ReductiveSpace: m is trivial (K = G)");
    std::vector<Vec<T>> all = k_basis_;
    all.insert(all.end(), m_basis_.begin(), m_basis_.end());
    adapted_ = std::make_shared<const LieAlgebra<T>>(algebra_->change_basis(all, algebra_->name() + "[adapted]"));
    if (submodules_.empty()) {
      std::vector<std::size_t> all_m(m_basis_.size());
      for (std::size_t i = 0; i < all_m.size(); ++i) all_m[i] = i;
      submodules_.push_back(std::move(all_m));
    }
    check_partition();
    block_of_.assign(dim_m(), 0);
    for (std::size_t b = 0; b < submodules_.size(); ++b)
      for (auto i : submodules_[b]) block_of_[i] = b;
    for (std::size_t i = 0; i < dim_m(); ++i) m_gram_.push_back(adapted_->form()(dim_k() + i, dim_k() + i));
    for (std::size_t i = 0; i < dim_k(); ++i) k_gram_.push_back(adapted_->form()(i, i));
  }

  const std::string& id() const { return id_; }
  const LieAlgebra<T>& algebra() const { return *algebra_; }
  const LieAlgebra<T>& adapted() const { return *adapted_; }
  std::shared_ptr<const LieAlgebra<T>> algebra_ptr() const { return algebra_; }
  std::size_t dim_g() const { return algebra_->dim(); }
  std::size_t dim_k() const { return k_basis_.size(); }
  std::size_t dim_m() const { return m_basis_.size(); }
  const std::vector<Vec<T>>& k_basis() const { return k_basis_; }
  const std::vector<Vec<T>>& m_basis() const { return m_basis_; }
  const std::vector<std::vector<std::size_t>>& submodules() const { return submodules_; }
  std::size_t block_of(std::size_t m_index) const { return block_of_.at(m_index); }
  std::vector<std::size_t> block_dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : submodules_) d.push_back(s.size());
    return d;
  }
  /// B(e_i, e_i) for the m-basis (the basis is B-orthogonal).
  const Vec<T>& m_gram() const { return m_gram_; }
  const Vec<T>& k_gram() const { return k_gram_; }

  // adapted coordinates: [k-part | m-part]
  Vec<T> embed(const Vec<T>& a, const Vec<T>& x) const {
    if (a.size() != dim_k() || x.size() != dim_m()) throw InvalidArgument("embed: wrong component sizes");
    Vec<T> v(a);
    v.insert(v.end(), x.begin(), x.end());
    return v;
  }
  Vec<T> embed_m(const Vec<T>& x) const { return embed(zeros<T>(dim_k()), x); }
  Vec<T> embed_k(const Vec<T>& a) const { return embed(a, zeros<T>(dim_m())); }
  Vec<T> proj_m(const Vec<T>& v) const {
    check_full(v);
    return Vec<T>(v.begin() + static_cast<std::ptrdiff_t>(dim_k()), v.end());
  }
  Vec<T> proj_k(const Vec<T>& v) const {
    check_full(v);
    return Vec<T>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim_k()));
  }
  Vec<T> bracket(const Vec<T>& u, const Vec<T>& v) const { return adapted_->bracket(u, v); }
  Vec<T> m_basis_vector(std::size_t i) const { return embed_m(unit<T>(dim_m(), i)); }
  Vec<T> k_basis_vector(std::size_t i) const { return embed_k(unit<T>(dim_k(), i)); }

  /// Adapted coordinates → coordinates in the original algebra basis.
  Vec<T> to_original(const Vec<T>& v) const {
    check_full(v);
    Vec<T> out = zeros<T>(dim_g());
    for (std::size_t i = 0; i < dim_k(); ++i)
      if (v[i] != T(0)) axpy(v[i], k_basis_[i], out);
    for (std::size_t i = 0; i < dim_m(); ++i)
      if (v[dim_k() + i] != T(0)) axpy(v[dim_k() + i], m_basis_[i], out);
    return out;
  }

  /// Original coordinates → adapted coordinates (exact, via B-orthogonality).
  Vec<T> from_original(const Vec<T>& v) const {
    Vec<T> out(dim_g());
    for (std::size_t i = 0; i < dim_k(); ++i) out[i] = algebra_->form_value(v, k_basis_[i]) / k_gram_[i];
    for (std::size_t i = 0; i < dim_m(); ++i) out[dim_k() + i] = algebra_->form_value(v, m_basis_[i]) / m_gram_[i];
    return out;
  }

  /// Matrix of ad(a)|_m in the m-basis for a k-basis element.
  Matrix<T> isotropy_action(std::size_t k_index) const {
    Matrix<T> r(dim_m(), dim_m());
    for (std::size_t j = 0; j < dim_m(); ++j)
      for (const auto& [idx, c] : adapted_->bracket_terms(k_index, dim_k() + j))
        if (idx >= dim_k()) r(idx - dim_k(), j) = c;
    return r;
  }

  ReductiveSpace with_submodules(std::vector<std::vector<std::size_t>> partition, std::string new_id = "") const {
    return ReductiveSpace(algebra_, k_basis_, m_basis_, std::move(partition), new_id.empty() ? id_ : new_id);
  }

  ReductivityReport verify() const {
    ReductivityReport r;
    const auto& ad = *adapted_;
    const std::size_t dk = dim_k();
    r.k_subalgebra = true;
    r.reductive = true;
    r.submodules_invariant = true;
    for (std::size_t i = 0; i < dk; ++i) {
      for (std::size_t j = 0; j < dk; ++j)
        for (const auto& [idx, c] : ad.bracket_terms(i, j))
          if (idx >= dk && !is_zero(c)) r.k_subalgebra = false;
      for (std::size_t j = 0; j < dim_m(); ++j)
        for (const auto& [idx, c] : ad.bracket_terms(i, dk + j)) {
          if (is_zero(c)) continue;
          if (idx < dk) r.reductive = false;
          else if (block_of_[idx - dk] != block_of_[j]) r.submodules_invariant = false;
        }
    }
    r.orthogonal = true;
    for (std::size_t i = 0; i < dk; ++i)
      for (std::size_t j = 0; j < dim_m(); ++j)
        if (!is_zero(ad.form()(i, dk + j))) r.orthogonal = false;
    return r;
  }

  template <class U>
  ReductiveSpace<U> convert() const {
    auto alg = std::make_shared<const LieAlgebra<U>>(algebra_->template convert<U>());
    std::vector<Vec<U>> kb, mb;
    for (const auto& v : k_basis_) kb.push_back(vec_cast<U>(v));
    for (const auto& v : m_basis_) mb.push_back(vec_cast<U>(v));
    return ReductiveSpace<U>(alg, std::move(kb), std::move(mb), submodules_, id_);
  }

 private:
  void check_full(const Vec<T>& v) const {
    if (v.size() != dim_g()) throw InvalidArgument("element has wrong dimension for " + id_);
  }
  void check_partition() const {
    std::vector<int> seen(dim_m(), 0);
    for (const auto& s : submodules_) {
      if (s.empty()) throw InvalidArgument("empty submodule in partition");
      for (auto i : s) {
        if (i >= dim_m()) throw InvalidArgument("submodule index out of range");
        ++seen[i];
      }
    }
    for (int c : seen)
      if (c != 1) throw InvalidArgument("submodules must partition the m-basis");
  }

  std::shared_ptr<const LieAlgebra<T>> algebra_;
  std::shared_ptr<const LieAlgebra<T>> adapted_;
  std::vector<Vec<T>> k_basis_;
  std::vector<Vec<T>> m_basis_;
  std::vector<std::vector<std::size_t>> submodules_;
  std::vector<std::size_t> block_of_;
  Vec<T> m_gram_;
  Vec<T> k_gram_;
  std::string id_;
};

/// Elements x of the algebra with [x, y] = 0 for every y in `elements`.
template <class T>
std::vector<Vec<T>> centralizer(const LieAlgebra<T>& l, const std::vector<Vec<T>>& elements) {
  if (elements.empty()) {
    std::vector<Vec<T>> all;
    for (std::size_t i = 0; i < l.dim(); ++i) all.push_back(unit<T>(l.dim(), i));
    return all;
  }
  Matrix<T> sys(elements.size() * l.dim(), l.dim());
  for (std::size_t e = 0; e < elements.size(); ++e) sys.set_block(e * l.dim(), 0, l.ad(elements[e]));
  return nullspace(sys);
}

/// Algebra coordinates of matrices in the defining representation.
template <class T>
std::vector<Vec<T>> expand_all(const LieAlgebra<T>& l, const std::vector<Matrix<T>>& mats) {
  std::vector<Vec<T>> out;
  for (const auto& m : mats) out.push_back(l.expand_or_throw(m));
  return out;
}

/// m = B-orthogonal complement of span(k_generators). Throws InvalidArgument
/// when k is not a subalgebra and MathError when B is degenerate on k or m.
template <class T>
ReductiveSpace<T> reductive_complement(std::shared_ptr<const LieAlgebra<T>> algebra,
                                       const std::vector<Vec<T>>& k_generators, std::string id) {
  const auto& l = *algebra;
  auto form = [&l](const Vec<T>& a, const Vec<T>& b) { return l.form_value(a, b); };
  for (const auto& g : k_generators)
    if (g.size() != l.dim()) throw InvalidArgument("reductive_complement: generator dimension mismatch");
  std::vector<Vec<T>> k_basis = orthogonalize(k_generators, form);
  // closure: [k_i, k_j] must lie in span(k)
  for (std::size_t i = 0; i < k_basis.size(); ++i)
    for (std::size_t j = i + 1; j < k_basis.size(); ++j) {
      Vec<T> b = l.bracket(k_basis[i], k_basis[j]);
      Vec<T> rest = b;
      for (const auto& e : k_basis) axpy(T(-(form(b, e) / form(e, e))), e, rest);
      if (!all_zero(rest, std::max(1.0, max_abs(b)))) throw InvalidArgument("reductive_complement: k is not a subalgebra");
    }
  std::vector<Vec<T>> m_basis;
  if (k_basis.empty()) {
    for (std::size_t i = 0; i < l.dim(); ++i) m_basis.push_back(unit<T>(l.dim(), i));
  } else {
    Matrix<T> constraints(k_basis.size(), l.dim());
    for (std::size_t i = 0; i < k_basis.size(); ++i) {
      Vec<T> row = l.form() * k_basis[i];
      for (std::size_t j = 0; j < l.dim(); ++j) constraints(i, j) = row[j];
    }
    m_basis = nullspace(constraints);
  }
  m_basis = orthogonalize(m_basis, form);
  ReductiveSpace<T> space(std::move(algebra), std::move(k_basis), std::move(m_basis), {}, std::move(id));
  auto report = space.verify();
  if (!report.k_subalgebra) throw InvalidArgument("reductive_complement: k is not a subalgebra");
  if (!report.reductive || !report.orthogonal) throw MathError("reductive_complement: decomposition is not reductive");
  return space;
}

/// Chain k ⊆ h ⊆ g: m = m₁ ⊕ m₂ with m₁ = h^⊥ (tangent of G/H) and
/// m₂ = k^⊥ ∩ h (tangent of H/K), in that order.
template <class T>
ReductiveSpace<T> chain_complement(std::shared_ptr<const LieAlgebra<T>> algebra, const std::vector<Vec<T>>& h_generators,
                                   const std::vector<Vec<T>>& k_generators, std::string id) {
  auto h_space = reductive_complement(algebra, h_generators, id + "[G/H]");
  auto k_space = reductive_complement(algebra, k_generators, id);
  const auto& l = *algebra;
  // every k-generator must lie in h
  for (const auto& g : k_space.k_basis())
    for (const auto& m : h_space.m_basis())
      if (!is_zero(l.form_value(g, m))) throw InvalidArgument("chain_complement: k is not contained in h");
  auto form = [&l](const Vec<T>& a, const Vec<T>& b) { return l.form_value(a, b); };
  // m₂: h-basis vectors projected off k
  std::vector<Vec<T>> m2_raw;
  for (const auto& hv : h_space.k_basis()) {
    Vec<T> v = hv;
    for (const auto& kv : k_space.k_basis()) axpy(T(-(form(hv, kv) / form(kv, kv))), kv, v);
    m2_raw.push_back(std::move(v));
  }
  auto m2 = orthogonalize(m2_raw, form);
  std::vector<Vec<T>> m_basis = h_space.m_basis();
  const std::size_t d1 = m_basis.size();
  m_basis.insert(m_basis.end(), m2.begin(), m2.end());
  std::vector<std::size_t> b1(d1), b2(m2.size());
  for (std::size_t i = 0; i < d1; ++i) b1[i] = i;
  for (std::size_t i = 0; i < m2.size(); ++i) b2[i] = d1 + i;
  std::vector<std::vector<std::size_t>> parts{b1};
  if (!b2.empty()) parts.push_back(b2);
  ReductiveSpace<T> space(std::move(algebra), k_space.k_basis(), std::move(m_basis), std::move(parts), std::move(id));
  if (!space.verify().ok()) throw MathError("chain_complement: chain blocks are not ad(k)-invariant");
  return space;
}

/// Refinement of m into ad(k)-invariant blocks.
struct IsotropyDecomposition {
  ReductiveSpace<Rational> space;
  std::vector<std::size_t> block_dims;
  std::vector<std::pair<std::size_t, std::size_t>> equivalent_pairs;
  std::string method;  // "irreducible" or "isotypic"
};

/// Simultaneous invariant-subspace decomposition of the ad(k)-action on m.
/// Uses the Casimir operator plus a random B-symmetric element of the
/// commutant, clusters its spectrum (relative gap 1e-8) and recovers each
/// block exactly by rationalising and verifying its B-orthogonal projector.
/// When modules repeat, falls back to isotypic components (centre of the
/// commutant). Throws MathError when neither separates exactly.
IsotropyDecomposition decompose_isotropy(const ReductiveSpace<Rational>& space, std::uint64_t seed = 1);

/// Invariant metric ⟨x, y⟩ = B(Λx, y) on m.
template <class T>
struct InvariantMetric {
  Matrix<T> lambda_matrix;   // operator Λ in the m-basis
  Matrix<T> gram;            // ⟨e_i, e_j⟩ = (G_m Λ)_ij
  SignatureMode mode = SignatureMode::riemannian;
  std::optional<Vec<T>> lambdas;

  T inner(const Vec<T>& x, const Vec<T>& y) const {
    T s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == T(0)) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (gram(i, j) != T(0)) s += x[i] * gram(i, j) * y[j];
    }
    return s;
  }
  Vec<T> apply(const Vec<T>& x) const { return lambda_matrix * x; }
  bool is_identity() const { return lambda_matrix == Matrix<T>::identity(lambda_matrix.rows()); }

  template <class U>
  InvariantMetric<U> convert() const {
    InvariantMetric<U> m;
    m.lambda_matrix = lambda_matrix.template cast<U>();
    m.gram = gram.template cast<U>();
    m.mode = mode;
    if (lambdas) m.lambdas = vec_cast<U>(*lambdas);
    return m;
  }
};

/// Checks ad(a)∘Λ = Λ∘ad(a) on m for every k-basis element.
template <class T>
bool is_equivariant(const ReductiveSpace<T>& space, const Matrix<T>& lambda) {
  for (std::size_t a = 0; a < space.dim_k(); ++a) {
    auto r = space.isotropy_action(a);
    if (!(r * lambda - lambda * r).is_zero(std::max(1.0, lambda.max_abs()))) return false;
  }
  return true;
}

/// Signs of the pivots of symmetric Gaussian elimination (no pivoting);
/// nullopt if a zero pivot is met.
template <class T>
std::optional<std::vector<int>> pivot_signs(Matrix<T> q) {
  const std::size_t n = q.rows();
  std::vector<int> signs;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(q(k, k), std::max(1.0, q.max_abs()))) return std::nullopt;
    signs.push_back(to_double(q(k, k)) > 0 ? 1 : -1);
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = q(i, k) / q(k, k);
      for (std::size_t j = k; j < n; ++j) q(i, j) -= f * q(k, j);
    }
  }
  return signs;
}

/// Full-matrix metric (also covers equivalent submodules).
template <class T>
InvariantMetric<T> metric_from_matrix(const ReductiveSpace<T>& space, const Matrix<T>& lambda, SignatureMode mode) {
  const std::size_t n = space.dim_m();
  if (lambda.rows() != n || lambda.cols() != n) throw InvalidArgument("metric: lambda_matrix has wrong shape");
  InvariantMetric<T> m;
  m.lambda_matrix = lambda;
  m.mode = mode;
  m.gram = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.gram(i, j) = space.m_gram()[i] * lambda(i, j);
  if (!(m.gram - m.gram.transpose()).is_zero(std::max(1.0, m.gram.max_abs())))
    throw InvalidArgument("metric: Λ is not B-symmetric");
  auto signs = pivot_signs(m.gram);
  if (mode == SignatureMode::riemannian) {
    // B itself must be positive on m for a Riemannian reading
    if (!signs || std::any_of(signs->begin(), signs->end(), [](int s) { return s < 0; }))
      throw InvalidArgument("metric: not positive definite in riemannian mode");
  } else if (!signs && rank(m.gram) < n) {
    throw InvalidArgument("metric: degenerate in pseudo mode");
  }
  if (!is_equivariant(space, lambda)) throw InvalidArgument("metric: Λ is not Ad(K)-equivariant");
  return m;
}

/// Λ = λ_i·Id on the i-th submodule.
template <class T>
InvariantMetric<T> metric_from_lambdas(const ReductiveSpace<T>& space, const Vec<T>& lambdas,
                                       SignatureMode mode = SignatureMode::riemannian) {
  if (lambdas.size() != space.submodules().size())
    throw InvalidArgument("metric: expected " + std::to_string(space.submodules().size()) + " lambdas, got " +
                          std::to_string(lambdas.size()));
  for (const auto& l : lambdas) {
    if (mode == SignatureMode::riemannian && !(to_double(l) > 0 && !is_zero(l, 0.0)))
      throw InvalidArgument("metric: lambdas must be positive in riemannian mode");
    if (mode == SignatureMode::pseudo && is_zero(l, 0.0)) throw InvalidArgument("metric: lambdas must be nonzero");
  }
  Matrix<T> lam(space.dim_m(), space.dim_m());
  for (std::size_t b = 0; b < lambdas.size(); ++b)
    for (auto i : space.submodules()[b]) lam(i, i) = lambdas[b];
  auto m = metric_from_matrix(space, lam, mode);
  m.lambdas = lambdas;
  return m;
}

template <class T>
InvariantMetric<T> standard_metric(const ReductiveSpace<T>& space) {
  return metric_from_lambdas(space, Vec<T>(space.submodules().size(), T(1)));
}

}  // namespace gospace
