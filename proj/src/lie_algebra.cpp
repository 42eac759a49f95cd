#include "gospace/lie_algebra.hpp"

#include <map>

namespace gospace {

namespace {

using RMat = Matrix<Rational>;

RMat unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  RMat m(n, n);
  m(i, j) = 1;
  return m;
}

// Complex n×n matrix as a real 2n×2n matrix, a+ib ↦ [[a, −b], [b, a]].
struct ComplexMatrix {
  RMat re, im;
  explicit ComplexMatrix(std::size_t n) : re(n, n), im(n, n) {}
  RMat to_real() const {
    const std::size_t n = re.rows();
    RMat r(2 * n, 2 * n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        r(2 * p, 2 * q) = re(p, q);
        r(2 * p, 2 * q + 1) = -im(p, q);
        r(2 * p + 1, 2 * q) = im(p, q);
        r(2 * p + 1, 2 * q + 1) = re(p, q);
      }
    return r;
  }
};

// −c · tr(XY) on the given basis
RMat trace_form(const std::vector<RMat>& basis, const Rational& c) {
  const std::size_t n = basis.size();
  RMat f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      f(i, j) = -c * (basis[i] * basis[j]).trace();
      f(j, i) = f(i, j);
    }
  return f;
}

// Orthogonalise flattened matrices with respect to −tr(XY).
std::vector<RMat> orthogonalize_matrices(const std::vector<RMat>& mats) {
  if (mats.empty()) return {};
  const std::size_t n = mats.front().rows();
  std::vector<Vec<Rational>> flat;
  for (const auto& m : mats) flat.push_back(m.data());
  auto form = [n](const Vec<Rational>& a, const Vec<Rational>& b) {
    // −tr(AB) = −Σ_{ij} A_ij B_ji
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s -= a[i * n + j] * b[j * n + i];
    return s;
  };
  auto ortho = orthogonalize(flat, form);
  std::vector<RMat> out;
  for (const auto& v : ortho) {
    RMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<RMat> so_basis(std::size_t n) {
  std::vector<RMat> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.push_back(unit_matrix(n, i, j) - unit_matrix(n, j, i));
  return b;
}

// su(n) basis scaled by −1/2 so that su(2) satisfies [e1, e2] = e3 cyclically.
std::vector<RMat> su_basis(std::size_t n, bool with_centre) {
  const Rational half(1, 2);
  std::vector<RMat> b;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      ComplexMatrix s(n);  // −½ i (E_pq + E_qp)
      s.im(p, q) = -half;
      s.im(q, p) = -half;
      b.push_back(s.to_real());
      ComplexMatrix a(n);  // −½ (E_pq − E_qp)
      a.re(p, q) = -half;
      a.re(q, p) = half;
      b.push_back(a.to_real());
    }
  std::vector<RMat> diag;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    ComplexMatrix h(n);  // −½ i (E_pp − E_{p+1,p+1})
    h.im(p, p) = -half;
    h.im(p + 1, p + 1) = half;
    diag.push_back(h.to_real());
  }
  if (with_centre) {
    ComplexMatrix z(n);
    for (std::size_t p = 0; p < n; ++p) z.im(p, p) = -half;
    diag.push_back(z.to_real());
  }
  for (auto& d : orthogonalize_matrices(diag)) b.push_back(std::move(d));
  return b;
}

// sp(n) ⊂ u(2n): X = [[A, C], [−C̄, Ā]] with A ∈ u(n), C complex symmetric.
std::vector<RMat> sp_basis(std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<RMat> b;
  auto push = [&](const ComplexMatrix& a, const ComplexMatrix& c) {
    ComplexMatrix x(m);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        x.re(p, q) = a.re(p, q);
        x.im(p, q) = a.im(p, q);
        x.re(n + p, n + q) = a.re(p, q);
        x.im(n + p, n + q) = -a.im(p, q);
        x.re(p, n + q) = c.re(p, q);
        x.im(p, n + q) = c.im(p, q);
        x.re(n + p, q) = -c.re(p, q);
        x.im(n + p, q) = c.im(p, q);
      }
    b.push_back(x.to_real());
  };
  const ComplexMatrix zero(n);
  // quaternionic index p occupies complex rows p and n+p
  for (std::size_t p = 0; p < n; ++p) {
    ComplexMatrix a(n);
    a.im(p, p) = 1;
    push(a, zero);
    ComplexMatrix cr(n);
    cr.re(p, p) = 1;
    push(zero, cr);
    ComplexMatrix ci(n);
    ci.im(p, p) = 1;
    push(zero, ci);
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      ComplexMatrix ar(n);
      ar.re(p, q) = 1;
      ar.re(q, p) = -1;
      push(ar, zero);
      ComplexMatrix ai(n);
      ai.im(p, q) = 1;
      ai.im(q, p) = 1;
      push(ai, zero);
      ComplexMatrix cr(n);
      cr.re(p, q) = 1;
      cr.re(q, p) = 1;
      push(zero, cr);
      ComplexMatrix ci(n);
      ci.im(p, q) = 1;
      ci.im(q, p) = 1;
      push(zero, ci);
    }
  return b;
}

LieAlgebra<Rational> with_ideal(std::string name, std::vector<RMat> basis, RMat form, FormConvention conv,
                                const Rational& scale) {
  Ideal ideal{name, 0, basis.size(), conv, scale};
  form *= scale;
  return LieAlgebra<Rational>(name, std::move(basis), std::move(form), {ideal});
}

int param(const std::vector<int>& params, std::size_t count, const char* family) {
  if (params.size() != count) throw InvalidArgument(std::string(family) + ": wrong number of parameters");
  return count ? params[0] : 0;
}

}  // namespace

std::string to_string(FormConvention c) {
  switch (c) {
    case FormConvention::negative_killing:
      return "negative_killing";
    case FormConvention::trace_extension:
      return "trace_extension";
    case FormConvention::identity:
      return "identity";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  static const std::map<std::string, Family> names = {
      {"so", Family::so},           {"su", Family::su},   {"sp", Family::sp},
      {"u", Family::u},             {"abelian", Family::abelian},
      {"sl2r", Family::sl2r},       {"heisenberg", Family::heisenberg},
      {"e11", Family::e11},         {"e2", Family::e2}};
  auto it = names.find(name);
  if (it == names.end()) throw InvalidArgument("unknown algebra family: " + name);
  return it->second;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::so: return "so";
    case Family::su: return "su";
    case Family::sp: return "sp";
    case Family::u: return "u";
    case Family::abelian: return "abelian";
    case Family::sl2r: return "sl2r";
    case Family::heisenberg: return "heisenberg";
    case Family::e11: return "e11";
    case Family::e2: return "e2";
  }
  return "unknown";
}

LieAlgebra<Rational> construct_classical(Family family, const std::vector<int>& params, const Rational& form_scale) {
  if (sgn(form_scale) <= 0) throw InvalidArgument("form scale must be positive");
  switch (family) {
    case Family::so: {
      const int n = param(params, 1, "so");
      if (n < 2) throw InvalidArgument("so(n) requires n >= 2");
      auto b = so_basis(static_cast<std::size_t>(n));
      const std::string name = "so(" + std::to_string(n) + ")";
      if (n == 2) {
        // abelian: Killing form vanishes
        return with_ideal(name, std::move(b), RMat::identity(1), FormConvention::identity, form_scale);
      }
      // Killing form of so(n) is (n − 2) tr(XY)
      RMat f = trace_form(b, Rational(n - 2));
      return with_ideal(name, std::move(b), std::move(f), FormConvention::negative_killing, form_scale);
    }
    case Family::su: {
      const int n = param(params, 1, "su");
      if (n < 2) throw InvalidArgument("su(n) requires n >= 2");
      auto b = su_basis(static_cast<std::size_t>(n), false);
      // Killing form of su(n) is 2n tr_C(XY) = n tr_R(XY) in the real realisation
      RMat f = trace_form(b, Rational(n));
      return with_ideal("su(" + std::to_string(n) + ")", std::move(b), std::move(f),
                        FormConvention::negative_killing, form_scale);
    }
    case Family::u: {
      const int n = param(params, 1, "u");
      if (n < 1) throw InvalidArgument("u(n) requires n >= 1");
      if (n == 1) {
        ComplexMatrix z(1);
        z.im(0, 0) = Rational(-1, 2);
        return with_ideal("u(1)", {z.to_real()}, RMat::identity(1), FormConvention::identity, form_scale);
      }
      auto b = su_basis(static_cast<std::size_t>(n), true);
      RMat f = trace_form(b, Rational(n));
      return with_ideal("u(" + std::to_string(n) + ")", std::move(b), std::move(f), FormConvention::trace_extension,
                        form_scale);
    }
    case Family::sp: {
      const int n = param(params, 1, "sp");
      if (n < 1) throw InvalidArgument("sp(n) requires n >= 1");
      auto b = sp_basis(static_cast<std::size_t>(n));
      // Killing form of sp(n) is (2n + 2) tr_C(XY) = (n + 1) tr_R(XY)
      RMat f = trace_form(b, Rational(n + 1));
      return with_ideal("sp(" + std::to_string(n) + ")", std::move(b), std::move(f),
                        FormConvention::negative_killing, form_scale);
    }
    case Family::abelian: {
      const int k = param(params, 1, "abelian");
      if (k < 1) throw InvalidArgument("abelian(k) requires k >= 1");
      std::vector<RMat> b;
      for (int i = 0; i < k; ++i)
        b.push_back(unit_matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(i), static_cast<std::size_t>(i)));
      return with_ideal("R^" + std::to_string(k), std::move(b), RMat::identity(static_cast<std::size_t>(k)),
                        FormConvention::identity, form_scale);
    }
    case Family::sl2r: {
      param(params, 0, "sl2r");
      RMat h(2, 2), s(2, 2), r(2, 2);
      h(0, 0) = 1;
      h(1, 1) = -1;
      s(0, 1) = 1;
      s(1, 0) = 1;
      r(0, 1) = 1;
      r(1, 0) = -1;
      return with_ideal("sl(2,R)", {h, s, r}, RMat::identity(3), FormConvention::identity, form_scale);
    }
    case Family::heisenberg: {
      param(params, 0, "heisenberg");
      return with_ideal("heis(3)", {unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)},
                        RMat::identity(3), FormConvention::identity, form_scale);
    }
    case Family::e11: {
      param(params, 0, "e11");
      RMat d(3, 3);
      d(0, 0) = 1;
      d(1, 1) = -1;
      return with_ideal("e(1,1)", {unit_matrix(3, 0, 2), unit_matrix(3, 1, 2), d}, RMat::identity(3),
                        FormConvention::identity, form_scale);
    }
    case Family::e2: {
      param(params, 0, "e2");
      return with_ideal("e(2)", {unit_matrix(3, 0, 2), unit_matrix(3, 1, 2), unit_matrix(3, 1, 0) - unit_matrix(3, 0, 1)},
                        RMat::identity(3), FormConvention::identity, form_scale);
    }
  }
  throw InvalidArgument("unsupported family");
}

LieAlgebra<Rational> direct_product(const std::vector<LieAlgebra<Rational>>& factors) {
  if (factors.empty()) throw InvalidArgument("direct_product: no factors");
  std::size_t ambient = 0, dim = 0;
  for (const auto& f : factors) {
    ambient += f.ambient_size();
    dim += f.dim();
  }
  std::vector<RMat> basis;
  RMat form(dim, dim);
  std::vector<Ideal> ideals;
  std::string name;
  std::size_t a_off = 0, d_off = 0;
  for (const auto& f : factors) {
    for (const auto& b : f.basis()) {
      RMat m(ambient, ambient);
      m.set_block(a_off, a_off, b);
      basis.push_back(std::move(m));
    }
    form.set_block(d_off, d_off, f.form());
    for (auto ideal : f.ideals()) {
      ideal.offset += d_off;
      ideals.push_back(std::move(ideal));
    }
    name += (name.empty() ? "" : "+") + f.name();
    a_off += f.ambient_size();
    d_off += f.dim();
  }
  return LieAlgebra<Rational>(name, std::move(basis), std::move(form), std::move(ideals));
}

}  // namespace gospace
