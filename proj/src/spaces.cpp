#include "gospace/spaces.hpp"

#include <algorithm>

namespace gospace::spaces {

namespace {

using Alg = std::shared_ptr<const LieAlgebra<Rational>>;

Alg make(Family f, const std::vector<int>& p, const Rational& scale = 1) {
  return std::make_shared<const LieAlgebra<Rational>>(construct_classical(f, p, scale));
}

Vec<Rational> project_off(const LieAlgebra<Rational>& l, Vec<Rational> v, const std::vector<Vec<Rational>>& basis) {
  for (const auto& e : basis) {
    Rational c = l.form_value(v, e) / l.form_value(e, e);
    if (sgn(c) != 0) axpy(Rational(-c), e, v);
  }
  return v;
}

// Subalgebras levels[0] ⊂ levels[1] ⊂ … ⊂ g; blocks are the successive
// differences, innermost first, then g ⊖ levels.back().
QSpace nested(Alg g, const std::vector<std::vector<Vec<Rational>>>& levels, const std::vector<std::size_t>& order,
              const std::string& id) {
  const auto& l = *g;
  auto form = [&l](const Vec<Rational>& a, const Vec<Rational>& b) { return l.form_value(a, b); };
  std::vector<Vec<Rational>> acc = orthogonalize(levels.front(), form);
  const std::vector<Vec<Rational>> k = acc;
  std::vector<std::vector<Vec<Rational>>> blocks;
  auto add_block = [&](const std::vector<Vec<Rational>>& gens) {
    std::vector<Vec<Rational>> raw;
    for (const auto& v : gens) raw.push_back(project_off(l, v, acc));
    auto b = orthogonalize(raw, form);
    if (b.empty()) throw InvalidArgument(id + ": chain levels must be strictly increasing");
    acc.insert(acc.end(), b.begin(), b.end());
    blocks.push_back(std::move(b));
  };
  for (std::size_t i = 1; i < levels.size(); ++i) add_block(levels[i]);
  std::vector<Vec<Rational>> all;
  for (std::size_t i = 0; i < l.dim(); ++i) all.push_back(unit<Rational>(l.dim(), i));
  add_block(all);
  if (order.size() != blocks.size()) throw InvalidArgument(id + ": bad block order");
  std::vector<Vec<Rational>> m;
  std::vector<std::vector<std::size_t>> parts;
  for (auto b : order) {
    parts.emplace_back();
    for (const auto& v : blocks.at(b)) {
      parts.back().push_back(m.size());
      m.push_back(v);
    }
  }
  QSpace s(std::move(g), k, std::move(m), std::move(parts), id);
  auto rep = s.verify();
  if (!rep.k_subalgebra) throw InvalidArgument(id + ": isotropy is not a subalgebra");
  if (!rep.ok()) throw MathError(id + ": blocks are not ad(k)-invariant");
  return s;
}

std::vector<Vec<Rational>> units(std::size_t dim, const std::vector<std::size_t>& idx) {
  std::vector<Vec<Rational>> out;
  for (auto i : idx) out.push_back(unit<Rational>(dim, i));
  return out;
}

std::vector<Vec<Rational>> concat(std::vector<Vec<Rational>> a, const std::vector<Vec<Rational>>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// so(n) generators acting on the coordinate range [lo, hi)
std::vector<Vec<Rational>> so_block(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<Vec<Rational>> out;
  const std::size_t dim = n * (n - 1) / 2;
  for (std::size_t i = lo; i < hi; ++i)
    for (std::size_t j = i + 1; j < hi; ++j) out.push_back(unit<Rational>(dim, so_index(n, i, j)));
  return out;
}

// u(2) ⊂ so(5) (or so(4)) as the centralizer of the complex structure on the first four coordinates
std::vector<Vec<Rational>> u2_in_so(const LieAlgebra<Rational>& g, std::size_t n) {
  Matrix<Rational> j(n, n);
  j(1, 0) = 1;
  j(0, 1) = -1;
  j(3, 2) = 1;
  j(2, 3) = -1;
  auto c = centralizer(g, {g.expand_or_throw(j)});
  // inside so(4): drop anything touching the remaining coordinates
  return c;
}

// matrices of a small algebra moved to complex positions of a big one
std::vector<Vec<Rational>> embedded(const LieAlgebra<Rational>& big, const LieAlgebra<Rational>& small,
                                    const std::vector<std::size_t>& index_map, std::size_t N,
                                    const std::vector<std::size_t>& which = {}) {
  std::vector<Vec<Rational>> out;
  for (std::size_t i = 0; i < small.dim(); ++i) {
    if (!which.empty() && std::find(which.begin(), which.end(), i) == which.end()) continue;
    out.push_back(big.expand_or_throw(embed_complex(small.basis()[i], index_map, N)));
  }
  return out;
}

}  // namespace

std::size_t so_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= j || j >= n) throw InvalidArgument("so_index: need i < j < n");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += n - a - 1;
  return idx + (j - i - 1);
}

Matrix<Rational> embed_complex(const Matrix<Rational>& small, const std::vector<std::size_t>& index_map, std::size_t N) {
  const std::size_t n = small.rows() / 2;
  if (index_map.size() != n) throw InvalidArgument("embed_complex: index map size mismatch");
  Matrix<Rational> out(2 * N, 2 * N);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) out(2 * index_map[p] + a, 2 * index_map[q] + b) = small(2 * p + a, 2 * q + b);
  return out;
}

std::vector<Vec<Rational>> derived_subalgebra(const LieAlgebra<Rational>& l, const std::vector<Vec<Rational>>& gens) {
  std::vector<Vec<Rational>> rows;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) rows.push_back(l.bracket(gens[i], gens[j]));
  if (rows.empty()) return {};
  auto e = rref(Matrix<Rational>::from_rows(rows));
  std::vector<Vec<Rational>> out;
  for (std::size_t r = 0; r < e.rank(); ++r) out.push_back(e.reduced.row(r));
  return out;
}

QSpace lie_group(Family family, const std::vector<int>& params, const Rational& form_scale) {
  auto g = make(family, params, form_scale);
  return reductive_complement(g, {}, g->name());
}

QSpace sphere(int n) {
  if (n < 2) throw InvalidArgument("sphere(n) needs n >= 2");
  const std::size_t N = static_cast<std::size_t>(n) + 1;
  auto g = make(Family::so, {n + 1});
  return reductive_complement(g, so_block(N, 0, N - 1), "sphere(" + std::to_string(n) + ")");
}

QSpace flag_so5_u2() {
  auto g = make(Family::so, {5});
  auto u2 = u2_in_so(*g, 5);
  // chain u(2) ⊂ so(4) ⊂ so(5): blocks so(4) ⊖ u(2) (dim 2), so(5) ⊖ so(4) (dim 4)
  return nested(g, {u2, so_block(5, 0, 4)}, {0, 1}, "flag_so5_u2");
}

QSpace stiefel(int n) {
  if (n < 4) throw InvalidArgument("stiefel(n) needs n >= 4");
  const std::size_t N = static_cast<std::size_t>(n);
  auto g = make(Family::so, {n});
  auto k = so_block(N, 0, N - 2);
  auto h = concat(k, so_block(N, N - 2, N));
  return nested(g, {k, h}, {1, 0}, "stiefel(" + std::to_string(n) + ")");
}

QSpace wallach(int k, int l, int m) {
  if (k < 1 || l < 1 || m < 1 || k + l + m < 3) throw InvalidArgument("wallach(k,l,m) needs k, l, m >= 1");
  const std::size_t n = static_cast<std::size_t>(k + l + m);
  const std::size_t a = static_cast<std::size_t>(k), b = static_cast<std::size_t>(k + l);
  auto g = make(Family::so, {static_cast<int>(n)});
  auto kk = concat(concat(so_block(n, 0, a), so_block(n, a, b)), so_block(n, b, n));
  std::vector<Vec<Rational>> m_basis;
  std::vector<std::vector<std::size_t>> parts(3);
  auto group = [&](std::size_t i) { return i < a ? 0 : (i < b ? 1 : 2); };
  for (int blk = 0; blk < 3; ++blk)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const int gi = group(i), gj = group(j);
        if (gi == gj) continue;
        const int which = gi == 0 ? (gj == 1 ? 0 : 1) : 2;
        if (which != blk) continue;
        parts[blk].push_back(m_basis.size());
        m_basis.push_back(unit<Rational>(g->dim(), so_index(n, i, j)));
      }
  std::string id = "wallach(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ")";
  // so(1) factors contribute nothing to k
  std::vector<Vec<Rational>> k_basis = orthogonalize(kk, [&](const Vec<Rational>& x, const Vec<Rational>& y) {
    return g->form_value(x, y);
  });
  QSpace s(g, std::move(k_basis), std::move(m_basis), std::move(parts), id);
  if (!s.verify().ok()) throw MathError(id + ": decomposition failed verification");
  return s;
}

QSpace wallach_product() {
  auto g = std::make_shared<const LieAlgebra<Rational>>(
      direct_product({construct_classical(Family::so, {3}), construct_classical(Family::so, {4}),
                      construct_classical(Family::so, {3})}));
  // so(3) | so(4) | so(3) occupy coordinates 0–2, 3–8, 9–11
  const std::size_t dim = g->dim();
  std::vector<std::size_t> k_idx{so_index(3, 0, 1)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) k_idx.push_back(3 + so_index(4, i, j));
  k_idx.push_back(9 + so_index(3, 0, 1));
  std::vector<std::vector<std::size_t>> blocks{{so_index(3, 0, 2), so_index(3, 1, 2)},
                                               {3 + so_index(4, 0, 3), 3 + so_index(4, 1, 3), 3 + so_index(4, 2, 3)},
                                               {9 + so_index(3, 0, 2), 9 + so_index(3, 1, 2)}};
  std::vector<Vec<Rational>> m;
  std::vector<std::vector<std::size_t>> parts;
  for (const auto& b : blocks) {
    parts.emplace_back();
    for (auto i : b) {
      parts.back().push_back(m.size());
      m.push_back(unit<Rational>(dim, i));
    }
  }
  QSpace s(g, units(dim, k_idx), std::move(m), std::move(parts), "wallach_product");
  if (!s.verify().ok()) throw MathError("wallach_product: decomposition failed verification");
  return s;
}

Chain hopf_chain(int n) {
  if (n < 1) throw InvalidArgument("sphere_hopf(n) needs n >= 1");
  const std::size_t N = static_cast<std::size_t>(n) + 1;
  Chain c;
  c.g = make(Family::u, {n + 1});
  auto un = construct_classical(Family::u, {n});
  std::vector<std::size_t> map(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  c.k = embedded(*c.g, un, map, N);
  Matrix<Rational> fibre(2 * N, 2 * N);  // diag(0, …, 0, i)
  fibre(2 * N - 1, 2 * N - 2) = 1;
  fibre(2 * N - 2, 2 * N - 1) = -1;
  c.h = c.k;
  c.h.push_back(c.g->expand_or_throw(fibre));
  return c;
}

QSpace sphere_hopf(int n) {
  auto c = hopf_chain(n);
  return nested(c.g, {c.k, c.h}, {1, 0}, "sphere_hopf(" + std::to_string(n) + ")");
}

QSpace tamaru(int row, int n) {
  const std::string id = "tamaru(" + std::to_string(row) + "," + std::to_string(n) + ")";
  switch (row) {
    case 1: {
      if (n != 2) throw InvalidArgument(id + ": only n = 2 is provided");
      auto g = make(Family::so, {5});
      return nested(g, {u2_in_so(*g, 5), so_block(5, 0, 4)}, {1, 0}, id);
    }
    case 2: {
      if (n != 1) throw InvalidArgument(id + ": only n = 1 is provided");
      auto g = make(Family::so, {5});
      auto su2 = derived_subalgebra(*g, u2_in_so(*g, 5));
      return nested(g, {su2, so_block(5, 0, 4)}, {1, 0}, id);
    }
    case 5: {
      if (n != 2) throw InvalidArgument(id + ": only n = 2 is provided");
      auto g = make(Family::su, {3});
      auto su2 = embedded(*g, construct_classical(Family::su, {2}), {0, 1}, 3);
      // u(2) = s(u(2) ⊕ u(1)): centralizer of diag(i, i, −2i)
      Matrix<Rational> h(6, 6);
      for (std::size_t p = 0; p < 2; ++p) {
        h(2 * p + 1, 2 * p) = 1;
        h(2 * p, 2 * p + 1) = -1;
      }
      h(5, 4) = -2;
      h(4, 5) = 2;
      auto u2 = centralizer(*g, {g->expand_or_throw(h)});
      return nested(g, {su2, u2}, {1, 0}, id);
    }
    case 8:
    case 9: {
      if (n != 1) throw InvalidArgument(id + ": only n = 1 is provided");
      auto g = make(Family::sp, {2});
      auto sp1 = construct_classical(Family::sp, {1});
      // quaternionic index p of sp(2) occupies complex rows p and p + 2
      auto first = embedded(*g, sp1, {0, 2}, 4);
      auto second = embedded(*g, sp1, {1, 3}, 4);
      auto h = concat(first, second);
      std::vector<Vec<Rational>> k = second;
      if (row == 8) k.push_back(first.front());  // u(1) ⊂ sp(1)
      return nested(g, {k, h}, {1, 0}, id);
    }
    default:
      throw InvalidArgument(id + ": only the classical rows 1, 2, 5, 8, 9 are provided");
  }
}

QSpace tamaru_control() {
  auto g = make(Family::so, {5});
  auto k = units(g->dim(), {so_index(5, 0, 1), so_index(5, 2, 3)});
  return nested(g, {k, so_block(5, 0, 4)}, {1, 0}, "tamaru_control");
}

QSpace m_space_so5_su2() {
  auto g = make(Family::so, {5});
  auto u2 = u2_in_so(*g, 5);
  auto su2 = derived_subalgebra(*g, u2);
  return nested(g, {su2, u2, so_block(5, 0, 4)}, {0, 1, 2}, "m_space_so5_su2");
}

QSpace m_space_sp2_sp1() {
  auto g = make(Family::sp, {2});
  auto sp1 = construct_classical(Family::sp, {1});
  auto first = embedded(*g, sp1, {0, 2}, 4);
  auto second = embedded(*g, sp1, {1, 3}, 4);
  // flag Sp(2)/U(1)·Sp(1): K = u(1) ⊕ sp(1); M-space drops the u(1)
  auto k_flag = second;
  k_flag.push_back(first.front());
  return nested(g, {second, k_flag, concat(first, second)}, {0, 1, 2}, "m_space_sp2_sp1");
}

QSpace lorentz3(Family family) {
  switch (family) {
    case Family::su:
      return reductive_complement(make(Family::su, {2}, Rational(1, 2)), {}, "lorentz3(su2)");
    case Family::sl2r:
    case Family::heisenberg:
    case Family::e11:
    case Family::e2: {
      auto g = make(family, {});
      return reductive_complement(g, {}, "lorentz3(" + to_string(family) + ")");
    }
    default:
      throw InvalidArgument("lorentz3: family must be su, sl2r, heisenberg, e11 or e2");
  }
}

}  // namespace gospace::spaces
