#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gospace/homogeneous.hpp"

namespace gospace::spaces {

using QSpace = ReductiveSpace<Rational>;

/// Basis index of E_ij − E_ji (i < j) in so(n).
std::size_t so_index(std::size_t n, std::size_t i, std::size_t j);

/// Real realisation of a complex matrix pattern: the complex entries of a
/// small real-realised matrix are moved to complex positions index_map[·]
/// of an N×N complex matrix.
Matrix<Rational> embed_complex(const Matrix<Rational>& small, const std::vector<std::size_t>& index_map, std::size_t N);

/// Span of all brackets of the generators (independent vectors, reduced echelon form).
std::vector<Vec<Rational>> derived_subalgebra(const LieAlgebra<Rational>& l, const std::vector<Vec<Rational>>& gens);

/// G/{e} with the given family; form_scale rescales B.
QSpace lie_group(Family family, const std::vector<int>& params, const Rational& form_scale = 1);

/// SO(n+1)/SO(n).
QSpace sphere(int n);

/// SO(5)/U(2), blocks of dimensions 2 and 4.
QSpace flag_so5_u2();

/// SO(n)/SO(n−2), blocks R^{n−2}⊗R² and so(2).
QSpace stiefel(int n);

/// SO(k+l+m)/(SO(k)×SO(l)×SO(m)), blocks m_12, m_13, m_23.
QSpace wallach(int k, int l, int m);

/// S² × S³ × S² as (so(3)⊕so(4)⊕so(3)) / (so(2)⊕so(3)⊕so(2)), one block per factor.
QSpace wallach_product();

/// Subalgebras k ⊂ h ⊂ g given by generators in the basis of g.
struct Chain {
  std::shared_ptr<const LieAlgebra<Rational>> g;
  std::vector<Vec<Rational>> h;
  std::vector<Vec<Rational>> k;
};

/// u(n) ⊂ u(n) ⊕ u(1) ⊂ u(n+1).
Chain hopf_chain(int n);

/// U(n+1)/U(n) through U(n) ⊂ U(n)×U(1): blocks CP^n tangent and fibre.
QSpace sphere_hopf(int n);

/// Chain G ⊃ H ⊃ K of the Tamaru list, classical rows 1, 2, 5, 8, 9 at n = 1 or 2;
/// blocks: base G/H then fibre H/K.
QSpace tamaru(int row, int n);

/// Control chain (so(5), so(4), so(2)⊕so(2)), not in the Tamaru list.
QSpace tamaru_control();

/// M-spaces SO(5)/SU(2) and Sp(2)/Sp(1) with blocks s (dim 1), m₁ (dim 2), m₂ (dim 4).
QSpace m_space_so5_su2();
QSpace m_space_sp2_sp1();

/// Three-dimensional unimodular group with K = {e}; B = identity in the standard basis.
QSpace lorentz3(Family family);

}  // namespace gospace::spaces
