#pragma once

#include "gospace/matrix.hpp"

namespace gospace {

/// exp(A) by scaling and squaring with a degree-13 Padé approximant
/// (Higham 2005 parameters).
Matrix<double> expm(const Matrix<double>& a);

/// Principal logarithm by inverse scaling and squaring: repeated
/// Denman–Beavers square roots until ‖A − I‖ < 1/4, then the Gregory
/// series log A = 2 artanh((A − I)(A + I)⁻¹). Throws MathError when
/// the square-root iteration does not converge (eigenvalues on the
/// closed negative real axis).
Matrix<double> logm(const Matrix<double>& a);

/// Principal square root via the Denman–Beavers iteration.
Matrix<double> sqrtm(const Matrix<double>& a);

/// Σ_{k≥0} Aᵏ / (k+1)!  = (exp(A) − I) A⁻¹, summed until the tail bound
/// ‖A‖^{N+1}/(N+2)! · 1/(1 − ‖A‖/(N+3)) falls below `tail`.
Matrix<double> phi1(const Matrix<double>& a, double tail = 1e-15);

}  // namespace gospace
