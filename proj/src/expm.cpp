#include "gospace/expm.hpp"

#include <cmath>

#include "gospace/linalg.hpp"

namespace gospace {

namespace {

Matrix<double> solve_right(const Matrix<double>& q, const Matrix<double>& p) {
  auto inv = inverse(q);
  if (!inv) throw MathError("expm: singular Padé denominator");
  return *inv * p;
}

double norm1(const Matrix<double>& a) { return a.transpose().norm_inf(); }

}  // namespace

Matrix<double> expm(const Matrix<double>& a) {
  if (!a.square()) throw InvalidArgument("expm: non-square matrix");
  const std::size_t n = a.rows();
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double nrm = norm1(a);
  if (nrm == 0.0) return Matrix<double>::identity(n);
  int s = 0;
  if (nrm > theta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
  Matrix<double> x = a;
  if (s > 0) x *= std::ldexp(1.0, -s);
  const auto id = Matrix<double>::identity(n);
  const auto x2 = x * x;
  const auto x4 = x2 * x2;
  const auto x6 = x4 * x2;
  Matrix<double> u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
  Matrix<double> u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  Matrix<double> v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
  Matrix<double> v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  Matrix<double> r = solve_right(v - u, v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

Matrix<double> sqrtm(const Matrix<double>& a) {
  if (!a.square()) throw InvalidArgument("sqrtm: non-square matrix");
  const std::size_t n = a.rows();
  Matrix<double> y = a;
  Matrix<double> z = Matrix<double>::identity(n);
  for (int it = 0; it < 100; ++it) {
    auto yi = inverse(y);
    auto zi = inverse(z);
    if (!yi || !zi) throw MathError("sqrtm: singular iterate");
    Matrix<double> y_next = 0.5 * (y + *zi);
    Matrix<double> z_next = 0.5 * (z + *yi);
    const double change = (y_next - y).max_abs();
    y = std::move(y_next);
    z = std::move(z_next);
    if (change <= 1e-15 * std::max(1.0, y.max_abs())) return y;
  }
  throw MathError("sqrtm: Denman–Beavers iteration did not converge");
}

Matrix<double> logm(const Matrix<double>& a) {
  if (!a.square()) throw InvalidArgument("logm: non-square matrix");
  const std::size_t n = a.rows();
  const auto id = Matrix<double>::identity(n);
  Matrix<double> x = a;
  int s = 0;
  while ((x - id).norm_inf() > 0.25) {
    if (++s > 60) throw MathError("logm: too many square roots");
    x = sqrtm(x);
  }
  auto denom = inverse(x + id);
  if (!denom) throw MathError("logm: singular A + I");
  const Matrix<double> z = (x - id) * *denom;
  const Matrix<double> z2 = z * z;
  // 2 Σ z^{2k+1}/(2k+1); ‖z‖ ≲ 1/7 so 20 terms is far below machine precision
  Matrix<double> term = z;
  Matrix<double> sum = z;
  for (int k = 1; k < 40; ++k) {
    term = term * z2;
    Matrix<double> contrib = (1.0 / (2.0 * k + 1.0)) * term;
    sum += contrib;
    if (contrib.max_abs() < 1e-18) break;
  }
  sum *= 2.0 * std::ldexp(1.0, s);
  return sum;
}

Matrix<double> phi1(const Matrix<double>& a, double tail) {
  const std::size_t n = a.rows();
  const double nrm = a.norm_inf();
  Matrix<double> power = Matrix<double>::identity(n);
  Matrix<double> sum = power;
  double fact = 1.0;  // (k+1)!
  for (int k = 1; k < 200; ++k) {
    power = power * a;
    fact *= static_cast<double>(k + 1);
    sum += (1.0 / fact) * power;
    // bound on Σ_{j>k} ‖A‖^j/(j+1)!
    const double next = std::pow(nrm, k + 1) / (fact * static_cast<double>(k + 2));
    const double ratio = nrm / static_cast<double>(k + 3);
    if (ratio < 1.0 && next / (1.0 - ratio) < tail) return sum;
  }
  throw MathError("phi1: series did not reach the requested tail bound");
}

}  // namespace gospace
