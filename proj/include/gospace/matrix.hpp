#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gospace/scalar.hpp"

namespace gospace {

// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InvalidArgument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t nrows) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != nrows) throw InvalidArgument("column length mismatch");
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix diagonal(const Vec<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Vec<T> row(std::size_t i) const {
    return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw InvalidArgument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (is_exact_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    }
    return r;
  }

  Vec<T> operator*(const Vec<T>& v) const {
    if (cols_ != v.size()) throw InvalidArgument("matrix-vector shape mismatch");
    Vec<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& a = (*this)(i, j);
        if (!is_exact_zero(a)) r[i] += a * v[j];
      }
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero(double scale = 1.0) const {
    return std::all_of(data_.begin(), data_.end(), [&](const T& x) { return gospace::is_zero(x, scale); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(to_double(x)));
    return m;
  }

  // induced infinity norm (max row sum)
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs(to_double((*this)(i, j)));
      m = std::max(m, s);
    }
    return m;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = scalar_cast<U>((*this)(i, j));
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

 private:
  static bool is_exact_zero(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
      return sgn(x) == 0;
    } else {
      return x == T(0);
    }
  }
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

// --- small vector helpers -------------------------------------------------

template <class T>
Vec<T> zeros(std::size_t n) {
  return Vec<T>(n, T(0));
}

template <class T>
Vec<T> unit(std::size_t n, std::size_t i) {
  Vec<T> v(n, T(0));
  v.at(i) = T(1);
  return v;
}

template <class T>
Vec<T>& axpy(const T& a, const Vec<T>& x, Vec<T>& y) {
  if (x.size() != y.size()) throw InvalidArgument("vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
  return y;
}

template <class T>
Vec<T> operator+(Vec<T> a, const Vec<T>& b) {
  return axpy(T(1), b, a);
}

template <class T>
Vec<T> operator-(Vec<T> a, const Vec<T>& b) {
  return axpy(T(-1), b, a);
}

template <class T>
Vec<T> scaled(const T& s, Vec<T> v) {
  for (auto& x : v) x *= s;
  return v;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
bool all_zero(const Vec<T>& v, double scale = 1.0) {
  return std::all_of(v.begin(), v.end(), [&](const T& x) { return is_zero(x, scale); });
}

template <class T>
double max_abs(const Vec<T>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(to_double(x)));
  return m;
}

}  // namespace gospace
