#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tritronquee/errors.hpp"

namespace tritronquee {

using cplx = std::complex<double>;

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using DenseMatrix = Matrix<cplx>;

/// Product of two matrices; the scalar type of the result follows the left operand.
template <class T, class U>
Matrix<T> multiply(const Matrix<T>& lhs, const Matrix<U>& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  Matrix<T> out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const T lik = lhs(i, k);
      if (lik == T{}) continue;
      auto rhs_row = rhs.row(k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) out_row[j] += lik * rhs_row[j];
    }
  }
  return out;
}

template <class T, class V>
std::vector<V> multiply(const Matrix<T>& m, std::span<const V> x) {
  if (m.cols() != x.size()) throw DimensionMismatch("multiply: vector length differs from column count");
  std::vector<V> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    V acc{};
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
    out[i] = acc;
  }
  return out;
}

template <class T, class V>
std::vector<V> multiply(const Matrix<T>& m, const std::vector<V>& x) {
  return multiply(m, std::span<const V>(x));
}

double norm_inf(std::span<const cplx> x);
double norm_inf(const DenseMatrix& a);
double norm_one(const DenseMatrix& a);

/// LU factorization with partial pivoting, P·A = L·U stored in place.
class LuFactorization {
 public:
  /// Throws SingularMatrix when a pivot magnitude drops below 1e-300.
  explicit LuFactorization(DenseMatrix a);

  std::size_t size() const { return lu_.rows(); }

  std::vector<cplx> solve(std::span<const cplx> rhs) const;
  std::vector<cplx> solve_adjoint(std::span<const cplx> rhs) const;

  /// Hager/Higham estimate of ||A^{-1}||_1; a lower bound, usually sharp.
  double inverse_norm_one_estimate() const;

  /// Estimate of the 1-norm condition number of the factored matrix.
  double condition_estimate() const { return norm_one_ * inverse_norm_one_estimate(); }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  double norm_one_ = 0.0;
};

std::vector<cplx> lu_solve(const DenseMatrix& a, std::span<const cplx> rhs);
double condition_estimate(const DenseMatrix& a);

}  // namespace tritronquee
