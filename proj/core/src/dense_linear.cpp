#include "tritronquee/dense_linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tritronquee {

namespace {

constexpr double kPivotFloor = 1e-300;

}  // namespace

double norm_inf(std::span<const cplx> x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

double norm_inf(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (const auto& v : a.row(i)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

double norm_one(const DenseMatrix& a) {
  std::vector<double> col(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) col[j] += std::abs(r[j]);
  }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw DimensionMismatch("LU: matrix is not square");
  const std::size_t n = lu_.rows();
  norm_one_ = norm_one(lu_);
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(lu_(i, k));
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (!(best >= kPivotFloor)) {
      throw SingularMatrix("LU: pivot " + std::to_string(k) + " below 1e-300");
    }
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
    }
    const cplx pivot = lu_(k, k);
    auto pivot_row = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto r = lu_.row(i);
      const cplx factor = r[k] / pivot;
      r[k] = factor;
      if (factor == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= factor * pivot_row[j];
    }
  }
}

std::vector<cplx> LuFactorization::solve(std::span<const cplx> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw DimensionMismatch("LU solve: rhs length differs from matrix size");
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    auto r = lu_.row(i);
    cplx acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto r = lu_.row(i);
    cplx acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
    x[i] = acc / r[i];
  }
  return x;
}

std::vector<cplx> LuFactorization::solve_adjoint(std::span<const cplx> rhs) const {
  // A^H = U^H L^H P, so solve U^H w = b, then L^H t = w, then y = P^T t.
  const std::size_t n = size();
  if (rhs.size() != n) throw DimensionMismatch("LU adjoint solve: rhs length differs from matrix size");
  std::vector<cplx> w(rhs.begin(), rhs.end());
  for (std::size_t j = 0; j < n; ++j) {
    w[j] /= std::conj(lu_(j, j));
    auto r = lu_.row(j);
    for (std::size_t i = j + 1; i < n; ++i) w[i] -= std::conj(r[i]) * w[j];
  }
  for (std::size_t j = n; j-- > 0;) {
    auto r = lu_.row(j);
    for (std::size_t i = 0; i < j; ++i) w[i] -= std::conj(r[i]) * w[j];
  }
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i) y[perm_[i]] = w[i];
  return y;
}

double LuFactorization::inverse_norm_one_estimate() const {
  const std::size_t n = size();
  if (n == 0) return 0.0;
  auto norm1 = [](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::abs(e);
    return s;
  };

  std::vector<cplx> x(n, cplx(1.0 / static_cast<double>(n), 0.0));
  double estimate = 0.0;
  std::size_t last_j = n;
  for (int iter = 0; iter < 5; ++iter) {
    const auto y = solve(x);
    const double est = norm1(y);
    if (iter > 0 && est <= estimate) break;
    estimate = est;
    std::vector<cplx> xi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(y[i]);
      xi[i] = mag > 0.0 ? y[i] / mag : cplx(1.0, 0.0);
    }
    const auto z = solve_adjoint(xi);
    std::size_t j = 0;
    double zmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        j = i;
      }
    }
    if (j == last_j) break;
    last_j = j;
    std::fill(x.begin(), x.end(), cplx{});
    x[j] = 1.0;
  }

  // Higham's alternating test vector guards against the worst cases of the iteration above.
  std::vector<cplx> alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double ramp = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    alt[i] = sign * (1.0 + ramp);
  }
  const double alt_est = 2.0 * norm1(solve(alt)) / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt_est);
}

std::vector<cplx> lu_solve(const DenseMatrix& a, std::span<const cplx> rhs) {
  if (a.rows() != a.cols()) throw DimensionMismatch("lu_solve: matrix is not square");
  if (rhs.size() != a.rows()) throw DimensionMismatch("lu_solve: rhs length differs from matrix size");
  return LuFactorization(a).solve(rhs);
}

double condition_estimate(const DenseMatrix& a) { return LuFactorization(a).condition_estimate(); }

}  // namespace tritronquee
