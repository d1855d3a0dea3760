#include "tritronquee/painleve_model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tritronquee {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void require_size(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) throw DimensionMismatch(std::string(what) + ": length differs from grid size");
}

DenseMatrix scaled(const RealMatrix& m, cplx factor) {
  DenseMatrix out(m.rows(), m.cols());
  auto src = m.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = factor * src[i];
  return out;
}

}  // namespace

EndDomainOperator make_end_operator(std::shared_ptr<const ChebGrid> grid, cplx s_edge, Side side) {
  if (!grid) throw std::invalid_argument("make_end_operator: null grid");
  if (s_edge == cplx{}) throw ZeroArgument("make_end_operator: s_edge = 0");
  EndDomainOperator op;
  op.side = side;
  op.s_edge = s_edge;
  op.s_values.resize(grid->size());
  for (std::size_t j = 0; j < grid->size(); ++j) {
    op.s_values[j] = s_edge * (0.5 * (1.0 + grid->points[j]));
  }
  op.s_values.back() = cplx{};
  const cplx ds = 2.0 / s_edge;
  op.d1_s = scaled(grid->d1, ds);
  op.d2_s = scaled(grid->d2, ds * ds);
  op.grid = std::move(grid);
  return op;
}

MiddleDomainOperator make_middle_operator(const LineSpec& line, std::shared_ptr<const ChebGrid> grid,
                                          double x_a, double x_b) {
  if (!grid) throw std::invalid_argument("make_middle_operator: null grid");
  if (!(x_a < x_b)) throw InvalidConfiguration("middle subdomain requires x_a < x_b");
  MiddleDomainOperator op;
  op.x_a = x_a;
  op.x_b = x_b;
  op.z_values.resize(grid->size());
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double l = grid->points[j];
    const double x = x_a * (0.5 * (1.0 - l)) + x_b * (0.5 * (1.0 + l));
    op.z_values[j] = z_of_x(line, x);
  }
  const cplx dz = 2.0 / (line.a * (x_b - x_a));
  op.d1_z = scaled(grid->d1, dz);
  op.d2_z = scaled(grid->d2, dz * dz);
  op.grid = std::move(grid);
  return op;
}

namespace {

template <class C>
C promote(cplx z) {
  using R = typename C::value_type;
  return C(static_cast<R>(z.real()), static_cast<R>(z.imag()));
}

// Matrix-vector product accumulated in the precision of the vector.
template <class C>
std::vector<C> apply_matrix(const DenseMatrix& m, std::span<const C> x) {
  using R = typename C::value_type;
  if (m.cols() != x.size()) throw DimensionMismatch("matrix-vector product: length differs");
  std::vector<C> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    R re = 0, im = 0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      const R ar = r[j].real(), ai = r[j].imag();
      const R xr = x[j].real(), xi = x[j].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    out[i] = C(re, im);
  }
  return out;
}

template <class C>
std::vector<C> residual_middle_impl(const MiddleDomainOperator& op, std::span<const C> omega) {
  require_size(op.size(), omega.size(), "residual_middle");
  auto f = apply_matrix(op.d2_z, omega);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] += C(-3) * omega[j] * omega[j] + promote<C>(op.z_values[j]);
  return f;
}

}  // namespace

std::vector<cplx> residual_middle(const MiddleDomainOperator& op, std::span<const cplx> omega) {
  return residual_middle_impl(op, omega);
}

std::vector<cplx_ext> residual_middle(const MiddleDomainOperator& op, std::span<const cplx_ext> omega) {
  return residual_middle_impl(op, omega);
}

AsymptoticSeries asymptotic_coefficients(Sign sigma, int terms) {
  if (terms < 0) throw std::invalid_argument("asymptotic_coefficients: negative term count");
  return {sigma, asymptotic_recurrence<double>(static_cast<int>(sigma), terms)};
}

cplx asymptotic_remainder_in_s(const AsymptoticSeries& series, cplx s) {
  // s^{5k-1} = s^4 (s^5)^{k-1}
  const cplx s5 = s * s * s * s * s;
  cplx power = s * s * s * s;
  cplx acc{};
  for (double ak : series.coeffs) {
    acc += ak * power;
    power *= s5;
  }
  return acc;
}

cplx asymptotic_eval(const AsymptoticSeries& series, cplx z) {
  if (z == cplx{}) throw ZeroArgument("asymptotic_eval: z = 0");
  const cplx root = std::sqrt(z);
  return to_double(series.sigma) * root / kSqrt3 + asymptotic_remainder_in_s(series, 1.0 / root);
}

DenseMatrix jacobian_middle(const MiddleDomainOperator& op, std::span<const cplx> omega) {
  require_size(op.size(), omega.size(), "jacobian_middle");
  DenseMatrix jac = op.d2_z;
  for (std::size_t j = 0; j < omega.size(); ++j) jac(j, j) -= 6.0 * omega[j];
  return jac;
}

namespace {

template <class C>
std::vector<C> residual_end_impl(const EndDomainOperator& op, std::span<const C> v, Sign sigma) {
  using R = typename C::value_type;
  require_size(op.size(), v.size(), "residual_end");
  const R sg = static_cast<R>(to_double(sigma));
  const R sqrt3 = std::sqrt(R(3));
  const auto vs = apply_matrix(op.d1_s, v);
  const auto vss = apply_matrix(op.d2_s, v);
  std::vector<C> f(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const C s = promote<C>(op.s_values[j]);
    const C s2 = s * s;
    const C s4 = s2 * s2;
    const C s6 = s4 * s2;
    const C s7 = s6 * s;
    f[j] = R(0.25) * s7 * vss[j] + R(0.75) * s6 * vs[j] - R(2) * sg * sqrt3 * v[j] - R(3) * s * v[j] * v[j] -
           sg / (R(4) * sqrt3) * s4;
  }
  return f;
}

}  // namespace

std::vector<cplx> residual_end(const EndDomainOperator& op, std::span<const cplx> v, Sign sigma) {
  return residual_end_impl(op, v, sigma);
}

std::vector<cplx_ext> residual_end(const EndDomainOperator& op, std::span<const cplx_ext> v, Sign sigma) {
  return residual_end_impl(op, v, sigma);
}

DenseMatrix jacobian_end(const EndDomainOperator& op, std::span<const cplx> v, Sign sigma) {
  require_size(op.size(), v.size(), "jacobian_end");
  const double sg = to_double(sigma);
  const std::size_t n = v.size();
  DenseMatrix jac(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx s = op.s_values[i];
    const cplx s6 = std::pow(s, 6);
    const cplx c2 = 0.25 * s6 * s;
    const cplx c1 = 0.75 * s6;
    auto row = jac.row(i);
    if (s != cplx{}) {
      auto r1 = op.d1_s.row(i);
      auto r2 = op.d2_s.row(i);
      for (std::size_t j = 0; j < n; ++j) row[j] = c2 * r2[j] + c1 * r1[j];
    }
    row[i] += -2.0 * sg * kSqrt3 - 6.0 * s * v[i];
  }
  return jac;
}

cplx omega_from_v(cplx v_value, cplx s_value, Sign sigma) {
  if (s_value == cplx{}) throw ZeroArgument("omega_from_v: s = 0 is the point at infinity");
  return v_value + to_double(sigma) / (kSqrt3 * s_value);
}

cplx domega_dz_from_vs(cplx vs_value, cplx s_value, Sign sigma) {
  const cplx s3 = s_value * s_value * s_value;
  return -0.5 * s3 * vs_value + to_double(sigma) * s_value / (2.0 * kSqrt3);
}

cplx domega_dx_end(std::span<const cplx> v, const EndDomainOperator& op, Sign sigma, const LineSpec& line,
                   std::size_t node) {
  require_size(op.size(), v.size(), "domega_dx_end");
  if (node >= op.size()) throw std::out_of_range("domega_dx_end: node index out of range");
  cplx vs{};
  auto r = op.d1_s.row(node);
  for (std::size_t j = 0; j < v.size(); ++j) vs += r[j] * v[j];
  return line.a * domega_dz_from_vs(vs, op.s_values[node], sigma);
}

}  // namespace tritronquee
