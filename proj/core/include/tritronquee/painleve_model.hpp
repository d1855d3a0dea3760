#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tritronquee/chebyshev.hpp"
#include "tritronquee/complex_line.hpp"
#include "tritronquee/dense_linear.hpp"

namespace tritronquee {

/// Discretized remainder equation on an unbounded end domain, written in the
/// compactified variable s = 1/sqrt(z) along the straight segment [0, s_edge]:
///
///   (s^7/4) v_ss + (3/4) s^6 v_s - 2 sigma sqrt(3) v = 3 s v^2 + sigma/(4 sqrt(3)) s^4
///
/// Node 0 is the junction (s = s_edge), node n is infinity (s = 0).
struct EndDomainOperator {
  Side side = Side::left;
  cplx s_edge;
  std::shared_ptr<const ChebGrid> grid;
  std::vector<cplx> s_values;
  DenseMatrix d1_s;
  DenseMatrix d2_s;

  std::size_t size() const { return s_values.size(); }
};

/// Painleve I, Omega_zz = 3 Omega^2 - z, on the middle subdomain [x_a, x_b].
/// Node 0 is x_b (l = +1), node n is x_a (l = -1).
struct MiddleDomainOperator {
  double x_a = 0.0;
  double x_b = 0.0;
  std::shared_ptr<const ChebGrid> grid;
  std::vector<cplx> z_values;
  DenseMatrix d1_z;
  DenseMatrix d2_z;

  std::size_t size() const { return z_values.size(); }
};

EndDomainOperator make_end_operator(std::shared_ptr<const ChebGrid> grid, cplx s_edge, Side side);
MiddleDomainOperator make_middle_operator(const LineSpec& line, std::shared_ptr<const ChebGrid> grid,
                                          double x_a, double x_b);

/// Coefficients a_1..a_count of Omega ~ sigma sqrt(z/3) + sum a_k z^{-(5k-1)/2}.
///
/// Substituting v = sum a_k s^{5k-1} into the remainder equation and
/// collecting s^{5n-1} gives
///   a_1 = -1/24,
///   a_n = [ m(m+2)/4 a_{n-1} - 3 sum_{i+j=n} a_i a_j ] / (2 sigma sqrt(3)),  m = 5n - 6.
/// Templated so that tests can rerun it in extended precision.
template <class Real>
std::vector<Real> asymptotic_recurrence(int sigma, int count) {
  using std::sqrt;
  std::vector<Real> a;
  if (count <= 0) return a;
  a.reserve(static_cast<std::size_t>(count));
  const Real sqrt3 = sqrt(Real(3));
  const Real pivot = Real(2) * sqrt3 * Real(sigma);
  a.push_back(-(Real(sigma) / (Real(4) * sqrt3)) / pivot);
  for (int n = 2; n <= count; ++n) {
    const int m = 5 * n - 6;
    Real quadratic(0);
    for (int i = 1; i < n; ++i) quadratic += a[i - 1] * a[n - i - 1];
    const Real linear = Real(m) * Real(m + 2) / Real(4) * a[n - 2];
    a.push_back((linear - Real(3) * quadratic) / pivot);
  }
  return a;
}

struct AsymptoticSeries {
  Sign sigma = Sign::plus;
  std::vector<double> coeffs;  // a_1..a_K, real for real sigma
};

AsymptoticSeries asymptotic_coefficients(Sign sigma, int terms = 6);

/// sigma sqrt(z/3) + sum a_k z^{-(5k-1)/2}, principal sqrt. Throws ZeroArgument at z = 0.
cplx asymptotic_eval(const AsymptoticSeries& series, cplx z);

/// Remainder part sum a_k s^{5k-1} in the compactified variable.
cplx asymptotic_remainder_in_s(const AsymptoticSeries& series, cplx s);

/// Extended-precision scalar used for Newton iterates and residuals; the
/// residual of a collocation system at N ~ 256 sits at ~1e-9 in double.
using cplx_ext = std::complex<long double>;

std::vector<cplx> residual_middle(const MiddleDomainOperator& op, std::span<const cplx> omega);
std::vector<cplx_ext> residual_middle(const MiddleDomainOperator& op, std::span<const cplx_ext> omega);
DenseMatrix jacobian_middle(const MiddleDomainOperator& op, std::span<const cplx> omega);

std::vector<cplx> residual_end(const EndDomainOperator& op, std::span<const cplx> v, Sign sigma);
std::vector<cplx_ext> residual_end(const EndDomainOperator& op, std::span<const cplx_ext> v, Sign sigma);
DenseMatrix jacobian_end(const EndDomainOperator& op, std::span<const cplx> v, Sign sigma);

/// Omega = v + sigma/(sqrt(3) s). Throws ZeroArgument for s = 0.
cplx omega_from_v(cplx v_value, cplx s_value, Sign sigma);

/// dOmega/dz = -(s^3/2) v_s + sigma s/(2 sqrt(3)), from a value of v_s.
cplx domega_dz_from_vs(cplx vs_value, cplx s_value, Sign sigma);

/// dOmega/dx = a dOmega/dz at end-domain node `node`, with v_s from d1_s.
cplx domega_dx_end(std::span<const cplx> v, const EndDomainOperator& op, Sign sigma,
                   const LineSpec& line, std::size_t node);

}  // namespace tritronquee
