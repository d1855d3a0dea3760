#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tritronquee/dense_linear.hpp"

namespace tritronquee {

/// Chebyshev-Lobatto collocation grid of degree n on [-1, 1].
///
/// Nodes are ordered l_j = cos(j*pi/n), j = 0..n, i.e. from +1 down to -1.
/// d1 and d2 act on nodal values and return nodal values of the first and
/// second derivative of the interpolating polynomial.
struct ChebGrid {
  int n = 0;
  std::vector<double> points;
  RealMatrix d1;
  RealMatrix d2;

  std::size_t size() const { return points.size(); }
};

/// Chebyshev expansion coefficients c_0..c_n of u(l) = sum c_k T_k(l).
struct ChebCoeffs {
  std::vector<cplx> coeffs;
};

std::vector<double> chebyshev_points(int n);

/// First-derivative matrix with diagonal from the negative-sum rule.
RealMatrix differentiation_matrix(int n);

/// Builds points, d1 and d2 = d1*d1. Throws InvalidConfiguration for n < 1.
ChebGrid make_grid(int n);

/// Nodal values -> coefficients by a direct cosine transform.
ChebCoeffs to_coeffs(std::span<const cplx> values);

/// Coefficients -> nodal values (inverse of to_coeffs).
std::vector<cplx> to_values(const ChebCoeffs& c);

/// Clenshaw summation of the Chebyshev series at l (any complex l).
cplx clenshaw(const ChebCoeffs& c, cplx l);

/// Barycentric interpolation of nodal values at l_star in [-1, 1].
/// Throws std::out_of_range outside the interval.
cplx eval_at(std::span<const cplx> values, double l_star);

/// Same interpolant continued to complex l. Used where a curved image of
/// the line leaves the real segment by a small amount.
cplx eval_at_complex(std::span<const cplx> values, cplx l_star);

struct DecayDiagnostic {
  std::size_t saturation_index = 0;
  double floor = 0.0;
};

/// floor = max |c_k| over the trailing 10% (at least one) of the spectrum;
/// saturation_index = smallest m with max_{k>=m} |c_k| <= 10 * floor.
DecayDiagnostic decay_diagnostic(const ChebCoeffs& c);

}  // namespace tritronquee
