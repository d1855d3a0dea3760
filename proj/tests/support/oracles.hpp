#pragma once

// Test-only reference computations. Nothing here calls into the collocation
// path it is used to check, except to read a converged solution.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/numeric/odeint.hpp>

#include "tritronquee/bvp_solver.hpp"

namespace tritronquee::testing {

struct ReferenceCase {
  LineSpec line;
  DomainLayout layout;
};

// Tritronquee branch under the principal square root: Omega ~ -sqrt(z/3).
inline constexpr Sign kTritronqueeSign = Sign::minus;

inline ReferenceCase imaginary_axis_case() {
  ReferenceCase c;
  c.line.a = {0.0, 1.0};
  c.line.sigma = kTritronqueeSign;
  c.layout.x_l = -10.0;
  c.layout.x_r = 10.0;
  c.layout.n_end_left = 20;
  c.layout.n_middle = {256};
  c.layout.n_end_right = 20;
  return c;
}

inline ReferenceCase near_stokes_case() {
  ReferenceCase c = imaginary_axis_case();
  c.line.a = std::polar(1.0, 0.8 * std::numbers::pi - 0.05);
  c.layout.n_end_right = 256;
  return c;
}

/// Central-difference Jacobian of the assembled residual (holomorphic in u,
/// so a real step suffices).
inline DenseMatrix finite_difference_jacobian(const Discretization& disc, const SolveState& state, double eps) {
  const auto u = state.flatten();
  DenseMatrix jac(u.size(), u.size());
  SolveState plus = state, minus = state;
  for (std::size_t j = 0; j < u.size(); ++j) {
    auto up = u, um = u;
    up[j] += eps;
    um[j] -= eps;
    plus.assign(up);
    minus.assign(um);
    const auto fp = disc.residual(plus);
    const auto fm = disc.residual(minus);
    for (std::size_t i = 0; i < u.size(); ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * eps);
  }
  return jac;
}

/// Integrates Omega_xx = a^2 (3 Omega^2 - (a x + b)) from x0 with an adaptive
/// Runge-Kutta-Fehlberg 7(8) scheme and returns Omega at each checkpoint
/// (checkpoints must be monotone away from x0).
inline std::vector<cplx> integrate_painleve_ivp(const LineSpec& line, double x0, cplx omega0, cplx domega0,
                                                const std::vector<double>& checkpoints, double tol = 1e-14) {
  namespace odeint = boost::numeric::odeint;
  using state_type = std::array<double, 4>;
  if (checkpoints.empty()) return {};
  const double dir = checkpoints.back() >= x0 ? 1.0 : -1.0;
  const cplx a2 = line.a * line.a;

  // t = dir * (x - x0) >= 0
  auto rhs = [&](const state_type& y, state_type& dy, double t) {
    const double x = x0 + dir * t;
    const cplx omega(y[0], y[1]);
    const cplx acc = a2 * (3.0 * omega * omega - (line.a * x + line.b));
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = acc.real();
    dy[3] = acc.imag();
  };

  state_type y{omega0.real(), omega0.imag(), dir * domega0.real(), dir * domega0.imag()};
  std::vector<double> times{0.0};
  for (double x : checkpoints) times.push_back(dir * (x - x0));
  std::vector<cplx> out;
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state_type>());
  odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3,
                          [&](const state_type& s, double t) {
                            if (t > 0.0) out.emplace_back(s[0], s[1]);
                          });
  return out;
}

using mp_real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<150>>;
using mp_complex = boost::multiprecision::cpp_complex<150>;

/// |Omega'' - 3 Omega^2 + z| for the K-term truncated series at z, evaluated
/// term by term in 150-digit arithmetic.
inline mp_real series_pi_residual(const std::vector<mp_real>& coeffs, int sigma, const mp_complex& z) {
  using boost::multiprecision::sqrt;
  const mp_complex r = sqrt(z);
  const mp_complex inv_r = mp_complex(1) / r;
  const mp_real sqrt3 = sqrt(mp_real(3));
  mp_complex omega = mp_real(sigma) * r / sqrt3;
  mp_complex omega_zz = mp_real(sigma) / sqrt3 * mp_real(-0.25) * inv_r * inv_r * inv_r;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const mp_real p = -mp_real(5 * k - 1) / 2;
    mp_complex pw(1);
    for (int e = 0; e < 5 * k - 1; ++e) pw *= inv_r;  // z^p
    omega += coeffs[i] * pw;
    omega_zz += coeffs[i] * p * (p - 1) * pw / z / z;
  }
  return abs(omega_zz - mp_real(3) * omega * omega + z);
}

/// Least-squares slope of log|residual| against log|z| on the positive
/// imaginary axis, |z| log-uniform in [z_min, z_max].
inline double series_residual_slope(int sigma, int terms, double z_min, double z_max, int points = 21) {
  const auto coeffs = asymptotic_recurrence<mp_real>(sigma, terms);
  std::vector<double> xs, ys;
  for (int i = 0; i < points; ++i) {
    const double t = std::exp(std::log(z_min) + (std::log(z_max) - std::log(z_min)) * i / (points - 1));
    const mp_complex z(mp_real(0), mp_real(t));
    const mp_real res = series_pi_residual(coeffs, sigma, z);
    xs.push_back(std::log(t));
    ys.push_back(static_cast<double>(log(res)));
  }
  double mx = 0, my = 0;
  for (int i = 0; i < points; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= points;
  my /= points;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < points; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

inline std::vector<cplx> random_complex_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> v(n);
  for (auto& e : v) e = {u(rng), u(rng)};
  return v;
}

}  // namespace tritronquee::testing
