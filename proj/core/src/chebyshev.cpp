#include "tritronquee/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tritronquee {

namespace {

// cos(k*pi/n) for k = 0..2n-1, symmetric by construction so cos(m*j*pi/n)
// can be looked up with (m*j) mod 2n.
std::vector<double> cosine_table(int n) {
  std::vector<double> table(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < 2 * n; ++k) {
    table[k] = std::cos(std::numbers::pi * k / n);
  }
  return table;
}

void require_length(std::span<const cplx> values) {
  if (values.size() < 2) throw DimensionMismatch("Chebyshev values need at least 2 nodes");
}

}  // namespace

std::vector<double> chebyshev_points(int n) {
  if (n < 1) throw InvalidConfiguration("Chebyshev grid degree must be >= 1");
  std::vector<double> pts(n + 1);
  // sin form keeps the grid exactly antisymmetric about 0
  for (int j = 0; j <= n; ++j) {
    pts[j] = std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n));
  }
  pts[0] = 1.0;
  pts[n] = -1.0;
  return pts;
}

RealMatrix differentiation_matrix(int n) {
  if (n < 1) throw InvalidConfiguration("Chebyshev grid degree must be >= 1");
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  RealMatrix d(size, size);
  auto weight = [n](int j) {
    const double c = (j == 0 || j == n) ? 2.0 : 1.0;
    return (j % 2 == 0) ? c : -c;
  };
  const double h = std::numbers::pi / (2.0 * n);
  for (int i = 0; i <= n; ++i) {
    long double row_sum = 0.0L;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      // x_i - x_j = 2 sin((i+j)h) sin((j-i)h) avoids cancellation near the ends
      const double diff = 2.0 * std::sin((i + j) * h) * std::sin((j - i) * h);
      const double entry = weight(i) / (weight(j) * diff);
      d(i, j) = entry;
      row_sum += entry;
    }
    d(i, i) = static_cast<double>(-row_sum);
  }
  return d;
}

ChebGrid make_grid(int n) {
  ChebGrid g;
  g.n = n;
  g.points = chebyshev_points(n);
  g.d1 = differentiation_matrix(n);
  g.d2 = multiply(g.d1, g.d1);
  return g;
}

ChebCoeffs to_coeffs(std::span<const cplx> values) {
  require_length(values);
  const int n = static_cast<int>(values.size()) - 1;
  const auto table = cosine_table(n);
  const std::size_t period = table.size();
  ChebCoeffs out;
  out.coeffs.resize(values.size());
  for (int m = 0; m <= n; ++m) {
    cplx acc{};
    for (int j = 0; j <= n; ++j) {
      const double pj = (j == 0 || j == n) ? 0.5 : 1.0;
      acc += pj * values[j] * table[(static_cast<std::size_t>(m) * j) % period];
    }
    const double pm = (m == 0 || m == n) ? 0.5 : 1.0;
    out.coeffs[m] = acc * (2.0 * pm / n);
  }
  return out;
}

std::vector<cplx> to_values(const ChebCoeffs& c) {
  const std::span<const cplx> coeffs(c.coeffs);
  require_length(coeffs);
  const int n = static_cast<int>(coeffs.size()) - 1;
  const auto table = cosine_table(n);
  const std::size_t period = table.size();
  std::vector<cplx> values(coeffs.size());
  for (int j = 0; j <= n; ++j) {
    cplx acc{};
    for (int m = 0; m <= n; ++m) acc += coeffs[m] * table[(static_cast<std::size_t>(m) * j) % period];
    values[j] = acc;
  }
  return values;
}

cplx clenshaw(const ChebCoeffs& c, cplx l) {
  cplx b1{}, b2{};
  for (std::size_t k = c.coeffs.size(); k-- > 1;) {
    const cplx b0 = 2.0 * l * b1 - b2 + c.coeffs[k];
    b2 = b1;
    b1 = b0;
  }
  const cplx c0 = c.coeffs.empty() ? cplx{} : c.coeffs[0];
  return l * b1 - b2 + c0;
}

cplx eval_at_complex(std::span<const cplx> values, cplx l_star) {
  require_length(values);
  const int n = static_cast<int>(values.size()) - 1;
  const auto pts = chebyshev_points(n);
  cplx numer{}, denom{};
  for (int j = 0; j <= n; ++j) {
    const cplx diff = l_star - pts[j];
    if (diff == cplx{}) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) w *= 0.5;
    const cplx term = w / diff;
    numer += term * values[j];
    denom += term;
  }
  return numer / denom;
}

cplx eval_at(std::span<const cplx> values, double l_star) {
  if (!(l_star >= -1.0 && l_star <= 1.0)) {
    throw std::out_of_range("eval_at: l outside [-1, 1]");
  }
  return eval_at_complex(values, cplx(l_star, 0.0));
}

DecayDiagnostic decay_diagnostic(const ChebCoeffs& c) {
  DecayDiagnostic out;
  const std::size_t count = c.coeffs.size();
  if (count == 0) return out;
  const std::size_t tail = std::max<std::size_t>(1, (count + 9) / 10);
  for (std::size_t k = count - tail; k < count; ++k) {
    out.floor = std::max(out.floor, std::abs(c.coeffs[k]));
  }
  const double threshold = 10.0 * out.floor;
  std::size_t m = count;
  while (m > 0 && std::abs(c.coeffs[m - 1]) <= threshold) --m;
  out.saturation_index = m;
  return out;
}

}  // namespace tritronquee
