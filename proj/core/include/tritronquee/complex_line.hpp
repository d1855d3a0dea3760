#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tritronquee/errors.hpp"

namespace tritronquee {

using cplx = std::complex<double>;

/// Branch selector of the leading behaviour Omega ~ sigma * sqrt(z/3).
enum class Sign : int { minus = -1, plus = 1 };

constexpr double to_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }

enum class Side { left, right };

/// Half-opening of the pole-free sector |arg z| < 4*pi/5.
inline constexpr double kSectorHalfAngle = 0.8 * 3.14159265358979323846;

/// The straight line z = a*x + b, x real.
struct LineSpec {
  cplx a{0.0, 1.0};
  cplx b{0.0, 0.0};
  Sign sigma = Sign::plus;
  bool allow_outside_sector = false;
};

/// Partition of the real parameter x into two unbounded end domains,
/// (-inf, x_l] and [x_r, inf), and one or more middle subdomains.
struct DomainLayout {
  double x_l = -10.0;
  double x_r = 10.0;
  int n_end_left = 20;
  std::vector<int> n_middle{256};
  int n_end_right = 20;
  std::vector<double> middle_splits;

  std::size_t middle_count() const { return n_middle.size(); }

  /// Endpoints [x_a, x_b] of middle subdomain k.
  std::pair<double, double> middle_bounds(std::size_t k) const;
};

struct SectorViolation {
  std::string direction;  // "arg(a)" or "arg(-a)"
  double argument = 0.0;  // reduced to (-pi, pi]
};

struct LineValidation {
  std::vector<SectorViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

/// Argument reduced to (-pi, pi].
double reduced_arg(cplx w);

/// Checks that both asymptotic directions of the line lie strictly inside
/// the pole-free sector. Ignores allow_outside_sector; callers decide.
LineValidation validate_line(const LineSpec& line);

/// Throws InvalidConfiguration if the layout or its combination with the
/// line is unusable, and BranchCutCrossed if an end domain's ray crosses
/// the negative real axis.
void check_layout(const LineSpec& line, const DomainLayout& layout);

cplx z_of_x(const LineSpec& line, double x);

/// True if a*t + b meets the closed negative real axis for t between t0
/// and t1. Either bound may be infinite.
bool crosses_branch_cut(const LineSpec& line, double t0, double t1);

/// Principal square root of a*x + b. Throws ZeroArgument at z = 0 and
/// BranchCutCrossed when z lies on the cut.
cplx sqrt_branch(const LineSpec& line, double x);

/// As above, additionally rejecting a path from `anchor` to x that crosses the cut.
cplx sqrt_branch(const LineSpec& line, double x, double anchor);

/// s at the junction of an end domain: 1/sqrt(a*x_edge + b).
cplx s_edge(const LineSpec& line, const DomainLayout& layout, Side side);

/// s = s_edge * (1 + l)/2; l = -1 is the point at infinity.
cplx s_of_l_end(const LineSpec& line, const DomainLayout& layout, Side side, double l);

/// x = x_a (1 - l)/2 + x_b (1 + l)/2 on middle subdomain k.
double x_of_l_middle(const DomainLayout& layout, std::size_t k, double l);

}  // namespace tritronquee
