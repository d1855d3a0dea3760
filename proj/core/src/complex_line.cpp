#include "tritronquee/complex_line.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tritronquee {

std::pair<double, double> DomainLayout::middle_bounds(std::size_t k) const {
  if (k >= n_middle.size()) throw std::out_of_range("middle subdomain index out of range");
  const double xa = (k == 0) ? x_l : middle_splits.at(k - 1);
  const double xb = (k + 1 == n_middle.size()) ? x_r : middle_splits.at(k);
  return {xa, xb};
}

std::string LineValidation::message() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << "direction " << violations[i].direction << " = " << violations[i].argument
       << " outside the sector |arg z| < 4pi/5";
  }
  return os.str();
}

double reduced_arg(cplx w) {
  const double t = std::arg(w);
  return (t <= -std::numbers::pi) ? std::numbers::pi : t;
}

LineValidation validate_line(const LineSpec& line) {
  LineValidation out;
  if (line.a == cplx{}) {
    out.violations.push_back({"a", 0.0});
    return out;
  }
  const double forward = reduced_arg(line.a);
  const double backward = reduced_arg(-line.a);
  if (!(std::abs(forward) < kSectorHalfAngle)) out.violations.push_back({"arg(a)", forward});
  if (!(std::abs(backward) < kSectorHalfAngle)) out.violations.push_back({"arg(-a)", backward});
  return out;
}

cplx z_of_x(const LineSpec& line, double x) { return line.a * x + line.b; }

bool crosses_branch_cut(const LineSpec& line, double t0, double t1) {
  if (t0 > t1) std::swap(t0, t1);
  const cplx a = line.a;
  const cplx b = line.b;
  if (a.imag() != 0.0) {
    const double t = -b.imag() / a.imag();
    if (t < t0 || t > t1) return false;
    return a.real() * t + b.real() <= 0.0;
  }
  if (b.imag() != 0.0) return false;
  // z real along the whole segment; Re z is affine in t.
  auto re = [&](double t) { return a.real() * t + b.real(); };
  if (std::isinf(t0) && a.real() > 0.0) return true;
  if (std::isinf(t1) && a.real() < 0.0) return true;
  if (!std::isinf(t0) && re(t0) <= 0.0) return true;
  if (!std::isinf(t1) && re(t1) <= 0.0) return true;
  return false;
}

cplx sqrt_branch(const LineSpec& line, double x) {
  const cplx z = z_of_x(line, x);
  if (z == cplx{}) throw ZeroArgument("sqrt_branch: a*x + b = 0");
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw BranchCutCrossed("sqrt_branch: a*x + b lies on the negative real axis");
  }
  return std::sqrt(z);
}

cplx sqrt_branch(const LineSpec& line, double x, double anchor) {
  const cplx root = sqrt_branch(line, x);
  if (crosses_branch_cut(line, anchor, x)) {
    throw BranchCutCrossed("sqrt_branch: segment from the junction crosses the branch cut");
  }
  return root;
}

cplx s_edge(const LineSpec& line, const DomainLayout& layout, Side side) {
  const double x = (side == Side::left) ? layout.x_l : layout.x_r;
  return 1.0 / sqrt_branch(line, x);
}

cplx s_of_l_end(const LineSpec& line, const DomainLayout& layout, Side side, double l) {
  return s_edge(line, layout, side) * (0.5 * (1.0 + l));
}

double x_of_l_middle(const DomainLayout& layout, std::size_t k, double l) {
  const auto [xa, xb] = layout.middle_bounds(k);
  return xa * (0.5 * (1.0 - l)) + xb * (0.5 * (1.0 + l));
}

void check_layout(const LineSpec& line, const DomainLayout& layout) {
  if (line.a == cplx{}) throw InvalidConfiguration("line direction a must be nonzero");
  if (!line.allow_outside_sector) {
    const auto v = validate_line(line);
    if (!v.ok()) throw InvalidConfiguration("sector violation: " + v.message());
  }
  if (!(layout.x_l < layout.x_r)) throw InvalidConfiguration("layout requires x_l < x_r");
  if (layout.n_end_left < 4 || layout.n_end_right < 4) {
    throw InvalidConfiguration("end-domain resolutions must be >= 4");
  }
  if (layout.n_middle.empty()) throw InvalidConfiguration("at least one middle subdomain is required");
  for (int n : layout.n_middle) {
    if (n < 4) throw InvalidConfiguration("middle-domain resolutions must be >= 4");
  }
  if (layout.middle_splits.size() + 1 != layout.n_middle.size()) {
    throw InvalidConfiguration("middle_splits must have one entry fewer than n_middle");
  }
  double prev = layout.x_l;
  for (double s : layout.middle_splits) {
    if (!(s > prev)) throw InvalidConfiguration("middle_splits must increase strictly inside (x_l, x_r)");
    prev = s;
  }
  if (!(prev < layout.x_r)) throw InvalidConfiguration("middle_splits must lie inside (x_l, x_r)");
  if (z_of_x(line, layout.x_l) == cplx{} || z_of_x(line, layout.x_r) == cplx{}) {
    throw InvalidConfiguration("a*x + b vanishes at a junction; s_edge is undefined");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (crosses_branch_cut(line, -inf, layout.x_l)) {
    throw BranchCutCrossed("left end domain crosses the branch cut of sqrt(z)");
  }
  if (crosses_branch_cut(line, layout.x_r, inf)) {
    throw BranchCutCrossed("right end domain crosses the branch cut of sqrt(z)");
  }
}

}  // namespace tritronquee
