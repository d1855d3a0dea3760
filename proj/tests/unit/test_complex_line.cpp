#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "tritronquee/complex_line.hpp"
#include "tritronquee/errors.hpp"

using namespace tritronquee;

namespace {

LineSpec line_with(cplx a, cplx b = {}) {
  LineSpec line;
  line.a = a;
  line.b = b;
  return line;
}

}  // namespace

TEST_CASE("validate_line accepts the imaginary axis") {
  const auto v = validate_line(line_with({0.0, 1.0}));
  CHECK(v.ok());
}

TEST_CASE("validate_line accepts the near-Stokes direction") {
  const auto v = validate_line(line_with(std::polar(1.0, 0.8 * std::numbers::pi - 0.05)));
  CHECK(v.ok());
}

TEST_CASE("validate_line rejects the real axis through arg(-a)") {
  const auto v = validate_line(line_with(1.0));
  REQUIRE_FALSE(v.ok());
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].direction == "arg(-a)");
  CHECK(v.violations[0].argument == doctest::Approx(std::numbers::pi));
  CHECK(v.message().find("arg(-a)") != std::string::npos);
}

TEST_CASE("validate_line reports both directions when both are outside") {
  // arg(a) = 0.9 pi and arg(-a) = -0.1 pi: only arg(a) is outside.
  const auto one = validate_line(line_with(std::polar(1.0, 0.9 * std::numbers::pi)));
  REQUIRE(one.violations.size() == 1);
  CHECK(one.violations[0].direction == "arg(a)");
}

TEST_CASE("validate_line is scale invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> logr(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx a = std::polar(1.0, angle(rng));
    const double r = std::exp(logr(rng));
    const auto v1 = validate_line(line_with(a));
    const auto v2 = validate_line(line_with(a * r));
    REQUIRE(v1.violations.size() == v2.violations.size());
    for (std::size_t i = 0; i < v1.violations.size(); ++i) {
      CHECK(v1.violations[i].direction == v2.violations[i].direction);
    }
  }
}

TEST_CASE("z_of_x") {
  CHECK(z_of_x(line_with({0, 1}), 2.0) == cplx(0, 2));
  CHECK(z_of_x(line_with({0, 1}), 0.0) == cplx(0, 0));
  CHECK(z_of_x(line_with({1, 1}, 3.0), 1.0) == cplx(4, 1));
}

TEST_CASE("sqrt_branch examples") {
  const auto line = line_with({0, 1});
  const cplx r4 = sqrt_branch(line, 4.0);
  CHECK(std::abs(r4 - std::sqrt(2.0) * cplx(1, 1)) < 1e-15);
  const cplx rm4 = sqrt_branch(line, -4.0);
  CHECK(std::abs(rm4 - std::sqrt(2.0) * cplx(1, -1)) < 1e-15);
  CHECK_THROWS_AS(sqrt_branch(line_with(1.0), -1.0), BranchCutCrossed);
  CHECK_THROWS_AS(sqrt_branch(line, 0.0), ZeroArgument);
}

TEST_CASE("sqrt_branch rejects a path across the cut") {
  // z = -5 + i x crosses the negative real axis at x = 0.
  const auto line = line_with({0, 1}, -5.0);
  CHECK_NOTHROW(sqrt_branch(line, 3.0, 1.0));
  CHECK_THROWS_AS(sqrt_branch(line, -3.0, 1.0), BranchCutCrossed);
}

TEST_CASE("sqrt_branch squares back to z") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const auto line = line_with(std::polar(1.3, 0.4), cplx(0.5, 2.0));
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    const cplx z = z_of_x(line, x);
    if (z.imag() == 0.0 && z.real() <= 0.0) continue;
    const cplx r = sqrt_branch(line, x);
    CHECK(std::abs(r * r - z) <= 1e-14 * std::abs(z) + 1e-300);
    CHECK(r.real() >= 0.0);
  }
}

TEST_CASE("s_of_l_end endpoints and midpoint") {
  const auto line = line_with({0, 1});
  DomainLayout layout;
  const cplx edge = 1.0 / std::sqrt(cplx(0, 10));
  CHECK(s_of_l_end(line, layout, Side::right, -1.0) == cplx(0, 0));
  CHECK(s_of_l_end(line, layout, Side::left, -1.0) == cplx(0, 0));
  CHECK(std::abs(s_of_l_end(line, layout, Side::right, 1.0) - edge) < 1e-15);
  CHECK(std::abs(s_of_l_end(line, layout, Side::right, 0.0) - edge / 2.0) < 1e-15);
  CHECK(std::abs(s_edge(line, layout, Side::left) - 1.0 / std::sqrt(cplx(0, -10))) < 1e-15);
}

TEST_CASE("s_of_l_end is linear in l") {
  const auto line = line_with(std::polar(1.0, 2.0), cplx(0.3, -0.2));
  DomainLayout layout;
  layout.x_l = -7.0;
  layout.x_r = 9.0;
  for (Side side : {Side::left, Side::right}) {
    const cplx s0 = s_of_l_end(line, layout, side, -1.0);
    const cplx s1 = s_of_l_end(line, layout, side, 1.0);
    for (double l = -1.0; l <= 1.0; l += 0.125) {
      const cplx expected = s0 + (s1 - s0) * (l + 1.0) / 2.0;
      CHECK(std::abs(s_of_l_end(line, layout, side, l) - expected) < 1e-15);
    }
  }
}

TEST_CASE("x_of_l_middle") {
  DomainLayout layout;
  CHECK(x_of_l_middle(layout, 0, 0.0) == 0.0);
  CHECK(x_of_l_middle(layout, 0, -1.0) == -10.0);
  DomainLayout split = layout;
  split.n_middle = {64, 64};
  split.middle_splits = {0.0};
  CHECK(x_of_l_middle(split, 1, 1.0) == 10.0);
  CHECK(x_of_l_middle(split, 0, 1.0) == 0.0);
  CHECK_THROWS_AS(x_of_l_middle(split, 2, 0.0), std::out_of_range);

  for (std::size_t k = 0; k < 2; ++k) {
    double prev = -1e300;
    for (double l = -1.0; l <= 1.0; l += 0.01) {
      const double x = x_of_l_middle(split, k, l);
      CHECK(x > prev);
      prev = x;
    }
  }
}

TEST_CASE("check_layout invariants") {
  const auto line = line_with({0, 1});
  DomainLayout ok;
  CHECK_NOTHROW(check_layout(line, ok));

  auto bad = ok;
  bad.x_l = 10.0;
  CHECK_THROWS_AS(check_layout(line, bad), InvalidConfiguration);

  bad = ok;
  bad.n_end_left = 3;
  CHECK_THROWS_AS(check_layout(line, bad), InvalidConfiguration);

  bad = ok;
  bad.n_middle = {64, 64};
  CHECK_THROWS_AS(check_layout(line, bad), InvalidConfiguration);
  bad.middle_splits = {12.0};
  CHECK_THROWS_AS(check_layout(line, bad), InvalidConfiguration);
  bad.middle_splits = {1.0};
  CHECK_NOTHROW(check_layout(line, bad));

  // a*x_l + b = 0
  bad = ok;
  CHECK_THROWS_AS(check_layout(line_with({0, 1}, cplx(0, 10)), bad), InvalidConfiguration);

  CHECK_THROWS_AS(check_layout(line_with(1.0), ok), InvalidConfiguration);
}

TEST_CASE("check_layout detects end rays crossing the cut") {
  // z = -5 + i(x + 20): crosses Re z < 0 at x = -20, inside domain I.
  CHECK_THROWS_AS(check_layout(line_with({0, 1}, cplx(-5, 20)), DomainLayout{}), BranchCutCrossed);
  // The override skips the sector check but not the branch check.
  auto line = line_with(1.0);
  line.allow_outside_sector = true;
  CHECK_THROWS_AS(check_layout(line, DomainLayout{}), BranchCutCrossed);
}

TEST_CASE("crosses_branch_cut") {
  const auto line = line_with({0, 1}, -5.0);
  CHECK(crosses_branch_cut(line, -1.0, 1.0));
  CHECK_FALSE(crosses_branch_cut(line, 0.5, 1.0));
  CHECK_FALSE(crosses_branch_cut(line_with({0, 1}, 5.0), -HUGE_VAL, HUGE_VAL));
  CHECK(crosses_branch_cut(line_with(1.0), -HUGE_VAL, 0.0));
}
