#include "tritronquee/bvp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tritronquee {

void check_solver_config(const SolverConfig& config) {
  if (!(config.tolerance > 0.0)) throw InvalidConfiguration("solver tolerance must be > 0");
  if (config.max_iterations < 1) throw InvalidConfiguration("max_iterations must be >= 1");
  if (config.max_halvings < 0) throw InvalidConfiguration("max_halvings must be >= 0");
  if (config.series_terms < 0) throw InvalidConfiguration("series_terms must be >= 0");
}

ExtendedState to_extended(const SolveState& state) {
  ExtendedState out;
  out.offsets = state.offsets;
  for (const auto& b : state.blocks) {
    auto& e = out.blocks.emplace_back(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) e[j] = cplx_ext(b[j].real(), b[j].imag());
  }
  return out;
}

SolveState to_double(const ExtendedState& state) {
  SolveState out;
  out.offsets = state.offsets;
  for (const auto& b : state.blocks) {
    auto& d = out.blocks.emplace_back(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      d[j] = cplx(static_cast<double>(b[j].real()), static_cast<double>(b[j].imag()));
    }
  }
  return out;
}

namespace {

template <class C>
double sup_norm(const std::vector<C>& f) {
  long double m = 0;
  for (const auto& v : f) {
    const long double a = std::abs(v);
    if (std::isnan(a)) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, a);
  }
  return static_cast<double>(m);
}

}  // namespace

Discretization::Discretization(const LineSpec& line, const DomainLayout& layout)
    : line_(line), layout_(layout) {
  check_layout(line_, layout_);

  left_ = make_end_operator(std::make_shared<const ChebGrid>(make_grid(layout_.n_end_left)),
                            s_edge(line_, layout_, Side::left), Side::left);
  right_ = make_end_operator(std::make_shared<const ChebGrid>(make_grid(layout_.n_end_right)),
                             s_edge(line_, layout_, Side::right), Side::right);
  for (std::size_t k = 0; k < layout_.middle_count(); ++k) {
    const auto [xa, xb] = layout_.middle_bounds(k);
    middles_.push_back(
        make_middle_operator(line_, std::make_shared<const ChebGrid>(make_grid(layout_.n_middle[k])), xa, xb));
  }

  // Value continuity goes into the left block's junction row, derivative
  // continuity into the right block's; at x_r the end block takes the value row.
  const std::size_t m = middles_.size();
  for (std::size_t j = 0; j <= m; ++j) {
    RowReplacement value{}, deriv{};
    value.junction = deriv.junction = j;
    deriv.derivative = true;
    if (j == m) {
      value.domain = m + 1;
      value.row = 0;
      deriv.domain = m;
      deriv.row = 0;
    } else {
      value.domain = j;
      value.row = 0;
      deriv.domain = j + 1;
      deriv.row = domain_size(j + 1) - 1;
    }
    replacements_.push_back(value);
    replacements_.push_back(deriv);
  }
}

DomainKind Discretization::kind(std::size_t domain) const {
  if (domain == 0) return DomainKind::end_left;
  if (domain == middles_.size() + 1) return DomainKind::end_right;
  if (domain > middles_.size() + 1) throw std::out_of_range("domain index out of range");
  return DomainKind::middle;
}

std::string Discretization::domain_name(std::size_t domain) const {
  switch (kind(domain)) {
    case DomainKind::end_left:
      return "domain_I";
    case DomainKind::end_right:
      return "domain_III";
    case DomainKind::middle:
      break;
  }
  if (middles_.size() == 1) return "domain_II";
  return "domain_II_" + std::to_string(domain);
}

std::size_t Discretization::domain_size(std::size_t domain) const {
  switch (kind(domain)) {
    case DomainKind::end_left:
      return left_.size();
    case DomainKind::end_right:
      return right_.size();
    case DomainKind::middle:
      break;
  }
  return middles_[domain - 1].size();
}

double Discretization::junction_x(std::size_t junction) const {
  if (junction == 0) return layout_.x_l;
  if (junction == middles_.size()) return layout_.x_r;
  return layout_.middle_splits.at(junction - 1);
}

SolveState Discretization::zero_state() const {
  SolveState state;
  std::size_t offset = 0;
  for (std::size_t d = 0; d < domain_count(); ++d) {
    state.offsets.push_back(offset);
    state.blocks.emplace_back(domain_size(d), cplx{});
    offset += domain_size(d);
  }
  return state;
}

SolveState Discretization::initial_iterate(int series_terms) const {
  auto state = zero_state();
  const auto series = asymptotic_coefficients(line_.sigma, series_terms);
  const cplx omega_l = asymptotic_eval(series, z_of_x(line_, layout_.x_l));
  const cplx omega_r = asymptotic_eval(series, z_of_x(line_, layout_.x_r));
  const double width = layout_.x_r - layout_.x_l;
  for (std::size_t k = 0; k < middles_.size(); ++k) {
    const auto& op = middles_[k];
    auto& block = state.blocks[k + 1];
    for (std::size_t j = 0; j < block.size(); ++j) {
      const double l = op.grid->points[j];
      const double x = op.x_a * (0.5 * (1.0 - l)) + op.x_b * (0.5 * (1.0 + l));
      const double t = (x - layout_.x_l) / width;
      block[j] = omega_l * (1.0 - t) + omega_r * t;
    }
  }
  return state;
}

std::size_t Discretization::junction_node(std::size_t domain, bool junction_on_right) const {
  switch (kind(domain)) {
    case DomainKind::end_left:
    case DomainKind::end_right:
      return 0;
    case DomainKind::middle:
      break;
  }
  return junction_on_right ? 0 : domain_size(domain) - 1;
}

Discretization::LinearForm Discretization::value_form(std::size_t domain, bool junction_on_right) const {
  LinearForm form;
  form.domain = domain;
  form.coeffs.assign(domain_size(domain), cplx{});
  const std::size_t node = junction_node(domain, junction_on_right);
  form.coeffs[node] = 1.0;
  if (kind(domain) != DomainKind::middle) {
    const auto& op = kind(domain) == DomainKind::end_left ? left_ : right_;
    form.constant = omega_from_v(cplx{}, op.s_values[node], line_.sigma);
  }
  return form;
}

Discretization::LinearForm Discretization::derivative_form(std::size_t domain, bool junction_on_right) const {
  LinearForm form;
  form.domain = domain;
  const std::size_t node = junction_node(domain, junction_on_right);
  if (kind(domain) == DomainKind::middle) {
    const auto& op = middles_[domain - 1];
    auto r = op.d1_z.row(node);
    form.coeffs.assign(r.begin(), r.end());
    for (auto& c : form.coeffs) c *= line_.a;
    return form;
  }
  const auto& op = kind(domain) == DomainKind::end_left ? left_ : right_;
  const cplx s = op.s_values[node];
  const cplx scale = line_.a * (-0.5 * s * s * s);
  auto r = op.d1_s.row(node);
  form.coeffs.assign(r.begin(), r.end());
  for (auto& c : form.coeffs) c *= scale;
  form.constant = line_.a * domega_dz_from_vs(cplx{}, s, line_.sigma);
  return form;
}

template <class C>
C Discretization::apply(const LinearForm& form, const BasicSolveState<C>& state) {
  using R = typename C::value_type;
  const auto& block = state.blocks[form.domain];
  R re = static_cast<R>(form.constant.real());
  R im = static_cast<R>(form.constant.imag());
  for (std::size_t j = 0; j < block.size(); ++j) {
    const R cr = form.coeffs[j].real(), ci = form.coeffs[j].imag();
    re += cr * block[j].real() - ci * block[j].imag();
    im += cr * block[j].imag() + ci * block[j].real();
  }
  return C(re, im);
}

template <class C>
std::vector<C> Discretization::block_residual(const BasicSolveState<C>& state, std::size_t domain) const {
  const std::span<const C> block(state.blocks[domain]);
  switch (kind(domain)) {
    case DomainKind::end_left:
      return residual_end(left_, block, line_.sigma);
    case DomainKind::end_right:
      return residual_end(right_, block, line_.sigma);
    case DomainKind::middle:
      break;
  }
  return residual_middle(middles_[domain - 1], block);
}

DenseMatrix Discretization::block_jacobian(const SolveState& state, std::size_t domain) const {
  switch (kind(domain)) {
    case DomainKind::end_left:
      return jacobian_end(left_, state.blocks[domain], line_.sigma);
    case DomainKind::end_right:
      return jacobian_end(right_, state.blocks[domain], line_.sigma);
    case DomainKind::middle:
      break;
  }
  return jacobian_middle(middles_[domain - 1], state.blocks[domain]);
}

template <class C>
std::vector<C> Discretization::residual(const BasicSolveState<C>& state) const {
  if (state.blocks.size() != domain_count()) throw DimensionMismatch("residual: state has wrong block count");
  std::vector<std::vector<C>> rows(domain_count());
  for (std::size_t d = 0; d < domain_count(); ++d) rows[d] = block_residual(state, d);
  for (const auto& rep : replacements_) {
    const std::size_t j = rep.junction;
    const auto left = rep.derivative ? derivative_form(j, true) : value_form(j, true);
    const auto right = rep.derivative ? derivative_form(j + 1, false) : value_form(j + 1, false);
    rows[rep.domain][rep.row] = apply(left, state) - apply(right, state);
  }
  std::vector<C> f;
  f.reserve(state.total_size());
  for (const auto& r : rows) f.insert(f.end(), r.begin(), r.end());
  return f;
}

template std::vector<cplx> Discretization::residual(const SolveState&) const;
template std::vector<cplx_ext> Discretization::residual(const ExtendedState&) const;

Assembly Discretization::assemble(const SolveState& state) const {
  Assembly out;
  out.residual = residual(state);
  const std::size_t n = state.total_size();
  out.jacobian = DenseMatrix(n, n);
  for (std::size_t d = 0; d < domain_count(); ++d) {
    const auto block = block_jacobian(state, d);
    const std::size_t off = state.offsets[d];
    for (std::size_t i = 0; i < block.rows(); ++i) {
      auto src = block.row(i);
      std::copy(src.begin(), src.end(), out.jacobian.row(off + i).begin() + static_cast<std::ptrdiff_t>(off));
    }
  }
  for (const auto& rep : replacements_) {
    const std::size_t j = rep.junction;
    const auto left = rep.derivative ? derivative_form(j, true) : value_form(j, true);
    const auto right = rep.derivative ? derivative_form(j + 1, false) : value_form(j + 1, false);
    auto row = out.jacobian.row(state.offsets[rep.domain] + rep.row);
    std::fill(row.begin(), row.end(), cplx{});
    for (std::size_t k = 0; k < left.coeffs.size(); ++k) row[state.offsets[left.domain] + k] += left.coeffs[k];
    for (std::size_t k = 0; k < right.coeffs.size(); ++k) row[state.offsets[right.domain] + k] -= right.coeffs[k];
  }
  return out;
}

std::size_t Discretization::domain_of(double x) const {
  if (x < layout_.x_l) return 0;
  if (x > layout_.x_r) return middles_.size() + 1;
  for (std::size_t k = 0; k < middles_.size(); ++k) {
    if (x <= middles_[k].x_b) return k + 1;
  }
  return middles_.size();
}

SolutionPoint Discretization::evaluate_in_domain(const SolveState& state, std::size_t domain, double x) const {
  const auto& block = state.blocks.at(domain);
  if (kind(domain) == DomainKind::middle) {
    const auto& op = middles_[domain - 1];
    double l = (2.0 * x - op.x_a - op.x_b) / (op.x_b - op.x_a);
    if (l < -1.0 - 1e-12 || l > 1.0 + 1e-12) throw std::out_of_range("evaluate: x outside middle subdomain");
    l = std::clamp(l, -1.0, 1.0);
    const auto dl = multiply(op.grid->d1, block);
    return {eval_at(block, l), eval_at(dl, l) * (2.0 / (op.x_b - op.x_a))};
  }
  const auto& op = kind(domain) == DomainKind::end_left ? left_ : right_;
  const double edge = kind(domain) == DomainKind::end_left ? layout_.x_l : layout_.x_r;
  if (kind(domain) == DomainKind::end_left ? x > edge : x < edge) {
    throw std::out_of_range("evaluate: x outside end domain");
  }
  const cplx s = 1.0 / sqrt_branch(line_, x, edge);
  const cplx l = 2.0 * s / op.s_edge - 1.0;
  const auto vs = multiply(op.d1_s, block);
  const cplx v = eval_at_complex(block, l);
  const cplx v_s = eval_at_complex(vs, l);
  return {omega_from_v(v, s, line_.sigma), line_.a * domega_dz_from_vs(v_s, s, line_.sigma)};
}

SolutionPoint Discretization::evaluate(const SolveState& state, double x) const {
  return evaluate_in_domain(state, domain_of(x), x);
}

template <class C>
std::pair<double, double> Discretization::junction_mismatch(const BasicSolveState<C>& state,
                                                            std::size_t junction) const {
  if (junction >= junction_count()) throw std::out_of_range("junction index out of range");
  const auto value = apply(value_form(junction, true), state) - apply(value_form(junction + 1, false), state);
  const auto deriv =
      apply(derivative_form(junction, true), state) - apply(derivative_form(junction + 1, false), state);
  return {static_cast<double>(std::abs(value)), static_cast<double>(std::abs(deriv))};
}

template std::pair<double, double> Discretization::junction_mismatch(const SolveState&, std::size_t) const;
template std::pair<double, double> Discretization::junction_mismatch(const ExtendedState&, std::size_t) const;

double Discretization::refined_ode_residual(const SolveState& state) const {
  double worst = 0.0;
  for (std::size_t d = 0; d < domain_count(); ++d) {
    const auto& block = state.blocks[d];
    const int n = static_cast<int>(block.size()) - 1;
    auto grid = std::make_shared<const ChebGrid>(make_grid(2 * n));
    const auto coeffs = to_coeffs(block);
    std::vector<cplx> fine(grid->size());
    for (std::size_t j = 0; j < fine.size(); ++j) fine[j] = clenshaw(coeffs, grid->points[j]);
    std::vector<cplx> r;
    if (kind(d) == DomainKind::middle) {
      const auto& op = middles_[d - 1];
      r = residual_middle(make_middle_operator(line_, grid, op.x_a, op.x_b), fine);
    } else {
      const auto& op = kind(d) == DomainKind::end_left ? left_ : right_;
      r = residual_end(make_end_operator(grid, op.s_edge, op.side), fine, line_.sigma);
    }
    worst = std::max(worst, norm_inf(r));
  }
  return worst;
}

SolveState initial_iterate(const LineSpec& line, const DomainLayout& layout, int series_terms) {
  return Discretization(line, layout).initial_iterate(series_terms);
}

Assembly assemble(const LineSpec& line, const DomainLayout& layout, const SolveState& state) {
  return Discretization(line, layout).assemble(state);
}

SolutionPoint evaluate_solution(const SolveState& state, const LineSpec& line, const DomainLayout& layout,
                                double x_star) {
  return Discretization(line, layout).evaluate(state, x_star);
}

SolveResult newton_solve(const LineSpec& line, const DomainLayout& layout, const SolverConfig& config) {
  check_solver_config(config);
  auto disc = std::make_shared<const Discretization>(line, layout);
  SolveResult result;
  result.discretization = disc;
  auto& report = result.report;

  // Iterates and residuals are carried in extended precision; Jacobians and
  // the linear solve stay in double.
  ExtendedState iterate = to_extended(disc->initial_iterate(config.series_terms));
  ExtendedState trial = iterate;
  double norm = sup_norm(disc->residual(iterate));
  report.residual_history.push_back(norm);

  while (!(norm <= config.tolerance) && report.iterations < config.max_iterations) {
    const auto system = disc->assemble(to_double(iterate));
    std::vector<cplx> step;
    try {
      LuFactorization lu(system.jacobian);
      std::vector<cplx> rhs(system.residual.size());
      const auto f = disc->residual(iterate);
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = -cplx(static_cast<double>(f[i].real()), static_cast<double>(f[i].imag()));
      }
      step = lu.solve(rhs);
    } catch (const SingularMatrix& e) {
      throw SingularJacobian(report.iterations, e.what());
    }
    for (const cplx& dj : step) {
      if (!std::isfinite(dj.real()) || !std::isfinite(dj.imag())) {
        throw SingularJacobian(report.iterations, "Newton step is not finite");
      }
    }

    long double lambda = 1.0L;
    double trial_norm = 0.0;
    for (int halving = 0;; ++halving) {
      for (std::size_t d = 0; d < iterate.blocks.size(); ++d) {
        const std::size_t off = iterate.offsets[d];
        for (std::size_t j = 0; j < iterate.blocks[d].size(); ++j) {
          const cplx dj = step[off + j];
          trial.blocks[d][j] = iterate.blocks[d][j] + lambda * cplx_ext(dj.real(), dj.imag());
        }
      }
      trial_norm = sup_norm(disc->residual(trial));
      if (!config.damping || trial_norm <= norm || halving >= config.max_halvings) break;
      lambda *= 0.5L;
      ++report.halvings;
    }

    std::swap(iterate, trial);
    norm = trial_norm;
    ++report.iterations;
    report.residual_history.push_back(norm);
  }

  result.state = to_double(iterate);
  report.final_residual = norm;
  report.converged = std::isfinite(norm) && norm <= config.tolerance;

  for (std::size_t j = 0; j < disc->junction_count(); ++j) {
    const auto [value, deriv] = disc->junction_mismatch(iterate, j);
    report.junction_x.push_back(disc->junction_x(j));
    report.junction_value_mismatch.push_back(value);
    report.junction_deriv_mismatch.push_back(deriv);
  }
  for (std::size_t d = 0; d < disc->domain_count(); ++d) {
    report.domain_names.push_back(disc->domain_name(d));
    report.coeff_spectra.push_back(to_coeffs(result.state.blocks[d]));
  }
  try {
    report.jacobian_condition = LuFactorization(disc->assemble(result.state).jacobian).condition_estimate();
  } catch (const SingularMatrix&) {
    report.jacobian_condition = std::numeric_limits<double>::infinity();
  }
  report.refined_ode_residual = disc->refined_ode_residual(result.state);
  return result;
}

}  // namespace tritronquee
