#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tritronquee/chebyshev.hpp"
#include "tritronquee/complex_line.hpp"
#include "tritronquee/dense_linear.hpp"
#include "tritronquee/painleve_model.hpp"

namespace tritronquee {

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 25;
  bool damping = true;
  int max_halvings = 10;
  int series_terms = 6;
};

void check_solver_config(const SolverConfig& config);

/// Raised when the Newton matrix cannot be factored; usually a pole on or
/// near the line, or a configuration outside the pole-free sector.
class SingularJacobian : public Error {
 public:
  SingularJacobian(int iteration, const std::string& what)
      : Error("singular Jacobian at Newton iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

enum class DomainKind { end_left, middle, end_right };

/// Unknowns per domain in x order: v on (-inf, x_l], Omega on each middle
/// subdomain, v on [x_r, inf). `offsets` index the concatenated vector.
template <class C>
struct BasicSolveState {
  std::vector<std::vector<C>> blocks;
  std::vector<std::size_t> offsets;

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    return n;
  }

  std::vector<C> flatten() const {
    std::vector<C> u;
    u.reserve(total_size());
    for (const auto& b : blocks) u.insert(u.end(), b.begin(), b.end());
    return u;
  }

  void assign(std::span<const C> u) {
    if (u.size() != total_size()) throw DimensionMismatch("SolveState::assign: length differs");
    std::size_t k = 0;
    for (auto& b : blocks) {
      for (auto& e : b) e = u[k++];
    }
  }
};

using SolveState = BasicSolveState<cplx>;
using ExtendedState = BasicSolveState<cplx_ext>;

ExtendedState to_extended(const SolveState& state);
SolveState to_double(const ExtendedState& state);

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  int halvings = 0;
  std::vector<double> residual_history;
  double final_residual = 0.0;
  std::vector<double> junction_x;
  std::vector<double> junction_value_mismatch;
  std::vector<double> junction_deriv_mismatch;
  std::vector<std::string> domain_names;
  std::vector<ChebCoeffs> coeff_spectra;
  double jacobian_condition = 0.0;
  /// Sup-norm of the ODE residual of the computed interpolants on grids of twice the degree.
  double refined_ode_residual = 0.0;
};

struct SolutionPoint {
  cplx omega;
  cplx domega_dx;
};

struct Assembly {
  std::vector<cplx> residual;
  DenseMatrix jacobian;
};

/// Grids and operators for one line/layout pair, built once and shared by
/// assembly, Newton and evaluation.
class Discretization {
 public:
  Discretization(const LineSpec& line, const DomainLayout& layout);

  const LineSpec& line() const { return line_; }
  const DomainLayout& layout() const { return layout_; }

  std::size_t domain_count() const { return middles_.size() + 2; }
  std::size_t junction_count() const { return middles_.size() + 1; }
  DomainKind kind(std::size_t domain) const;
  std::string domain_name(std::size_t domain) const;
  std::size_t domain_size(std::size_t domain) const;
  double junction_x(std::size_t junction) const;

  const EndDomainOperator& end(Side side) const { return side == Side::left ? left_ : right_; }
  const MiddleDomainOperator& middle(std::size_t k) const { return middles_.at(k); }

  SolveState zero_state() const;
  SolveState initial_iterate(int series_terms) const;

  template <class C>
  std::vector<C> residual(const BasicSolveState<C>& state) const;
  Assembly assemble(const SolveState& state) const;

  /// Domain containing x; junction abscissas belong to the middle subdomain on their left/right.
  std::size_t domain_of(double x) const;
  SolutionPoint evaluate(const SolveState& state, double x) const;
  SolutionPoint evaluate_in_domain(const SolveState& state, std::size_t domain, double x) const;

  /// |Omega_left - Omega_right| and |Omega_x left - Omega_x right| at a junction.
  template <class C>
  std::pair<double, double> junction_mismatch(const BasicSolveState<C>& state, std::size_t junction) const;

  double refined_ode_residual(const SolveState& state) const;

 private:
  struct LinearForm {
    std::size_t domain = 0;
    std::vector<cplx> coeffs;  // over the domain's block
    cplx constant;
  };

  struct RowReplacement {
    std::size_t domain = 0;
    std::size_t row = 0;
    std::size_t junction = 0;
    bool derivative = false;
  };

  std::size_t junction_node(std::size_t domain, bool junction_on_right) const;
  LinearForm value_form(std::size_t domain, bool junction_on_right) const;
  LinearForm derivative_form(std::size_t domain, bool junction_on_right) const;
  template <class C>
  static C apply(const LinearForm& form, const BasicSolveState<C>& state);
  template <class C>
  std::vector<C> block_residual(const BasicSolveState<C>& state, std::size_t domain) const;
  DenseMatrix block_jacobian(const SolveState& state, std::size_t domain) const;

  LineSpec line_;
  DomainLayout layout_;
  EndDomainOperator left_;
  EndDomainOperator right_;
  std::vector<MiddleDomainOperator> middles_;
  std::vector<RowReplacement> replacements_;
};

struct SolveResult {
  std::shared_ptr<const Discretization> discretization;
  SolveState state;
  SolveReport report;

  SolutionPoint evaluate(double x) const { return discretization->evaluate(state, x); }
};

SolveState initial_iterate(const LineSpec& line, const DomainLayout& layout, int series_terms);
Assembly assemble(const LineSpec& line, const DomainLayout& layout, const SolveState& state);

/// Newton iteration on the tau-modified collocation system. Returns with
/// report.converged = false when max_iterations is exhausted; throws
/// SingularJacobian if a Newton matrix cannot be factored.
SolveResult newton_solve(const LineSpec& line, const DomainLayout& layout, const SolverConfig& config = {});

SolutionPoint evaluate_solution(const SolveState& state, const LineSpec& line, const DomainLayout& layout,
                                double x_star);

}  // namespace tritronquee
