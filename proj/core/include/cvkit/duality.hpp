// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cvkit/types.hpp"
#include "cvkit/utility.hpp"

namespace cvkit {

/// Tolerances and budgets shared by the two solvers. Defaults are tight
/// enough that downstream checks can rely on ~1e-8 relative accuracy; the
/// documented guarantee is 1e-4.
struct SolverConfig {
  /// Convergence size in the unconstrained share coordinates of the budget
  /// simplex.
  double share_tol = 1e-10;
  /// Relative width at which the expenditure bisection stops.
  double income_rel_tol = 1e-10;
  /// Objective evaluation budget per call; exceeded -> SolverError.
  int max_evaluations = 400000;
};

/// Utility-maximization solution at given prices, income, and provision.
struct UmpResult {
  PrivateBundle demand;
  double indirect_utility;  // on the reporting scale
  int iterations;           // objective evaluations spent
  double budget_residual;   // |p.x - m| / m, structurally ~0
};

/// Expenditure-minimization solution for a target utility level.
struct EmpResult {
  PrivateBundle hicksian_demand;
  double expenditure;       // equals prices . hicksian_demand
  double achieved_utility;  // >= target by construction
  int iterations;           // objective evaluations spent
};

/// max h(x; z) s.t. p.x <= m, x >= 0. The budget is exhausted structurally
/// (monotone utility); solved over the budget simplex via a logistic share
/// parameterization and derivative-free search. Deterministic. Throws
/// SolverError (best iterate attached) when the optimum is pinned at a share
/// boundary or the evaluation budget runs out. Solves N = 1 in closed form.
/// Targeted and tested for N <= 16.
UmpResult solve_ump(const UtilitySpec& spec, const PriceIncome& pi, const PublicBundle& z,
                    const SolverConfig& config = {});

/// min p.x s.t. h(x; z) >= target. Monotone bisection on income around
/// solve_ump: the bracket grows by doubling from m = 1 (caps 2^60 and 2^-60,
/// BracketError beyond). When the zero bundle already meets the target the
/// result is zero expenditure. achieved_utility >= target and expenditure is
/// within income_rel_tol (relative) of the true minimum.
EmpResult solve_emp(const UtilitySpec& spec, double target_utility,
                    std::span<const double> prices, const PublicBundle& z,
                    const SolverConfig& config = {});

/// Generic kernels behind the solvers, reusable for restricted problems
/// (e.g. private-goods-only subproblems). The objective sees raw bundles.
struct BudgetMaxResult {
  std::vector<double> bundle;
  double value;
  int evaluations;
};
BudgetMaxResult maximize_on_budget(const std::function<double(std::span<const double>)>& objective,
                                   std::span<const double> prices, double income,
                                   const SolverConfig& config = {});

struct ExpenditureMinResult {
  std::vector<double> bundle;
  double expenditure;
  double achieved;
  int evaluations;
};
/// zero_bundle_value: objective at x = 0 when defined there; enables the
/// zero-expenditure fast path for targets already met without spending.
ExpenditureMinResult minimize_expenditure(
    const std::function<double(std::span<const double>)>& objective, double target,
    std::span<const double> prices, std::optional<double> zero_bundle_value,
    const SolverConfig& config = {});

/// Interior closed-form solution of the two-good weighted-power problem
/// u(x; z) = x1^a z11 + x2^a z12 with 0 < a < 1:
///   k  = [p1 z12 / (p2 z11)]^(1/(a-1))   (relative demand x1/x2)
///   x1 = m k / (p1 k + p2),  x2 = m / (p1 k + p2)
///   v  = (k^a z11 + z12) (m / (p1 k + p2))^a
struct PowerWeightedSolution {
  double k;
  std::array<double, 2> demand;
  double indirect_underlying;  // v on the underlying scale

  double alpha;
  double unit_cost;  // p1 k + p2
  double weight;     // k^a z11 + z12

  /// e(u) = (p1 k + p2) [u / (k^a z11 + z12)]^(1/a) for an underlying-scale
  /// target u > 0.
  double expenditure_at(double underlying_target) const;
  /// Hicksian demand (k B, B) with B = [u / (k^a z11 + z12)]^(1/a).
  std::array<double, 2> hicksian_at(double underlying_target) const;
};
PowerWeightedSolution power_weighted_closed_form(double alpha,
                                                 const std::array<double, 2>& prices,
                                                 double income,
                                                 const std::array<double, 2>& z1);

/// Expenditure and Hicksian demand for the log-transformed family at a
/// reporting-scale target: the target maps back through u = exp(h - offset).
struct PowerWeightedEmpSolution {
  double expenditure;
  std::array<double, 2> hicksian;
};
PowerWeightedEmpSolution log_power_weighted_emp_closed_form(double alpha,
                                                            const std::array<double, 2>& prices,
                                                            const std::array<double, 2>& z1,
                                                            double target_utility,
                                                            double offset = 5.0);

/// Expenditure for u(x; z) = (x1 x2)^(1/delta) + (z11 z12)^(1/delta):
///   e(u, p; z) = 2 [u - (z11 z12)^(1/delta)]^(delta/2) (p1 p2)^(1/2),
/// zero when the public goods alone already deliver u.
double additive_separable_expenditure_closed_form(double delta,
                                                  const std::array<double, 2>& prices,
                                                  const std::array<double, 2>& z1,
                                                  double target_utility);

}  // namespace cvkit
