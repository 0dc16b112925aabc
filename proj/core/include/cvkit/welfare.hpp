// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvkit/duality.hpp"
#include "cvkit/types.hpp"
#include "cvkit/utility.hpp"

namespace cvkit {

/// A provision-change scenario: baseline economy (prices, income, provision)
/// and the scale factor t applied to z1.
struct CvQuery {
  UtilitySpec spec;
  PriceIncome pi;
  PublicBundle z;
  double t;
};

/// (t^phi - 1) m: the compensating variation of scaling provision by t for a
/// consumer with income m when expenditure is homogeneous of degree phi in
/// provision. Negative for phi < 0, t > 1 (the consumer would pay for the
/// increase); positive when provision falls.
double cv_from_phi(double phi, double t, double income);

/// Closed form via the spec's declared degrees (phi = -theta/eta).
/// SpecError when the spec has no independent degrees.
double cv_closed_form(const CvQuery& query);

/// Definition-based route: baseline utility from solve_ump, then two
/// solve_emp calls at provision z1 and t z1; returns the expenditure
/// difference e(u0, p; t z1) - e(u0, p; z1).
double cv_brute_force(const CvQuery& query, const SolverConfig& config = {});

/// Per-good split p_n (x'_n - x*_n) between the two Hicksian bundles; sums
/// to the brute-force CV identically.
std::vector<double> cv_decomposition(const CvQuery& query, const SolverConfig& config = {});

/// Everything at once, sharing the solves: closed form (when the spec
/// declares degrees), brute force, decomposition, and the baseline utility.
struct CvResult {
  double t;
  std::optional<double> cv_closed_form;
  double cv_brute_force;
  std::vector<double> per_good;
  std::optional<double> phi_used;
  double baseline_utility;

  nlohmann::json to_json() const;
};
CvResult compute_cv(const CvQuery& query, const SolverConfig& config = {});

/// Closed-form CV probed at t in {1e-1, 1e-3, 1e-6}. For phi < 0 the
/// required compensation grows without bound as provision is withdrawn:
/// t^phi -> +infinity, so CV -> +infinity (direction +1). For phi > 0 the
/// limit is finite (-m); for phi = 0 the CV is identically zero.
struct CvLimitProbe {
  double t;
  double cv;
};
struct CvLimitDiagnostics {
  std::vector<CvLimitProbe> probes;
  bool diverges;
  double direction;  // +1 or -1 when diverging, 0 otherwise
};
CvLimitDiagnostics cv_limit_diagnostics(const CvQuery& query);

}  // namespace cvkit
