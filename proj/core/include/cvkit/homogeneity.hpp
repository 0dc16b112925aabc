// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvkit/duality.hpp"
#include "cvkit/types.hpp"
#include "cvkit/utility.hpp"

namespace cvkit {

/// Identifiers of the scaling laws the toolkit can check numerically.
///   P2a: t^gamma v(m, p; z1) = v(t m, p; t z1)        (joint degree)
///   P2b: t^(eta+theta) v(m, p; z1) = v(t m, p; t z1)  (independent degrees)
///   P2c: t^eta v(m, p; z1) = v(t m, p; z1)
///   P2d: t^theta v(m, p; z1) = v(m, p; t z1)
///   C1 : Marshallian demand is invariant to z1 -> t z1
///   P3 : t e(u, p; z1) = e(t^gamma u, p; t z1)
///   C2 : t e(u, p; z1) = e(t u, p; t z1)              (jointly degree-1)
///   T1 : t^phi e(u, p; z1) = e(u, p; t z1), phi = -theta/eta
///   C3 : Hicksian demand scales by t^phi under z1 -> t z1
///   P4 : MRS between private goods is invariant along rays in x and z1
enum class PropertyId { P2a, P2b, P2c, P2d, C1, P3, C2, T1, C3, P4 };

std::string property_id_name(PropertyId id);
/// Inverse of property_id_name; SpecError on unknown names.
PropertyId property_id_from_name(const std::string& name);

/// One probe of a check: the probe coordinates (meaning depends on the
/// check), the measured value, and the model-implied value.
struct Witness {
  std::vector<double> point;
  double measured;
  double expected;
};

struct PropertyReport {
  PropertyId property_id;
  bool passed;
  double worst_violation;  // max relative (or log-scale) discrepancy seen
  std::vector<Witness> witnesses;
  /// Fitted log-log slope, present for T1 and C3.
  std::optional<double> phi_hat;
  /// Probes skipped because a denominator gradient vanished (P4 only).
  int degenerate_points = 0;

  nlohmann::json to_json() const;
};

/// Least-squares estimate of the homogeneity degree of f along a scaling
/// direction: the slope of ln f(scaled) - ln f(base) against ln t, fitted
/// through the origin.
struct DegreeEstimate {
  double degree;
  double max_log_residual;  // worst |ln f(t.) - ln f(.) - degree ln t|
  std::vector<double> t_grid;
};

/// scaled_indices empty means scale every coordinate; otherwise only the
/// listed coordinates are multiplied by t. The grid needs at least 3
/// distinct positive values spanning a factor >= 4. f must be positive on
/// all probes (DomainError otherwise).
DegreeEstimate estimate_degree(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> base_point,
                               std::span<const std::size_t> scaled_indices,
                               std::span<const double> t_grid);

/// Probe grid used by default throughout: {0.25, 0.5, 2, 4}.
std::vector<double> default_t_grid();

/// Which indirect-utility scaling law to check. All four compare utility
/// LEVELS and are refused (CardinalityError) for non-identity transforms.
enum class IndirectScalingMode { Joint2a, Independent2b, Private2c, Public2d };

PropertyReport check_indirect_utility_scaling(const UtilitySpec& spec, const PriceIncome& pi,
                                              const PublicBundle& z, IndirectScalingMode mode,
                                              std::span<const double> t_grid, double tol,
                                              const SolverConfig& config = {});

/// Which expenditure scaling law to check. JointP3 and Degree1C2 compare
/// cardinal utility targets and are refused for non-identity transforms;
/// HomotheticT1 is ordinal and runs for any transform. In T1 mode phi_hat is
/// the fitted slope of ln e against ln t; specs without independent degrees
/// are judged on the affineness of that relation instead of a declared phi.
enum class ExpenditureScalingMode { JointP3, Degree1C2, HomotheticT1 };

PropertyReport check_expenditure_scaling(const UtilitySpec& spec, double target_utility,
                                         std::span<const double> prices, const PublicBundle& z,
                                         ExpenditureScalingMode mode,
                                         std::span<const double> t_grid, double tol,
                                         const SolverConfig& config = {});

/// C3: every Hicksian component scales by the same t^phi when z1 -> t z1,
/// and cross-good ratios stay fixed. phi comes from the declared degrees
/// when available, otherwise from the fitted slope (linearity judged).
PropertyReport check_hicksian_scaling(const UtilitySpec& spec, double target_utility,
                                      std::span<const double> prices, const PublicBundle& z,
                                      std::span<const double> t_grid, double tol,
                                      const SolverConfig& config = {});

/// C1: Marshallian demand is unchanged by z1 -> t z1. Ordinal; any
/// transform.
PropertyReport check_marshallian_invariance(const UtilitySpec& spec, const PriceIncome& pi,
                                            const PublicBundle& z, std::span<const double> t_grid,
                                            double tol, const SolverConfig& config = {});

/// P4: for every pair of private goods, the finite-difference MRS at
/// (t x, ttilde z1) equals the MRS at (x, z1) for all probe scalings.
/// Pairs whose denominator partial vanishes are skipped and counted.
PropertyReport check_mrs_ray_invariance(const UtilitySpec& spec, const PrivateBundle& x,
                                        const PublicBundle& z, std::span<const double> t_grid,
                                        std::span<const double> ttilde_grid, double tol);

}  // namespace cvkit
