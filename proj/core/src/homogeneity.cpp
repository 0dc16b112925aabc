// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/homogeneity.hpp"

#include <algorithm>
#include <cmath>

#include "cvkit/numerics.hpp"

namespace cvkit {

namespace {

constexpr double kTiny = 1e-300;

double rel_diff(double measured, double expected) {
  return std::fabs(measured - expected) / std::max(std::fabs(expected), kTiny);
}

void validate_probe_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw DomainError("t_grid must not be empty");
  for (double t : t_grid)
    if (!std::isfinite(t) || t <= 0.0) throw DomainError("t_grid values must be > 0");
}

/// Through-origin least-squares slope of y against x. Requires some x != 0.
double slope_through_origin(std::span<const double> x, std::span<const double> y) {
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (sxx == 0.0) throw DomainError("degree fit needs at least one t != 1");
  return sxy / sxx;
}

HomogeneityDegrees require_degrees(const UtilitySpec& spec, const char* what) {
  const std::optional<HomogeneityDegrees> degrees = spec.independent_degrees();
  if (!degrees)
    throw SpecError(std::string(what) + " needs declared independent degrees (eta, theta)");
  return *degrees;
}

void require_identity_transform(const UtilitySpec& spec, const char* what) {
  if (!spec.transform().is_identity())
    throw CardinalityError(std::string(what) +
                           " compares cardinal levels; refused for non-identity transforms");
}

}  // namespace

std::string property_id_name(PropertyId id) {
  switch (id) {
    case PropertyId::P2a: return "P2a";
    case PropertyId::P2b: return "P2b";
    case PropertyId::P2c: return "P2c";
    case PropertyId::P2d: return "P2d";
    case PropertyId::C1: return "C1";
    case PropertyId::P3: return "P3";
    case PropertyId::C2: return "C2";
    case PropertyId::T1: return "T1";
    case PropertyId::C3: return "C3";
    case PropertyId::P4: return "P4";
  }
  throw SpecError("unknown property id");
}

PropertyId property_id_from_name(const std::string& name) {
  static const std::pair<const char*, PropertyId> table[] = {
      {"P2a", PropertyId::P2a}, {"P2b", PropertyId::P2b}, {"P2c", PropertyId::P2c},
      {"P2d", PropertyId::P2d}, {"C1", PropertyId::C1},   {"P3", PropertyId::P3},
      {"C2", PropertyId::C2},   {"T1", PropertyId::T1},   {"C3", PropertyId::C3},
      {"P4", PropertyId::P4},
  };
  for (const auto& [n, id] : table)
    if (name == n) return id;
  throw SpecError("unknown property id \"" + name + "\"");
}

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j;
  j["property_id"] = property_id_name(property_id);
  j["passed"] = passed;
  j["worst_violation"] = worst_violation;
  nlohmann::json ws = nlohmann::json::array();
  for (const Witness& w : witnesses)
    ws.push_back({{"point", w.point}, {"measured", w.measured}, {"expected", w.expected}});
  j["witnesses"] = std::move(ws);
  if (phi_hat) j["phi_hat"] = *phi_hat;
  j["degenerate_points"] = degenerate_points;
  return j;
}

std::vector<double> default_t_grid() { return {0.25, 0.5, 2.0, 4.0}; }

DegreeEstimate estimate_degree(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> base_point,
                               std::span<const std::size_t> scaled_indices,
                               std::span<const double> t_grid) {
  std::vector<double> sorted(t_grid.begin(), t_grid.end());
  for (double t : sorted)
    if (!std::isfinite(t) || t <= 0.0) throw DomainError("t_grid values must be > 0");
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 3) throw DomainError("t_grid needs at least 3 distinct values");
  if (sorted.back() / sorted.front() < 4.0)
    throw DomainError("t_grid must span a factor of at least 4");
  for (std::size_t i : scaled_indices)
    if (i >= base_point.size()) throw DimensionError("scaled index out of range");

  const double f0 = f(base_point);
  if (!std::isfinite(f0) || f0 <= 0.0)
    throw DomainError("degree estimation needs f > 0 at the base point");

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> scaled(base_point.begin(), base_point.end());
  for (double t : t_grid) {
    scaled.assign(base_point.begin(), base_point.end());
    if (scaled_indices.empty()) {
      for (double& v : scaled) v *= t;
    } else {
      for (std::size_t i : scaled_indices) scaled[i] *= t;
    }
    const double ft = f(scaled);
    if (!std::isfinite(ft) || ft <= 0.0)
      throw DomainError("degree estimation needs f > 0 on every scaled probe");
    xs.push_back(std::log(t));
    ys.push_back(std::log(ft) - std::log(f0));
  }

  DegreeEstimate est;
  est.degree = slope_through_origin(xs, ys);
  est.max_log_residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    est.max_log_residual = std::max(est.max_log_residual,
                                    std::fabs(ys[i] - est.degree * xs[i]));
  est.t_grid.assign(t_grid.begin(), t_grid.end());
  return est;
}

PropertyReport check_indirect_utility_scaling(const UtilitySpec& spec, const PriceIncome& pi,
                                              const PublicBundle& z, IndirectScalingMode mode,
                                              std::span<const double> t_grid, double tol,
                                              const SolverConfig& config) {
  validate_probe_grid(t_grid);

  PropertyId id = PropertyId::P2a;
  double exponent = 0.0;
  switch (mode) {
    case IndirectScalingMode::Joint2a:
      id = PropertyId::P2a;
      if (!spec.joint_degree())
        throw SpecError("joint scaling check needs a declared joint degree");
      exponent = *spec.joint_degree();
      break;
    case IndirectScalingMode::Independent2b:
      id = PropertyId::P2b;
      exponent = require_degrees(spec, "independent joint scaling").gamma();
      break;
    case IndirectScalingMode::Private2c:
      id = PropertyId::P2c;
      exponent = require_degrees(spec, "private scaling").eta();
      break;
    case IndirectScalingMode::Public2d:
      id = PropertyId::P2d;
      exponent = require_degrees(spec, "public scaling").theta();
      break;
  }
  require_identity_transform(spec, "indirect-utility scaling");

  const double base = solve_ump(spec, pi, z, config).indirect_utility;

  PropertyReport report;
  report.property_id = id;
  report.worst_violation = 0.0;
  for (double t : t_grid) {
    double measured = 0.0;
    switch (mode) {
      case IndirectScalingMode::Joint2a:
      case IndirectScalingMode::Independent2b:
        measured = solve_ump(spec, pi.scaled_income(t), z.scaled_z1(t), config).indirect_utility;
        break;
      case IndirectScalingMode::Private2c:
        measured = solve_ump(spec, pi.scaled_income(t), z, config).indirect_utility;
        break;
      case IndirectScalingMode::Public2d:
        measured = solve_ump(spec, pi, z.scaled_z1(t), config).indirect_utility;
        break;
    }
    const double expected = std::pow(t, exponent) * base;
    report.worst_violation = std::max(report.worst_violation, rel_diff(measured, expected));
    report.witnesses.push_back({{t}, measured, expected});
  }
  report.passed = report.worst_violation < tol;
  return report;
}

PropertyReport check_expenditure_scaling(const UtilitySpec& spec, double target_utility,
                                         std::span<const double> prices, const PublicBundle& z,
                                         ExpenditureScalingMode mode,
                                         std::span<const double> t_grid, double tol,
                                         const SolverConfig& config) {
  validate_probe_grid(t_grid);

  const double base = solve_emp(spec, target_utility, prices, z, config).expenditure;
  if (!(base > 0.0)) throw DomainError("base expenditure is not positive");

  PropertyReport report;
  report.worst_violation = 0.0;

  if (mode == ExpenditureScalingMode::JointP3 || mode == ExpenditureScalingMode::Degree1C2) {
    require_identity_transform(spec, "expenditure target scaling");
    if (!spec.joint_degree())
      throw SpecError("expenditure target scaling needs a declared joint degree");
    const double gamma = *spec.joint_degree();
    if (mode == ExpenditureScalingMode::Degree1C2 && std::fabs(gamma - 1.0) > 1e-9)
      throw SpecError("degree-1 scaling check applies only to jointly degree-1 specs");
    report.property_id =
        mode == ExpenditureScalingMode::JointP3 ? PropertyId::P3 : PropertyId::C2;

    for (double t : t_grid) {
      const double scaled_target =
          mode == ExpenditureScalingMode::JointP3 ? std::pow(t, gamma) * target_utility
                                                  : t * target_utility;
      const double measured =
          solve_emp(spec, scaled_target, prices, z.scaled_z1(t), config).expenditure;
      const double expected = t * base;
      report.worst_violation = std::max(report.worst_violation, rel_diff(measured, expected));
      report.witnesses.push_back({{t}, measured, expected});
    }
    report.passed = report.worst_violation < tol;
    return report;
  }

  // HomotheticT1: provision scaling at a fixed target. Ordinal.
  report.property_id = PropertyId::T1;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> measured_e;
  for (double t : t_grid) {
    const double e_t = solve_emp(spec, target_utility, prices, z.scaled_z1(t), config).expenditure;
    if (!(e_t > 0.0))
      throw DomainError("expenditure is zero on the scaled probe; log slope undefined");
    measured_e.push_back(e_t);
    xs.push_back(std::log(t));
    ys.push_back(std::log(e_t) - std::log(base));
  }
  report.phi_hat = slope_through_origin(xs, ys);

  const auto degrees = spec.independent_degrees();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double violation;
    double expected;
    if (degrees) {
      expected = std::pow(t_grid[i], degrees->phi()) * base;
      violation = rel_diff(measured_e[i], expected);
    } else {
      // No declared phi: judge whether ln e is affine in ln t at all.
      expected = base * std::exp(*report.phi_hat * xs[i]);
      violation = std::fabs(ys[i] - *report.phi_hat * xs[i]);
    }
    report.worst_violation = std::max(report.worst_violation, violation);
    report.witnesses.push_back({{t_grid[i]}, measured_e[i], expected});
  }
  report.passed = report.worst_violation < tol;
  return report;
}

PropertyReport check_hicksian_scaling(const UtilitySpec& spec, double target_utility,
                                      std::span<const double> prices, const PublicBundle& z,
                                      std::span<const double> t_grid, double tol,
                                      const SolverConfig& config) {
  validate_probe_grid(t_grid);

  const EmpResult base = solve_emp(spec, target_utility, prices, z, config);
  for (std::size_t i = 0; i < base.hicksian_demand.size(); ++i)
    if (!(base.hicksian_demand[i] > 0.0))
      throw DomainError("baseline Hicksian demand must be strictly positive");

  PropertyReport report;
  report.property_id = PropertyId::C3;
  report.worst_violation = 0.0;

  const auto degrees = spec.independent_degrees();
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::vector<double>> factors;
  for (double t : t_grid) {
    const EmpResult cur = solve_emp(spec, target_utility, prices, z.scaled_z1(t), config);
    std::vector<double> f(base.hicksian_demand.size());
    double log_geo = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!(cur.hicksian_demand[i] > 0.0))
        throw DomainError("Hicksian demand is zero on the scaled probe");
      f[i] = cur.hicksian_demand[i] / base.hicksian_demand[i];
      log_geo += std::log(f[i]);
    }
    log_geo /= static_cast<double>(f.size());
    xs.push_back(std::log(t));
    ys.push_back(log_geo);
    factors.push_back(std::move(f));
  }
  report.phi_hat = slope_through_origin(xs, ys);

  for (std::size_t ti = 0; ti < factors.size(); ++ti) {
    const double t = t_grid[ti];
    const std::vector<double>& f = factors[ti];
    // Cross-good consistency: every component must scale by the same factor.
    for (std::size_t i = 1; i < f.size(); ++i) {
      const double v = rel_diff(f[i], f[0]);
      report.worst_violation = std::max(report.worst_violation, v);
      report.witnesses.push_back({{t, static_cast<double>(i)}, f[i], f[0]});
    }
    // Level: factor must equal t^phi (declared), or at least follow a single
    // power law (fitted) when no degrees are declared.
    const double expected =
        degrees ? std::pow(t, degrees->phi()) : std::exp(*report.phi_hat * xs[ti]);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double v = degrees ? rel_diff(f[i], expected)
                               : std::fabs(std::log(f[i]) - *report.phi_hat * xs[ti]);
      report.worst_violation = std::max(report.worst_violation, v);
    }
    report.witnesses.push_back({{t}, f[0], expected});
  }
  report.passed = report.worst_violation < tol;
  return report;
}

PropertyReport check_marshallian_invariance(const UtilitySpec& spec, const PriceIncome& pi,
                                            const PublicBundle& z, std::span<const double> t_grid,
                                            double tol, const SolverConfig& config) {
  validate_probe_grid(t_grid);

  const UmpResult base = solve_ump(spec, pi, z, config);

  PropertyReport report;
  report.property_id = PropertyId::C1;
  report.worst_violation = 0.0;
  for (double t : t_grid) {
    const UmpResult cur = solve_ump(spec, pi, z.scaled_z1(t), config);
    for (std::size_t i = 0; i < base.demand.size(); ++i) {
      const double v = rel_diff(cur.demand[i], base.demand[i]);
      report.worst_violation = std::max(report.worst_violation, v);
      report.witnesses.push_back({{t, static_cast<double>(i)}, cur.demand[i], base.demand[i]});
    }
  }
  report.passed = report.worst_violation < tol;
  return report;
}

PropertyReport check_mrs_ray_invariance(const UtilitySpec& spec, const PrivateBundle& x,
                                        const PublicBundle& z, std::span<const double> t_grid,
                                        std::span<const double> ttilde_grid, double tol) {
  validate_probe_grid(t_grid);
  validate_probe_grid(ttilde_grid);
  if (x.size() < 2) throw DimensionError("MRS needs at least two private goods");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0)) throw DomainError("MRS base bundle must be strictly positive");

  PropertyReport report;
  report.property_id = PropertyId::P4;
  report.worst_violation = 0.0;
  report.degenerate_points = 0;

  auto gradient_at = [&](double t, double ttilde) {
    std::vector<double> xs(x.quantities().begin(), x.quantities().end());
    for (double& v : xs) v *= t;
    const PublicBundle zs = z.scaled_z1(ttilde);
    auto h = [&](std::span<const double> q) { return evaluate_utility(spec, q, zs); };
    return finite_difference_gradient(h, xs);
  };

  const std::vector<double> g0 = gradient_at(1.0, 1.0);
  double scale0 = 0.0;
  for (double g : g0) scale0 = std::max(scale0, std::fabs(g));
  if (scale0 == 0.0) throw DomainError("utility gradient vanishes at the base bundle");

  for (double t : t_grid) {
    for (double ttilde : ttilde_grid) {
      const std::vector<double> g = gradient_at(t, ttilde);
      double scale = 0.0;
      for (double gi : g) scale = std::max(scale, std::fabs(gi));
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t jj = i + 1; jj < g.size(); ++jj) {
          if (std::fabs(g0[jj]) < 1e-10 * scale0 || std::fabs(g[jj]) < 1e-10 * scale) {
            ++report.degenerate_points;
            continue;
          }
          const double mrs0 = g0[i] / g0[jj];
          const double mrs = g[i] / g[jj];
          const double v = rel_diff(mrs, mrs0);
          report.worst_violation = std::max(report.worst_violation, v);
          report.witnesses.push_back(
              {{t, ttilde, static_cast<double>(i), static_cast<double>(jj)}, mrs, mrs0});
        }
      }
    }
  }
  report.passed = report.worst_violation < tol;
  return report;
}

}  // namespace cvkit
