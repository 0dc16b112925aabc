// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/welfare.hpp"

#include <cmath>

namespace cvkit {

namespace {

void validate_t(double t) {
  if (!std::isfinite(t) || t <= 0.0) throw DomainError("provision scale t must be > 0");
}

struct CvSolves {
  double baseline_utility;
  EmpResult before;
  EmpResult after;
};

CvSolves run_cv_solves(const CvQuery& q, const SolverConfig& config) {
  validate_t(q.t);
  const double u0 = solve_ump(q.spec, q.pi, q.z, config).indirect_utility;
  EmpResult before = solve_emp(q.spec, u0, q.pi.prices(), q.z, config);
  EmpResult after = solve_emp(q.spec, u0, q.pi.prices(), q.z.scaled_z1(q.t), config);
  return {u0, std::move(before), std::move(after)};
}

}  // namespace

double cv_from_phi(double phi, double t, double income) {
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  validate_t(t);
  if (!std::isfinite(income) || income <= 0.0) throw DomainError("income must be > 0");
  return (std::pow(t, phi) - 1.0) * income;
}

double cv_closed_form(const CvQuery& query) {
  if (!query.spec.independent_degrees())
    throw SpecError("closed-form CV needs declared independent degrees (eta, theta)");
  return cv_from_phi(query.spec.independent_degrees()->phi(), query.t, query.pi.income());
}

double cv_brute_force(const CvQuery& query, const SolverConfig& config) {
  const CvSolves s = run_cv_solves(query, config);
  return s.after.expenditure - s.before.expenditure;
}

std::vector<double> cv_decomposition(const CvQuery& query, const SolverConfig& config) {
  const CvSolves s = run_cv_solves(query, config);
  std::vector<double> per_good(query.pi.size());
  for (std::size_t n = 0; n < per_good.size(); ++n)
    per_good[n] =
        query.pi.prices()[n] * (s.after.hicksian_demand[n] - s.before.hicksian_demand[n]);
  return per_good;
}

nlohmann::json CvResult::to_json() const {
  nlohmann::json j;
  j["t"] = t;
  j["cv_closed_form"] = cv_closed_form ? nlohmann::json(*cv_closed_form) : nlohmann::json();
  j["cv_brute_force"] = cv_brute_force;
  j["per_good"] = per_good;
  j["phi_used"] = phi_used ? nlohmann::json(*phi_used) : nlohmann::json();
  j["baseline_utility"] = baseline_utility;
  return j;
}

CvResult compute_cv(const CvQuery& query, const SolverConfig& config) {
  const CvSolves s = run_cv_solves(query, config);

  CvResult r;
  r.t = query.t;
  r.baseline_utility = s.baseline_utility;
  r.cv_brute_force = s.after.expenditure - s.before.expenditure;
  r.per_good.resize(query.pi.size());
  for (std::size_t n = 0; n < r.per_good.size(); ++n)
    r.per_good[n] =
        query.pi.prices()[n] * (s.after.hicksian_demand[n] - s.before.hicksian_demand[n]);
  if (query.spec.independent_degrees()) {
    r.phi_used = query.spec.independent_degrees()->phi();
    r.cv_closed_form = cv_from_phi(*r.phi_used, query.t, query.pi.income());
  }
  return r;
}

CvLimitDiagnostics cv_limit_diagnostics(const CvQuery& query) {
  if (!query.spec.independent_degrees())
    throw SpecError("limit diagnostics need declared independent degrees (eta, theta)");
  const double phi = query.spec.independent_degrees()->phi();
  const double m = query.pi.income();

  CvLimitDiagnostics d;
  for (double t : {1e-1, 1e-3, 1e-6}) d.probes.push_back({t, cv_from_phi(phi, t, m)});
  d.diverges = phi < 0.0;
  d.direction = d.diverges ? 1.0 : 0.0;
  return d;
}

}  // namespace cvkit
