// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/estimate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvkit/numerics.hpp"

namespace cvkit {

namespace {

std::string format_csv(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_csv_number(const std::string& field, std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw IoError("panel CSV line " + std::to_string(line_no) + ": not a number: \"" + field +
                  "\"");
  return v;
}

}  // namespace

std::size_t SampleMode::good_index() const {
  if (!good_) throw DomainError("income mode has no good index");
  return *good_;
}

std::string SampleMode::name() const {
  if (is_income()) return "income";
  return "good:" + std::to_string(*good_ + 1);
}

nlohmann::json EstimationResult::to_json() const {
  return nlohmann::json{{"beta0", beta0},
                        {"beta1", beta1},
                        {"stderr_beta1", stderr_beta1},
                        {"r_squared", r_squared},
                        {"residuals", residuals}};
}

nlohmann::json PhiRecovery::to_json() const {
  nlohmann::json j = fit.to_json();
  j["phi_hat"] = phi_hat;
  j["phi_declared"] = std::isnan(phi_declared) ? nlohmann::json() : nlohmann::json(phi_declared);
  j["agreement"] = agreement;
  return j;
}

std::vector<ProvisionObservation> generate_panel(const UtilitySpec& spec, const PriceIncome& pi,
                                                 const PublicBundle& z,
                                                 std::span<const double> t_values, double noise_sd,
                                                 std::uint64_t seed, const SolverConfig& config) {
  if (t_values.empty()) throw DomainError("t_values must not be empty");
  for (double t : t_values)
    if (!std::isfinite(t) || t <= 0.0) throw DomainError("t_values must be > 0");
  if (!std::isfinite(noise_sd) || noise_sd < 0.0) throw DomainError("noise_sd must be >= 0");

  const double u0 = solve_ump(spec, pi, z, config).indirect_utility;
  // Both sides of every ratio come from the same minimizer: m_before is the
  // EMP round trip of the base income (within solver tolerance of it).
  const EmpResult base = solve_emp(spec, u0, pi.prices(), z, config);

  std::vector<ProvisionObservation> panel;
  panel.reserve(t_values.size());
  for (std::size_t row = 0; row < t_values.size(); ++row) {
    const double t = t_values[row];
    const EmpResult after =
        t == 1.0 ? base : solve_emp(spec, u0, pi.prices(), z.scaled_z1(t), config);

    double factor = 1.0;
    if (noise_sd > 0.0) {
      SplitMix64 rng(mix_seed(seed, row));
      factor = std::exp(noise_sd * standard_normal(rng));
    }

    ProvisionObservation obs;
    obs.t = t;
    obs.m_before = base.expenditure;
    obs.m_after = after.expenditure * factor;
    obs.x_before.assign(base.hicksian_demand.quantities().begin(),
                        base.hicksian_demand.quantities().end());
    obs.x_after.assign(after.hicksian_demand.quantities().begin(),
                       after.hicksian_demand.quantities().end());
    for (double& x : obs.x_after) x *= factor;
    obs.noise_applied = factor;
    panel.push_back(std::move(obs));
  }
  return panel;
}

RegressionSample build_sample(std::span<const ProvisionObservation> panel, SampleMode mode) {
  if (panel.empty()) throw DomainError("panel must not be empty");

  RegressionSample sample;
  sample.y.reserve(panel.size());
  sample.x1.reserve(panel.size());
  for (const ProvisionObservation& obs : panel) {
    double before;
    double after;
    if (mode.is_income()) {
      before = obs.m_before;
      after = obs.m_after;
    } else {
      const std::size_t n = mode.good_index();
      if (n >= obs.x_before.size() || n >= obs.x_after.size())
        throw DimensionError("good index out of range for this panel");
      before = obs.x_before[n];
      after = obs.x_after[n];
    }
    if (!(before > 0.0) || !(after > 0.0))
      throw DomainError("log ratios need positive before/after values");
    if (!(obs.t > 0.0)) throw DomainError("log ratios need positive t");
    sample.y.push_back(std::log(after / before));
    sample.x1.push_back(std::log(obs.t));
  }
  return sample;
}

EstimationResult ols_fit(const RegressionSample& sample) {
  const std::size_t n = sample.y.size();
  if (sample.x1.size() != n) throw DimensionError("y and x1 must have the same length");
  if (n < 3) throw DomainError("OLS needs at least 3 observations");

  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += sample.x1[i];
    y_mean += sample.y[i];
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = sample.x1[i] - x_mean;
    const double dy = sample.y[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("regressor is constant; slope not identified");

  EstimationResult r;
  r.beta1 = sxy / sxx;
  r.beta0 = y_mean - r.beta1 * x_mean;
  r.residuals.resize(n);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.residuals[i] = sample.y[i] - (r.beta0 + r.beta1 * sample.x1[i]);
    ssr += r.residuals[i] * r.residuals[i];
  }
  const double sigma2 = ssr / static_cast<double>(n - 2);
  r.stderr_beta1 = std::sqrt(sigma2 / sxx);
  r.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return r;
}

PhiRecovery recover_phi(const UtilitySpec& spec, const PriceIncome& pi, const PublicBundle& z,
                        std::span<const double> t_values, double noise_sd, std::uint64_t seed,
                        SampleMode mode, const SolverConfig& config) {
  const std::vector<ProvisionObservation> panel =
      generate_panel(spec, pi, z, t_values, noise_sd, seed, config);
  const RegressionSample sample = build_sample(panel, mode);

  PhiRecovery rec;
  rec.fit = ols_fit(sample);
  rec.phi_hat = rec.fit.beta1;
  if (spec.independent_degrees()) {
    rec.phi_declared = spec.independent_degrees()->phi();
    rec.agreement = noise_sd == 0.0
                        ? std::fabs(rec.phi_hat - rec.phi_declared) < 1e-5
                        : std::fabs(rec.phi_hat - rec.phi_declared) < 3.0 * rec.fit.stderr_beta1;
  } else {
    rec.phi_declared = std::nan("");
    rec.agreement = false;
  }
  return rec;
}

void write_panel_csv(std::ostream& out, std::span<const ProvisionObservation> panel) {
  if (panel.empty()) throw DomainError("panel must not be empty");
  const std::size_t n = panel.front().x_before.size();

  out << "t,m_before,m_after";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_before_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",x_after_" << i;
  out << ",noise\n";

  for (const ProvisionObservation& obs : panel) {
    if (obs.x_before.size() != n || obs.x_after.size() != n)
      throw DimensionError("panel rows disagree on the number of goods");
    out << format_csv(obs.t) << ',' << format_csv(obs.m_before) << ',' << format_csv(obs.m_after);
    for (double x : obs.x_before) out << ',' << format_csv(x);
    for (double x : obs.x_after) out << ',' << format_csv(x);
    out << ',' << format_csv(obs.noise_applied) << '\n';
  }
}

std::vector<ProvisionObservation> read_panel_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("panel CSV is empty");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 6 || header[0] != "t" || header[1] != "m_before" || header[2] != "m_after" ||
      header.back() != "noise")
    throw IoError("panel CSV header must be t,m_before,m_after,x_before_1..N,x_after_1..N,noise");
  const std::size_t remaining = header.size() - 4;
  if (remaining % 2 != 0) throw IoError("panel CSV header has unpaired demand columns");
  const std::size_t n = remaining / 2;
  if (n == 0) throw IoError("panel CSV needs at least one good");
  for (std::size_t i = 0; i < n; ++i) {
    if (header[3 + i] != "x_before_" + std::to_string(i + 1) ||
        header[3 + n + i] != "x_after_" + std::to_string(i + 1))
      throw IoError("panel CSV header must be t,m_before,m_after,x_before_1..N,x_after_1..N,noise");
  }

  std::vector<ProvisionObservation> panel;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw IoError("panel CSV line " + std::to_string(line_no) + ": expected " +
                    std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    ProvisionObservation obs;
    obs.t = parse_csv_number(fields[0], line_no);
    obs.m_before = parse_csv_number(fields[1], line_no);
    obs.m_after = parse_csv_number(fields[2], line_no);
    obs.x_before.resize(n);
    obs.x_after.resize(n);
    for (std::size_t i = 0; i < n; ++i) obs.x_before[i] = parse_csv_number(fields[3 + i], line_no);
    for (std::size_t i = 0; i < n; ++i)
      obs.x_after[i] = parse_csv_number(fields[3 + n + i], line_no);
    obs.noise_applied = parse_csv_number(fields.back(), line_no);
    panel.push_back(std::move(obs));
  }
  return panel;
}

}  // namespace cvkit
