// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvkit/duality.hpp"
#include "cvkit/types.hpp"
#include "cvkit/utility.hpp"

namespace cvkit {

/// One synthetic provision change: provision scaled by t, compensated income
/// and Hicksian demands before and after. noise_applied is the multiplicative
/// log-normal draw scaling m_after and every x_after component (exactly 1.0
/// for noiseless rows).
struct ProvisionObservation {
  double t;
  double m_before;
  double m_after;
  std::vector<double> x_before;
  std::vector<double> x_after;
  double noise_applied;
};

/// What the regression reads off each observation: the compensated-income
/// ratio, or the demand ratio of one good (0-based index).
class SampleMode {
 public:
  static SampleMode income() { return SampleMode(std::nullopt); }
  static SampleMode good(std::size_t index) { return SampleMode(index); }

  bool is_income() const noexcept { return !good_.has_value(); }
  std::size_t good_index() const;
  std::string name() const;  // "income" or "good:<1-based"

 private:
  explicit SampleMode(std::optional<std::size_t> good) : good_(good) {}
  std::optional<std::size_t> good_;
};

/// Regression data: y_i against x1_i (plus intercept).
struct RegressionSample {
  std::vector<double> y;
  std::vector<double> x1;
};

/// Two-variable OLS fit of y = beta0 + beta1 x1 + eps, closed form.
struct EstimationResult {
  double beta0;
  double beta1;
  double stderr_beta1;  // homoskedastic, sigma^2 = SSR / (n - 2)
  double r_squared;
  std::vector<double> residuals;

  nlohmann::json to_json() const;
};

/// Simulates provision changes t (one row per entry of t_values) for a
/// consumer at the given baseline. Baseline utility comes from solve_ump;
/// compensated incomes and demands come from solve_emp (never the closed
/// form). Noise: one log-normal factor exp(noise_sd * N(0,1)) per row,
/// splitmix64-seeded and indexed by row so row order does not matter;
/// noise_sd = 0 skips the generator entirely.
std::vector<ProvisionObservation> generate_panel(const UtilitySpec& spec, const PriceIncome& pi,
                                                 const PublicBundle& z,
                                                 std::span<const double> t_values, double noise_sd,
                                                 std::uint64_t seed,
                                                 const SolverConfig& config = {});

/// y_i = ln(m_after / m_before) (income mode) or ln(x'_n / x*_n) (good mode),
/// x1_i = ln t_i. Ratios must be positive.
RegressionSample build_sample(std::span<const ProvisionObservation> panel, SampleMode mode);

/// Needs >= 3 observations and a non-constant regressor (DomainError
/// otherwise).
EstimationResult ols_fit(const RegressionSample& sample);

/// Pipeline: generate_panel -> build_sample -> ols_fit; beta1 estimates phi.
/// agreement compares beta1 against the spec's declared phi: within 1e-5 for
/// noiseless panels, within 3 standard errors otherwise; always false when
/// the spec declares no independent degrees (phi_declared is then NaN).
struct PhiRecovery {
  double phi_hat;
  EstimationResult fit;
  double phi_declared;
  bool agreement;

  nlohmann::json to_json() const;
};
PhiRecovery recover_phi(const UtilitySpec& spec, const PriceIncome& pi, const PublicBundle& z,
                        std::span<const double> t_values, double noise_sd, std::uint64_t seed,
                        SampleMode mode, const SolverConfig& config = {});

/// CSV with header t,m_before,m_after,x_before_1..N,x_after_1..N,noise and
/// 12 significant digits, '.' decimal separator regardless of locale.
void write_panel_csv(std::ostream& out, std::span<const ProvisionObservation> panel);
/// Parses the same layout; IoError on malformed headers or rows.
std::vector<ProvisionObservation> read_panel_csv(std::istream& in);

}  // namespace cvkit
