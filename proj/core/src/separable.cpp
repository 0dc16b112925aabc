// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/separable.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace cvkit {

struct SeparableSpec::State {
  std::size_t num_private;
  std::size_t num_public;
  Evaluator u1;
  Evaluator u2;
  double gamma;
  double floor;

  std::mutex mutex;
  std::map<std::vector<double>, double> v1_cache;
};

SeparableSpec::SeparableSpec(std::size_t num_private, std::size_t num_public,
                             Evaluator private_utility, Evaluator public_utility, double gamma,
                             double private_floor)
    : state_(std::make_shared<State>()) {
  if (num_private < 1) throw DimensionError("separable spec needs at least one private good");
  if (num_public < 1) throw DimensionError("separable spec needs at least one public good");
  if (!private_utility || !public_utility)
    throw SpecError("separable spec needs both evaluators");
  if (!std::isfinite(gamma) || gamma == 0.0)
    throw SpecError("separable spec needs a nonzero degree gamma");
  if (!std::isfinite(private_floor)) throw SpecError("private_floor must be finite");
  state_->num_private = num_private;
  state_->num_public = num_public;
  state_->u1 = std::move(private_utility);
  state_->u2 = std::move(public_utility);
  state_->gamma = gamma;
  state_->floor = private_floor;
}

std::size_t SeparableSpec::num_private() const noexcept { return state_->num_private; }
std::size_t SeparableSpec::num_public() const noexcept { return state_->num_public; }
double SeparableSpec::gamma() const noexcept { return state_->gamma; }
double SeparableSpec::private_floor() const noexcept { return state_->floor; }

double SeparableSpec::private_utility(std::span<const double> x) const {
  if (x.size() != state_->num_private)
    throw DimensionError("private bundle size does not match the separable spec");
  return state_->u1(x);
}

double SeparableSpec::public_utility(std::span<const double> z) const {
  if (z.size() != state_->num_public)
    throw DimensionError("public bundle size does not match the separable spec");
  return state_->u2(z);
}

double SeparableSpec::v1_at_unit_income(std::span<const double> prices,
                                        const SolverConfig& config) const {
  if (prices.size() != state_->num_private)
    throw DimensionError("price vector size does not match the separable spec");
  std::vector<double> key(prices.begin(), prices.end());

  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->v1_cache.find(key);
  if (it != state_->v1_cache.end()) return it->second;

  const double value = maximize_on_budget(state_->u1, prices, 1.0, config).value;
  state_->v1_cache.emplace(std::move(key), value);
  return value;
}

SeparableSpec additive_separable_power_parts(double delta) {
  if (!(delta > 0.0)) throw SpecError("delta must be > 0");
  auto u1 = [delta](std::span<const double> x) { return std::pow(x[0] * x[1], 1.0 / delta); };
  auto u2 = [delta](std::span<const double> z) { return std::pow(z[0] * z[1], 1.0 / delta); };
  return SeparableSpec(2, 2, u1, u2, 2.0 / delta, 0.0);
}

double separable_expenditure(const SeparableSpec& spec, double target_utility,
                             std::span<const double> prices, std::span<const double> z,
                             const SolverConfig& config) {
  if (!std::isfinite(target_utility)) throw DomainError("target utility must be finite");
  const double shifted = target_utility - spec.public_utility(z);
  if (shifted <= spec.private_floor()) return 0.0;
  auto u1 = [&](std::span<const double> x) { return spec.private_utility(x); };
  return minimize_expenditure(u1, shifted, prices, spec.private_floor(), config).expenditure;
}

double separable_expenditure_closed(const SeparableSpec& spec, double target_utility,
                                    std::span<const double> prices, std::span<const double> z,
                                    const SolverConfig& config) {
  if (!std::isfinite(target_utility)) throw DomainError("target utility must be finite");
  const double shifted = target_utility - spec.public_utility(z);
  if (shifted <= spec.private_floor()) return 0.0;
  const double v1 = spec.v1_at_unit_income(prices, config);
  if (!(v1 > 0.0)) throw DomainError("v1(1, p) must be positive for the scaling shortcut");
  return std::pow(shifted / v1, 1.0 / spec.gamma());
}

}  // namespace cvkit
