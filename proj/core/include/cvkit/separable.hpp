// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>

#include "cvkit/duality.hpp"

namespace cvkit {

/// Preferences of the form u(x; z) = u1(x) + u2(z) with u1 homogeneous of
/// degree gamma in x. Supports the shifted-target expenditure shortcut and
/// the scaling shortcut through v1(1, p). Cheap to copy (shared state).
class SeparableSpec {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  /// private_floor is u1 at the zero bundle (its infimum); targets at or
  /// below it cost nothing. gamma must be nonzero.
  SeparableSpec(std::size_t num_private, std::size_t num_public, Evaluator private_utility,
                Evaluator public_utility, double gamma, double private_floor = 0.0);

  std::size_t num_private() const noexcept;
  std::size_t num_public() const noexcept;
  double gamma() const noexcept;
  double private_floor() const noexcept;

  double private_utility(std::span<const double> x) const;
  double public_utility(std::span<const double> z) const;

  /// v1(1, p): the maximum of u1 on the unit-income budget at prices p.
  /// Computed on first use and cached per price vector; the cache is
  /// write-once per key and safe to hit from several threads.
  double v1_at_unit_income(std::span<const double> prices,
                           const SolverConfig& config = {}) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// The additive-separable power family split into its parts:
/// u1(x) = (x1 x2)^(1/delta), u2(z) = (z1 z2)^(1/delta), gamma = 2/delta.
SeparableSpec additive_separable_power_parts(double delta);

/// e(u, p; z) = e1(u - u2(z), p): private expenditure at the shifted target,
/// found numerically. Zero when the public goods alone already deliver u.
double separable_expenditure(const SeparableSpec& spec, double target_utility,
                             std::span<const double> prices, std::span<const double> z,
                             const SolverConfig& config = {});

/// Scaling shortcut: with v1(m, p) = m^gamma v1(1, p),
/// e(u, p; z) = [(u - u2(z)) / v1(1, p)]^(1/gamma).
double separable_expenditure_closed(const SeparableSpec& spec, double target_utility,
                                    std::span<const double> prices, std::span<const double> z,
                                    const SolverConfig& config = {});

}  // namespace cvkit
