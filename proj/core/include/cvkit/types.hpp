// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cvkit/errors.hpp"

namespace cvkit {

/// Quantities of the N private goods. Components are finite and >= 0.
class PrivateBundle {
 public:
  /// Throws DomainError on a negative or non-finite component, DimensionError
  /// when empty.
  explicit PrivateBundle(std::vector<double> quantities);

  std::size_t size() const noexcept { return quantities_.size(); }
  double operator[](std::size_t i) const { return quantities_.at(i); }
  std::span<const double> quantities() const noexcept { return quantities_; }
  const std::vector<double>& as_vector() const noexcept { return quantities_; }

 private:
  std::vector<double> quantities_;
};

/// Exogenous public goods: z1 (scalable, strictly positive) and z2 (held
/// fixed, >= 0, may be empty).
class PublicBundle {
 public:
  /// Throws DomainError unless every z1 component is finite and > 0 and every
  /// z2 component is finite and >= 0; DimensionError when z1 is empty.
  explicit PublicBundle(std::vector<double> z1, std::vector<double> z2 = {});

  std::span<const double> z1() const noexcept { return z1_; }
  std::span<const double> z2() const noexcept { return z2_; }
  std::size_t z1_size() const noexcept { return z1_.size(); }
  std::size_t z2_size() const noexcept { return z2_.size(); }

  /// The same bundle with every z1 component multiplied by t > 0.
  PublicBundle scaled_z1(double t) const;

 private:
  std::vector<double> z1_;
  std::vector<double> z2_;
};

/// A price vector (strictly positive) together with income m > 0.
class PriceIncome {
 public:
  /// Throws DomainError on non-positive prices or income, DimensionError when
  /// prices are empty.
  PriceIncome(std::vector<double> prices, double income);

  std::span<const double> prices() const noexcept { return prices_; }
  double income() const noexcept { return income_; }
  std::size_t size() const noexcept { return prices_.size(); }

  /// Same prices, income scaled by t > 0.
  PriceIncome scaled_income(double t) const;

 private:
  std::vector<double> prices_;
  double income_;
};

/// Degrees of homogeneity of the underlying utility: eta in private goods,
/// theta in the scalable public goods. eta must be nonzero, so gamma() and
/// phi() always hold exactly by construction.
class HomogeneityDegrees {
 public:
  /// Throws DomainError when eta == 0 or a degree is non-finite.
  HomogeneityDegrees(double eta, double theta);

  double eta() const noexcept { return eta_; }
  double theta() const noexcept { return theta_; }
  double gamma() const noexcept { return eta_ + theta_; }
  /// The sufficient statistic for provision changes.
  double phi() const noexcept { return -theta_ / eta_; }

 private:
  double eta_;
  double theta_;
};

}  // namespace cvkit
