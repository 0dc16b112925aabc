// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/types.hpp"

#include <cmath>
#include <string>

namespace cvkit {

namespace {

void require_finite(double v, const char* label) {
  if (!std::isfinite(v)) throw DomainError(std::string(label) + " must be finite");
}

}  // namespace

PrivateBundle::PrivateBundle(std::vector<double> quantities) : quantities_(std::move(quantities)) {
  if (quantities_.empty()) throw DimensionError("private bundle needs at least one good");
  for (double q : quantities_) {
    require_finite(q, "quantity");
    if (q < 0.0) throw DomainError("quantities must be >= 0");
  }
}

PublicBundle::PublicBundle(std::vector<double> z1, std::vector<double> z2)
    : z1_(std::move(z1)), z2_(std::move(z2)) {
  if (z1_.empty()) throw DimensionError("public bundle needs at least one z1 component");
  for (double v : z1_) {
    require_finite(v, "z1 component");
    if (v <= 0.0) throw DomainError("z1 components must be > 0");
  }
  for (double v : z2_) {
    require_finite(v, "z2 component");
    if (v < 0.0) throw DomainError("z2 components must be >= 0");
  }
}

PublicBundle PublicBundle::scaled_z1(double t) const {
  if (!std::isfinite(t) || t <= 0.0) throw DomainError("scale factor t must be > 0");
  std::vector<double> scaled(z1_);
  for (double& v : scaled) v *= t;
  return PublicBundle(std::move(scaled), z2_);
}

PriceIncome::PriceIncome(std::vector<double> prices, double income)
    : prices_(std::move(prices)), income_(income) {
  if (prices_.empty()) throw DimensionError("price vector needs at least one entry");
  for (double p : prices_) {
    require_finite(p, "price");
    if (p <= 0.0) throw DomainError("prices must be > 0");
  }
  require_finite(income_, "income");
  if (income_ <= 0.0) throw DomainError("income must be > 0");
}

PriceIncome PriceIncome::scaled_income(double t) const {
  if (!std::isfinite(t) || t <= 0.0) throw DomainError("scale factor t must be > 0");
  return PriceIncome(prices_, income_ * t);
}

HomogeneityDegrees::HomogeneityDegrees(double eta, double theta) : eta_(eta), theta_(theta) {
  require_finite(eta, "eta");
  require_finite(theta, "theta");
  if (eta == 0.0) throw DomainError("eta must be nonzero");
}

}  // namespace cvkit
