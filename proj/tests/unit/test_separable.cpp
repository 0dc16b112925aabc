// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "cvkit/duality.hpp"
#include "cvkit/separable.hpp"
#include "cvkit/utility.hpp"
#include "testutil.hpp"

using namespace cvkit;
using testutil::approx_rel;

TEST_CASE("additive_separable_power_parts splits the delta family") {
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  CHECK(sep.num_private() == 2);
  CHECK(sep.num_public() == 2);
  CHECK(sep.gamma() == doctest::Approx(1.0));
  const std::vector<double> x = {4.0, 9.0};
  CHECK(sep.private_utility(x) == doctest::Approx(6.0));  // (36)^(1/2)
  const std::vector<double> z = {2.0, 8.0};
  CHECK(sep.public_utility(z) == doctest::Approx(4.0));
  CHECK_THROWS_AS(additive_separable_power_parts(0.0), SpecError);
}

TEST_CASE("v1 at unit income: symmetric delta=2 case gives 1/2") {
  // max (x1 x2)^(1/2) on x1 + x2 = 1 is at (1/2, 1/2).
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const std::vector<double> prices = {1.0, 1.0};
  CHECK(sep.v1_at_unit_income(prices) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("v1 cache returns the identical value and is thread-safe") {
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const std::vector<double> prices = {1.0, 2.0};
  const double first = sep.v1_at_unit_income(prices);
  double values[4];
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&, i] { values[i] = sep.v1_at_unit_income(prices); });
  for (auto& w : workers) w.join();
  for (int i = 0; i < 4; ++i) CHECK(values[i] == first);
}

TEST_CASE("shifted-target expenditure equals the joint EMP") {
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const UtilitySpec joint = UtilitySpec::additive_separable_power(2.0, 2.0);
  const double lo[] = {2.0, 0.5, 0.5, 0.5, 0.5};
  const double hi[] = {6.0, 2.0, 2.0, 1.5, 1.5};
  const auto grid = testutil::halton_grid(20, lo, hi);
  for (const auto& g : grid) {
    const double u = g[0];
    const std::vector<double> prices = {g[1], g[2]};
    const std::vector<double> z = {g[3], g[4]};
    const double via_split = separable_expenditure(sep, u, prices, z);
    const double via_scaling = separable_expenditure_closed(sep, u, prices, z);
    const EmpResult via_joint = solve_emp(joint, u, prices, PublicBundle(z));
    CHECK(approx_rel(via_split, via_joint.expenditure, 1e-4));
    CHECK(approx_rel(via_scaling, via_joint.expenditure, 1e-4));
  }
}

TEST_CASE("the delta=2 pinned point costs exactly 4") {
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const std::vector<double> prices = {1.0, 1.0};
  const std::vector<double> z = {2.0, 2.0};
  CHECK(separable_expenditure(sep, 4.0, prices, z) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(separable_expenditure_closed(sep, 4.0, prices, z) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(additive_separable_expenditure_closed_form(2.0, {1.0, 1.0}, {2.0, 2.0}, 4.0) ==
        doctest::Approx(4.0));
}

TEST_CASE("public goods alone can satisfy the target") {
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const std::vector<double> prices = {1.0, 1.0};
  const std::vector<double> z = {4.0, 4.0};  // u2 = 4
  CHECK(separable_expenditure(sep, 3.0, prices, z) == 0.0);
  CHECK(separable_expenditure_closed(sep, 3.0, prices, z) == 0.0);
  CHECK(separable_expenditure(sep, 4.0, prices, z) == 0.0);  // boundary case
}

TEST_CASE("constructor and dimension validation") {
  const auto one = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(SeparableSpec(2, 2, one, one, 0.0), SpecError);  // gamma != 0
  CHECK_THROWS_AS(SeparableSpec(2, 2, nullptr, one, 1.0), SpecError);
  CHECK_THROWS_AS(SeparableSpec(0, 2, one, one, 1.0), DimensionError);
  const SeparableSpec sep = additive_separable_power_parts(2.0);
  const std::vector<double> wrong = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(sep.private_utility(wrong), DimensionError);
  CHECK_THROWS_AS(sep.public_utility(wrong), DimensionError);
  CHECK_THROWS_AS(sep.v1_at_unit_income(wrong), DimensionError);
}
