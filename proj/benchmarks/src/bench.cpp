// Apache License, Version 2.0, refer to LICENSE.txt
//
// Microbenchmarks for the solver hot paths. Run: cvkit_bench
// [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include <vector>

#include "cvkit/duality.hpp"
#include "cvkit/estimate.hpp"
#include "cvkit/utility.hpp"
#include "cvkit/welfare.hpp"

namespace {

using namespace cvkit;

void BM_SolveUmpTwoGoods(benchmark::State& state) {
  const UtilitySpec spec = UtilitySpec::power_weighted(0.5);
  const PriceIncome pi({1.0, 2.0}, 12.0);
  const PublicBundle z({1.0, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ump(spec, pi, z));
  }
}
BENCHMARK(BM_SolveUmpTwoGoods);

void BM_SolveUmpEightGoods(benchmark::State& state) {
  const UtilitySpec spec = UtilitySpec::power_weighted(0.5, 8);
  std::vector<double> prices, z1;
  for (int n = 0; n < 8; ++n) {
    prices.push_back(1.0 + 0.25 * n);
    z1.push_back(1.0 + 0.5 * n);
  }
  const PriceIncome pi(prices, 40.0);
  const PublicBundle z(z1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ump(spec, pi, z));
  }
}
BENCHMARK(BM_SolveUmpEightGoods);

void BM_SolveEmp(benchmark::State& state) {
  const UtilitySpec spec = UtilitySpec::power_weighted(0.5);
  const std::vector<double> prices = {1.0, 2.0};
  const PublicBundle z({1.0, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_emp(spec, 9.0, prices, z));
  }
}
BENCHMARK(BM_SolveEmp);

void BM_CvBruteForce(benchmark::State& state) {
  const CvQuery query{UtilitySpec::power_weighted(0.5), PriceIncome({1.0, 2.0}, 12.0),
                      PublicBundle({1.0, 2.0}), 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cv_brute_force(query));
  }
}
BENCHMARK(BM_CvBruteForce);

void BM_GeneratePanel(benchmark::State& state) {
  const UtilitySpec spec = UtilitySpec::power_weighted(0.5);
  const PriceIncome pi({1.0, 2.0}, 12.0);
  const PublicBundle z({1.0, 2.0});
  std::vector<double> t_values;
  const auto rows = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < rows; ++i)
    t_values.push_back(0.25 + 3.75 * (static_cast<double>(i) / (rows - 1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_panel(spec, pi, z, t_values, 0.05, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows));
}
BENCHMARK(BM_GeneratePanel)->Arg(25)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
