// Apache License, Version 2.0, refer to LICENSE.txt
#include "cvkit/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cvkit/errors.hpp"

namespace cvkit {

std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> point,
    double step) {
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step > 0.0 ? step : 1e-6 * std::max(1.0, std::fabs(x[i]));
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double halton(std::size_t index, std::size_t base) {
  // 1-based radical inverse; index 0 maps to the first nonzero element.
  std::size_t n = index + 1;
  double result = 0.0;
  double f = 1.0;
  while (n > 0) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(n % base);
    n /= base;
  }
  return result;
}

std::vector<double> halton_point(std::size_t index, std::size_t dim) {
  static constexpr std::array<std::size_t, 16> primes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                         23, 29, 31, 37, 41, 43, 47, 53};
  if (dim == 0 || dim > primes.size())
    throw DimensionError("halton_point supports 1 <= dim <= 16");
  std::vector<double> p(dim);
  for (std::size_t d = 0; d < dim; ++d) p[d] = halton(index, primes[d]);
  return p;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  const std::uint64_t bits = next() >> 11;  // 53 random bits
  double u = static_cast<double>(bits) * 0x1.0p-53;
  if (u == 0.0) u = 0x1.0p-53;
  return u;
}

double standard_normal(SplitMix64& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (index * 0xD1B54A32D192ED03ULL));
  g.next();
  return g.next();
}

}  // namespace cvkit
