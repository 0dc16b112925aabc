// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cvkit {

/// Central-difference gradient of f at point. When step <= 0 the per
/// coordinate step is 1e-6 * max(1, |x_i|). f must be evaluable on the whole
/// stencil; domain errors propagate.
std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> point, double step = 0.0);

/// Element `index` (0-based) of the van der Corput sequence in `base`.
double halton(std::size_t index, std::size_t base);

/// Point `index` of the Halton sequence in `dim` dimensions (prime bases
/// 2, 3, 5, ...). Components lie in (0, 1). Supports dim <= 16.
std::vector<double> halton_point(std::size_t index, std::size_t dim);

/// Affine map of u in [0,1] onto [lo, hi].
inline double map_to_range(double u, double lo, double hi) { return lo + u * (hi - lo); }

/// splitmix64: the 64-bit mixing generator used for synthetic noise.
/// state_{k+1} = state_k + 0x9E3779B97F4A7C15; output = mix(state_{k+1})
/// where mix xor-shifts and multiplies by 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB. Fully deterministic for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform draw in (0, 1]: (next() >> 11) scaled by 2^-53, zero mapped up.
  double next_unit();

 private:
  std::uint64_t state_;
};

/// One standard normal draw via Box-Muller (two uniforms, cosine branch).
double standard_normal(SplitMix64& rng);

/// Decorrelates a (seed, index) pair into a fresh splitmix64 seed by passing
/// both through the generator. Used for per-row noise streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cvkit
