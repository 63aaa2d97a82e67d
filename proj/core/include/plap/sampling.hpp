#pragma once

// Seeded random draws for property checks. The sequence depends only on the
// seed: mt19937_64 is fully specified by the standard and the conversion to
// doubles is done here rather than by a library distribution.

#include <cstddef>
#include <cstdint>
#include <random>

#include "plap/grid.hpp"

namespace plap::sampling {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {lo, ..., hi}.
  int integer(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

/// 1 + A v / max|v| with v a trigonometric polynomial of 1..max_modes random
/// modes (coefficients decaying like 1/k) and A log-uniform in
/// [min_amplitude, max_amplitude]. Positive whenever max_amplitude < 1.
grid::GridFunction random_positive_trig(Rng& rng, std::size_t n, int max_modes = 8, double min_amplitude = 1e-3,
                                        double max_amplitude = 0.9);

}  // namespace plap::sampling
