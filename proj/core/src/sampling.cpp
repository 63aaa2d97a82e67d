#include "plap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "plap/error.hpp"

namespace plap::sampling {

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

grid::GridFunction random_positive_trig(Rng& rng, std::size_t n, int max_modes, double min_amplitude,
                                        double max_amplitude) {
  if (max_modes < 1) throw Error(ErrorKind::InvalidArgument, "max_modes must be positive");
  if (!(0.0 < min_amplitude && min_amplitude <= max_amplitude && max_amplitude < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "amplitudes must satisfy 0 < min <= max < 1");
  }
  const int modes = rng.integer(1, max_modes);
  std::vector<double> a(modes), b(modes);
  for (int k = 0; k < modes; ++k) {
    a[k] = rng.uniform(-1.0, 1.0) / (k + 1);
    b[k] = rng.uniform(-1.0, 1.0) / (k + 1);
  }
  const double amplitude = min_amplitude * std::pow(max_amplitude / min_amplitude, rng.uniform());
  std::vector<double> v(n);
  double peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    double s = 0.0;
    for (int k = 0; k < modes; ++k) s += a[k] * std::cos((k + 1) * x) + b[k] * std::sin((k + 1) * x);
    v[j] = s;
    peak = std::max(peak, std::abs(s));
  }
  for (double& s : v) s = 1.0 + amplitude * (peak > 0.0 ? s / peak : 0.0);
  return grid::GridFunction(std::move(v));
}

}  // namespace plap::sampling
