#include "plap/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "plap/error.hpp"

namespace plap::grid {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per size; fftw_execute_dft_* on fresh arrays is
// thread-safe, planning is not.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const int len = static_cast<int>(n);
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  PlanPair pair;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  pair.forward = fftw_plan_dft_r2c_1d(len, in, out, flags);
  pair.backward = fftw_plan_dft_c2r_1d(len, out, in, flags);
  fftw_free(in);
  fftw_free(out);
  return cache.emplace(n, pair).first->second;
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n < 16 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "grid size must be even and at least 16, got " + std::to_string(n));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "grid samples must be finite");
  }
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = f(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }
  return GridFunction(std::move(v));
}

GridFunction GridFunction::constant(double c, std::size_t n) { return GridFunction(std::vector<double>(n, c)); }

double GridFunction::node(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size());
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_positive(double floor) const { return max_abs() > 0.0 && min() > floor * max_abs(); }

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), f);
  return GridFunction(std::move(v));
}

GridFunction GridFunction::scaled(double c) const {
  return map([c](double v) { return c * v; });
}

GridFunction read_csv(std::istream& in) {
  std::vector<double> v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const std::string cell = line.substr(start, line.find_first_of(",; \t", start) - start);
    try {
      std::size_t used = 0;
      const double x = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      v.push_back(x);
    } catch (const std::exception&) {
      if (!first) throw Error(ErrorKind::InvalidArgument, "unparseable CSV sample: " + cell);
    }
    first = false;
  }
  return GridFunction(std::move(v));
}

void require_positive(const GridFunction& u, std::string_view what, double floor) {
  if (!u.is_positive(floor)) {
    std::ostringstream msg;
    msg << what << " requires min u > " << floor << " max|u| (min " << u.min() << ", max|u| " << u.max_abs() << ")";
    throw Error(ErrorKind::NonPositive, msg.str());
  }
}

double mean(std::span<const double> g) {
  double s = 0.0;
  for (double v : g) s += v;
  return s / static_cast<double>(g.size());
}

double mean(const GridFunction& u) { return mean(u.values()); }

double norm(const GridFunction& u, double r) {
  if (!(r >= 1.0)) throw Error(ErrorKind::InvalidArgument, "norm exponent must be >= 1");
  const double scale = u.max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : u.values()) s += std::pow(std::abs(v) / scale, r);
  return scale * std::pow(s / static_cast<double>(u.size()), 1.0 / r);
}

std::vector<double> spectral_derivative(std::span<const double> g) {
  const std::size_t n = g.size();
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "spectral derivative needs an even size");
  const PlanPair& plans = plans_for(n);
  std::vector<double> in(g.begin(), g.end());
  std::vector<std::complex<double>> hat(n / 2 + 1);
  auto* raw_hat = reinterpret_cast<fftw_complex*>(hat.data());
  fftw_execute_dft_r2c(plans.forward, in.data(), raw_hat);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= std::complex<double>(0.0, static_cast<double>(k) * inv_n);
  hat[n / 2] = 0.0;
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans.backward, raw_hat, out.data());
  return out;
}

GridFunction derivative(const GridFunction& u) { return GridFunction(spectral_derivative(u.values())); }

double phi(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), p - 1.0), s);
}

GridFunction p_laplacian(const GridFunction& u, double p) {
  std::vector<double> flux = spectral_derivative(u.values());
  for (double& v : flux) v = phi(v, p);
  return GridFunction(spectral_derivative(flux));
}

}  // namespace plap::grid
