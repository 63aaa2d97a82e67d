#include "plap/constants.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "plap/error.hpp"

namespace plap::constants {

namespace {

using numerics::EndpointOrders;
using numerics::Interval;
using numerics::OffsetIntegrand;

void require_exponent(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    std::ostringstream msg;
    msg << "p must be > 1, got " << p;
    throw Error(ErrorKind::InvalidExponent, msg.str());
  }
}

// 1 - (1-d)^r for 0 <= d <= 1, accurate when d is small.
double one_minus_pow(double d, double r) {
  if (d >= 1.0) return 1.0;
  return -std::expm1(r * std::log1p(-d));
}

// ∫_0^1 ((p-1)/(1-X^p))^{1/p} dX: a quarter of the period of
// (p-1)|f'|^p + |f|^p = 1.
double lambda1_quarter(double p) {
  const OffsetIntegrand f = [p](double x, double, double to_hi) {
    const double gap = to_hi < 0.5 ? one_minus_pow(to_hi, p) : 1.0 - std::pow(x, p);
    return std::pow((p - 1.0) / gap, 1.0 / p);
  };
  return numerics::integrate(f, Interval{0.0, 1.0}, constants_rule(), EndpointOrders{0.0, 1.0 / p});
}

// ∫_0^1 (2(p-1)/(p(1-X^2)))^{exponent} dX with 1 - X^2 = d(2-d), d = 1 - X.
double star_quarter(double p, double exponent) {
  const double c = 2.0 * (p - 1.0) / p;
  const OffsetIntegrand f = [c, exponent](double, double, double to_hi) {
    return std::pow(c / (to_hi * (2.0 - to_hi)), exponent);
  };
  // The exponent 1/p - 1 makes the integrand vanish at X = 1; the same
  // order-1/p substitution is applied to both integrals.
  return numerics::integrate(f, Interval{0.0, 1.0}, constants_rule(), EndpointOrders{0.0, 1.0 / p});
}

EigenConstants compute(double p) {
  EigenConstants out;
  out.p = p;
  const double j1 = lambda1_quarter(p);
  out.pi_p = 2.0 * j1;
  out.lambda1 = std::pow(2.0 / std::numbers::pi * j1, 2.0);
  out.Lambda1 = std::pow(out.pi_p / std::numbers::pi, p);
  const double vanishing = star_quarter(p, 1.0 / p - 1.0);
  const double singular = star_quarter(p, 1.0 / p);
  out.lambda1_star = std::pow(2.0 / std::numbers::pi * vanishing, 2.0 / p - 1.0) *
                     std::pow(2.0 / std::numbers::pi * singular, 3.0 - 2.0 / p);
  out.in_theorem_scope = p > 2.0;
  return out;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<double, EigenConstants>& cache() {
  static std::map<double, EigenConstants> table;
  return table;
}

// Samples a 2pi-periodic profile whose half period is the monotone arc from
// X = -1 to X = 1 with travel-time density `density`. The profile is even
// about 0 and odd about a quarter period, so only the first quarter is solved.
std::vector<double> sample_symmetric_profile(const OffsetIntegrand& density, double p, std::size_t n,
                                             double shift) {
  const numerics::MonotoneArc arc(density, Interval{-1.0, 1.0}, EndpointOrders{1.0 / p, 1.0 / p},
                                  constants_rule());
  const double period = 2.0 * arc.duration();
  const double half = arc.duration();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + shift;
    double r = std::fmod(x * period / (2.0 * std::numbers::pi), period);
    if (r < 0.0) r += period;
    r = std::min(r, period - r);  // even about 0
    if (r <= 0.5 * half) {
      out[j] = arc.position(half - r);
    } else {
      out[j] = -arc.position(r);  // odd about the quarter period
    }
  }
  return out;
}

}  // namespace

numerics::QuadRule constants_rule() {
  return numerics::QuadRule{numerics::QuadKind::SingularEndpoint, 1e-13, 1e-12, 60};
}

EigenConstants eigen_constants(double p) {
  require_exponent(p);
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache().find(p); it != cache().end()) return it->second;
  }
  // Computed outside the lock; concurrent misses compute the same value.
  const EigenConstants value = compute(p);
  std::lock_guard lock(cache_mutex());
  cache()[p] = value;
  return value;
}

void clear_cache() {
  std::lock_guard lock(cache_mutex());
  cache().clear();
}

double pi_p(double p) { return eigen_constants(p).pi_p; }
double lambda1(double p) { return eigen_constants(p).lambda1; }
double lambda1_star(double p) { return eigen_constants(p).lambda1_star; }
double Lambda1(double p) { return eigen_constants(p).Lambda1; }

std::vector<double> lambda1_profile(double p, std::size_t n, double shift) {
  require_exponent(p);
  const OffsetIntegrand density = [p](double, double from_lo, double to_hi) {
    const double d = std::min(from_lo, to_hi);
    return std::pow((p - 1.0) / one_minus_pow(d, p), 1.0 / p);
  };
  return sample_symmetric_profile(density, p, n, shift);
}

std::vector<double> lambda1_profile_flux(double p, std::size_t n, double shift) {
  const std::vector<double> f = lambda1_profile(p, n, shift);
  const double speed = std::pow(pi_p(p) / std::numbers::pi, p - 1.0);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + shift;
    double r = std::fmod(x, 2.0 * std::numbers::pi);
    if (r < 0.0) r += 2.0 * std::numbers::pi;
    const double gap = std::max(0.0, 1.0 - std::pow(std::abs(f[j]), p));
    const double magnitude = speed * std::pow(gap / (p - 1.0), (p - 1.0) / p);
    // f_p decreases on (0, pi) and increases on (pi, 2 pi).
    out[j] = r < std::numbers::pi ? -magnitude : magnitude;
  }
  return out;
}

std::vector<double> lambda1_star_profile(double p, std::size_t n, double shift) {
  require_exponent(p);
  const double c = 2.0 * (p - 1.0) / p;
  const OffsetIntegrand density = [c, p](double, double from_lo, double to_hi) {
    const double d = std::min(from_lo, to_hi);
    return std::pow(c / (d * (2.0 - d)), 1.0 / p);
  };
  return sample_symmetric_profile(density, p, n, shift);
}

}  // namespace plap::constants
