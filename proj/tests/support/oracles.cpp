#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plap/ode.hpp"

namespace plap::testing {

double pi_p_closed(double p) {
  const double pi = std::numbers::pi;
  return 2.0 * pi * std::pow(p - 1.0, 1.0 / p) / (p * std::sin(pi / p));
}

double lambda1_closed(double p) {
  const double r = pi_p_closed(p) / std::numbers::pi;
  return r * r;
}

double lambda1_star_shooting(double p) {
  // State (v, Y = |v'|^{p-2} v', ∫|v'|^p) with c = 1.
  const double r = 1.0 / (p - 1.0);
  const ode::VectorField<3> rhs = [&](double, const ode::State<3>& y) {
    const double dv = std::copysign(std::pow(std::abs(y[1]), r), y[1]);
    return ode::State<3>{dv, -y[0], std::pow(std::abs(dv), p)};
  };
  ode::OdeOptions opt;
  opt.step_tol = 1e-13;
  opt.scale_floor = 1e-6;
  opt.initial_step = 1e-6;
  opt.record = false;
  const auto run = ode::integrate_until_events<3>(
      rhs, {1.0, 0.0, 0.0}, [](const ode::State<3>& y) { return y[0]; }, 1, 1e3, opt, ode::Crossing::Falling);
  if (run.event_times.empty()) throw std::runtime_error("no zero of v");
  const double tau = run.event_times.front();
  const double kinetic = run.event_states.front()[2];  // ∫_0^tau |v'|^p at c = 1

  // x -> v(s x) solves the problem with c = s^p; s = 2 tau / pi puts the zero at pi/2.
  const double s = 2.0 * tau / std::numbers::pi;
  const double c = std::pow(s, p);
  // Quarter-period symmetry: mean |v_s'|^p = s^p kinetic / tau.
  const double mean_kinetic = c * kinetic / tau;
  return c * std::pow(mean_kinetic, (2.0 - p) / p);
}

double regularized_flux_closed(double p, double eps, double s) {
  const double e2 = eps * eps;
  const double root = std::sqrt(e2 + s * s);
  if (p == 3.0) {
    // 2 ∫ sqrt(e^2 + t^2)
    return s * root + e2 * std::asinh(s / eps);
  }
  if (p == 4.0) return 3.0 * e2 * s + s * s * s;
  if (p == 5.0) {
    // 4 ∫ (e^2 + t^2)^{3/2}
    return s * (2.0 * s * s + 5.0 * e2) * root / 2.0 + 1.5 * e2 * e2 * std::asinh(s / eps);
  }
  throw std::invalid_argument("closed form available for p = 3, 4, 5 only");
}

double psi_3_5(double z, double lambda1) {
  return z + 1.2 * lambda1 * (-z * z / 4.0 - z / 4.0 - std::log1p(-2.0 * z) / 8.0);
}

double simpson(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  if (n % 2 != 0) ++n;
  const double h = (hi - lo) / static_cast<double>(n);
  double sum = f(lo) + f(hi);
  for (std::size_t k = 1; k < n; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(k));
  return sum * h / 3.0;
}

}  // namespace plap::testing
