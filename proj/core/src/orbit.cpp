#include "plap/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plap/error.hpp"

namespace plap::orbit {

namespace {

using numerics::EndpointOrders;
using numerics::Interval;
using numerics::OffsetIntegrand;
using numerics::pow_difference;

void require_distinct(const Params& params) {
  if (params.log_case()) {
    throw Error(ErrorKind::InvalidExponent, "orbit machinery requires p != q, got " + params.describe());
  }
}

void require_seed(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream msg;
    msg << "seed a must lie in (0,1), got " << a;
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
}

// p/(p-1) (W(a) - W(X)) on [a, b], formed from whichever turning point is nearer.
struct WellDepth {
  Potential W;
  double a;
  double b;
  double scale;

  double operator()(double from_a, double to_b) const {
    const double gap = from_a <= to_b ? -W.difference(a, from_a) : -W.difference(b, -to_b);
    return scale * std::max(gap, 0.0);
  }
};

WellDepth make_depth(double a, double b, const Params& params) {
  const double p = params.p();
  return WellDepth{Potential(params), a, b, p / (p - 1.0)};
}

double signed_pow(double x, double r) { return std::copysign(std::pow(std::abs(x), r), x); }

}  // namespace

numerics::QuadRule orbit_rule() { return numerics::QuadRule::singular(1e-11); }

Potential::Potential(const Params& params) : params_(params), sign_(params.q() > params.p() ? 1.0 : -1.0) {
  require_distinct(params);
}

double Potential::operator()(double x) const {
  const double ax = std::abs(x);
  return sign_ * (std::pow(ax, params_.q()) / params_.q() - std::pow(ax, params_.p()) / params_.p());
}

double Potential::derivative(double x) const {
  return sign_ * (signed_pow(x, params_.q() - 1.0) - signed_pow(x, params_.p() - 1.0));
}

double Potential::difference(double x, double d) const {
  return sign_ * (pow_difference(x, d, params_.q()) / params_.q() - pow_difference(x, d, params_.p()) / params_.p());
}

double Potential::zero() const {
  return std::pow(params_.q() / params_.p(), 1.0 / (params_.q() - params_.p()));
}

double energy(const PhasePoint& point, const Params& params) {
  const double p = params.p();
  const double kinetic = (p - 1.0) * std::pow(std::abs(point.Y), p / (p - 1.0));
  if (params.log_case()) return kinetic;
  return kinetic + p * Potential(params)(point.X);
}

double conjugate_point(double a, const Params& params) {
  require_seed(a);
  const Potential W(params);
  const numerics::Integrand level = [&](double x) { return W.difference(a, x - a); };
  const double hi = W.zero();
  const numerics::RootBracket bracket(1.0, hi, level(1.0), level(hi));
  return numerics::find_root(level, bracket, 1e-16);
}

double normalize_seed(double seed, const Params& params) {
  const Potential W(params);
  if (seed > 0.0 && seed < 1.0) return seed;
  if (!(seed > 1.0) || !std::isfinite(seed)) {
    std::ostringstream msg;
    msg << "seed " << seed << " does not generate a non-constant positive orbit";
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
  if (!(W(seed) < 0.0)) {
    std::ostringstream msg;
    msg << "seed " << seed << " lies beyond the zero-energy amplitude " << W.zero()
        << " and generates a sign-changing orbit";
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
  const numerics::Integrand level = [&](double x) { return W.difference(seed, x - seed); };
  const numerics::RootBracket bracket(0.0, 1.0, level(0.0), level(1.0));
  return numerics::find_root(level, bracket, 1e-16);
}

double period(double a, const Params& params, const numerics::QuadRule& rule) {
  const double b = conjugate_point(a, params);
  const WellDepth depth = make_depth(a, b, params);
  const double inv_p = 1.0 / params.p();
  const OffsetIntegrand f = [&](double, double from_a, double to_b) {
    return std::pow(depth(from_a, to_b), -inv_p);
  };
  return 2.0 * numerics::integrate(f, Interval{a, b}, rule, EndpointOrders{inv_p, inv_p});
}

NormIntegrals norm_integrals(double a, const Params& params, const numerics::QuadRule& rule) {
  const double b = conjugate_point(a, params);
  const WellDepth depth = make_depth(a, b, params);
  const double p = params.p();
  const double q = params.q();
  const double inv_p = 1.0 / p;
  const Interval span{a, b};
  const EndpointOrders orders{inv_p, inv_p};

  const OffsetIntegrand kinetic = [&](double, double from_a, double to_b) {
    return std::pow(depth(from_a, to_b), 1.0 - inv_p);
  };
  const OffsetIntegrand lp = [&](double x, double from_a, double to_b) {
    return std::pow(x, p) * std::pow(depth(from_a, to_b), -inv_p);
  };
  const OffsetIntegrand lq = [&](double x, double from_a, double to_b) {
    return std::pow(x, q) * std::pow(depth(from_a, to_b), -inv_p);
  };
  NormIntegrals out;
  // The kinetic integrand vanishes at both ends; only the others blow up.
  out.Ip_prime = 2.0 * numerics::integrate(kinetic, span, rule, EndpointOrders{});
  out.Ip = 2.0 * numerics::integrate(lp, span, rule, orders);
  out.Iq = 2.0 * numerics::integrate(lq, span, rule, orders);
  return out;
}

Orbit make_orbit(double a, const Params& params, const numerics::QuadRule& rule) {
  Orbit out;
  out.a = a;
  out.b = conjugate_point(a, params);
  out.T = period(a, params, rule);
  out.integrals = norm_integrals(a, params, rule);
  return out;
}

ShotOrbit shoot(double seed, const Params& params, const ShootOptions& options) {
  const Potential W(params);
  const double p = params.p();
  const double q = params.q();
  const double dual = p / (p - 1.0);
  const ode::VectorField<5> rhs = [&](double, const ShotState& y) {
    const double ay = std::abs(y[1]);
    const double ax = std::abs(y[0]);
    return ShotState{signed_pow(y[1], 1.0 / (p - 1.0)), -W.derivative(y[0]), std::pow(ay, dual),
                     std::pow(ax, p), std::pow(ax, q)};
  };
  ode::OdeOptions opt;
  opt.step_tol = options.step_tol;
  opt.initial_step = 1e-4;
  opt.scale_floor = options.scale_floor;
  opt.record = true;  // drift is measured on the trajectory
  const std::function<double(const ShotState&)> momentum = [](const ShotState& y) { return y[1]; };
  const ShotState y0{seed, 0.0, 0.0, 0.0, 0.0};
  ode::EventRun<5> run = ode::integrate_until_events<5>(rhs, y0, momentum, 2, options.time_cap, opt);

  ShotOrbit out;
  out.seed = seed;
  out.period = run.event_times.back();
  out.final_state = run.event_states.back();
  out.energy = energy({seed, 0.0}, params);
  out.integrals = NormIntegrals{out.final_state[2], out.final_state[3], out.final_state[4]};
  double min_x = seed;
  for (const ShotState& y : run.trajectory.y) {
    min_x = std::min(min_x, y[0]);
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(energy({y[0], y[1]}, params) - out.energy));
  }
  out.kind = min_x > 0.0 ? OrbitKind::Positive : OrbitKind::SignChanging;
  if (options.record) out.trajectory = std::move(run.trajectory);
  return out;
}

double shoot_period(double a, const Params& params) {
  require_seed(a);
  ShootOptions options;
  options.record = false;
  return shoot(a, params, options).period;
}

Profile profile(double a, const Params& params, std::size_t n, const numerics::QuadRule& rule) {
  require_seed(a);
  if (n < 8) throw Error(ErrorKind::InvalidArgument, "profile needs at least 8 samples");
  const double b = conjugate_point(a, params);
  const WellDepth depth = make_depth(a, b, params);
  const double p = params.p();
  const double inv_p = 1.0 / p;
  const OffsetIntegrand density = [depth, inv_p](double, double from_a, double to_b) {
    return std::pow(depth(from_a, to_b), -inv_p);
  };
  const numerics::MonotoneArc arc(density, Interval{a, b}, EndpointOrders{inv_p, inv_p}, rule);

  Profile out;
  out.a = a;
  out.b = b;
  out.T = 2.0 * arc.duration();
  const double half = arc.duration();
  out.r.resize(n);
  out.f.resize(n);
  out.df.resize(n);
  out.flux.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = out.T * static_cast<double>(j) / static_cast<double>(n);
    const bool rising = r <= half;
    const double x = arc.position(rising ? r : out.T - r);
    // f' from the energy identity, with the depth measured from the nearer turning point.
    const double speed = std::pow(depth(x - a, b - x), inv_p);
    out.r[j] = r;
    out.f[j] = x;
    out.df[j] = rising ? speed : -speed;
    out.flux[j] = signed_pow(out.df[j], p - 1.0);
  }
  return out;
}

}  // namespace plap::orbit
