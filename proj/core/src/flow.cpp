#include "plap/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/functional.hpp"
#include "plap/psi.hpp"

namespace plap::flow {

namespace {

constexpr double kStationary = 1e-12;
constexpr double kMonotoneFloor = 1e-10;
constexpr double kLow = 0.5;
constexpr double kHigh = 2.0;
constexpr int kSeriesTerms = 60;

struct LegendreRule {
  std::array<double, 20> nodes{};
  std::array<double, 20> weights{};
};

// Nodes by Newton's method on P_20 from the Chebyshev guesses.
LegendreRule legendre_rule() {
  LegendreRule r;
  constexpr int n = 20;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// 20-point Gauss-Legendre on [a, b] of (1 + t^2)^m; the integrand is analytic
// well beyond [kLow, kHigh].
double gauss_legendre(double a, double b, double m) {
  static const LegendreRule rule = legendre_rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = c + h * rule.nodes[k];
    s += rule.weights[k] * std::pow(1.0 + t * t, m);
  }
  return h * s;
}

struct Derivatives {
  std::vector<double> du;
  std::vector<double> op;  // L u, regularized or not
};

// Conservative form (Phi(u'))' for either operator, so that the discrete
// integrations by parts behind the conservation law and e' = -2i survive.
Derivatives derivatives(const GridFunction& u, double p, double epsilon) {
  Derivatives d;
  d.du = grid::spectral_derivative(u.values());
  std::vector<double> flux(d.du.size());
  if (epsilon > 0.0) {
    const RegularizedFlux phi(p, epsilon);
    for (std::size_t j = 0; j < flux.size(); ++j) flux[j] = phi(d.du[j]);
  } else {
    for (std::size_t j = 0; j < flux.size(); ++j) flux[j] = grid::phi(d.du[j], p);
  }
  d.op = grid::spectral_derivative(flux);
  return d;
}

double p_norm(std::span<const double> v, double r) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), r);
  return std::pow(s / static_cast<double>(v.size()), 1.0 / r);
}

double power_mass(const GridFunction& u, double q) {
  double s = 0.0;
  for (double v : u.values()) s += std::pow(v, q);
  return s / static_cast<double>(u.size());
}

// u + c * v, rejecting non-positive results.
GridFunction axpy(const GridFunction& u, double c, const GridFunction& v) {
  std::vector<double> w(u.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = u[j] + c * v[j];
  return GridFunction(std::move(w));
}

GridFunction combine(double a, const GridFunction& u, double b, const GridFunction& v) {
  std::vector<double> w(u.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = a * u[j] + b * v[j];
  return GridFunction(std::move(w));
}

GridFunction checked_rhs(const GridFunction& u, const Params& params, double epsilon, double t) {
  if (!(u.min() > 0.0)) {
    std::ostringstream msg;
    msg << "min u = " << u.min() << " at t = " << t << "; reduce safety or increase epsilon";
    throw Error(ErrorKind::PositivityLost, msg.str());
  }
  return rhs(u, params, epsilon);
}

}  // namespace

RegularizedFlux::RegularizedFlux(double p, double epsilon) : p_(p), epsilon_(epsilon), m_(p / 2.0 - 1.0) {
  if (!(p > 2.0)) throw Error(ErrorKind::InvalidExponent, "regularized flux requires p > 2");
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  if (epsilon == 0.0) return;
  scale_ = (p - 1.0) * std::pow(epsilon, p - 1.0);
  at_low_ = primitive(kLow);
  const double at_high = at_low_ + gauss_legendre(kLow, kHigh, m_);
  // (1 + t^2)^m = sum_k binom(m, k) t^{2m-2k} for t >= 1, integrated termwise from kHigh.
  tail_constant_ = at_high;
  double coeff = 1.0;
  for (int k = 0; k < kSeriesTerms && coeff != 0.0; ++k) {
    const double e = 2.0 * m_ - 2.0 * k + 1.0;
    if (std::abs(e) < 1e-12) {
      tail_log_ = coeff;
      tail_constant_ -= coeff * std::log(kHigh);
      tail_.push_back(0.0);
    } else {
      tail_.push_back(coeff / e);
      tail_constant_ -= coeff / e * std::pow(kHigh, e);
    }
    coeff *= (m_ - k) / (k + 1);
  }
}

double RegularizedFlux::primitive(double x) const {
  if (x <= kLow) {
    // Sum binom(m, k) x^{2k+1} / (2k+1).
    double coeff = 1.0;
    double power = x;
    double s = 0.0;
    for (int k = 0; k < kSeriesTerms && coeff != 0.0; ++k) {
      const double term = coeff * power / (2 * k + 1);
      s += term;
      if (std::abs(term) <= 1e-17 * s) break;
      coeff *= (m_ - k) / (k + 1);
      power *= x * x;
    }
    return s;
  }
  if (x < kHigh) return at_low_ + gauss_legendre(kLow, x, m_);
  const double inv2 = 1.0 / (x * x);
  double power = std::pow(x, 2.0 * m_ + 1.0);
  double s = 0.0;
  for (double c : tail_) {
    const double term = c * power;
    s += term;
    if (c != 0.0 && std::abs(term) <= 1e-17 * std::abs(s)) break;
    power *= inv2;
  }
  return s + tail_constant_ + (tail_log_ != 0.0 ? tail_log_ * std::log(x) : 0.0);
}

double RegularizedFlux::operator()(double s) const {
  if (epsilon_ == 0.0) return grid::phi(s, p_);
  return std::copysign(scale_ * primitive(std::abs(s) / epsilon_), s);
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Horizon: return "horizon";
    case StopReason::Decayed: return "decayed";
    case StopReason::Stationary: return "stationary";
    case StopReason::StepLimit: return "step-limit";
  }
  return "unknown";
}

double default_epsilon(const GridFunction& u0) { return 1e-3 * grid::derivative(u0).max_abs(); }

GridFunction rhs(const GridFunction& u, const Params& params, double epsilon) {
  grid::require_positive(u, "flow right-hand side", 0.0);
  const double p = params.p();
  const double q = params.q();
  const Derivatives d = derivatives(u, p, epsilon);
  const double fp = p_norm(d.du, p);
  std::vector<double> r(u.size(), 0.0);
  if (fp < kStationary) return GridFunction(std::move(r));
  const double prefactor = std::pow(fp / grid::norm(u, p), 2.0 - p);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double bracket = d.op[j] + (1.0 + q - p) * std::pow(std::abs(d.du[j]), p) / u[j];
    r[j] = prefactor * std::pow(u[j], 2.0 - p) * bracket;
  }
  return GridFunction(std::move(r));
}

double max_diffusion(const GridFunction& u, const Params& params, double epsilon) {
  const double p = params.p();
  const std::vector<double> du = grid::spectral_derivative(u.values());
  const double fp = p_norm(du, p);
  if (fp < kStationary) return 0.0;
  const double prefactor = std::pow(fp / grid::norm(u, p), 2.0 - p);
  double m = 0.0;
  for (std::size_t j = 0; j < du.size(); ++j) {
    const double c = (p - 1.0) * std::pow(epsilon * epsilon + du[j] * du[j], p / 2.0 - 1.0) * std::pow(u[j], 2.0 - p);
    m = std::max(m, c);
  }
  return prefactor * m;
}

Sample diagnose(const GridFunction& u, const Params& params, double t) {
  const double p = params.p();
  const PsiFunction psi(params);
  Sample s;
  s.t = t;
  const std::vector<double> du = grid::spectral_derivative(u.values());
  const double fp = p_norm(du, p);
  s.i = fp * fp;
  s.e = std::max(functional::entropy(u, params), 0.0);
  s.q_mass = power_mass(u, params.q());
  s.lyapunov = s.i - psi.lambda1() * psi(s.e);
  double diss = 0.0;
  for (std::size_t j = 0; j < du.size(); ++j) diss += std::pow(std::abs(du[j]), 2.0 * p) / std::pow(u[j], p);
  s.dissipation = diss / static_cast<double>(du.size());
  return s;
}

FlowState start(const GridFunction& u0, const FlowConfig& config) {
  config.params.require_theorem_scope("flow");
  if (u0.size() != config.n) {
    throw Error(ErrorKind::InvalidArgument,
                "initial datum has " + std::to_string(u0.size()) + " samples, config expects " + std::to_string(config.n));
  }
  if (!(config.safety > 0.0 && config.safety < 1.0)) throw Error(ErrorKind::InvalidArgument, "safety must lie in (0,1)");
  if (!(config.t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (config.epsilon && !(*config.epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  grid::require_positive(u0, "flow initial datum");
  const GridFunction u = u0.scaled(1.0 / grid::norm(u0, config.params.q()));
  FlowState state{u, 0.0, config.epsilon.value_or(default_epsilon(u)), 0, StopReason::Horizon, {}};
  state.series.push_back(diagnose(state.u, config.params, 0.0));
  return state;
}

void step(FlowState& state, const FlowConfig& config) {
  const Params& params = config.params;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(state.u.size());
  const double d = max_diffusion(state.u, params, state.epsilon);
  double dt = d > 0.0 ? config.safety * h * h / d : config.t_end - state.t;
  if (config.dt > 0.0) dt = std::min(dt, config.dt);
  dt = std::min(dt, config.t_end - state.t);
  if (!(dt > 1e-14 * std::max(1.0, state.t))) {
    std::ostringstream msg;
    msg << "step " << dt << " at t = " << state.t << " (max diffusion " << d << ")";
    throw Error(ErrorKind::StepUnderflow, msg.str());
  }

  const GridFunction& u = state.u;
  const GridFunction u1 = axpy(u, dt, checked_rhs(u, params, state.epsilon, state.t));
  const GridFunction u2 = combine(0.75, u, 0.25, axpy(u1, dt, checked_rhs(u1, params, state.epsilon, state.t)));
  GridFunction u3 = combine(1.0 / 3.0, u, 2.0 / 3.0, axpy(u2, dt, checked_rhs(u2, params, state.epsilon, state.t)));
  if (!(u3.min() > 0.0)) {
    std::ostringstream msg;
    msg << "min u = " << u3.min() << " after the step to t = " << state.t + dt;
    throw Error(ErrorKind::PositivityLost, msg.str());
  }

  const double mass = power_mass(u3, params.q());
  const double drift = mass - 1.0;
  if (std::abs(drift) > config.max_step_drift) {
    std::ostringstream msg;
    msg << "∫u^q drifted by " << drift << " in one step at t = " << state.t;
    throw Error(ErrorKind::ConservationDrift, msg.str());
  }
  state.u = u3.scaled(std::pow(mass, -1.0 / params.q()));
  state.t += dt;
  ++state.steps;
  Sample s = diagnose(state.u, params, state.t);
  s.raw_drift = drift;
  state.series.push_back(s);
}

FlowState run(const GridFunction& u0, const FlowConfig& config) {
  FlowState state = start(u0, config);
  const double i0 = state.series.front().i;
  const double horizon = config.t_end * (1.0 - 1e-15);
  while (true) {
    const Sample& last = state.series.back();
    if (std::sqrt(last.i) < kStationary) {
      state.stop = StopReason::Stationary;
      break;
    }
    if (last.i <= config.decay_target * i0) {
      state.stop = StopReason::Decayed;
      break;
    }
    if (state.t >= horizon) {
      state.stop = StopReason::Horizon;
      break;
    }
    if (state.steps >= config.max_steps) {
      state.stop = StopReason::StepLimit;
      break;
    }
    step(state, config);
  }
  return state;
}

std::vector<FlowState> run_all(std::span<const std::pair<GridFunction, FlowConfig>> jobs) {
  std::vector<std::future<FlowState>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job] { return run(job.first, job.second); }));
  }
  std::vector<FlowState> out;
  out.reserve(jobs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

GridFunction perturbed_constant(double p, std::size_t n, double amplitude) {
  std::vector<double> v = constants::lambda1_star_profile(p, n);
  for (double& x : v) x = 1.0 + amplitude * x;
  return GridFunction(std::move(v));
}

double fitted_rate(std::span<const Sample> series, double lo, double hi) {
  if (series.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double i0 = series.front().i;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t count = 0;
  for (const Sample& s : series) {
    const double r = s.i / i0;
    if (r < lo || r > hi || !(s.i > 0.0)) continue;
    const double y = std::log(s.i);
    st += s.t;
    sy += y;
    stt += s.t * s.t;
    sty += s.t * y;
    ++count;
  }
  if (count < 3) return std::numeric_limits<double>::quiet_NaN();
  const double c = static_cast<double>(count);
  const double denom = c * stt - st * st;
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return -(c * sty - st * sy) / denom;
}

SeriesReport check_series(const FlowState& state, const Params& params) {
  const auto& s = state.series;
  const double lambda1 = constants::lambda1(params.p());
  SeriesReport r;
  r.e_decreasing = true;
  r.i_decreasing = true;
  r.min_eep_margin = std::numeric_limits<double>::infinity();
  const double i0 = s.front().i;
  const double l0 = std::abs(s.front().lyapunov);
  for (std::size_t k = 0; k < s.size(); ++k) {
    r.max_raw_drift = std::max(r.max_raw_drift, std::abs(s[k].raw_drift));
    r.max_mass_error = std::max(r.max_mass_error, std::abs(s[k].q_mass - 1.0));
    if (i0 > 0.0) r.max_decay_ratio = std::max(r.max_decay_ratio, s[k].i / (i0 * std::exp(-2.0 * lambda1 * s[k].t)));
    if (s[k].i > 0.0) r.min_eep_margin = std::min(r.min_eep_margin, (s[k].i - lambda1 * s[k].e) / s[k].i);
    if (k == 0) continue;
    // Monotonicity is only meaningful above the round-off floor of i.
    if (s[k - 1].i >= kMonotoneFloor) {
      if (!(s[k].e < s[k - 1].e)) r.e_decreasing = false;
      if (!(s[k].i < s[k - 1].i)) r.i_decreasing = false;
    }
    const double rise = s[k].lyapunov - s[k - 1].lyapunov;
    if (l0 > 0.0) r.max_lyapunov_increase = std::max(r.max_lyapunov_increase, rise / l0);
    if (k + 1 < s.size() && s[k].i > 0.0) {
      const double de = (s[k + 1].e - s[k - 1].e) / (s[k + 1].t - s[k - 1].t);
      r.max_entropy_production_error = std::max(r.max_entropy_production_error, std::abs(de + 2.0 * s[k].i) / (2.0 * s[k].i));
    }
  }
  r.lyapunov_nonincreasing = r.max_lyapunov_increase <= 1e-8;
  return r;
}

RateReport improved_rate_report(const FlowState& state, const Params& params) {
  const auto& s = state.series;
  const double p = params.p();
  const double q = params.q();
  const PsiFunction psi(params);
  const double lambda1 = psi.lambda1();
  RateReport r;
  r.reference = 2.0 * lambda1;
  r.reference_star = 2.0 * constants::lambda1_star(p);
  r.early_rate = fitted_rate(s, 1e-1, 1.0);
  double reached = 1.0;
  for (const Sample& x : s) reached = std::min(reached, x.i / s.front().i);
  r.late_rate = fitted_rate(s, reached, std::min(1.0, reached * 1e2));

  r.min_odi_residual = std::numeric_limits<double>::infinity();
  r.min_cs_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double weight = 1.0 + (p - q) * s[k].e;
    if (s[k].i > 0.0) {
      const double cs_rhs = std::pow(s[k].i, p) / weight;
      r.min_cs_margin = std::min(r.min_cs_margin, s[k].dissipation / cs_rhs - 1.0);
    }
    if (k == 0 || k + 1 >= s.size()) continue;
    const double h0 = s[k].t - s[k - 1].t;
    const double h1 = s[k + 1].t - s[k].t;
    const double de = (s[k + 1].e - s[k - 1].e) / (h0 + h1);
    const double d2e = 2.0 * ((s[k + 1].e - s[k].e) / h1 - (s[k].e - s[k - 1].e) / h0) / (h0 + h1);
    const double residual = d2e + 2.0 * lambda1 * de - 2.0 * psi.kappa() * de * de * std::pow(s[k].i, p - 2.0) / weight;
    const double scale = std::abs(d2e) + 2.0 * lambda1 * std::abs(de);
    if (scale > 0.0) r.min_odi_residual = std::min(r.min_odi_residual, residual / scale);
    const double rate = -std::log(s[k + 1].i / s[k - 1].i) / (h0 + h1);
    if (rate > r.reference * 1.01) r.improvement_until = s[k].t;
  }
  r.odi_holds = r.min_odi_residual >= -1e-6;
  r.cs_holds = r.min_cs_margin >= -1e-10;
  return r;
}

}  // namespace plap::flow
