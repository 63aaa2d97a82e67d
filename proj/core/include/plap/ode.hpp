#pragma once

// Explicit adaptive Dormand-Prince 5(4) integration for small autonomous
// systems, with sign-change event localization. Used as the independent
// shooting oracle for every quadrature-based period in the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "plap/error.hpp"
#include "plap/numerics.hpp"

namespace plap::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
using VectorField = std::function<State<N>(double t, const State<N>& y)>;

template <std::size_t N>
struct Trajectory {
  std::vector<double> t;
  std::vector<State<N>> y;
};

struct OdeOptions {
  double step_tol = 1e-10;
  double scale_floor = 1.0;  ///< error is measured relative to max(scale_floor, |y_i|)
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
  bool record = true;
};

enum class Crossing { Any, Rising, Falling };

template <std::size_t N>
struct EventRun {
  Trajectory<N> trajectory;
  std::vector<double> event_times;
  std::vector<State<N>> event_states;
};

template <std::size_t N>
class DormandPrince {
 public:
  DormandPrince(VectorField<N> rhs, OdeOptions options) : rhs_(std::move(rhs)), opt_(options) {}

  /// One uncontrolled step of size h; `err` receives the embedded error estimate.
  State<N> advance(double t, const State<N>& y, double h, State<N>* err = nullptr) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    State<N> tmp{};
    const State<N> k1 = rhs_(t, y);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    const State<N> k2 = rhs_(t + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const State<N> k3 = rhs_(t + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State<N> k4 = rhs_(t + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State<N> k5 = rhs_(t + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State<N> k6 = rhs_(t + h, tmp);
    State<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (err != nullptr) {
      const State<N> k7 = rhs_(t + h, out);
      for (std::size_t i = 0; i < N; ++i)
        (*err)[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    return out;
  }

  /// Attempts steps from (t, y) with trial size h until one is accepted.
  /// On return t, y hold the accepted state and h the proposed next size.
  void step(double& t, State<N>& y, double& h) const {
    for (;;) {
      const double h_floor = 1e-14 * std::max(1.0, std::abs(t));
      if (h < h_floor) {
        std::ostringstream msg;
        msg << "step size " << h << " collapsed at t=" << t;
        throw Error(ErrorKind::StepUnderflow, msg.str());
      }
      State<N> err{};
      const State<N> next = advance(t, y, h, &err);
      double ratio = 0.0;
      bool finite = true;
      for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(next[i])) finite = false;
        const double scale = opt_.step_tol * std::max({opt_.scale_floor, std::abs(y[i]), std::abs(next[i])});
        ratio = std::max(ratio, std::abs(err[i]) / scale);
      }
      if (finite && ratio <= 1.0) {
        t += h;
        y = next;
        const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
        h = std::min(h * grow, opt_.max_step);
        return;
      }
      h *= finite ? std::max(0.1, 0.9 * std::pow(ratio, -0.25)) : 0.25;
    }
  }

  const OdeOptions& options() const { return opt_; }

 private:
  VectorField<N> rhs_;
  OdeOptions opt_;
};

/// Integrates y' = rhs(t, y) on [0, t_end], recording every accepted step.
template <std::size_t N>
Trajectory<N> integrate_ode(const VectorField<N>& rhs, State<N> y0, double t_end, double step_tol) {
  OdeOptions opt;
  opt.step_tol = step_tol;
  opt.initial_step = std::min(opt.initial_step, t_end);
  DormandPrince<N> stepper(rhs, opt);
  Trajectory<N> out;
  double t = 0.0;
  double h = opt.initial_step;
  out.t.push_back(t);
  out.y.push_back(y0);
  while (t < t_end) {
    if (out.t.size() > opt.max_steps) throw Error(ErrorKind::NonConvergent, "integrate_ode: step limit reached");
    h = std::min(h, t_end - t);
    const double before = t;
    stepper.step(t, y0, h);
    if (t_end - t < 1e-15 * std::max(1.0, t_end)) t = t_end;
    out.t.push_back(t);
    out.y.push_back(y0);
    if (t == before) break;
  }
  return out;
}

/// Integrates until `event(y)` has changed sign `stop_after` times (a zero at
/// the initial state does not count), or throws NonPeriodic at `t_cap`.
/// Each crossing is located by re-taking the bracketing step with a root-found
/// step size, so event times carry the local accuracy of a single step. A
/// recorded trajectory ends at the last event.
template <std::size_t N>
EventRun<N> integrate_until_events(const VectorField<N>& rhs, State<N> y0,
                                   const std::function<double(const State<N>&)>& event, std::size_t stop_after,
                                   double t_cap, OdeOptions opt, Crossing direction = Crossing::Any) {
  DormandPrince<N> stepper(rhs, opt);
  EventRun<N> run;
  double t = 0.0;
  double h = opt.initial_step;
  State<N> y = y0;
  double g = event(y);
  if (opt.record) {
    run.trajectory.t.push_back(t);
    run.trajectory.y.push_back(y);
  }
  std::size_t steps = 0;
  while (run.event_times.size() < stop_after) {
    if (t > t_cap) {
      std::ostringstream msg;
      msg << "no return within time cap " << t_cap;
      throw Error(ErrorKind::NonPeriodic, msg.str());
    }
    if (++steps > opt.max_steps) throw Error(ErrorKind::NonPeriodic, "event search exceeded the step limit");
    const double t_prev = t;
    const State<N> y_prev = y;
    stepper.step(t, y, h);
    const double g_new = event(y);
    const bool rising = g < 0.0 && g_new >= 0.0;
    const bool falling = g > 0.0 && g_new <= 0.0;
    const bool hit = (direction == Crossing::Any && (rising || falling)) ||
                     (direction == Crossing::Rising && rising) || (direction == Crossing::Falling && falling);
    if (hit) {
      const double h_step = t - t_prev;
      const numerics::Integrand along = [&](double s) { return event(stepper.advance(t_prev, y_prev, s)); };
      const numerics::RootBracket bracket(0.0, h_step, g, g_new);
      const double s = numerics::find_root(along, bracket, 1e-15 * std::max(1.0, t_prev));
      run.event_times.push_back(t_prev + s);
      run.event_states.push_back(stepper.advance(t_prev, y_prev, s));
      if (run.event_times.size() == stop_after) {
        if (opt.record) {
          run.trajectory.t.push_back(run.event_times.back());
          run.trajectory.y.push_back(run.event_states.back());
        }
        break;
      }
    }
    if (opt.record) {
      run.trajectory.t.push_back(t);
      run.trajectory.y.push_back(y);
    }
    g = g_new;
  }
  return run;
}

}  // namespace plap::ode
