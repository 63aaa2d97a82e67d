#pragma once

// The nonlocal 1-homogeneous p-Laplacian flow
//
//   u_t = (||u'||_p / ||u||_p)^{2-p} u^{2-p} (L u + (1+q-p) |u'|^p / u)
//
// on a periodic grid, with L = L_p or its regularization (Phi_eps(u'))' in
// divergence form (see RegularizedFlux). Explicit SSP-RK3 with a parabolic step
// bound, and projection back onto ∫u^q = 1 after every step.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap::flow {

using grid::GridFunction;

struct FlowConfig {
  Params params{3.0, 5.0};
  std::size_t n = 256;
  /// Regularization; unset means 1e-3 ||u0'||_inf, 0 uses L_p in divergence form.
  std::optional<double> epsilon;
  /// Upper bound on the step; 0 leaves the step to the stability bound.
  double dt = 0.0;
  double t_end = 20.0;
  /// Step = safety h^2 / max diffusion coefficient.
  double safety = 0.2;
  /// Stop once i <= decay_target i(0).
  double decay_target = 1e-6;
  /// Largest tolerated |∫u^q - 1| before the per-step projection.
  double max_step_drift = 1e-4;
  std::size_t max_steps = 10'000'000;
};

struct Sample {
  double t = 0.0;
  double e = 0.0;
  double i = 0.0;
  double q_mass = 0.0;     ///< ∫u^q after projection
  double lyapunov = 0.0;   ///< i - lambda1 Psi(e)
  double raw_drift = 0.0;  ///< ∫u^q - 1 before projection
  double dissipation = 0.0;  ///< ∫ |u'|^{2p} / u^p
};

enum class StopReason { Horizon, Decayed, Stationary, StepLimit };

std::string_view to_string(StopReason reason) noexcept;

struct FlowState {
  GridFunction u;
  double t = 0.0;
  double epsilon = 0.0;
  std::size_t steps = 0;
  StopReason stop = StopReason::Horizon;
  std::vector<Sample> series;
};

/// Phi(s) = ∫_0^s (p-1)(eps^2 + t^2)^{p/2-1} dt, the flux whose derivative
/// (Phi(u'))' is the regularized operator. Phi(s) = |s|^{p-2} s at eps = 0.
/// Requires p > 2 and eps >= 0.
class RegularizedFlux {
 public:
  RegularizedFlux(double p, double epsilon);
  double operator()(double s) const;
  double epsilon() const { return epsilon_; }

 private:
  double primitive(double x) const;  ///< ∫_0^x (1 + t^2)^{p/2-1} dt

  double p_;
  double epsilon_;
  double m_;
  double scale_ = 0.0;    ///< (p-1) eps^{p-1}
  double at_low_ = 0.0;   ///< primitive(kLow)
  // For x >= kHigh: primitive(x) = tail_constant_ + tail_log_ log x + sum_k tail_[k] x^{p-1-2k}.
  std::vector<double> tail_;
  double tail_log_ = 0.0;
  double tail_constant_ = 0.0;
};

/// 1e-3 max|u0'|.
double default_epsilon(const GridFunction& u0);

/// Right-hand side with the nonlocal prefactor. Zero once ||u'||_p < 1e-12.
/// Throws NonPositive unless u > 0.
GridFunction rhs(const GridFunction& u, const Params& params, double epsilon);

/// Largest diffusion coefficient (p-1)(eps^2 + u'^2)^{p/2-1} u^{2-p} times the prefactor.
double max_diffusion(const GridFunction& u, const Params& params, double epsilon);

/// Diagnostics of u (assumed projected to ∫u^q = 1).
Sample diagnose(const GridFunction& u, const Params& params, double t);

/// Initial state: u0 scaled to ||u0||_q = 1, epsilon resolved, first sample recorded.
/// Requires theorem scope and u0 > 0.
FlowState start(const GridFunction& u0, const FlowConfig& config);

/// One SSP-RK3 step followed by the projection. Throws PositivityLost,
/// StepUnderflow or ConservationDrift.
void step(FlowState& state, const FlowConfig& config);

/// Steps until t_end, decay of i by decay_target, or ||u'||_p < 1e-12.
FlowState run(const GridFunction& u0, const FlowConfig& config);

/// Independent runs evaluated concurrently, results in input order.
std::vector<FlowState> run_all(std::span<const std::pair<GridFunction, FlowConfig>> jobs);

/// 1 + amplitude * (lambda1_star optimizer), the perturbed-constant initial datum.
GridFunction perturbed_constant(double p, std::size_t n, double amplitude = 0.1);

/// Least-squares slope of -log i over samples with i / i(0) in [lo, hi].
/// Returns NaN with fewer than three samples in the window.
double fitted_rate(std::span<const Sample> series, double lo, double hi);

/// Series-wide checks of the flow identities.
struct SeriesReport {
  double max_raw_drift = 0.0;        ///< max |∫u^q - 1| before projection
  double max_mass_error = 0.0;       ///< max |∫u^q - 1| after projection
  bool e_decreasing = false;  ///< strictly, while i >= 1e-10
  bool i_decreasing = false;
  double max_decay_ratio = 0.0;      ///< max i(t) / (i(0) e^{-2 lambda1 t})
  double max_lyapunov_increase = 0.0;  ///< relative to |lyapunov(0)|
  bool lyapunov_nonincreasing = false;  ///< increases <= 1e-8 |lyapunov(0)|
  double min_eep_margin = 0.0;       ///< min (i - lambda1 e) / i
  double max_entropy_production_error = 0.0;  ///< max |de/dt + 2i| / (2i), centered differences
};

SeriesReport check_series(const FlowState& state, const Params& params);

/// Rates and the second-order differential inequality along the series.
struct RateReport {
  double reference = 0.0;       ///< 2 lambda1
  double reference_star = 0.0;  ///< 2 lambda1_star
  double early_rate = 0.0;      ///< fitted over i / i(0) in [1e-1, 1]
  double late_rate = 0.0;       ///< fitted over the last two decades reached
  /// Last time at which the instantaneous rate still exceeds 2 lambda1 by 1%.
  double improvement_until = 0.0;
  /// min of (e'' + 2 lambda1 e' - 2 kappa |e'|^2 i^{p-2} / (1 + (p-q) e)) / (|e''| + 2 lambda1 |e'|).
  double min_odi_residual = 0.0;
  bool odi_holds = false;       ///< min_odi_residual >= -1e-6
  /// min of ∫|u'|^{2p}/u^p / (i^p / (1 + (p-q) e)) - 1 over the series.
  double min_cs_margin = 0.0;
  bool cs_holds = false;
};

RateReport improved_rate_report(const FlowState& state, const Params& params);

}  // namespace plap::flow
