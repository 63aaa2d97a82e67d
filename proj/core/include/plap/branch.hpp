#pragma once

// Branch of non-constant solutions obtained from positive orbits by the
// rescaling u(x) = K f(T (x - x0) / 2 pi). For p < q each orbit gives a point
// (lambda, mu(lambda)); for q < p the same formulas give (lambda(mu), mu) and
// the roles of control and response are exchanged.

#include <cstddef>
#include <string_view>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plap/numerics.hpp"
#include "plap/orbit.hpp"
#include "plap/params.hpp"

namespace plap::branch {

struct BranchPoint {
  double a = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double T = 0.0;
  Regime regime = Regime::Sub;

  /// lambda for p < q, mu for q < p: the parameter the branch is a graph over.
  double control() const { return regime == Regime::Sub ? lambda : mu; }
  /// The other coordinate; below the diagonal past the bifurcation.
  double response() const { return regime == Regime::Sub ? mu : lambda; }
};

struct Thresholds {
  double rigidity = 0.0;     ///< lambda1 / |q - p|
  double bifurcation = 0.0;  ///< lambda1_star / |q - p|
  double lambda1 = 0.0;
  double lambda1_star = 0.0;
};

/// Requires theorem scope and p != q.
Thresholds thresholds(const Params& params);

/// Requires theorem scope, p != q and 0 < a < 1.
BranchPoint branch_point(double a, const Params& params, const numerics::QuadRule& rule = orbit::orbit_rule());

struct Rescaling {
  double T = 0.0;
  double K = 0.0;
};

/// sigma-norms of the 2pi-periodic u = K f(T x / 2pi) built from an orbit.
struct SigmaNorms {
  double fisher_root = 0.0;  ///< ||u'||_{p,sigma}
  double norm_p = 0.0;
  double norm_q = 0.0;
};

/// Norms of the rescaled orbit for a given amplitude K.
SigmaNorms rescaled_norms(const orbit::Orbit& orbit, double K, const Params& params);

/// Recovers (T, K) from (lambda, mu) and the sigma-norms alone.
Rescaling recover_rescaling(double lambda, double mu, const SigmaNorms& norms, const Params& params);

struct BranchFailure {
  double a = 0.0;
  std::string message;
};

struct BranchTrace {
  Params params;
  std::vector<BranchPoint> points;  ///< in the order of the input grid
  std::vector<BranchFailure> failures;
};

/// Evaluates branch points over `a_grid` (strictly inside (0,1)) in parallel.
/// Per-point errors are collected in `failures`.
BranchTrace trace_branch(const Params& params, std::span<const double> a_grid,
                         const numerics::QuadRule& rule = orbit::orbit_rule());

/// n evenly spaced values on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Shape diagnostics of a trace: response <= control, monotonicity and concavity
/// of the response as a function of the control (slopes of consecutive chords).
struct ShapeReport {
  double max_excess = 0.0;           ///< max(response - control)
  double min_increment = 0.0;        ///< smallest response step after sorting by control
  double max_slope_increase = 0.0;   ///< largest increase of consecutive chord slopes
  std::size_t points = 0;
};

ShapeReport branch_shape(const BranchTrace& trace);

struct RigidityCheck {
  double a = 0.0;
  double T = 0.0;
  double lower_bound = 0.0;
  bool holds = false;
};

/// Period against 2 pi sqrt(lambda1/|q-p|) (||f'||_p / ||f||_p)^{p/2-1}, the norms
/// taken over one period.
RigidityCheck rigidity_period_bound(double a, const Params& params);

/// Richardson extrapolation of the control coordinate as a -> 1.
struct Departure {
  double abscissa = 0.0;       ///< extrapolated limit
  double order = 0.0;          ///< fitted convergence order in (1 - a)
  double threshold = 0.0;      ///< bifurcation threshold for comparison
  double relative_gap = 0.0;   ///< |abscissa - threshold| / threshold
  std::vector<BranchPoint> samples;
};

/// Samples a_k = 1 - h 2^{-k}, k = 0..levels-1 (levels >= 3).
Departure diagonal_departure(const Params& params, double h = 0.08, std::size_t levels = 5);

struct ConstantEstimate {
  double lambda_low = 0.0;     ///< lambda1
  double lambda_high = 0.0;    ///< |q-p| min(departure abscissa, smallest control below the diagonal)
  double smallest_below = 0.0; ///< |q-p| times the smallest traced control with response < control
  double departure = 0.0;      ///< |q-p| times the extrapolated departure abscissa
  double lambda1_star = 0.0;
  bool consistent = false;     ///< lambda_low <= lambda_high <= lambda1_star (1 + 2e-2)
};

/// Throws InsufficientBranch if no traced point lies strictly below the
/// diagonal or the trace never comes within 1e-3 (relative) of it.
ConstantEstimate optimal_constant_estimate(const Params& params, std::span<const double> a_grid);

/// mu -> lambda(mu) along the branch: the inverse of mu(lambda) for p < q, the
/// branch itself for q < p. Equal to the identity up to the departure abscissa.
class BranchInverse {
 public:
  enum class Source { Rigidity, Diagonal, Branch };

  struct Value {
    double lambda = 0.0;
    Source source = Source::Rigidity;
  };

  BranchInverse(const BranchTrace& trace, const Departure& departure);

  /// Builds trace and departure for `params` on a default grid.
  static BranchInverse build(const Params& params, std::size_t samples = 120);

  /// Throws BranchRangeExceeded past the largest traced mu.
  Value operator()(double mu) const;

  double max_mu() const { return nodes_.empty() ? diagonal_end_ : nodes_.back().first; }
  double rigidity() const { return rigidity_; }

 private:
  std::vector<std::pair<double, double>> nodes_;  ///< (mu, lambda) sorted by mu
  double diagonal_end_ = 0.0;
  double rigidity_ = 0.0;
};

std::string_view to_string(BranchInverse::Source source) noexcept;

}  // namespace plap::branch
