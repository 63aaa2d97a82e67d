#pragma once

// One-dimensional quadrature (with integrable power-law endpoint blow-up),
// bracketing root finding, and inversion of monotone arcs between turning
// points. Everything here is a pure function of its arguments.

#include <functional>
#include <span>
#include <vector>

namespace plap::numerics {

enum class QuadKind { AdaptivePanel, SingularEndpoint };

struct QuadRule {
  QuadKind kind = QuadKind::AdaptivePanel;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 60;

  static QuadRule adaptive(double tol = 1e-10) { return {QuadKind::AdaptivePanel, tol, tol, 60}; }
  static QuadRule singular(double tol = 1e-10) { return {QuadKind::SingularEndpoint, tol, tol, 60}; }

  /// Throws InvalidArgument unless abs_tol > 0, rel_tol > 0 and max_depth >= 1.
  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
};

/// Blow-up orders at the ends: the integrand behaves like (x-lo)^(-lo) and
/// (hi-x)^(-hi). Zero (or negative, i.e. vanishing) means regular.
struct EndpointOrders {
  double lo = 0.0;
  double hi = 0.0;
};

using Integrand = std::function<double(double)>;

/// Integrand that also receives the exact distances x-lo and hi-x, so that
/// differences such as V(a)-V(x) can be formed without cancellation.
using OffsetIntegrand = std::function<double(double x, double from_lo, double to_hi)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. For the singular-endpoint
/// kind each half of the interval is mapped through x = end ± h s^(1/(1-alpha)),
/// which cancels a blow-up of order alpha < 1.
///
/// Errors: NonIntegrable if an order >= 1 is supplied or the integrand returns a
/// non-finite value; NonConvergent if a panel reaches max_depth before the
/// tolerance max(abs_tol, rel_tol*|I|) is met.
QuadResult integrate_with_error(const OffsetIntegrand& f, Interval interval, const QuadRule& rule,
                                EndpointOrders orders = {});

double integrate(const OffsetIntegrand& f, Interval interval, const QuadRule& rule,
                 EndpointOrders orders = {});

double integrate(const Integrand& f, Interval interval, const QuadRule& rule, EndpointOrders orders = {});

/// A sign-changing bracket. Construction enforces lo < hi and f_lo*f_hi <= 0.
class RootBracket {
 public:
  RootBracket(double lo, double hi, double f_lo, double f_hi);

  /// Evaluates f at both ends; throws InvalidBracket if there is no sign change.
  static RootBracket around(const Integrand& f, double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double f_lo() const { return f_lo_; }
  double f_hi() const { return f_hi_; }

 private:
  double lo_;
  double hi_;
  double f_lo_;
  double f_hi_;
};

/// Brent's method: bisection safeguarded inverse quadratic interpolation.
/// Stops when |f(x)| <= tol or the bracket is narrower than tol.
double find_root(const Integrand& f, const RootBracket& bracket, double tol, int max_iter = 300);

/// (y + d)^r - y^r evaluated without cancellation from the exact offset d.
/// Requires y > 0 and y + d > 0.
double pow_difference(double y, double d, double r);

/// A monotone path x(r) from `lo` to `hi` whose travel time density dr/dx may
/// blow up at both turning points. Used to sample periodic profiles on uniform
/// time grids without stepping an ODE through the turning points.
class MonotoneArc {
 public:
  MonotoneArc(OffsetIntegrand density, Interval interval, EndpointOrders orders, QuadRule rule);

  /// Total travel time from lo to hi.
  double duration() const { return duration_; }

  /// Travel time from lo to x.
  double elapsed(double x) const;

  /// Inverse of `elapsed`, for r in [0, duration()].
  double position(double r) const;

  std::vector<double> positions(std::span<const double> times) const;

 private:
  OffsetIntegrand density_;
  Interval interval_;
  EndpointOrders orders_;
  QuadRule rule_;
  double duration_ = 0.0;
};

}  // namespace plap::numerics
