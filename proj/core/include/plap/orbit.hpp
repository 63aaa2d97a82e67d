#pragma once

// Periodic solutions of the rescaled Euler-Lagrange equation
//
//   -L_p f + f^{p-1} = f^{q-1}   (p < q)      -L_p f + f^{q-1} = f^{p-1}   (q < p)
//
// written as the Hamiltonian system X' = |Y|^{p/(p-1)-2} Y, Y' = -W'(X) with
// W = sgn(q-p) (|X|^q/q - |X|^p/p) and energy H = (p-1)|Y|^{p/(p-1)} + p W(X).
// Positive orbits oscillate between a seed a in (0,1) and its conjugate point
// b(a) > 1; period and norm integrals reduce to quadratures in X.

#include <cstddef>
#include <vector>

#include "plap/numerics.hpp"
#include "plap/ode.hpp"
#include "plap/params.hpp"

namespace plap::orbit {

/// Default rule for orbit quadratures (singular endpoints, 1e-11).
numerics::QuadRule orbit_rule();

class Potential {
 public:
  /// Requires p != q.
  explicit Potential(const Params& params);

  const Params& params() const { return params_; }

  double operator()(double x) const;
  double derivative(double x) const;

  /// W(x + d) - W(x) from the exact offset d (x > 0, x + d > 0).
  double difference(double x, double d) const;

  /// Value at the bottom of the well, X = 1.
  double minimum() const { return (*this)(1.0); }

  /// Positive zero of W: (q/p)^{1/(q-p)}.
  double zero() const;

 private:
  Params params_;
  double sign_;
};

struct PhasePoint {
  double X = 0.0;
  double Y = 0.0;
};

/// H(X, Y) = (p-1)|Y|^{p/(p-1)} + p W(X). For p < q this is
/// (p-1)|Y|^{p/(p-1)} + (p/q)|X|^q - |X|^p.
double energy(const PhasePoint& point, const Params& params);

/// The other positive root b of W(b) = W(a), in (1, (q/p)^{1/(q-p)}).
/// Throws OutOfRange unless 0 < a < 1.
double conjugate_point(double a, const Params& params);

/// Maps a seed on either side of the well to a in (0,1) on the same orbit.
/// Throws OutOfRange for a = 1, non-positive seeds and seeds with W(seed) >= 0
/// (the latter generate sign-changing orbits).
double normalize_seed(double seed, const Params& params);

struct NormIntegrals {
  double Ip_prime = 0.0;  ///< ∫_0^T |f'|^p dr
  double Ip = 0.0;        ///< ∫_0^T |f|^p dr
  double Iq = 0.0;        ///< ∫_0^T |f|^q dr
};

struct Orbit {
  double a = 0.0;
  double b = 0.0;
  double T = 0.0;
  NormIntegrals integrals;
};

/// T_a = 2 ∫_a^b (p/(p-1) (W(a) - W(X)))^{-1/p} dX.
double period(double a, const Params& params, const numerics::QuadRule& rule = orbit_rule());

NormIntegrals norm_integrals(double a, const Params& params, const numerics::QuadRule& rule = orbit_rule());

/// Period, conjugate point and norm integrals in one call.
Orbit make_orbit(double a, const Params& params, const numerics::QuadRule& rule = orbit_rule());

enum class OrbitKind { Positive, SignChanging };

/// ODE state: (X, Y, ∫|X'|^p, ∫|X|^p, ∫|X|^q).
using ShotState = ode::State<5>;

struct ShotOrbit {
  double seed = 0.0;
  double period = 0.0;
  OrbitKind kind = OrbitKind::Positive;
  double energy = 0.0;
  double max_energy_drift = 0.0;  ///< max_t |H(X(t),Y(t)) - H(seed,0)|
  NormIntegrals integrals;        ///< time quadrature along the shot orbit
  ShotState final_state{};
  ode::Trajectory<5> trajectory;
};

struct ShootOptions {
  double step_tol = 1e-12;
  double scale_floor = 1e-8;  ///< see ode::OdeOptions
  double time_cap = 1e4;
  bool record = true;
};

/// Integrates the Hamiltonian system from (seed, 0) until Y has returned to zero
/// twice. Any seed with finite energy is accepted; `kind` tags whether X stays
/// positive. Throws NonPeriodic past the time cap, StepUnderflow from the
/// integrator.
ShotOrbit shoot(double seed, const Params& params, const ShootOptions& options = {});

/// Period of the orbit through (a, 0) measured by shooting. Requires 0 < a < 1.
double shoot_period(double a, const Params& params);

/// Uniform samples of f_a over one period.
struct Profile {
  double a = 0.0;
  double b = 0.0;
  double T = 0.0;
  std::vector<double> r;     ///< r_j = j T / n
  std::vector<double> f;     ///< f_a(r_j), f(0) = a, f(T/2) = b
  std::vector<double> df;    ///< f_a'(r_j) from the energy identity
  std::vector<double> flux;  ///< |f'|^{p-2} f', the momentum Y
};

/// Samples by inverting r(X) = ∫_a^X dX/f' and reflecting about T/2.
/// Requires 0 < a < 1 and n >= 8.
Profile profile(double a, const Params& params, std::size_t n, const numerics::QuadRule& rule = orbit_rule());

}  // namespace plap::orbit
