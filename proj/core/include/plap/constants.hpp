#pragma once

// Spectral constants of the periodic p-Laplacian on the circle with the
// uniform probability measure:
//
//   lambda1      = inf ||v'||_p^2 / ||v||_p^2 over zero-average v
//   lambda1_star = inf ||v'||_p^2 / ||v||_2^2 over zero-average v
//   Lambda1      = first eigenvalue of -L_p with the |u|^{p-2}u average constraint
//   pi_p         = half period of (phi_p'(u'))' + phi_p'(u) = 0, u(0)=1, u'(0)=0
//
// All four reduce to one-dimensional quadratures with an order-1/p blow-up at
// X = 1. Valid for any p > 1; results for p <= 2 are flagged as outside the
// range where the interpolation inequalities are proved.

#include <cstddef>
#include <vector>

#include "plap/numerics.hpp"

namespace plap::constants {

struct EigenConstants {
  double p = 0.0;
  double lambda1 = 0.0;
  double lambda1_star = 0.0;
  double Lambda1 = 0.0;
  double pi_p = 0.0;
  bool in_theorem_scope = false;
};

/// Quadrature rule used for every constant (singular endpoint, 1e-12).
numerics::QuadRule constants_rule();

double pi_p(double p);
double lambda1(double p);
double lambda1_star(double p);
double Lambda1(double p);

/// All four constants at p, memoized. Safe to call concurrently.
EigenConstants eigen_constants(double p);

/// Drops every memoized entry (benchmarks use this to time cold evaluations).
void clear_cache();

/// f_p: the 2pi-periodic optimizer of lambda1 (and Lambda1), sampled at
/// x_j = 2 pi j / n + shift. Normalized so that max f_p = f_p(0) = 1; it has
/// zero average and satisfies L_p f + Lambda1 |f|^{p-2} f = 0.
std::vector<double> lambda1_profile(double p, std::size_t n, double shift = 0.0);

/// |f_p'|^{p-2} f_p' at the nodes of `lambda1_profile`, from the conserved
/// energy (p-1)|u'|^p + |u|^p = 1 of the unscaled problem. Unlike f_p itself
/// this flux stays smooth at the extrema of f_p.
std::vector<double> lambda1_profile_flux(double p, std::size_t n, double shift = 0.0);

/// The 2pi-periodic optimizer of lambda1_star sampled as above, max = 1 at
/// x = 0. It satisfies -||v'||_p^{2-p} L_p v = lambda1_star v.
std::vector<double> lambda1_star_profile(double p, std::size_t n, double shift = 0.0);

}  // namespace plap::constants
