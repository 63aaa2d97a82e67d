#pragma once

// Reference values computed by routes that share no code with the library
// quadratures: closed forms, asymptotic expansions and direct ODE shooting.

#include <cstddef>
#include <functional>

namespace plap::testing {

/// pi_p = 2 pi (p-1)^{1/p} / (p sin(pi/p)).
double pi_p_closed(double p);

/// (pi_p / pi)^2 from the closed form.
double lambda1_closed(double p);

/// lambda1_star from shooting (|v'|^{p-2} v')' = -c v, v(0) = 1, v'(0) = 0 to
/// the first zero of v, rescaling c so that the zero sits at pi/2, and
/// returning c ||v'||_p^{2-p}.
double lambda1_star_shooting(double p);

/// Phi(s) = ∫_0^s (p-1)(eps^2 + t^2)^{p/2-1} dt in closed form for p = 3, 4, 5.
double regularized_flux_closed(double p, double eps, double s);

/// Psi for (p, q) = (3, 5): z + 1.2 lambda1 (-z^2/4 - z/4 - log(1 - 2z)/8).
double psi_3_5(double z, double lambda1);

/// Composite Simpson rule with n (even) panels, for independent spot checks.
double simpson(const std::function<double(double)>& f, double lo, double hi, std::size_t n);

}  // namespace plap::testing
