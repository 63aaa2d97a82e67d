#pragma once

#include "plap/params.hpp"

namespace plap {

/// Psi(z) = z + kappa lambda1^{p-2} ∫_0^z s^{p-1} / (1 + (p-q) s) ds with
/// kappa = (p-1)^2 (1+q-p) / (2(2p-1)). Convex, Psi(0) = 0, Psi'(0) = 1.
/// Domain: z >= 0 with 1 + (p-q) z > 0.
class PsiFunction {
 public:
  /// Requires theorem scope.
  explicit PsiFunction(const Params& params);

  const Params& params() const { return params_; }
  double lambda1() const { return lambda1_; }
  double kappa() const { return kappa_; }

  /// kappa lambda1^{p-2} / p: the coefficient of z^p when p = q.
  double a_coefficient() const;

  /// Supremum of the domain (infinity unless q > p).
  double domain_end() const;
  bool in_domain(double z) const;

  /// Throws DomainError outside the domain.
  double operator()(double z) const;
  double derivative(double z) const;
  double second_derivative(double z) const;

 private:
  double integral(double z) const;

  Params params_;
  double lambda1_;
  double kappa_;
};

}  // namespace plap
