#include "plap/psi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/numerics.hpp"

namespace plap {

PsiFunction::PsiFunction(const Params& params)
    : params_(params), lambda1_(0.0), kappa_(0.0) {
  params.require_theorem_scope("Psi");
  const double p = params.p();
  const double q = params.q();
  lambda1_ = constants::lambda1(p);
  kappa_ = (p - 1.0) * (p - 1.0) * (1.0 + q - p) / (2.0 * (2.0 * p - 1.0));
}

double PsiFunction::a_coefficient() const {
  const double p = params_.p();
  return kappa_ * std::pow(lambda1_, p - 2.0) / p;
}

double PsiFunction::domain_end() const {
  const double c = params_.p() - params_.q();
  return c < 0.0 ? -1.0 / c : std::numeric_limits<double>::infinity();
}

bool PsiFunction::in_domain(double z) const { return z >= 0.0 && z < domain_end(); }

double PsiFunction::integral(double z) const {
  const double p = params_.p();
  const double c = p - params_.q();
  if (z == 0.0) return 0.0;
  if (c == 0.0) return std::pow(z, p) / p;
  // s^{p-1}/(1 + c s) is smooth on [0, z]; the rule converges quickly.
  const numerics::Integrand f = [p, c](double s) { return std::pow(s, p - 1.0) / (1.0 + c * s); };
  return numerics::integrate(f, numerics::Interval{0.0, z}, numerics::QuadRule::adaptive(1e-14));
}

double PsiFunction::operator()(double z) const {
  if (!in_domain(z)) {
    std::ostringstream msg;
    msg << "Psi argument " << z << " outside [0, " << domain_end() << ")";
    throw Error(ErrorKind::DomainError, msg.str());
  }
  return z + kappa_ * std::pow(lambda1_, params_.p() - 2.0) * integral(z);
}

double PsiFunction::derivative(double z) const {
  if (!in_domain(z)) throw Error(ErrorKind::DomainError, "Psi' argument outside the domain");
  const double p = params_.p();
  const double c = p - params_.q();
  return 1.0 + kappa_ * std::pow(lambda1_, p - 2.0) * std::pow(z, p - 1.0) / (1.0 + c * z);
}

double PsiFunction::second_derivative(double z) const {
  if (!in_domain(z)) throw Error(ErrorKind::DomainError, "Psi'' argument outside the domain");
  const double p = params_.p();
  const double c = p - params_.q();
  const double denom = 1.0 + c * z;
  // d/dz [z^{p-1}/(1+cz)] = z^{p-2} ((p-1)(1+cz) - cz) / (1+cz)^2
  return kappa_ * std::pow(lambda1_, p - 2.0) * std::pow(z, p - 2.0) * ((p - 1.0) * denom - c * z) / (denom * denom);
}

}  // namespace plap
