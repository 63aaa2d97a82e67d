#include "plap/params.hpp"

#include <cmath>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Sub: return "sub";
    case Regime::Super: return "super";
    case Regime::LogSobolev: return "log";
  }
  return "unknown";
}

Params::Params(double p, double q) : p_(p), q_(q) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    std::ostringstream msg;
    msg << "p must be > 1, got " << p;
    throw Error(ErrorKind::InvalidExponent, msg.str());
  }
  if (!std::isfinite(q) || !(q >= 1.0)) {
    std::ostringstream msg;
    msg << "q must be >= 1, got " << q;
    throw Error(ErrorKind::InvalidExponent, msg.str());
  }
}

Regime Params::regime() const {
  if (p_ < q_) return Regime::Sub;
  if (q_ < p_) return Regime::Super;
  return Regime::LogSobolev;
}

void Params::require_theorem_scope(std::string_view operation) const {
  if (!in_theorem_scope()) {
    std::ostringstream msg;
    msg << operation << " requires p > 2 and q > p - 1, got " << describe();
    throw Error(ErrorKind::InvalidExponent, msg.str());
  }
}

std::string Params::describe() const {
  std::ostringstream out;
  out << "(p=" << p_ << ", q=" << q_ << ")";
  return out.str();
}

}  // namespace plap
