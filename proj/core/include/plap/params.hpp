#pragma once

#include <string>
#include <string_view>

namespace plap {

/// Which side of the diagonal p = q the exponent pair sits on.
enum class Regime {
  Sub,         ///< p < q: branch lambda -> mu(lambda)
  Super,       ///< q < p: branch mu -> lambda(mu)
  LogSobolev,  ///< p == q
};

std::string_view to_string(Regime regime) noexcept;

/// The exponent pair (p, q). Construction only enforces p > 1 and q >= 1;
/// operations that rely on the interpolation theorems call
/// `require_theorem_scope` (p > 2, q > p - 1).
class Params {
 public:
  Params(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }

  Regime regime() const;
  bool log_case() const { return p_ == q_; }
  bool in_theorem_scope() const { return p_ > 2.0 && q_ > p_ - 1.0; }

  /// |q - p|, the factor that scales both branch thresholds.
  double gap() const { return p_ > q_ ? p_ - q_ : q_ - p_; }

  /// Throws InvalidExponent naming `operation` when out of theorem scope.
  void require_theorem_scope(std::string_view operation) const;

  std::string describe() const;

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double p_;
  double q_;
};

}  // namespace plap
