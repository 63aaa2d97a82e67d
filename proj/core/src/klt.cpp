#include "plap/klt.hpp"

#include <cmath>
#include <optional>

#include "plap/error.hpp"
#include "plap/functional.hpp"

namespace plap::functional {

KltReport check_klt(const grid::GridFunction& u, const grid::GridFunction& V, const Params& params,
                    const branch::BranchInverse* inverse) {
  params.require_theorem_scope("check_klt");
  if (params.log_case()) throw Error(ErrorKind::InvalidExponent, "check_klt requires p != q");
  if (u.size() != V.size()) throw Error(ErrorKind::InvalidArgument, "u and V must share the grid");
  const double p = params.p();
  const double q = params.q();
  const bool sub = q > p;

  KltReport out;
  if (sub) {
    out.potential_norm = grid::norm(V.map([](double v) { return std::abs(v); }), q / (q - p));
  } else {
    grid::require_positive(V, "potential V");
    out.potential_norm = 1.0 / grid::norm(V.map([](double v) { return 1.0 / v; }), q / (p - q));
  }

  std::optional<branch::BranchInverse> owned;
  if (inverse == nullptr) {
    owned.emplace(branch::BranchInverse::build(params));
    inverse = &*owned;
  }
  const auto value = (*inverse)(out.potential_norm);
  out.lambda = value.lambda;
  out.source = value.source;

  const double nq = grid::norm(u, q);
  if (nq == 0.0) throw Error(ErrorKind::ZeroFunction, "check_klt of the zero function");
  const grid::GridFunction w = u.scaled(1.0 / nq);
  double pot = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) pot += V[j] * std::pow(std::abs(w[j]), p);
  out.holder_potential = pot / static_cast<double>(w.size());
  out.holder_bound = out.potential_norm;

  const double i = fisher(w, p);
  const double np = grid::norm(w, p);
  const double tol = 1e-12 * std::max(1.0, std::abs(out.holder_potential));
  if (sub) {
    out.energy = i - out.holder_potential;
    out.bound = -out.lambda * np * np;
    out.holder_holds = out.holder_potential <= out.holder_bound + tol;
  } else {
    out.energy = i + out.holder_potential;
    out.bound = out.lambda * np * np;
    out.holder_holds = out.holder_potential >= out.holder_bound - tol;
  }
  out.margin = out.energy - out.bound;
  out.equality_case = V.max() - V.min() <= 1e-14 * V.max_abs() && out.potential_norm <= inverse->rigidity();
  out.holds = out.margin >= -1e-12 * std::max(1.0, std::abs(out.energy));
  return out;
}

}  // namespace plap::functional
