#pragma once

// Ground state energy estimates dual to the interpolation inequalities.
//
//   p < q:      ||u'||_p^2 - ∫ V |u|^p  >= -lambda(||V||_{q/(q-p)}) ||u||_p^2
//   q < p:      ||u'||_p^2 + ∫ V |u|^p  >=  lambda(||V^{-1}||_{q/(p-q)}^{-1}) ||u||_p^2
//
// Both sides have different homogeneity in u, so u is first normalized to
// ||u||_q = 1, the normalization under which the Holder step closes.

#include <string_view>

#include "plap/branch.hpp"
#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap::functional {

struct KltReport {
  double potential_norm = 0.0;   ///< mu: ||V||_{q/(q-p)} or ||V^{-1}||_{q/(p-q)}^{-1}
  double lambda = 0.0;           ///< lambda(mu)
  branch::BranchInverse::Source source = branch::BranchInverse::Source::Rigidity;
  double energy = 0.0;           ///< left-hand side at u / ||u||_q
  double bound = 0.0;            ///< right-hand side at u / ||u||_q
  double margin = 0.0;           ///< energy - bound
  double holder_potential = 0.0; ///< ∫ V |u|^p at u / ||u||_q
  double holder_bound = 0.0;     ///< mu (= mu ||u||_q^p)
  bool holder_holds = false;
  bool equality_case = false;    ///< V constant and mu <= lambda1/|q-p|
  bool holds = false;            ///< margin >= -1e-12 max(1, |energy|)
};

/// Requires theorem scope and p != q; V > 0 when q < p. `inverse` may be
/// shared across calls with the same params; it is built on demand otherwise.
/// Throws BranchRangeExceeded past the traced branch.
KltReport check_klt(const grid::GridFunction& u, const grid::GridFunction& V, const Params& params,
                    const branch::BranchInverse* inverse = nullptr);

}  // namespace plap::functional
