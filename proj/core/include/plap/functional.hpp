#pragma once

// Entropy, Fisher information and the discrete checkers for the interpolation
// inequalities on the circle. All integrals are sigma-averages on the grid.

#include <utility>
#include <vector>

#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap::functional {

using grid::GridFunction;

struct Functionals {
  double norm_p = 0.0;
  double norm_q = 0.0;
  double norm_2 = 0.0;
  double fisher = 0.0;   ///< i = ||u'||_p^2
  double entropy = 0.0;  ///< e, log form when p = q
};

/// i = ||u'||_{p,sigma}^2.
double fisher(const GridFunction& u, double p);

/// e = (||u||_p^2 - ||u||_q^2)/(p - q), or (2/p)||u||_p^{2-p} ∫|u|^p log(|u|/||u||_p)
/// when p = q. Evaluated relative to the mean of |u| so that e = O(eps^2) near
/// constants keeps its relative accuracy. Throws ZeroFunction for u = 0 and
/// NonPositive for the log form when some sample is not positive.
double entropy(const GridFunction& u, const Params& params);

Functionals functionals(const GridFunction& u, const Params& params);

/// (||u'||_p^2 + lambda ||u||_p^2) / ||u||_q^2, the quotient minimized by mu(lambda) (p < q).
double quotient_lambda(const GridFunction& u, double lambda, const Params& params);

/// (||u'||_p^2 + mu ||u||_q^2) / ||u||_p^2, the quotient minimized by lambda(mu) (q < p).
double quotient_mu(const GridFunction& u, double mu, const Params& params);

/// Pointwise residual of
///   -||u'||_p^{2-p} L_p u + lambda ||u||_p^{2-p} u^{p-1} - mu ||u||_q^{2-q} u^{q-1}.
GridFunction euler_lagrange_residual(const GridFunction& u, double lambda, double mu, const Params& params);

struct Theorem1Report {
  double fisher = 0.0;
  double entropy = 0.0;
  double rhs_lambda1 = 0.0;       ///< lambda1 e
  double rhs_lambda1_star = 0.0;  ///< lambda1_star e
  double margin = 0.0;            ///< i - lambda1 e
  double star_margin = 0.0;       ///< i - lambda1_star e (recorded, not asserted)
  double scale = 0.0;             ///< max(i, lambda1 |e|)
  bool holds = false;             ///< margin >= -1e-12 scale
};

/// Requires theorem scope.
Theorem1Report check_theorem1(const GridFunction& u, const Params& params);

struct Theorem2Report {
  double fisher = 0.0;
  double z = 0.0;            ///< normalized entropy passed to Psi
  double psi = 0.0;          ///< Psi(z)
  double weight = 0.0;       ///< ||u||_q^2, or ||u||_p^2 when p = q
  double bound = 0.0;        ///< lambda1 weight Psi(z)
  double plain_bound = 0.0;  ///< lambda1 weight z
  double margin = 0.0;       ///< i - bound
  double scale = 0.0;
  bool improves = false;     ///< Psi(z) >= z
  bool holds = false;        ///< margin >= -1e-12 scale
};

/// Requires theorem scope. Throws DomainError if z leaves the domain of Psi.
Theorem2Report check_theorem2(const GridFunction& u, const Params& params);

struct LemmaReport {
  double lhs = 0.0;    ///< ∫ |u|^{2-p} (L_p u)^2
  double rhs = 0.0;    ///< lambda1 ||u'||_p^{2(p-1)} / ||u||_p^{p-2}
  double ratio = 0.0;  ///< lhs / rhs
  bool degenerate = false;  ///< both sides vanish (u constant)
  bool holds = false;
};

/// Requires p > 2 and |u| > 1e-8 max|u| at every node; the weight is
/// |u|^{2-p}, so sign-changing data away from its zeros is accepted.
/// Throws NonPositive otherwise.
LemmaReport check_lemma_cs(const GridFunction& u, double p, double rel_tol = 1e-10);

/// Same check with the flux |u'|^{p-2} u' supplied at the nodes, for data whose
/// derivative is not resolved spectrally (e.g. eigenprofiles with singular u'').
LemmaReport check_lemma_cs(const GridFunction& u, const GridFunction& flux, double p, double rel_tol = 1e-10);

struct AppendixAReport {
  double mean = 0.0;           ///< ∫ u
  double weighted_mean = 0.0;  ///< ∫ |u|^{p-2} u / ∫ |u|^{p-2}
  double lhs = 0.0;            ///< ||u'||_p^2 ||u||_p^{p-2}
  double rhs_mean = 0.0;       ///< lambda1 ∫ |u|^{p-2} |u - mean|^2
  double rhs_weighted = 0.0;   ///< lambda1 ∫ |u|^{p-2} |u - weighted_mean|^2
  double ratio_mean = 0.0;
  double ratio_weighted = 0.0;
  std::vector<std::pair<double, double>> t_scan;  ///< (t, ∫ |u|^{p-2}|u - t|^2)
  bool holds_mean = false;
  bool holds_weighted = false;
  bool weighted_mean_optimal = false;
  bool degenerate = false;
};

/// Requires p > 2.
AppendixAReport check_appendixA(const GridFunction& u, double p, double rel_tol = 1e-10);

/// Terms of the Cauchy-Schwarz step, with i = ||u'||_p^2:
///   ∫ |u'|^{2p}/u^p  >=  i^p / ∫ u^p.
/// With ||u||_q = 1 the entropy form replaces ∫ u^p = ||u||_p^p by
/// ||u||_p^2 = 1 + (p-q) e, which is weaker for q >= p only. Every term is
/// evaluated on u / ||u||_q.
struct CauchySchwarzReport {
  double lhs = 0.0;
  double rhs = 0.0;             ///< i^p / ∫ u^p
  double rhs_entropy = 0.0;     ///< i^p / (1 + (p-q) e) after normalizing ||u||_q = 1
  bool holds = false;           ///< lhs >= rhs
  bool holds_entropy = false;   ///< lhs >= rhs_entropy
};

CauchySchwarzReport check_cauchy_schwarz(const GridFunction& u, const Params& params);

}  // namespace plap::functional
