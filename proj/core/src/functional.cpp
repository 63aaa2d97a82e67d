#include "plap/functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/psi.hpp"

namespace plap::functional {

namespace {

// (1 + w)^r - 1 - r w, accurate for small |w|.
double binomial_tail(double w, double r) {
  if (std::abs(w) < 0.05) {
    double term = r * (r - 1.0) / 2.0 * w * w;
    double sum = term;
    for (int k = 3; k <= 14; ++k) {
      term *= (r - (k - 1)) / k * w;
      sum += term;
    }
    return sum;
  }
  if (w <= -1.0) return -1.0 + r;
  return std::expm1(r * std::log1p(w)) - r * w;
}

// (1 + h) log(1 + h) - h, accurate for small |h|.
double entropy_density(double h) {
  if (std::abs(h) < 0.05) {
    double sum = 0.0;
    double hk = h * h;
    for (int k = 2; k <= 16; ++k) {
      sum += ((k % 2 == 0) ? 1.0 : -1.0) * hk / (static_cast<double>(k) * (k - 1));
      hk *= h;
    }
    return sum;
  }
  if (h <= -1.0) return 1.0;
  return (1.0 + h) * std::log1p(h) - h;
}

// log(||u||_r^2 / c^2) with c the mean of |u|, from the deviations w = |u|/c - 1.
double log_norm_ratio(std::span<const double> w, double w_mean, double r) {
  double tail = 0.0;
  for (double x : w) tail += binomial_tail(x, r);
  const double moment = tail / static_cast<double>(w.size()) + r * w_mean;  // mean((1+w)^r) - 1
  return 2.0 / r * std::log1p(moment);
}

double power_mean(const GridFunction& u, double r) {
  double s = 0.0;
  for (double v : u.values()) s += std::pow(std::abs(v), r);
  return s / static_cast<double>(u.size());
}

void require_scope(const Params& params, std::string_view op) { params.require_theorem_scope(op); }

void require_p_above_two(double p, std::string_view op) {
  if (!(p > 2.0)) {
    std::ostringstream msg;
    msg << op << " requires p > 2, got " << p;
    throw Error(ErrorKind::InvalidExponent, msg.str());
  }
}

}  // namespace

double fisher(const GridFunction& u, double p) {
  const GridFunction du = grid::derivative(u);
  const double n = grid::norm(du, p);
  return n * n;
}

double entropy(const GridFunction& u, const Params& params) {
  const double scale = u.max_abs();
  if (scale == 0.0) throw Error(ErrorKind::ZeroFunction, "entropy of the zero function");
  const double p = params.p();
  const double q = params.q();
  const std::size_t n = u.size();

  if (params.log_case()) {
    grid::require_positive(u, "log-form entropy");
    // With u = c(1+w) and G = (1+w)^p = 1+h, M = mean G = 1 + m:
    //   ∫ g log g = mean(G log G)/M - log M = mean(density(h))/(1+m) + m/(1+m) - log(1+m),
    // none of which loses relative accuracy as u approaches a constant.
    double c = 0.0;
    for (double v : u.values()) c += v;
    c /= static_cast<double>(n);
    double dens = 0.0;
    double m = 0.0;
    for (double v : u.values()) {
      const double h = std::expm1(p * std::log1p(v / c - 1.0));
      dens += entropy_density(h);
      m += h;
    }
    dens /= static_cast<double>(n);
    m /= static_cast<double>(n);
    double tail = 0.0;  // m/(1+m) - log(1+m)
    if (std::abs(m) < 0.05) {
      double mk = m * m;
      for (int k = 2; k <= 16; ++k) {
        tail += ((k % 2 == 0) ? -1.0 : 1.0) * mk * (1.0 - 1.0 / k);
        mk *= m;
      }
    } else {
      tail = m / (1.0 + m) - std::log1p(m);
    }
    const double glogg = dens / (1.0 + m) + tail;
    const double np2 = c * c * std::pow(1.0 + m, 2.0 / p);
    return 2.0 / (p * p) * np2 * glogg;
  }

  double c = 0.0;
  for (double v : u.values()) c += std::abs(v);
  c /= static_cast<double>(n);
  std::vector<double> w(n);
  double w_mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = std::abs(u[j]) / c - 1.0;
    w_mean += w[j];
  }
  w_mean /= static_cast<double>(n);
  const double lp = log_norm_ratio(w, w_mean, p);
  const double lq = log_norm_ratio(w, w_mean, q);
  return c * c * (std::expm1(lp) - std::expm1(lq)) / (p - q);
}

Functionals functionals(const GridFunction& u, const Params& params) {
  Functionals out;
  out.norm_p = grid::norm(u, params.p());
  out.norm_q = grid::norm(u, params.q());
  out.norm_2 = grid::norm(u, 2.0);
  out.fisher = fisher(u, params.p());
  out.entropy = entropy(u, params);
  return out;
}

double quotient_lambda(const GridFunction& u, double lambda, const Params& params) {
  const double np = grid::norm(u, params.p());
  const double nq = grid::norm(u, params.q());
  if (nq == 0.0) throw Error(ErrorKind::ZeroFunction, "quotient of the zero function");
  return (fisher(u, params.p()) + lambda * np * np) / (nq * nq);
}

double quotient_mu(const GridFunction& u, double mu, const Params& params) {
  const double np = grid::norm(u, params.p());
  const double nq = grid::norm(u, params.q());
  if (np == 0.0) throw Error(ErrorKind::ZeroFunction, "quotient of the zero function");
  return (fisher(u, params.p()) + mu * nq * nq) / (np * np);
}

GridFunction euler_lagrange_residual(const GridFunction& u, double lambda, double mu, const Params& params) {
  const double p = params.p();
  const double q = params.q();
  const double fp = std::sqrt(fisher(u, p));
  const double np = grid::norm(u, p);
  const double nq = grid::norm(u, q);
  const GridFunction lap = grid::p_laplacian(u, p);
  std::vector<double> r(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double diffusion = fp > 0.0 ? -std::pow(fp, 2.0 - p) * lap[j] : 0.0;
    r[j] = diffusion + lambda * std::pow(np, 2.0 - p) * grid::phi(u[j], p) -
           mu * std::pow(nq, 2.0 - q) * grid::phi(u[j], q);
  }
  return GridFunction(std::move(r));
}

Theorem1Report check_theorem1(const GridFunction& u, const Params& params) {
  require_scope(params, "check_theorem1");
  const auto c = constants::eigen_constants(params.p());
  Theorem1Report out;
  out.fisher = fisher(u, params.p());
  out.entropy = entropy(u, params);
  out.rhs_lambda1 = c.lambda1 * out.entropy;
  out.rhs_lambda1_star = c.lambda1_star * out.entropy;
  out.margin = out.fisher - out.rhs_lambda1;
  out.star_margin = out.fisher - out.rhs_lambda1_star;
  out.scale = std::max(out.fisher, std::abs(out.rhs_lambda1));
  out.holds = out.margin >= -1e-12 * out.scale;
  return out;
}

Theorem2Report check_theorem2(const GridFunction& u, const Params& params) {
  require_scope(params, "check_theorem2");
  const PsiFunction psi(params);
  Theorem2Report out;
  out.fisher = fisher(u, params.p());
  const double e = entropy(u, params);
  const double n = params.log_case() ? grid::norm(u, params.p()) : grid::norm(u, params.q());
  out.weight = n * n;
  // Rounding can leave e a few ulps below zero for constant data.
  out.z = std::max(e / out.weight, 0.0);
  out.psi = psi(out.z);
  out.bound = psi.lambda1() * out.weight * out.psi;
  out.plain_bound = psi.lambda1() * out.weight * out.z;
  out.margin = out.fisher - out.bound;
  out.scale = std::max(out.fisher, std::abs(out.bound));
  out.improves = out.psi >= out.z;
  out.holds = out.margin >= -1e-12 * out.scale;
  return out;
}

LemmaReport check_lemma_cs(const GridFunction& u, double p, double rel_tol) {
  require_p_above_two(p, "check_lemma_cs");
  return check_lemma_cs(u, grid::derivative(u).map([p](double s) { return grid::phi(s, p); }), p, rel_tol);
}

LemmaReport check_lemma_cs(const GridFunction& u, const GridFunction& flux, double p, double rel_tol) {
  require_p_above_two(p, "check_lemma_cs");
  if (flux.size() != u.size()) throw Error(ErrorKind::InvalidArgument, "flux must share the grid of u");
  const GridFunction au = u.map([](double v) { return std::abs(v); });
  grid::require_positive(au, "weight |u|^{2-p}");
  const double lambda1 = constants::lambda1(p);
  const std::vector<double> lap = grid::spectral_derivative(flux.values());
  LemmaReport out;
  double s = 0.0;
  double kinetic = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    s += std::pow(au[j], 2.0 - p) * lap[j] * lap[j];
    kinetic += std::pow(std::abs(flux[j]), p / (p - 1.0));  // |u'|^p
  }
  const double count = static_cast<double>(u.size());
  out.lhs = s / count;
  const double fisher_p = kinetic / count;  // ||u'||_p^p
  const double np = grid::norm(u, p);
  out.rhs = lambda1 * std::pow(fisher_p, 2.0 * (p - 1.0) / p) / std::pow(np, p - 2.0);
  out.degenerate = out.rhs <= 1e-300;
  out.ratio = out.degenerate ? 1.0 : out.lhs / out.rhs;
  out.holds = out.degenerate || out.lhs >= out.rhs * (1.0 - rel_tol);
  return out;
}

AppendixAReport check_appendixA(const GridFunction& u, double p, double rel_tol) {
  require_p_above_two(p, "check_appendixA");
  const double lambda1 = constants::lambda1(p);
  const std::size_t n = u.size();
  std::vector<double> weight(n);
  for (std::size_t j = 0; j < n; ++j) weight[j] = std::pow(std::abs(u[j]), p - 2.0);
  const auto weighted_square = [&](double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += weight[j] * (u[j] - t) * (u[j] - t);
    return s / static_cast<double>(n);
  };

  AppendixAReport out;
  out.mean = grid::mean(u);
  double wu = 0.0;
  double ws = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    wu += weight[j] * u[j];
    ws += weight[j];
  }
  out.weighted_mean = ws > 0.0 ? wu / ws : 0.0;
  const double np = grid::norm(u, p);
  out.lhs = fisher(u, p) * std::pow(np, p - 2.0);
  out.rhs_mean = lambda1 * weighted_square(out.mean);
  out.rhs_weighted = lambda1 * weighted_square(out.weighted_mean);
  out.degenerate = out.rhs_mean <= 1e-300 * std::max(1.0, u.max_abs());
  out.ratio_mean = out.degenerate ? 1.0 : out.lhs / out.rhs_mean;
  out.ratio_weighted = out.degenerate ? 1.0 : out.lhs / out.rhs_weighted;
  out.holds_mean = out.degenerate || out.lhs >= out.rhs_mean * (1.0 - rel_tol);
  out.holds_weighted = out.degenerate || out.lhs >= out.rhs_weighted * (1.0 - rel_tol);

  const double at_opt = weighted_square(out.weighted_mean);
  const double spread = std::max(0.1, 1e-3 * u.max_abs());
  out.weighted_mean_optimal = true;
  for (int k = -10; k <= 10; ++k) {
    const double t = out.weighted_mean + spread * k / 10.0;
    const double v = weighted_square(t);
    out.t_scan.emplace_back(t, v);
    if (v < at_opt * (1.0 - 1e-14) - 1e-300) out.weighted_mean_optimal = false;
  }
  return out;
}

CauchySchwarzReport check_cauchy_schwarz(const GridFunction& u, const Params& params) {
  const double p = params.p();
  const double nq = grid::norm(u, params.q());
  if (nq == 0.0) throw Error(ErrorKind::ZeroFunction, "Cauchy-Schwarz check of the zero function");
  const GridFunction v = u.scaled(1.0 / nq);
  grid::require_positive(v, "Cauchy-Schwarz weight u^{-p}");
  const GridFunction dv = grid::derivative(v);
  double lhs = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) lhs += std::pow(std::abs(dv[j]), 2.0 * p) / std::pow(v[j], p);
  CauchySchwarzReport out;
  out.lhs = lhs / static_cast<double>(v.size());
  const double i = fisher(v, p);
  out.rhs = std::pow(i, p) / power_mean(v, p);
  out.rhs_entropy = std::pow(i, p) / (1.0 + (p - params.q()) * entropy(v, params));
  const double tol = 1e-12 * std::max(out.lhs, out.rhs);
  out.holds = out.lhs >= out.rhs - tol;
  out.holds_entropy = out.lhs >= out.rhs_entropy - tol;
  return out;
}

}  // namespace plap::functional
