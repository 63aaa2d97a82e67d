#include "plap/branch.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "plap/constants.hpp"
#include "plap/error.hpp"

namespace plap::branch {

namespace {

void require_branch_params(const Params& params, std::string_view op) {
  params.require_theorem_scope(op);
  if (params.log_case()) {
    throw Error(ErrorKind::InvalidExponent, std::string(op) + " requires p != q, got " + params.describe());
  }
}

BranchPoint point_from_orbit(const orbit::Orbit& o, const Params& params) {
  const double p = params.p();
  const double q = params.q();
  const double T = o.T;
  const auto& I = o.integrals;
  BranchPoint out;
  out.a = o.a;
  out.T = T;
  out.regime = params.regime();
  // lambda = (T/2pi)^2 (||f||_p / ||f'||_p)^{p-2} with ||g||_p = (∫_0^T |g|^p)^{1/p}
  out.lambda = std::pow(T / (2.0 * std::numbers::pi), 2.0) * std::pow(I.Ip / I.Ip_prime, (p - 2.0) / p);
  out.mu = out.lambda * std::pow(T, 2.0 / q - 2.0 / p) * std::pow(I.Iq, (q - 2.0) / q) /
           std::pow(I.Ip, (p - 2.0) / p);
  return out;
}

}  // namespace

Thresholds thresholds(const Params& params) {
  require_branch_params(params, "thresholds");
  const auto c = constants::eigen_constants(params.p());
  return Thresholds{c.lambda1 / params.gap(), c.lambda1_star / params.gap(), c.lambda1, c.lambda1_star};
}

BranchPoint branch_point(double a, const Params& params, const numerics::QuadRule& rule) {
  require_branch_params(params, "branch_point");
  return point_from_orbit(orbit::make_orbit(a, params, rule), params);
}

SigmaNorms rescaled_norms(const orbit::Orbit& o, double K, const Params& params) {
  const double p = params.p();
  const double q = params.q();
  const double T = o.T;
  SigmaNorms out;
  out.fisher_root = K / (2.0 * std::numbers::pi) * std::pow(T, 1.0 - 1.0 / p) * std::pow(o.integrals.Ip_prime, 1.0 / p);
  out.norm_p = K * std::pow(T, -1.0 / p) * std::pow(o.integrals.Ip, 1.0 / p);
  out.norm_q = K * std::pow(T, -1.0 / q) * std::pow(o.integrals.Iq, 1.0 / q);
  return out;
}

Rescaling recover_rescaling(double lambda, double mu, const SigmaNorms& norms, const Params& params) {
  const double p = params.p();
  const double q = params.q();
  Rescaling out;
  out.T = 2.0 * std::numbers::pi * std::pow(lambda, 1.0 / p) *
          std::pow(norms.fisher_root / norms.norm_p, 1.0 - 2.0 / p);
  out.K = std::pow(lambda / mu * std::pow(norms.norm_q, q - 2.0) / std::pow(norms.norm_p, p - 2.0), 1.0 / (q - p));
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

BranchTrace trace_branch(const Params& params, std::span<const double> a_grid, const numerics::QuadRule& rule) {
  require_branch_params(params, "trace_branch");
  for (double a : a_grid) {
    if (!(a > 0.0 && a < 1.0)) {
      std::ostringstream msg;
      msg << "a grid must lie strictly inside (0,1), got " << a;
      throw Error(ErrorKind::OutOfRange, msg.str());
    }
  }
  constants::eigen_constants(params.p());  // warm the memo before fanning out

  const std::size_t n = a_grid.size();
  struct Slot {
    bool ok = false;
    BranchPoint point;
    std::string message;
  };
  std::vector<Slot> slots(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          slots[i].point = branch_point(a_grid[i], params, rule);
          slots[i].ok = true;
        } catch (const std::exception& e) {
          slots[i].message = e.what();
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();

  BranchTrace trace{params, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i].ok) {
      trace.points.push_back(slots[i].point);
    } else {
      trace.failures.push_back({a_grid[i], slots[i].message});
    }
  }
  return trace;
}

ShapeReport branch_shape(const BranchTrace& trace) {
  std::vector<BranchPoint> pts = trace.points;
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.control() < y.control(); });
  ShapeReport out;
  out.points = pts.size();
  out.max_excess = -std::numeric_limits<double>::infinity();
  out.min_increment = std::numeric_limits<double>::infinity();
  out.max_slope_increase = -std::numeric_limits<double>::infinity();
  double prev_slope = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.max_excess = std::max(out.max_excess, pts[i].response() - pts[i].control());
    if (i == 0) continue;
    const double dr = pts[i].response() - pts[i - 1].response();
    const double dc = pts[i].control() - pts[i - 1].control();
    out.min_increment = std::min(out.min_increment, dr);
    if (dc > 0.0) {
      const double slope = dr / dc;
      if (!std::isnan(prev_slope)) out.max_slope_increase = std::max(out.max_slope_increase, slope - prev_slope);
      prev_slope = slope;
    }
  }
  return out;
}

RigidityCheck rigidity_period_bound(double a, const Params& params) {
  require_branch_params(params, "rigidity_period_bound");
  const double p = params.p();
  const orbit::Orbit o = orbit::make_orbit(a, params);
  const double ratio = std::pow(o.integrals.Ip_prime / o.integrals.Ip, 1.0 / p);
  RigidityCheck out;
  out.a = a;
  out.T = o.T;
  out.lower_bound = 2.0 * std::numbers::pi * std::sqrt(thresholds(params).rigidity) * std::pow(ratio, p / 2.0 - 1.0);
  out.holds = out.T > out.lower_bound;
  return out;
}

Departure diagonal_departure(const Params& params, double h, std::size_t levels) {
  require_branch_params(params, "diagonal_departure");
  if (levels < 3 || !(h > 0.0 && h < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "diagonal_departure needs h in (0,1) and at least 3 levels");
  }
  Departure out;
  out.threshold = thresholds(params).bifurcation;
  std::vector<double> grid(levels);
  for (std::size_t k = 0; k < levels; ++k) grid[k] = 1.0 - h * std::ldexp(1.0, -static_cast<int>(k));
  const BranchTrace trace = trace_branch(params, grid);
  if (!trace.failures.empty()) {
    throw Error(ErrorKind::NonConvergent, "departure sample failed at a=" + std::to_string(trace.failures.front().a) +
                                              ": " + trace.failures.front().message);
  }
  out.samples = trace.points;
  const std::size_t m = levels - 1;
  const double c0 = out.samples[m - 2].control();
  const double c1 = out.samples[m - 1].control();
  const double c2 = out.samples[m].control();
  const double ratio = (c0 - c1) / (c1 - c2);
  // Halving 1 - a divides the error by 2^order.
  out.order = ratio > 1.0 && std::isfinite(ratio) ? std::log2(ratio) : 2.0;
  out.abscissa = c2 + (c2 - c1) / (std::exp2(out.order) - 1.0);
  out.relative_gap = std::abs(out.abscissa - out.threshold) / out.threshold;
  return out;
}

ConstantEstimate optimal_constant_estimate(const Params& params, std::span<const double> a_grid) {
  require_branch_params(params, "optimal_constant_estimate");
  const Thresholds th = thresholds(params);
  const BranchTrace trace = trace_branch(params, a_grid);
  double smallest = std::numeric_limits<double>::infinity();
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& pt : trace.points) {
    if (pt.response() < pt.control()) smallest = std::min(smallest, pt.control());
    closest = std::min(closest, std::abs(pt.control() - pt.response()) / pt.control());
  }
  if (!std::isfinite(smallest)) {
    throw Error(ErrorKind::InsufficientBranch, "no traced point lies below the diagonal");
  }
  if (closest > 1e-3) {
    std::ostringstream msg;
    msg << "traced branch stays " << closest << " (relative) away from the diagonal; extend the a grid toward 1";
    throw Error(ErrorKind::InsufficientBranch, msg.str());
  }
  const Departure dep = diagonal_departure(params);
  ConstantEstimate out;
  out.lambda_low = th.lambda1;
  out.lambda1_star = th.lambda1_star;
  out.smallest_below = params.gap() * smallest;
  out.departure = params.gap() * dep.abscissa;
  out.lambda_high = std::min(out.smallest_below, out.departure);
  out.consistent = out.lambda_low <= out.lambda_high && out.lambda_high <= out.lambda1_star * (1.0 + 2e-2);
  return out;
}

BranchInverse::BranchInverse(const BranchTrace& trace, const Departure& departure)
    : diagonal_end_(departure.abscissa), rigidity_(thresholds(trace.params).rigidity) {
  for (const auto& pt : trace.points) nodes_.emplace_back(pt.mu, pt.lambda);
  std::sort(nodes_.begin(), nodes_.end());
  // Points inside the extrapolated diagonal segment carry no information.
  std::erase_if(nodes_, [this](const auto& node) { return node.first <= diagonal_end_; });
}

BranchInverse BranchInverse::build(const Params& params, std::size_t samples) {
  const std::vector<double> grid = linspace(0.02, 0.98, samples);
  return BranchInverse(trace_branch(params, grid), diagonal_departure(params));
}

BranchInverse::Value BranchInverse::operator()(double mu) const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorKind::InvalidArgument, "potential norm must be a finite non-negative number");
  }
  if (mu <= rigidity_) return {mu, Source::Rigidity};
  if (mu <= diagonal_end_) return {mu, Source::Diagonal};
  if (nodes_.empty() || mu > nodes_.back().first) {
    std::ostringstream msg;
    msg << "mu=" << mu << " exceeds the traced branch (max " << max_mu() << ")";
    throw Error(ErrorKind::BranchRangeExceeded, msg.str());
  }
  // Linear interpolation, with the diagonal end point as the left anchor.
  double x0 = diagonal_end_;
  double y0 = diagonal_end_;
  for (const auto& [x1, y1] : nodes_) {
    if (mu <= x1) {
      const double w = (mu - x0) / (x1 - x0);
      return {y0 + w * (y1 - y0), Source::Branch};
    }
    x0 = x1;
    y0 = y1;
  }
  return {nodes_.back().second, Source::Branch};
}

std::string_view to_string(BranchInverse::Source source) noexcept {
  switch (source) {
    case BranchInverse::Source::Rigidity:
      return "rigidity";
    case BranchInverse::Source::Diagonal:
      return "diagonal";
    case BranchInverse::Source::Branch:
      return "branch";
  }
  return "unknown";
}

}  // namespace plap::branch
