#include <algorithm>
#include <cmath>
#include <memory>

#include "commands.hpp"
#include "plap/branch.hpp"
#include "plap/error.hpp"

namespace plap::cli {

namespace {

struct BranchOptions {
  double p = 3.0;
  double q = 5.0;
  std::string grid = "0.05:0.95:60";
  OutputOptions output;
};

}  // namespace

Action add_branch(CLI::App& root) {
  auto opt = std::make_shared<BranchOptions>();
  CLI::App* app = root.add_subcommand("branch", "Branch of non-constant solutions lambda -> mu(lambda)");
  app->add_option("--p", opt->p, "Exponent p > 2")->capture_default_str();
  app->add_option("--q", opt->q, "Exponent q != p, q > p - 1")->capture_default_str();
  app->add_option("--a-grid", opt->grid, "Orbit seeds lo:hi:n inside (0,1)")->capture_default_str();
  add_output_options(*app, opt->output);

  return [opt](Io& io) {
    const Params params(opt->p, opt->q);
    params.require_theorem_scope("branch");
    if (params.log_case()) throw Error(ErrorKind::InvalidExponent, "branch requires p != q");
    const std::vector<double> seeds = expand(parse_range(opt->grid));
    const branch::BranchTrace trace = branch::trace_branch(params, seeds);
    const branch::Thresholds th = branch::thresholds(params);

    Table table{{"a", "T", "lambda", "mu", "lambda_minus_mu"}, {}};
    for (const auto& pt : trace.points) table.add({pt.a, pt.T, pt.lambda, pt.mu, pt.lambda - pt.mu});
    Table side{{"rigidity", "bifurcation", "lambda1", "lambda1_star"}, {}};
    side.add({th.rigidity, th.bifurcation, th.lambda1, th.lambda1_star});

    // The branch lies on the constants' side of the diagonal, and every
    // non-constant orbit must be longer than the rigidity bound allows.
    const branch::ShapeReport shape = branch::branch_shape(trace);
    const double scale = std::max(1.0, th.bifurcation);
    const bool below = shape.max_excess <= 1e-9 * scale;
    std::size_t rigidity_violations = 0;
    for (const auto& pt : trace.points) {
      if (!branch::rigidity_period_bound(pt.a, params).holds) ++rigidity_violations;
    }

    Json meta = meta_header("branch");
    meta["params"] = {{"p", params.p()}, {"q", params.q()}, {"regime", std::string(to_string(params.regime()))}};
    meta["tolerances"] = {{"quadrature", orbit::orbit_rule().abs_tol}, {"diagonal", 1e-9 * scale}};
    Json summary = {{"points", trace.points.size()},
                    {"failures", trace.failures.size()},
                    {"max_response_minus_control", shape.max_excess},
                    {"response_below_control", below},
                    {"rigidity_violations", rigidity_violations}};
    emit(io, opt->output, meta, table, {{"thresholds", &side}}, summary);
    if (opt->output.parsed() == Format::Csv && opt->output.output.empty()) {
      io.err << "thresholds: rigidity=" << format_double(th.rigidity) << " bifurcation=" << format_double(th.bifurcation)
             << " lambda1=" << format_double(th.lambda1) << " lambda1_star=" << format_double(th.lambda1_star) << '\n';
    }
    for (const auto& f : trace.failures) io.err << "failed at a=" << format_double(f.a) << ": " << f.message << '\n';
    return below && rigidity_violations == 0 && trace.failures.empty() ? 0 : 1;
  };
}

}  // namespace plap::cli
