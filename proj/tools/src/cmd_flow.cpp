#include <cmath>
#include <fstream>
#include <memory>

#include "commands.hpp"
#include "plap/error.hpp"
#include "plap/flow.hpp"

namespace plap::cli {

namespace {

struct FlowOptions {
  double p = 3.0;
  double q = 5.0;
  std::size_t n = 256;
  std::string eps = "auto";
  double t_end = 20.0;
  std::string init = "perturbed-constant";
  double amplitude = 0.1;
  double safety = 0.2;
  double decay_target = 1e-6;
  std::size_t every = 0;
  OutputOptions output;
};

grid::GridFunction initial_datum(const FlowOptions& opt) {
  if (opt.init == "perturbed-constant") return flow::perturbed_constant(opt.p, opt.n, opt.amplitude);
  if (opt.init.rfind("csv:", 0) == 0) {
    const std::string path = opt.init.substr(4);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    return grid::read_csv(in);
  }
  throw Error(ErrorKind::InvalidArgument, "--init must be perturbed-constant or csv:<path>");
}

}  // namespace

Action add_flow(CLI::App& root) {
  auto opt = std::make_shared<FlowOptions>();
  CLI::App* app = root.add_subcommand("flow", "Nonlocal 1-homogeneous p-Laplacian flow with entropy diagnostics");
  app->add_option("--p", opt->p, "Exponent p > 2")->capture_default_str();
  app->add_option("--q", opt->q, "Exponent q > p - 1")->capture_default_str();
  app->add_option("--n", opt->n, "Grid size")->capture_default_str();
  app->add_option("--eps", opt->eps, "Regularization: a number >= 0, or auto (1e-3 max|u0'|)")->capture_default_str();
  app->add_option("--t-end", opt->t_end, "Time horizon")->capture_default_str();
  app->add_option("--init", opt->init, "perturbed-constant or csv:<path>")->capture_default_str();
  app->add_option("--amplitude", opt->amplitude, "Amplitude of the perturbed constant")->capture_default_str();
  app->add_option("--safety", opt->safety, "Step safety factor in (0,1)")->capture_default_str();
  app->add_option("--decay-target", opt->decay_target, "Stop once i <= target i(0)")->capture_default_str();
  app->add_option("--every", opt->every, "Emit every k-th step (0: at most about 1000 rows)")->capture_default_str();
  add_output_options(*app, opt->output);

  return [opt](Io& io) {
    flow::FlowConfig config;
    config.params = Params(opt->p, opt->q);
    config.params.require_theorem_scope("flow");
    const grid::GridFunction u0 = initial_datum(*opt);
    config.n = u0.size();
    config.t_end = opt->t_end;
    config.safety = opt->safety;
    config.decay_target = opt->decay_target;
    if (opt->eps != "auto") {
      try {
        config.epsilon = std::stod(opt->eps);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "--eps must be a number or auto");
      }
    }

    const flow::FlowState state = flow::run(u0, config);
    const flow::SeriesReport checks = flow::check_series(state, config.params);
    const flow::RateReport rates = flow::improved_rate_report(state, config.params);

    const std::size_t count = state.series.size();
    const std::size_t every = opt->every > 0 ? opt->every : std::max<std::size_t>(1, (count + 999) / 1000);
    Table table{{"t", "e", "i", "q_mass", "lyapunov"}, {}};
    for (std::size_t k = 0; k < count; ++k) {
      if (k % every != 0 && k + 1 != count) continue;
      const auto& s = state.series[k];
      table.add({s.t, s.e, s.i, s.q_mass, s.lyapunov});
    }

    const bool ok = checks.e_decreasing && checks.i_decreasing && checks.lyapunov_nonincreasing &&
                    checks.max_decay_ratio <= 1.05 && checks.max_raw_drift <= 1e-4 && checks.min_eep_margin >= 0.0;
    Json meta = meta_header("flow");
    meta["params"] = {{"p", opt->p}, {"q", opt->q}};
    meta["n"] = config.n;
    meta["epsilon"] = state.epsilon;
    meta["init"] = opt->init;
    meta["tolerances"] = {{"decay_bound", 1.05}, {"raw_drift", 1e-4}, {"lyapunov", 1e-8}};
    Json summary = {{"stop", std::string(flow::to_string(state.stop))},
                    {"t", state.t},
                    {"steps", state.steps},
                    {"e_decreasing", checks.e_decreasing},
                    {"i_decreasing", checks.i_decreasing},
                    {"lyapunov_nonincreasing", checks.lyapunov_nonincreasing},
                    {"max_decay_ratio", checks.max_decay_ratio},
                    {"max_raw_drift", checks.max_raw_drift},
                    {"min_eep_margin", checks.min_eep_margin},
                    {"rate_reference", rates.reference},
                    {"early_rate", rates.early_rate},
                    {"late_rate", rates.late_rate},
                    {"odi_holds", rates.odi_holds},
                    {"cauchy_schwarz_holds", rates.cs_holds},
                    {"pass", ok}};
    emit(io, opt->output, meta, table, {}, summary);
    return ok ? 0 : 1;
  };
}

}  // namespace plap::cli
