#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "plap/branch.hpp"
#include "plap/error.hpp"
#include "plap/functional.hpp"
#include "plap/klt.hpp"
#include "plap/sampling.hpp"

namespace plap::cli {

namespace {

struct VerifyOptions {
  double p = 3.0;
  double q = 5.0;
  std::string suite;
  std::size_t draws = 200;
  std::size_t n = 256;
  std::uint64_t seed = 1;
  std::string input;
  std::string potential;
  OutputOptions output;
};

grid::GridFunction load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  return grid::read_csv(in);
}

struct Outcome {
  std::vector<Json> row;
  double margin = 0.0;
  bool holds = false;
};

struct Suite {
  std::vector<std::string> columns;  // without the leading "draw"
  std::function<Outcome(const grid::GridFunction& u, const grid::GridFunction* V)> check;
};

Suite make_suite(const std::string& name, const Params& params, const branch::BranchInverse* inverse) {
  if (name == "thm1") {
    return {{"fisher", "entropy", "margin", "scale", "holds"}, [params](const grid::GridFunction& u, const grid::GridFunction*) {
              const auto r = functional::check_theorem1(u, params);
              return Outcome{{r.fisher, r.entropy, r.margin, r.scale, r.holds}, r.margin / std::max(r.scale, 1e-300), r.holds};
            }};
  }
  if (name == "thm2") {
    return {{"fisher", "z", "psi", "bound", "margin", "holds"}, [params](const grid::GridFunction& u, const grid::GridFunction*) {
              const auto r = functional::check_theorem2(u, params);
              return Outcome{{r.fisher, r.z, r.psi, r.bound, r.margin, r.holds}, r.margin / std::max(r.scale, 1e-300), r.holds};
            }};
  }
  if (name == "lemma22") {
    return {{"lhs", "rhs", "ratio", "holds"}, [params](const grid::GridFunction& u, const grid::GridFunction*) {
              const auto r = functional::check_lemma_cs(u, params.p());
              return Outcome{{r.lhs, r.rhs, r.ratio, r.holds}, r.ratio - 1.0, r.holds};
            }};
  }
  if (name == "appendixA") {
    return {{"lhs", "rhs_mean", "rhs_weighted", "ratio_mean", "ratio_weighted", "weighted_mean_optimal", "holds"},
            [params](const grid::GridFunction& u, const grid::GridFunction*) {
              const auto r = functional::check_appendixA(u, params.p());
              const bool ok = r.holds_mean && r.holds_weighted && r.weighted_mean_optimal;
              return Outcome{{r.lhs, r.rhs_mean, r.rhs_weighted, r.ratio_mean, r.ratio_weighted, r.weighted_mean_optimal, ok},
                             std::min(r.ratio_mean, r.ratio_weighted) - 1.0, ok};
            }};
  }
  if (name == "klt") {
    return {{"mu", "lambda", "source", "energy", "bound", "margin", "holds"},
            [params, inverse](const grid::GridFunction& u, const grid::GridFunction* V) {
              const auto r = functional::check_klt(u, *V, params, inverse);
              const bool ok = r.holds && r.holder_holds;
              return Outcome{{r.potential_norm, r.lambda, std::string(branch::to_string(r.source)), r.energy, r.bound, r.margin, ok},
                             r.margin / std::max(1.0, std::abs(r.energy)), ok};
            }};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite " + name);
}

}  // namespace

Action add_verify(CLI::App& root) {
  auto opt = std::make_shared<VerifyOptions>();
  CLI::App* app = root.add_subcommand("verify", "Randomized checks of the interpolation inequalities");
  app->add_option("--p", opt->p, "Exponent p > 2")->capture_default_str();
  app->add_option("--q", opt->q, "Exponent q > p - 1")->capture_default_str();
  app->add_option("--suite", opt->suite, "Which inequality")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "lemma22", "appendixA", "klt"}));
  app->add_option("--draws", opt->draws, "Random draws")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--n", opt->n, "Grid size (even, >= 16)")->capture_default_str();
  app->add_option("--seed", opt->seed, "Seed of the random draws")->capture_default_str();
  app->add_option("--input", opt->input, "Check one function read from CSV instead of random draws");
  app->add_option("--potential", opt->potential, "Potential V for the klt suite with --input (CSV)");
  add_output_options(*app, opt->output);

  return [opt](Io& io) {
    const Params params(opt->p, opt->q);
    params.require_theorem_scope("verify");
    std::optional<branch::BranchInverse> inverse;
    if (opt->suite == "klt") {
      if (params.log_case()) throw Error(ErrorKind::InvalidExponent, "the klt suite requires p != q");
      inverse.emplace(branch::BranchInverse::build(params));
    }
    const Suite suite = make_suite(opt->suite, params, inverse ? &*inverse : nullptr);

    // Draws are generated sequentially so that the output depends only on the seed.
    std::vector<grid::GridFunction> us;
    std::vector<grid::GridFunction> vs;
    if (!opt->input.empty()) {
      us.push_back(load(opt->input));
      if (opt->suite == "klt") {
        if (opt->potential.empty()) throw Error(ErrorKind::InvalidArgument, "--potential is required with --input for klt");
        vs.push_back(load(opt->potential));
      }
    } else {
      sampling::Rng rng(opt->seed);
      for (std::size_t d = 0; d < opt->draws; ++d) {
        us.push_back(sampling::random_positive_trig(rng, opt->n));
        if (inverse) {
          // mu spread over [0.2, 0.9 max] of the traced range, straddling both thresholds.
          const double hi = 0.9 * inverse->max_mu();
          const double lo = 0.2 * inverse->rigidity();
          const double target = lo * std::pow(hi / lo, rng.uniform());
          const grid::GridFunction shape = sampling::random_positive_trig(rng, opt->n, 4, 1e-3, 0.8);
          const double r = params.q() > params.p() ? params.q() / (params.q() - params.p()) : params.q() / (params.p() - params.q());
          const double norm = params.q() > params.p() ? grid::norm(shape, r)
                                                      : 1.0 / grid::norm(shape.map([](double v) { return 1.0 / v; }), r);
          vs.push_back(shape.scaled(target / norm));
        }
      }
    }

    const auto outcomes = parallel_map<Outcome>(us.size(), [&](std::size_t k) {
      return suite.check(us[k], vs.empty() ? nullptr : &vs[k]);
    });

    Table table;
    table.columns.push_back("draw");
    table.columns.insert(table.columns.end(), suite.columns.begin(), suite.columns.end());
    std::size_t failed = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      std::vector<Json> row{k};
      row.insert(row.end(), outcomes[k].row.begin(), outcomes[k].row.end());
      table.add(std::move(row));
      if (!outcomes[k].holds) ++failed;
      worst = std::min(worst, outcomes[k].margin);
    }

    Json meta = meta_header("verify");
    meta["params"] = {{"p", params.p()}, {"q", params.q()}};
    meta["suite"] = opt->suite;
    meta["seed"] = opt->seed;
    meta["n"] = opt->input.empty() ? opt->n : us.front().size();
    meta["tolerances"] = {{"relative_margin", opt->suite == "lemma22" || opt->suite == "appendixA" ? 1e-10 : 1e-12}};
    Json summary = {{"draws", outcomes.size()}, {"failed", failed}, {"min_relative_margin", worst}, {"pass", failed == 0}};
    emit(io, opt->output, meta, table, {}, summary);
    return failed == 0 ? 0 : 1;
  };
}

}  // namespace plap::cli
