#include <memory>

#include "commands.hpp"
#include "plap/constants.hpp"
#include "plap/error.hpp"

namespace plap::cli {

namespace {

struct ConstantsOptions {
  double p = 0.0;
  std::string sweep;
  OutputOptions output;
};

}  // namespace

Action add_constants(CLI::App& root) {
  auto opt = std::make_shared<ConstantsOptions>();
  CLI::App* app = root.add_subcommand("constants", "lambda1, lambda1_star, Lambda1 and pi_p");
  auto* p = app->add_option("--p", opt->p, "Exponent p > 1");
  auto* sweep = app->add_option("--sweep", opt->sweep, "Sweep p over lo:hi:n");
  p->excludes(sweep);
  add_output_options(*app, opt->output);

  return [opt, p, sweep](Io& io) {
    std::vector<double> ps;
    if (sweep->count() > 0) {
      ps = expand(parse_range(opt->sweep));
    } else if (p->count() > 0) {
      ps = {opt->p};
    } else {
      throw Error(ErrorKind::InvalidArgument, "one of --p or --sweep is required");
    }
    for (double v : ps) {
      if (!(v > 1.0)) throw Error(ErrorKind::InvalidExponent, "constants require p > 1");
    }
    const auto rows = parallel_map<constants::EigenConstants>(ps.size(), [&](std::size_t k) { return constants::eigen_constants(ps[k]); });
    Table table{{"p", "lambda1", "lambda1_star", "Lambda1", "pi_p"}, {}};
    for (const auto& c : rows) table.add({c.p, c.lambda1, c.lambda1_star, c.Lambda1, c.pi_p});
    Json meta = meta_header("constants");
    meta["tolerances"] = {{"quadrature", constants::constants_rule().abs_tol}};
    emit(io, opt->output, meta, table);
    return 0;
  };
}

}  // namespace plap::cli
