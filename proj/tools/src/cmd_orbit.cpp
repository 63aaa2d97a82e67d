#include <memory>

#include "commands.hpp"
#include "plap/error.hpp"
#include "plap/orbit.hpp"

namespace plap::cli {

namespace {

struct OrbitOptions {
  double p = 3.0;
  double q = 5.0;
  double a = 0.0;
  std::size_t samples = 0;
  std::string sweep;
  OutputOptions output;
};

Json params_json(const Params& params) { return {{"p", params.p()}, {"q", params.q()}}; }

}  // namespace

Action add_orbit(CLI::App& root) {
  auto opt = std::make_shared<OrbitOptions>();
  CLI::App* app = root.add_subcommand("orbit", "Period, conjugate point and norm integrals of a positive orbit");
  app->add_option("--p", opt->p, "Exponent p")->capture_default_str();
  app->add_option("--q", opt->q, "Exponent q != p")->capture_default_str();
  auto* a = app->add_option("--a", opt->a, "Seed X(0) = a (seeds beyond the well are mapped into (0,1))");
  app->add_option("--samples", opt->samples, "Also emit n profile samples over one period");
  add_output_options(*app, opt->output);

  CLI::App* sweep = app->add_subcommand("sweep", "Period curve a -> T_a");
  sweep->add_option("--a", opt->sweep, "Seeds lo:hi:n inside (0,1)")->required();
  sweep->add_option("--p", opt->p, "Exponent p")->capture_default_str();
  sweep->add_option("--q", opt->q, "Exponent q != p")->capture_default_str();
  add_output_options(*sweep, opt->output);

  return [opt, a, sweep](Io& io) {
    const Params params(opt->p, opt->q);
    if (params.log_case()) throw Error(ErrorKind::InvalidExponent, "orbits require p != q");
    Json meta = meta_header(sweep->parsed() ? "orbit sweep" : "orbit");
    meta["params"] = params_json(params);
    meta["tolerances"] = {{"quadrature", orbit::orbit_rule().abs_tol}};

    if (sweep->parsed()) {
      const std::vector<double> seeds = expand(parse_range(opt->sweep));
      const auto orbits = parallel_map<orbit::Orbit>(seeds.size(), [&](std::size_t k) {
        return orbit::make_orbit(orbit::normalize_seed(seeds[k], params), params);
      });
      Table table{{"a", "T", "b"}, {}};
      for (const auto& o : orbits) table.add({o.a, o.T, o.b});
      emit(io, opt->output, meta, table);
      return 0;
    }

    if (a->count() == 0) throw Error(ErrorKind::InvalidArgument, "--a is required");
    const double seed = orbit::normalize_seed(opt->a, params);
    const orbit::Orbit o = orbit::make_orbit(seed, params);
    meta["seed"] = opt->a;
    Table table{{"a", "T", "b", "Ip_prime", "Ip", "Iq"}, {}};
    table.add({o.a, o.T, o.b, o.integrals.Ip_prime, o.integrals.Ip, o.integrals.Iq});
    if (opt->samples == 0) {
      emit(io, opt->output, meta, table);
      return 0;
    }
    const orbit::Profile prof = orbit::profile(seed, params, opt->samples);
    Table samples{{"r", "f", "df", "flux"}, {}};
    for (std::size_t j = 0; j < prof.r.size(); ++j) samples.add({prof.r[j], prof.f[j], prof.df[j], prof.flux[j]});
    const auto written = emit(io, opt->output, meta, table, {{"profile", &samples}});
    if (opt->output.parsed() == Format::Csv && written.empty()) {
      io.err << "note: profile samples are written as a sidecar file with --output, or inline with --format json\n";
    }
    return 0;
  };
}

}  // namespace plap::cli
