#include <cmath>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <cstdio>
#include <memory>

#include "commands.hpp"
#include "plap/branch.hpp"
#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/grid.hpp"
#include "plap/orbit.hpp"

namespace plap::cli {

namespace {

struct FigureOptions {
  std::vector<std::string> which;
  std::string dir;
};

class Bundle {
 public:
  Bundle(std::filesystem::path dir, Io& io) : dir_(std::move(dir)), io_(io) { std::filesystem::create_directories(dir_); }

  void write(const std::string& name, const Table& table, const std::string& legend) {
    const auto path = dir_ / (name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    write_csv(table, out);
    std::ofstream(dir_ / (name + ".legend.txt"), std::ios::binary) << legend << '\n';
    io_.out << path.string() << '\n';
  }

  bool check(bool ok, const std::string& what) {
    io_.err << (ok ? "ok: " : "FAILED: ") << what << '\n';
    return ok;
  }

 private:
  std::filesystem::path dir_;
  Io& io_;
};

bool fig1(Bundle& b) {
  const Params params(2.5, 3.0);
  const double p = params.p();
  const double q = params.q();
  bool ok = true;

  Table field{{"X", "Y", "dX", "dY"}, {}};
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const double x = -2.0 + 4.0 * i / 40.0;
      const double y = -1.0 + 2.0 * j / 40.0;
      const double dx = y == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(y), 1.0 / (p - 1.0)), y);
      const double dy = grid::phi(x, p) - grid::phi(x, q);
      field.add({x, y, dx, dy});
    }
  }
  b.write("fig1_field", field, "X Y dX dY: vector field (|Y|^{p'-2}Y, |X|^{p-2}X - |X|^{q-2}X), p=2.5 q=3");

  for (double seed : {1.35, 1.8}) {
    const orbit::ShotOrbit shot = orbit::shoot(seed, params);
    Table t{{"t", "X", "Y"}, {}};
    for (std::size_t k = 0; k < shot.trajectory.t.size(); ++k) {
      t.add({shot.trajectory.t[k], shot.trajectory.y[k][0], shot.trajectory.y[k][1]});
    }
    char name[32];
    std::snprintf(name, sizeof name, "fig1_orbit_a%.2f", seed);
    b.write(name, t,
            std::string("t X Y: closed trajectory through (a,0), ") +
                (shot.kind == orbit::OrbitKind::Positive ? "positive X" : "sign-changing X"));
    const auto& first = shot.trajectory.y.front();
    const auto& last = shot.trajectory.y.back();
    const double gap = std::hypot(last[0] - first[0], last[1] - first[1]);
    ok &= b.check(gap <= 1e-6, std::string(name) + " closes (gap " + format_double(gap) + ")");
  }

  // H = 0: (p-1)|Y|^{p'} = -p W(X) on |X| <= zero of W.
  const orbit::Potential W(params);
  const double z = W.zero();
  Table level{{"X", "Y"}, {}};
  const int m = 200;
  for (int branch = 0; branch < 2; ++branch) {
    for (int k = 0; k <= m; ++k) {
      const double x = branch == 0 ? -z + 2.0 * z * k / m : z - 2.0 * z * k / m;
      const double w = W(std::abs(x));
      const double y = std::pow(std::max(0.0, -p * w / (p - 1.0)), (p - 1.0) / p);
      level.add({x, branch == 0 ? y : -y});
    }
  }
  b.write("fig1_zero_energy", level, "X Y: zero-energy level H = 0");
  return ok;
}

bool fig2(Bundle& b) {
  const Params params(3.0, 5.0);
  std::vector<double> seeds = branch::linspace(0.02, 0.98, 97);
  const auto periods = parallel_map<double>(seeds.size(), [&](std::size_t k) { return orbit::period(seeds[k], params); });
  Table t{{"a", "T"}, {}};
  bool decreasing = true;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    t.add({seeds[k], periods[k]});
    if (k > 0 && !(periods[k] < periods[k - 1])) decreasing = false;
  }
  b.write("fig2_period", t, "a T: period of the orbit through (a,0), p=3 q=5");
  return b.check(decreasing, "fig2 period strictly decreasing");
}

bool fig3(Bundle& b) {
  const Params params(3.0, 5.0);
  const auto trace = branch::trace_branch(params, branch::linspace(0.02, 0.98, 97));
  const auto th = branch::thresholds(params);
  Table t{{"a", "lambda", "mu", "lambda_minus_mu"}, {}};
  for (const auto& pt : trace.points) t.add({pt.a, pt.lambda, pt.mu, pt.lambda - pt.mu});
  b.write("fig3_branch", t, "a lambda mu lambda_minus_mu: branch lambda -> mu(lambda), p=3 q=5");
  Table v{{"name", "lambda"}, {}};
  v.add({"bifurcation", th.bifurcation});
  v.add({"lambda1_star", th.lambda1_star});
  v.add({"rigidity", th.rigidity});
  b.write("fig3_thresholds", v, "name lambda: vertical lines; bifurcation = lambda1_star/(q-p)");
  const auto shape = branch::branch_shape(trace);
  return b.check(shape.max_excess <= 1e-9 && trace.failures.empty(), "fig3 branch below the diagonal");
}

bool fig5(Bundle& b) {
  const std::vector<double> ps = branch::linspace(2.0, 6.0, 81);
  const auto rows = parallel_map<constants::EigenConstants>(ps.size(), [&](std::size_t k) { return constants::eigen_constants(ps[k]); });
  Table t{{"p", "lambda1", "lambda1_star"}, {}};
  bool separate = true;
  for (const auto& c : rows) {
    t.add({c.p, c.lambda1, c.lambda1_star});
    if (c.p > 2.0 && !(c.lambda1_star > c.lambda1)) separate = false;
  }
  b.write("fig5_constants", t, "p lambda1 lambda1_star: dotted lambda1, plain lambda1_star");
  const bool coincide = std::abs(rows.front().lambda1 - rows.front().lambda1_star) <= 1e-10;
  return b.check(coincide && separate, "fig5 curves coincide at p=2 and separate for p>2");
}

}  // namespace

Action add_figures(CLI::App& root) {
  auto opt = std::make_shared<FigureOptions>();
  CLI::App* app = root.add_subcommand("figures", "Plot-ready CSV bundles for the figures");
  app->add_option("which", opt->which, "fig1 fig2 fig3 fig5 or all")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig5", "all"}));
  app->add_option("--output-dir", opt->dir, "Directory (default: $PLAP_OUTPUT_DIR or the working directory)");

  return [opt](Io& io) {
    std::filesystem::path dir = opt->dir.empty() ? resolve_output(".") : resolve_output(opt->dir);
    Bundle bundle(dir, io);
    const auto wants = [&](const std::string& f) {
      return std::find(opt->which.begin(), opt->which.end(), f) != opt->which.end() ||
             std::find(opt->which.begin(), opt->which.end(), "all") != opt->which.end();
    };
    bool ok = true;
    if (wants("fig1")) ok &= fig1(bundle);
    if (wants("fig2")) ok &= fig2(bundle);
    if (wants("fig3")) ok &= fig3(bundle);
    if (wants("fig5")) ok &= fig5(bundle);
    return ok ? 0 : 1;
  };
}

}  // namespace plap::cli
