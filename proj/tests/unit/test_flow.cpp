#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/flow.hpp"

using namespace plap;
using grid::GridFunction;

TEST_CASE("regularized flux matches closed forms") {
  for (double p : {3.0, 4.0, 5.0}) {
    for (double eps : {1e-3, 0.1, 1.0}) {
      const flow::RegularizedFlux flux(p, eps);
      for (double x : {1e-9, 1e-3, 0.2, 0.5, 0.9, 1.5, 1.99, 2.0, 2.5, 10.0, 1e4}) {
        for (double sign : {1.0, -1.0}) {
          const double s = sign * x * eps;
          CAPTURE(p);
          CAPTURE(eps);
          CAPTURE(s);
          CHECK(flux(s) == doctest::Approx(testing::regularized_flux_closed(p, eps, s)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("regularized flux for non-integer p against Simpson") {
  const double p = 3.5;
  const double eps = 0.3;
  const flow::RegularizedFlux flux(p, eps);
  for (double s : {0.05, 0.4, 1.0, 3.0}) {
    const double ref = testing::simpson(
        [&](double t) { return (p - 1.0) * std::pow(eps * eps + t * t, p / 2.0 - 1.0); }, 0.0, s, 4000);
    CAPTURE(s);
    CHECK(flux(s) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("flux reduces to |s|^{p-2} s at eps = 0 and as eps -> 0") {
  const flow::RegularizedFlux exact(3.0, 0.0);
  CHECK(exact(2.0) == doctest::Approx(4.0));
  CHECK(exact(-0.5) == doctest::Approx(-0.25));
  const flow::RegularizedFlux small(3.0, 1e-8);
  CHECK(small(0.7) == doctest::Approx(grid::phi(0.7, 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(flow::RegularizedFlux(2.0, 0.1), Error);
  CHECK_THROWS_AS(flow::RegularizedFlux(3.0, -1.0), Error);
}

TEST_CASE("constants are stationary") {
  const auto one = GridFunction::constant(1.3, 64);
  CHECK(flow::rhs(one, Params(3, 5), 0.0).max_abs() == 0.0);
  CHECK(flow::rhs(one, Params(3, 5), 1e-2).max_abs() == 0.0);
}

TEST_CASE("the right-hand side is tangent to ∫u^q = const") {
  const Params P(3, 5);
  for (std::size_t n : {64u, 256u, 1024u}) {
    const auto u = GridFunction::sample([](double x) { return 1.0 + 0.2 * std::sin(x) + 0.05 * std::cos(3 * x); }, n);
    const auto du = flow::rhs(u, P, 0.0);
    double flux = 0.0;
    for (std::size_t j = 0; j < n; ++j) flux += 5.0 * std::pow(u[j], 4.0) * du[j];
    flux /= static_cast<double>(n);
    CAPTURE(n);
    CHECK(std::abs(flux) < 1e-13);
  }
}

TEST_CASE("short run keeps the flow identities") {
  flow::FlowConfig cfg;
  cfg.n = 64;
  cfg.epsilon = 0.0;
  cfg.t_end = 30.0;
  const auto u0 = flow::perturbed_constant(3.0, 64, 0.1);
  const auto state = flow::run(u0, cfg);
  CHECK(state.stop == flow::StopReason::Decayed);
  const auto rep = flow::check_series(state, cfg.params);
  CHECK(rep.max_raw_drift <= 1e-4);
  CHECK(rep.max_mass_error <= 1e-12);
  CHECK(rep.e_decreasing);
  CHECK(rep.i_decreasing);
  CHECK(rep.max_decay_ratio <= 1.05);
  CHECK(rep.lyapunov_nonincreasing);
  CHECK(rep.min_eep_margin >= 0.0);
  CHECK(rep.max_entropy_production_error < 1e-3);
  const auto rates = flow::improved_rate_report(state, cfg.params);
  CHECK(rates.early_rate >= rates.reference);
  CHECK(rates.cs_holds);
  CHECK(rates.odi_holds);
}

TEST_CASE("regularized flow converges to the degenerate flow as eps -> 0") {
  const auto u0 = GridFunction::sample([](double x) { return 1.0 + 0.1 * std::sin(x); }, 64);
  flow::FlowConfig cfg;
  cfg.n = 64;
  cfg.t_end = 0.3;
  cfg.decay_target = 0.0;
  cfg.epsilon = 0.0;
  const auto ref = flow::run(u0, cfg);
  std::vector<double> errors;
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    cfg.epsilon = eps;
    const auto s = flow::run(u0, cfg);
    double err = 0.0;
    for (std::size_t j = 0; j < 64; ++j) err = std::max(err, std::abs(s.u[j] - ref.u[j]));
    errors.push_back(err);
  }
  CAPTURE(errors[0]);
  CAPTURE(errors[2]);
  CHECK(errors[1] < errors[0]);
  CHECK(errors[2] < errors[1]);
}

TEST_CASE("concurrent runs reproduce sequential runs") {
  flow::FlowConfig cfg;
  cfg.n = 32;
  cfg.epsilon = 0.0;
  cfg.t_end = 0.5;
  std::vector<std::pair<GridFunction, flow::FlowConfig>> jobs;
  for (double amp : {0.05, 0.1, 0.2}) jobs.emplace_back(flow::perturbed_constant(3.0, 32, amp), cfg);
  const auto all = flow::run_all(jobs);
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto one = flow::run(jobs[k].first, cfg);
    CHECK(all[k].steps == one.steps);
    for (std::size_t j = 0; j < 32; ++j) CHECK(all[k].u[j] == one.u[j]);
  }
}

TEST_CASE("fitted rate recovers an exact exponential") {
  std::vector<flow::Sample> series;
  for (int k = 0; k <= 100; ++k) {
    flow::Sample s;
    s.t = 0.1 * k;
    s.i = 2.0 * std::exp(-1.7 * s.t);
    series.push_back(s);
  }
  CHECK(flow::fitted_rate(series, 1e-3, 1.0) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(std::isnan(flow::fitted_rate(series, 1e-30, 1e-29)));
}

TEST_CASE("flow input validation") {
  flow::FlowConfig cfg;
  cfg.n = 32;
  const auto neg = GridFunction::sample([](double x) { return std::cos(x); }, 32);
  CHECK_THROWS_AS(flow::start(neg, cfg), Error);
  CHECK_THROWS_AS(flow::start(GridFunction::constant(1.0, 64), cfg), Error);
  cfg.params = Params(2.0, 3.0);
  CHECK_THROWS_AS(flow::start(GridFunction::constant(1.0, 32), cfg), Error);
}

TEST_CASE("start normalizes ||u||_q and resolves the default epsilon") {
  flow::FlowConfig cfg;
  cfg.n = 64;
  const auto u0 = flow::perturbed_constant(3.0, 64, 0.1).scaled(4.0);
  const auto s = flow::start(u0, cfg);
  CHECK(grid::norm(s.u, 5.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.epsilon == doctest::Approx(flow::default_epsilon(s.u)).epsilon(1e-12));
  REQUIRE(s.series.size() == 1);
  CHECK(s.series.front().t == 0.0);
}
