#include <cmath>
#include <vector>

#include "doctest.h"
#include "plap/branch.hpp"
#include "plap/constants.hpp"
#include "plap/error.hpp"
#include "plap/grid.hpp"
#include "plap/orbit.hpp"

using namespace plap;

TEST_CASE("thresholds") {
  const auto th = branch::thresholds(Params(3.0, 5.0));
  CHECK(th.rigidity == doctest::Approx(constants::lambda1(3.0) / 2.0).epsilon(1e-14));
  CHECK(th.bifurcation == doctest::Approx(constants::lambda1_star(3.0) / 2.0).epsilon(1e-14));
  CHECK(th.rigidity < th.bifurcation);
  CHECK_THROWS_AS(branch::thresholds(Params(3.0, 3.0)), Error);
  CHECK_THROWS_AS(branch::thresholds(Params(2.0, 3.0)), Error);
}

TEST_CASE("branch lies below the diagonal, nondecreasing and concave") {
  for (auto [p, q] : {std::pair{3.0, 5.0}, std::pair{4.0, 3.5}, std::pair{2.5, 3.0}}) {
    const Params P(p, q);
    const auto trace = branch::trace_branch(P, branch::linspace(0.05, 0.95, 30));
    const auto shape = branch::branch_shape(trace);
    CAPTURE(p);
    CAPTURE(q);
    CHECK(trace.failures.empty());
    CHECK(shape.points == 30);
    CHECK(shape.max_excess <= 0.0);
    CHECK(shape.min_increment >= 0.0);
    CHECK(shape.max_slope_increase <= 1e-8);
  }
}

TEST_CASE("branch points come from solutions of the Euler-Lagrange equation") {
  const Params P(3.0, 5.0);
  const double a = 0.6;
  const auto pt = branch::branch_point(a, P);
  const auto o = orbit::make_orbit(a, P);
  CHECK(pt.T == doctest::Approx(o.T).epsilon(1e-12));

  // Rebuild u on the circle and recover (T, K) from the sigma norms.
  // The samples have algebraic smoothness at the turning points; the
  // trapezoid sums converge at order > 2.
  const double K = 1.7;
  const auto norms = branch::rescaled_norms(o, K, P);
  double prev = INFINITY;
  for (std::size_t n : {512u, 2048u}) {
    const grid::GridFunction u(orbit::profile(a, P, n).f);
    const auto scaled = u.scaled(K);
    const double err = std::max(std::abs(grid::norm(scaled, 3.0) / norms.norm_p - 1.0),
                                std::abs(grid::norm(scaled, 5.0) / norms.norm_q - 1.0));
    CAPTURE(n);
    CHECK(err < prev / 4.0);
    prev = err;
  }
  CHECK(prev < 1e-8);

  const auto back = branch::recover_rescaling(pt.lambda, pt.mu, norms, P);
  CHECK(back.T == doctest::Approx(o.T).epsilon(1e-10));
}

TEST_CASE("diagonal departure extrapolates to the bifurcation threshold") {
  for (auto [p, q] : {std::pair{3.0, 5.0}, std::pair{4.0, 4.5}, std::pair{4.0, 3.5}}) {
    const auto d = branch::diagonal_departure(Params(p, q));
    CAPTURE(p);
    CAPTURE(q);
    CHECK(d.relative_gap < 1e-3);
    CHECK(d.order > 0.5);
  }
}

TEST_CASE("period exceeds the rigidity lower bound") {
  for (double a : {0.02, 0.3, 0.7, 0.98}) {
    const auto r = branch::rigidity_period_bound(a, Params(3.0, 5.0));
    CAPTURE(a);
    CHECK(r.holds);
    CHECK(r.T > r.lower_bound);
  }
}

TEST_CASE("constant estimate brackets lambda1_star") {
  const auto est = branch::optimal_constant_estimate(Params(3.0, 5.0), branch::linspace(0.05, 0.98, 40));
  CHECK(est.consistent);
  CHECK(est.lambda_low <= est.lambda_high);
}

TEST_CASE("branch inverse is the identity up to the departure abscissa") {
  const Params P(3.0, 5.0);
  const auto inv = branch::BranchInverse::build(P);
  const auto th = branch::thresholds(P);
  const auto below = inv(0.5 * th.rigidity);
  CHECK(below.lambda == doctest::Approx(0.5 * th.rigidity));
  CHECK(below.source == branch::BranchInverse::Source::Rigidity);
  const auto beyond = inv(0.5 * (th.bifurcation + inv.max_mu()));
  CHECK(beyond.source == branch::BranchInverse::Source::Branch);
  CHECK(beyond.lambda > 0.5 * (th.bifurcation + inv.max_mu()));
  CHECK_THROWS_AS(inv(2.0 * inv.max_mu()), Error);
}
