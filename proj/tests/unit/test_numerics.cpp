#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "plap/error.hpp"
#include "plap/numerics.hpp"

using namespace plap;
using namespace plap::numerics;

TEST_CASE("quadrature of regular integrands") {
  const Integrand f = [](double x) { return std::exp(x); };
  CHECK(integrate(f, {0.0, 1.0}, QuadRule::adaptive(1e-13)) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  const Integrand g = [](double x) { return std::sin(x) * std::sin(x); };
  CHECK(integrate(g, {0.0, std::numbers::pi}, QuadRule::adaptive(1e-13)) ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-13));
}

TEST_CASE("quadrature with power-law endpoint blow-up") {
  const auto rule = QuadRule::singular(1e-12);
  const Integrand lo = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK(integrate(lo, {0.0, 1.0}, rule, {0.5, 0.0}) == doctest::Approx(2.0).epsilon(1e-11));
  const OffsetIntegrand hi = [](double, double, double to_hi) { return std::pow(to_hi, -2.0 / 3.0); };
  CHECK(integrate(hi, {0.0, 1.0}, rule, {0.0, 2.0 / 3.0}) == doctest::Approx(3.0).epsilon(1e-11));
  // Beta(1/2, 1/2) = pi
  const OffsetIntegrand both = [](double, double a, double b) { return 1.0 / std::sqrt(a * b); };
  CHECK(integrate(both, {0.0, 1.0}, rule, {0.5, 0.5}) == doctest::Approx(std::numbers::pi).epsilon(1e-11));
}

TEST_CASE("quadrature errors") {
  const Integrand f = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(integrate(f, {0.0, 1.0}, QuadRule::singular(), {1.0, 0.0}), Error);
  QuadRule bad = QuadRule::adaptive();
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  const Integrand nan = [](double) { return std::nan(""); };
  CHECK_THROWS_AS(integrate(nan, {0.0, 1.0}, QuadRule::adaptive()), Error);
}

TEST_CASE("Brent root finding") {
  const Integrand f = [](double x) { return std::cos(x) - x; };
  const double r = find_root(f, RootBracket::around(f, 0.0, 1.0), 1e-15);
  CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-14));
  CHECK_THROWS_AS(RootBracket::around(f, 1.0, 2.0), Error);
}

TEST_CASE("pow_difference avoids cancellation") {
  CHECK(pow_difference(1.0, 1e-12, 3.0) == doctest::Approx(3e-12).epsilon(1e-9));
  CHECK(pow_difference(2.0, 0.5, 2.5) == doctest::Approx(std::pow(2.5, 2.5) - std::pow(2.0, 2.5)).epsilon(1e-14));
  CHECK(pow_difference(2.0, -0.5, 0.5) == doctest::Approx(std::sqrt(1.5) - std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("monotone arc inversion on x(r) = sin r") {
  // dr/dx = 1/sqrt(1 - x^2) on [0, 1], travel time pi/2.
  const OffsetIntegrand density = [](double x, double, double to_hi) { return 1.0 / std::sqrt(to_hi * (1.0 + x)); };
  const MonotoneArc arc(density, {0.0, 1.0}, {0.0, 0.5}, QuadRule::singular(1e-12));
  CHECK(arc.duration() == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-11));
  for (double r : {0.1, 0.7, 1.2, 1.5}) {
    CAPTURE(r);
    CHECK(arc.position(r) == doctest::Approx(std::sin(r)).epsilon(1e-9));
    CHECK(arc.elapsed(std::sin(r)) == doctest::Approx(r).epsilon(1e-10));
  }
}
