#include <cmath>
#include <future>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "plap/constants.hpp"
#include "plap/grid.hpp"

using namespace plap;

namespace {
const std::vector<double> kExponents{2.2, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0};
}

TEST_CASE("p = 2 reduces every constant to the circle Laplacian") {
  const auto c = constants::eigen_constants(2.0);
  CHECK(c.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.lambda1_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.Lambda1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.pi_p == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK_FALSE(c.in_theorem_scope);
}

TEST_CASE("pi_p and lambda1 match the closed form") {
  for (double p : kExponents) {
    CAPTURE(p);
    CHECK(constants::pi_p(p) == doctest::Approx(testing::pi_p_closed(p)).epsilon(1e-11));
    CHECK(constants::lambda1(p) == doctest::Approx(testing::lambda1_closed(p)).epsilon(1e-11));
  }
}

TEST_CASE("lambda1_star matches direct shooting of its eigenvalue equation") {
  for (double p : kExponents) {
    CAPTURE(p);
    CHECK(constants::lambda1_star(p) == doctest::Approx(testing::lambda1_star_shooting(p)).epsilon(1e-10));
  }
}

TEST_CASE("lambda1 = Lambda1^{2/p} and Lambda1 = (pi_p/pi)^p") {
  for (double p : kExponents) {
    const auto c = constants::eigen_constants(p);
    CAPTURE(p);
    CHECK(c.lambda1 == doctest::Approx(std::pow(c.Lambda1, 2.0 / p)).epsilon(1e-12));
    CHECK(c.Lambda1 == doctest::Approx(std::pow(c.pi_p / std::numbers::pi, p)).epsilon(1e-12));
    CHECK(c.in_theorem_scope);
  }
}

TEST_CASE("lambda1_star exceeds lambda1 for p > 2 and the gap closes at p = 2") {
  for (double p : kExponents) {
    CAPTURE(p);
    CHECK(constants::lambda1_star(p) > constants::lambda1(p));
  }
  const double p = 2.0 + 1e-6;
  CHECK(constants::lambda1_star(p) - constants::lambda1(p) < 1e-4);
  CHECK(constants::lambda1_star(p) - constants::lambda1(p) >= 0.0);
}

TEST_CASE("large p limits") {
  CHECK(constants::lambda1(200.0) == doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi)).epsilon(2e-2));
}

TEST_CASE("concurrent evaluation returns the memoized values") {
  constants::clear_cache();
  std::vector<std::future<constants::EigenConstants>> jobs;
  for (int k = 0; k < 8; ++k) jobs.push_back(std::async(std::launch::async, [] { return constants::eigen_constants(3.7); }));
  const auto ref = constants::eigen_constants(3.7);
  for (auto& job : jobs) {
    const auto c = job.get();
    CHECK(c.lambda1 == ref.lambda1);
    CHECK(c.lambda1_star == ref.lambda1_star);
  }
}

TEST_CASE("lambda1 profile: normalization, zero average and eigen equation via its flux") {
  const double p = 3.0;
  CHECK(constants::lambda1_profile(p, 64)[0] == doctest::Approx(1.0));
  // Both checks converge algebraically: the flux is only C^{p-1} at the zeros of f.
  double prev_eq = INFINITY;
  double prev_ratio = INFINITY;
  for (std::size_t n : {256u, 1024u, 4096u}) {
    const double shift = std::numbers::pi / static_cast<double>(n);
    const grid::GridFunction f(constants::lambda1_profile(p, n, shift));
    const grid::GridFunction flux(constants::lambda1_profile_flux(p, n, shift));
    CAPTURE(n);
    CHECK(std::abs(grid::mean(f)) < 1e-12);
    CHECK(f.max() <= 1.0);

    // (flux)' = -Lambda1 |f|^{p-2} f
    const auto lap = grid::spectral_derivative(flux.values());
    const double L = constants::Lambda1(p);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(lap[j] + L * grid::phi(f[j], p)));
    CHECK(worst < prev_eq / 2.5);
    prev_eq = worst;

    // Rayleigh quotient ||f'||_p^2 / ||f||_p^2 = lambda1
    const double kinetic = grid::mean(flux.map([p](double y) { return std::pow(std::abs(y), p / (p - 1.0)); }));
    const double ratio = std::pow(kinetic, 2.0 / p) / std::pow(grid::norm(f, p), 2.0);
    const double err = std::abs(ratio / constants::lambda1(p) - 1.0);
    CHECK(err < prev_ratio / 8.0);
    prev_ratio = err;
  }
  CHECK(prev_eq < 1e-5);
  CHECK(prev_ratio < 1e-8);
}

TEST_CASE("lambda1_star profile attains the quotient") {
  for (double p : {2.5, 3.0, 4.0}) {
    const grid::GridFunction v(constants::lambda1_star_profile(p, 4096));
    CAPTURE(p);
    CHECK(std::abs(grid::mean(v)) < 1e-12);
    CHECK(v[0] == doctest::Approx(1.0));
    const double q = std::pow(grid::norm(grid::derivative(v), p), 2.0) / std::pow(grid::norm(v, 2.0), 2.0);
    CHECK(q == doctest::Approx(constants::lambda1_star(p)).epsilon(1e-6));
  }
}
