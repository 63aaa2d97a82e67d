#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "plap/error.hpp"
#include "plap/orbit.hpp"

using namespace plap;

namespace {
const std::vector<std::pair<double, double>> kPairs{{2.5, 3.0}, {3.0, 5.0}, {4.0, 4.5}, {4.0, 3.5}, {3.0, 2.5}};
}

TEST_CASE("conjugate point lies on the same level of the potential") {
  for (auto [p, q] : kPairs) {
    const Params P(p, q);
    const orbit::Potential W(P);
    for (double a : {0.05, 0.4, 0.9, 0.999}) {
      const double b = orbit::conjugate_point(a, P);
      CAPTURE(p);
      CAPTURE(q);
      CAPTURE(a);
      CHECK(b > 1.0);
      CHECK(b < W.zero());
      CHECK(W(b) == doctest::Approx(W(a)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(orbit::conjugate_point(1.0, Params(3, 5)), Error);
  CHECK_THROWS_AS(orbit::conjugate_point(0.0, Params(3, 5)), Error);
}

TEST_CASE("period quadrature agrees with the shooting oracle") {
  for (auto [p, q] : kPairs) {
    const Params P(p, q);
    for (double a : {0.05, 0.5, 0.95}) {
      CAPTURE(p);
      CAPTURE(q);
      CAPTURE(a);
      const double T = orbit::period(a, P);
      CHECK(std::abs(T - orbit::shoot_period(a, P)) <= 1e-7 * T);
    }
  }
}

TEST_CASE("norm integrals agree with time quadrature along the shot orbit") {
  const Params P(3.0, 5.0);
  for (double a : {0.2, 0.7}) {
    const auto o = orbit::make_orbit(a, P);
    const auto s = orbit::shoot(a, P);
    CAPTURE(a);
    CHECK(o.integrals.Ip_prime == doctest::Approx(s.integrals.Ip_prime).epsilon(1e-7));
    CHECK(o.integrals.Ip == doctest::Approx(s.integrals.Ip).epsilon(1e-7));
    CHECK(o.integrals.Iq == doctest::Approx(s.integrals.Iq).epsilon(1e-7));
    // Multiplying the orbit equation by f and integrating over a period.
    CHECK(o.integrals.Ip_prime + o.integrals.Ip == doctest::Approx(o.integrals.Iq).epsilon(1e-8));
  }
}

TEST_CASE("shooting conserves the energy and bottom of the well is p/q - 1") {
  const Params P(2.5, 3.0);
  CHECK(orbit::energy({1.0, 0.0}, P) == doctest::Approx(2.5 / 3.0 - 1.0).epsilon(1e-15));
  CHECK(orbit::energy({1.0, 0.0}, P) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  for (double seed : {0.3, 0.8, 1.35, 1.8}) {
    const auto s = orbit::shoot(seed, P);
    CAPTURE(seed);
    CHECK(s.max_energy_drift <= 1e-6 * (1.0 + std::abs(s.energy)));
  }
  CHECK(orbit::shoot(1.35, P).kind == orbit::OrbitKind::Positive);
  CHECK(orbit::shoot(1.8, P).kind == orbit::OrbitKind::SignChanging);
}

TEST_CASE("small-amplitude asymptotics of the period") {
  // T ~ 2 (p(q-p)/(2(p-1)))^{-1/p} A^{1-2/p} B(1/2, 1-1/p) with A = 1 - a.
  const double p = 3.0;
  const double q = 5.0;
  const double beta = std::tgamma(0.5) * std::tgamma(1.0 - 1.0 / p) / std::tgamma(1.5 - 1.0 / p);
  const double c = 2.0 * std::pow(p * (q - p) / (2.0 * (p - 1.0)), -1.0 / p) * beta;
  double prev = 1.0;
  for (double A : {1e-2, 1e-3, 1e-4}) {
    const double rel = orbit::period(1.0 - A, Params(p, q)) / (c * std::pow(A, 1.0 - 2.0 / p)) - 1.0;
    CAPTURE(A);
    CHECK(std::abs(rel) < prev);
    prev = std::abs(rel);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("period is decreasing in a and blows up as a -> 0") {
  const Params P(3.0, 5.0);
  double prev = INFINITY;
  for (int k = 1; k < 40; ++k) {
    const double T = orbit::period(k / 40.0, P);
    CHECK(T < prev);
    prev = T;
  }
  CHECK(orbit::period(0.001, P) > orbit::period(0.02, P));
}

TEST_CASE("profile samples satisfy the orbit relations") {
  const Params P(3.0, 5.0);
  const auto pr = orbit::profile(0.5, P, 64);
  CHECK(pr.f.front() == doctest::Approx(0.5));
  CHECK(pr.f[32] == doctest::Approx(pr.b).epsilon(1e-10));
  CHECK(pr.T == doctest::Approx(orbit::period(0.5, P)).epsilon(1e-12));
  const double H0 = orbit::energy({0.5, 0.0}, P);
  for (std::size_t j = 0; j < pr.f.size(); ++j) {
    CAPTURE(j);
    CHECK(orbit::energy({pr.f[j], pr.flux[j]}, P) == doctest::Approx(H0).epsilon(1e-9));
    CHECK(pr.flux[j] == doctest::Approx(std::abs(pr.df[j]) * pr.df[j]).epsilon(1e-12));
  }
}

TEST_CASE("seed normalization") {
  const Params P(3.0, 5.0);
  const double b = orbit::conjugate_point(0.3, P);
  CHECK(orbit::normalize_seed(b, P) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(orbit::normalize_seed(0.3, P) == 0.3);
  CHECK_THROWS_AS(orbit::normalize_seed(1.0, P), Error);
  CHECK_THROWS_AS(orbit::normalize_seed(-0.2, P), Error);
  CHECK_THROWS_AS(orbit::normalize_seed(10.0, P), Error);
}
