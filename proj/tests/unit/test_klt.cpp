#include <cmath>

#include "doctest.h"
#include "plap/error.hpp"
#include "plap/klt.hpp"
#include "plap/sampling.hpp"

using namespace plap;
using grid::GridFunction;

TEST_CASE("constant potential below the rigidity threshold gives equality at u = 1") {
  for (auto [p, q] : {std::pair{3.0, 5.0}, std::pair{4.0, 3.5}}) {
    const Params P(p, q);
    const auto inv = branch::BranchInverse::build(P);
    const auto one = GridFunction::constant(1.0, 256);
    for (double frac : {0.1, 0.5, 1.0}) {
      const auto V = GridFunction::constant(frac * inv.rigidity(), 256);
      const auto r = functional::check_klt(one, V, P, &inv);
      CAPTURE(p);
      CAPTURE(frac);
      CHECK(r.equality_case);
      CHECK(std::abs(r.margin) <= 1e-10);
      CHECK(r.holds);
    }
  }
}

TEST_CASE("random data keeps a nonnegative margin") {
  const Params P(3.0, 5.0);
  const auto inv = branch::BranchInverse::build(P);
  sampling::Rng rng(3);
  for (int draw = 0; draw < 30; ++draw) {
    const auto u = sampling::random_positive_trig(rng, 256);
    const auto shape = sampling::random_positive_trig(rng, 256, 4, 0.05, 0.8);
    const double target = rng.uniform(0.2, 0.9) * inv.max_mu();
    const auto V = shape.scaled(target / grid::norm(shape, 2.5));
    const auto r = functional::check_klt(u, V, P, &inv);
    CAPTURE(draw);
    CHECK(r.potential_norm == doctest::Approx(target).epsilon(1e-12));
    CHECK(r.holder_holds);
    CHECK(r.holds);
    CHECK(r.margin >= 0.0);
  }
}

TEST_CASE("potentials past the traced branch are rejected") {
  const Params P(3.0, 5.0);
  const auto inv = branch::BranchInverse::build(P);
  const auto V = GridFunction::constant(3.0 * inv.max_mu(), 64);
  CHECK_THROWS_AS(functional::check_klt(GridFunction::constant(1.0, 64), V, P, &inv), Error);
}
