#include <cmath>

#include "doctest.h"
#include "plap/sampling.hpp"

using namespace plap;

TEST_CASE("draws depend only on the seed") {
  sampling::Rng a(42);
  sampling::Rng b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
  const auto u = sampling::random_positive_trig(a, 128);
  const auto v = sampling::random_positive_trig(b, 128);
  for (std::size_t j = 0; j < 128; ++j) CHECK(u[j] == v[j]);
}

TEST_CASE("uniform ranges") {
  sampling::Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(-2.0, 3.0);
    CHECK(x >= -2.0);
    CHECK(x < 3.0);
    const int m = rng.integer(1, 4);
    CHECK(m >= 1);
    CHECK(m <= 4);
  }
}

TEST_CASE("random trigonometric polynomials are positive with the requested amplitude") {
  sampling::Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto u = sampling::random_positive_trig(rng, 64, 8, 1e-3, 0.9);
    CHECK(u.min() > 0.0);
    const double amp = std::max(u.max() - 1.0, 1.0 - u.min());
    CHECK(amp >= 1e-3 * (1.0 - 1e-12));
    CHECK(amp <= 0.9 * (1.0 + 1e-12));
  }
}
