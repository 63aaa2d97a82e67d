#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "plap/error.hpp"
#include "plap/grid.hpp"

using namespace plap;
using grid::GridFunction;

TEST_CASE("spectral derivative is exact on resolved modes") {
  const auto u = GridFunction::sample([](double x) { return std::sin(3 * x) + 0.5 * std::cos(7 * x); }, 64);
  const auto du = grid::derivative(u);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = u.node(j);
    CHECK(du[j] == doctest::Approx(3 * std::cos(3 * x) - 3.5 * std::sin(7 * x)).epsilon(1e-12));
  }
}

TEST_CASE("sigma norms") {
  CHECK(grid::norm(GridFunction::constant(2.0, 32), 3.0) == doctest::Approx(2.0));
  // ||sin||_2 = 1/sqrt(2), ||sin||_4^4 = 3/8
  const auto s = GridFunction::sample([](double x) { return std::sin(x); }, 64);
  CHECK(grid::norm(s, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(grid::norm(s, 4.0) == doctest::Approx(std::pow(0.375, 0.25)).epsilon(1e-14));
  CHECK_THROWS_AS(grid::norm(s, 0.5), Error);
}

TEST_CASE("p-Laplacian in divergence form") {
  // u = sin: L_4 u = (cos^3)' = -3 cos^2 sin, a resolved trigonometric polynomial.
  const auto u = GridFunction::sample([](double x) { return std::sin(x); }, 64);
  const auto L = grid::p_laplacian(u, 4.0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = u.node(j);
    CHECK(L[j] == doctest::Approx(-3.0 * std::cos(x) * std::cos(x) * std::sin(x)).epsilon(1e-12).scale(1.0));
  }
  // p = 3: (|cos| cos)' = -2 |cos| sin has a kink, so only algebraic convergence.
  double prev = INFINITY;
  for (std::size_t n : {256u, 1024u, 4096u}) {
    const auto v = GridFunction::sample([](double x) { return std::sin(x); }, n);
    const auto L3 = grid::p_laplacian(v, 3.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = v.node(j);
      worst = std::max(worst, std::abs(L3[j] + 2.0 * std::abs(std::cos(x)) * std::sin(x)));
    }
    CHECK(worst < prev / 3.0);
    prev = worst;
  }
  CHECK(grid::phi(0.0, 3.0) == 0.0);
  CHECK(grid::phi(-2.0, 3.0) == doctest::Approx(-4.0));
}

TEST_CASE("grid construction and csv input") {
  CHECK_THROWS_AS(GridFunction(std::vector<double>(15, 1.0)), Error);
  CHECK_THROWS_AS(GridFunction(std::vector<double>(17, 1.0)), Error);
  std::vector<double> bad(16, 1.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction{bad}, Error);

  std::stringstream in;
  in << "u\n";
  for (int j = 0; j < 16; ++j) in << 1.0 + 0.01 * j << "\n\n";
  const auto u = grid::read_csv(in);
  CHECK(u.size() == 16);
  CHECK(u[15] == doctest::Approx(1.15));
  CHECK(u[16] == u[0]);
}

TEST_CASE("positivity") {
  const auto u = GridFunction::sample([](double x) { return std::cos(x); }, 32);
  CHECK_FALSE(u.is_positive());
  CHECK_THROWS_AS(grid::require_positive(u, "test"), Error);
  CHECK(GridFunction::constant(1.0, 32).is_positive());
}
