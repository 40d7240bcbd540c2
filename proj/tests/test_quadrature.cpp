#include "rcbound/quadrature.hpp"

#include <cmath>
#include <limits>

#include <doctest.h>

#include "rcbound/errors.hpp"

using namespace rcbound;

TEST_CASE("polynomials are integrated to rounding accuracy") {
  const QuadResult r = integrate_1d([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(std::fabs(r.value - 1.0 / 3.0) <= 1e-14);
  CHECK(std::fabs(r.value - 1.0 / 3.0) <= r.err_est);
  CHECK(!r.depth_exceeded);
  CHECK(r.cells >= 1);
}

TEST_CASE("a damped oscillation over a long range") {
  const QuadResult r =
      integrate_1d([](double x) { return std::exp(-x) * std::sin(x); }, 0.0, 40.0);
  const double exact = 0.5 * (1.0 - std::exp(-40.0) * (std::sin(40.0) + std::cos(40.0)));
  CHECK(std::fabs(r.value - exact) <= 1e-12 * exact);
  CHECK(std::fabs(r.value - exact) <= r.err_est);
  CHECK(!r.depth_exceeded);
}

TEST_CASE("exponential mass is captured to the requested tolerance") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  const QuadResult r = integrate_1d([](double x) { return std::exp(-x); }, 0.0, 60.0, cfg);
  const double exact = 1.0 - std::exp(-60.0);
  CHECK(std::fabs(r.value - exact) <= 1e-12);
  CHECK(std::fabs(r.value - exact) <= r.err_est);
}

TEST_CASE("adaptivity resolves a sharp peak") {
  const double a = 1e-6;
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  const QuadResult r =
      integrate_1d([a](double x) { return 1.0 / (a + x * x); }, -1.0, 1.0, cfg);
  const double exact = 2.0 / std::sqrt(a) * std::atan(1.0 / std::sqrt(a));
  CHECK(std::fabs(r.value - exact) <= 1e-9 * exact);
  CHECK(std::fabs(r.value - exact) <= r.err_est);
  CHECK(!r.depth_exceeded);
  CHECK(r.cells > 8);  // must have actually subdivided
}

TEST_CASE("degenerate and invalid ranges") {
  const QuadResult r = integrate_1d([](double x) { return x; }, 2.5, 2.5);
  CHECK(r.value == 0.0);
  CHECK(r.err_est == 0.0);
  CHECK_THROWS_AS(
      (void)integrate_1d([](double x) { return x; }, 0.0, std::numeric_limits<double>::infinity()),
      DomainError);
  CHECK_THROWS_AS((void)integrate_1d([](double x) { return x; }, std::nan(""), 1.0),
                  DomainError);
}

TEST_CASE("an unresolvable spike flags depth_exceeded instead of failing") {
  QuadratureConfig cfg;
  cfg.max_depth = 3;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 0.0;
  const QuadResult r = integrate_1d(
      [](double x) { return 1.0 / std::sqrt(std::fabs(x - 1.0 / 3.0) + 1e-300); }, 0.0,
      1.0, cfg);
  CHECK(r.depth_exceeded);
  CHECK(r.err_est > 0.0);
}

TEST_CASE("results are bitwise deterministic") {
  auto f = [](double x) { return std::exp(-x * x) / (1.0 + x); };
  const QuadResult a = integrate_1d(f, 0.0, 5.0);
  const QuadResult b = integrate_1d(f, 0.0, 5.0);
  CHECK(a.value == b.value);
  CHECK(a.err_est == b.err_est);
  CHECK(a.cells == b.cells);
}

TEST_CASE("iterated 2d integral of a product over a rectangle") {
  const QuadResult r = integrate_2d_iterated(
      [](double x, double y) { return x * y; }, 0.0, 2.0,
      [](double) { return std::pair<double, double>{0.0, 3.0}; });
  CHECK(std::fabs(r.value - 9.0) <= 1e-10);
  CHECK(std::fabs(r.value - 9.0) <= r.err_est);
  CHECK(!r.depth_exceeded);
  CHECK(r.cells >= 2);
}

TEST_CASE("iterated 2d integral with x-dependent inner bounds") {
  // Integral of (x + y) over the triangle 0 <= y <= x <= 1 equals 1/2.
  const QuadResult r = integrate_2d_iterated(
      [](double x, double y) { return x + y; }, 0.0, 1.0,
      [](double x) { return std::pair<double, double>{0.0, x}; });
  CHECK(std::fabs(r.value - 0.5) <= 1e-10);
  CHECK(std::fabs(r.value - 0.5) <= r.err_est);
}

TEST_CASE("2d gaussian-like mass matches the product of 1d integrals") {
  auto g = [](double t) { return std::exp(-t * t); };
  const QuadResult one = integrate_1d(g, -6.0, 6.0);
  const QuadResult two = integrate_2d_iterated(
      [&](double x, double y) { return g(x) * g(y); }, -6.0, 6.0,
      [](double) { return std::pair<double, double>{-6.0, 6.0}; });
  CHECK(std::fabs(two.value - one.value * one.value) <= 1e-10);
  CHECK(std::fabs(two.value - one.value * one.value) <= two.err_est);
}
