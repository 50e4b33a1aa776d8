#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gradsim/errors.hpp"
#include "gradsim/quadrature.hpp"

using gradsim::integrate_adaptive;
using gradsim::QuadratureResult;

TEST_CASE("integrates sin over [0, pi]") {
  const QuadratureResult r =
      integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                         std::numbers::pi, 1e-12);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  CHECK(r.error_estimate <= 1e-12);
  CHECK(std::abs(r.value - 2.0) <= r.error_estimate + 1e-15);
}

TEST_CASE("low-degree polynomials finish in a single panel") {
  // both the Gauss-7 and Kronrod-15 rules are exact for degree <= 13, so the
  // estimator can prove convergence without splitting
  const QuadratureResult r = integrate_adaptive(
      [](double x) { return std::pow(x, 10.0); }, 0.0, 1.0, 1e-10);
  CHECK(r.panels == 1);
  CHECK(std::abs(r.value - 1.0 / 11.0) < 1e-15);
}

TEST_CASE("degree-20 polynomials are exact even though the estimator splits") {
  const QuadratureResult r = integrate_adaptive(
      [](double x) { return std::pow(x, 20.0); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(r.value - 1.0 / 21.0) < 1e-15);
  CHECK(r.panels <= 8);
}

TEST_CASE("narrow gaussian against erf reference") {
  // integral of exp(-1000 (x - 0.3)^2) over [0, 1]
  const double k = 1000.0;
  const double reference = std::sqrt(std::numbers::pi / k) / 2.0 *
                           (std::erf(0.7 * std::sqrt(k)) + std::erf(0.3 * std::sqrt(k)));
  const QuadratureResult r = integrate_adaptive(
      [k](double x) { return std::exp(-k * (x - 0.3) * (x - 0.3)); }, 0.0, 1.0,
      1e-13);
  CHECK(std::abs(r.value - reference) < 1e-12);
  CHECK(r.panels > 1);
}

TEST_CASE("zero integrand converges immediately with zero estimate") {
  const QuadratureResult r =
      integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0, 0.0);
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("empty interval is zero") {
  const QuadratureResult r =
      integrate_adaptive([](double x) { return x; }, 2.0, 2.0, 1e-12);
  CHECK(r.value == 0.0);
}

TEST_CASE("unreachable tolerance raises QuadratureNotConverged") {
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::exp(x); }, 0.0,
                                     1.0, 0.0, 8),
                  gradsim::QuadratureNotConverged);
}

TEST_CASE("negative tolerance is rejected") {
  CHECK_THROWS_AS(
      integrate_adaptive([](double x) { return x; }, 0.0, 1.0, -1.0),
      std::invalid_argument);
}

TEST_CASE("error estimate is conservative on an oscillatory integrand") {
  // integral of sin(20 x) over [0, pi/2]: (1 - cos(10 pi)) / 20 = 0
  const QuadratureResult r = integrate_adaptive(
      [](double x) { return std::sin(20.0 * x); }, 0.0, std::numbers::pi / 2.0,
      1e-11);
  CHECK(std::abs(r.value) <= r.error_estimate + 1e-14);
}
