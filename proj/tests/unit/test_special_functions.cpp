#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace nonlocal;

namespace {
const double pi = std::acos(-1.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double k_half(double z) { return std::sqrt(pi / (2.0 * z)) * std::exp(-z); }
} // namespace

TEST_CASE("bessel_k at half-integer orders matches the closed form") {
  CHECK(rel(bessel_k(0.5, 1.0), std::sqrt(pi / 2.0) * std::exp(-1.0)) < 1e-12);
  CHECK(rel(bessel_k(0.5, 2.0), std::sqrt(pi / 4.0) * std::exp(-2.0)) < 1e-12);
  CHECK(rel(bessel_k(1.5, 1.0), 2.0 * k_half(1.0)) < 1e-12);
  CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.46107).epsilon(1e-4));
  CHECK(bessel_k(1.5, 1.0) == doctest::Approx(0.92214).epsilon(1e-4));
}

TEST_CASE("bessel_k against an independent implementation") {
  for (double xi : {0.0, 0.25, 0.75, 1.0, 2.5, 5.0, 12.5})
    for (double z : {1e-4, 0.01, 0.3, 1.0, 7.0, 40.0, 300.0}) {
      CAPTURE(xi);
      CAPTURE(z);
      CHECK(rel(bessel_k(xi, z), boost::math::cyl_bessel_k(xi, z)) < 1e-9);
    }
}

TEST_CASE("bessel_k recurrence on the sample lattice") {
  // K_{-1/2} = K_{1/2}; negative orders below -1/2 are outside the domain.
  auto K = [](double xi, double z) {
    return xi < 0.0 ? bessel_k(-xi, z) : bessel_k(xi, z);
  };
  for (double xi : {0.5, 1.0, 1.5, 2.5})
    for (double z = 0.1; z <= 10.0; z *= 1.35) {
      const double lhs = K(xi + 1.0, z);
      const double rhs = K(xi - 1.0, z) + 2.0 * xi / z * K(xi, z);
      CAPTURE(xi);
      CAPTURE(z);
      CHECK(rel(rhs, lhs) < 1e-8);
    }
}

TEST_CASE("bessel_k derivative identity by central differences") {
  auto K = [](double xi, double z) {
    return xi < 0.0 ? bessel_k(-xi, z) : bessel_k(xi, z);
  };
  const double h = 1e-4;
  for (double xi : {0.5, 1.0, 1.5, 2.5})
    for (double z : {0.3, 0.8, 1.5, 3.0, 6.0}) {
      const double fd = (K(xi, z + h) - K(xi, z - h)) / (2.0 * h);
      const double exact = -0.5 * (K(xi + 1.0, z) + K(xi - 1.0, z));
      CAPTURE(xi);
      CAPTURE(z);
      CHECK(rel(fd, exact) < 1e-6);
    }
}

TEST_CASE("bessel_k small-argument asymptotics") {
  const double z = 1e-3;
  for (double xi : {0.75, 1.0, 1.5}) {
    const double ratio = bessel_k(xi, z) * std::pow(z, xi) /
                         (std::pow(2.0, xi - 1.0) * std::tgamma(xi));
    CHECK(std::abs(ratio - 1.0) < 0.02);
  }
}

TEST_CASE("bessel_k rejects arguments outside its domain") {
  CHECK_THROWS_AS(bessel_k(-0.75, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, -2.0), DomainError);
}

TEST_CASE("gamma_function classical values and poles") {
  CHECK(rel(gamma_function(0.5), std::sqrt(pi)) < 1e-13);
  CHECK(rel(gamma_function(-0.5), -2.0 * std::sqrt(pi)) < 1e-13);
  CHECK(gamma_function(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double s : {-3.7, -1.25, 0.1, 2.2, 7.5, 30.3})
    CHECK(rel(gamma_function(s), boost::math::tgamma(s)) < 1e-13);
  CHECK_THROWS_AS(gamma_function(0.0), PoleError);
  CHECK_THROWS_AS(gamma_function(-2.0), PoleError);
}

TEST_CASE("lower_incomplete_gamma") {
  CHECK(rel(lower_incomplete_gamma(1.0, 1.0), 1.0 - std::exp(-1.0)) < 1e-10);
  CHECK(lower_incomplete_gamma(2.0, 0.0) == 0.0);
  // Frozen from boost::math::tgamma_lower(1.5, 3).
  CHECK(rel(lower_incomplete_gamma(1.5, 3.0), 0.78731493881798065) < 1e-10);
  for (double s : {1.0, 2.5, 3.0}) {
    const double x = 1e-4;
    CHECK(std::abs(lower_incomplete_gamma(s, x) / std::pow(x, s) * s - 1.0) < 0.01);
  }
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), DomainError);
}

TEST_CASE("unit_sphere_area") {
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * pi));
}

TEST_CASE("quadrature building blocks") {
  QuadratureSpec q;
  auto f = [](double x) { return std::exp(-x) * std::cos(x); };
  CHECK(quad::gauss_kronrod(f, 0.0, 1.0, q).value ==
        doctest::Approx(0.5 * (1.0 + std::exp(-1.0) * (std::sin(1.0) - std::cos(1.0))))
            .epsilon(1e-12));
  CHECK(quad::tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q)
            .value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(quad::integrate_to_infinity(f, 0.0, q).value ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(quad::de_trapezoid([](double x) { return std::exp(-x * x); }, 0.0, q).value ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  QuadratureSpec tiny = q;
  tiny.max_evals = 100;
  tiny.method = QuadMethod::AdaptiveSubdivision;
  CHECK_THROWS_AS(
      quad::gauss_kronrod([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tiny),
      QuadratureError);
  QuadratureSpec bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
