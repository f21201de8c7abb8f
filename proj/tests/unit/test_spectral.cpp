#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/experiments.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/spectral.hpp"

#include <cmath>
#include <random>

using namespace nonlocal;

namespace {
const double pi = std::acos(-1.0);
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Field gaussian(const Grid &g) {
  return Field::from_function(g, [](const std::vector<double> &x) {
    double r2 = 0.0;
    for (double c : x)
      r2 += c * c;
    return std::exp(-r2);
  });
}

Field random_field(const Grid &g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Field u(g);
  for (auto &v : u.values)
    v = n(rng);
  return u;
}
} // namespace

TEST_CASE("grid geometry") {
  const Grid g(2, 16, 8.0);
  CHECK(g.h() == 0.5);
  CHECK(g.size() == 256);
  CHECK(g.coordinate(0) == -4.0);
  CHECK(g.coordinate(8) == 0.0);
  CHECK(g.nearest_index(0.26) == 9);
  CHECK(g.nearest_index(4.0) == 0);
  const auto k = g.flat({3, 5, 0});
  CHECK(g.unflat(k)[0] == 3);
  CHECK(g.unflat(k)[1] == 5);
  CHECK(g.radius(g.flat({8, 8, 0})) == 0.0);
  CHECK_THROWS_AS(Grid(4, 8, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(1, 24, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(1, 8, -1.0), DomainError);
  CHECK_THROWS_AS(require_same_grid(Field(g), Field(Grid(2, 32, 8.0)), "test"),
                  GridMismatch);
}

TEST_CASE("field norms and interpolation") {
  const Grid g(1, 64, 8.0);
  const Field one(g, 1.0);
  CHECK(l2_norm(one) == doctest::Approx(std::sqrt(8.0)));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(8.0));
  const Field lin = Field::from_function(g, [](const std::vector<double> &x) {
    return std::sin(2.0 * pi * x[0] / 8.0);
  });
  CHECK(interpolate(lin, {g.coordinate(10)}) == doctest::Approx(lin[10]));
  CHECK(std::abs(interpolate(lin, {0.3}) - std::sin(2.0 * pi * 0.3 / 8.0)) < 2e-3);
  CHECK(sup_norm(lin) == doctest::Approx(1.0));
}

TEST_CASE("fft round trip and frequency layout") {
  for (int d : {1, 2, 3}) {
    const Grid g(d, 16, 5.0);
    const Field u = random_field(g, 7 + d);
    const Field back = inverse(forward(u));
    CHECK(sup_norm(back - u) < 1e-13);
    const auto f2 = frequency_squared(g);
    CHECK(f2.size() == forward(u).coeffs.size());
    CHECK(f2[0] == 0.0);
  }
}

TEST_CASE("multiplier on constants and plane waves") {
  const Grid g(1, 128, 10.0);
  const auto phi = BernsteinSymbol::relativistic(1.0, 1.0);
  CHECK(sup_norm(apply_multiplier(phi, Field(g, 3.0))) < 1e-13);
  const double k = 2.0 * pi * 3.0 / g.L;
  const Field wave = Field::from_function(g, [&](const std::vector<double> &x) {
    return std::cos(k * x[0]);
  });
  CHECK(sup_norm(apply_multiplier(phi, wave) - phi(k * k) * wave) < 1e-12);
  const Grid g2(2, 32, 6.0);
  const double k2 = 2.0 * pi / g2.L;
  const Field wave2 = Field::from_function(g2, [&](const std::vector<double> &x) {
    return std::cos(k2 * x[0]) * std::sin(2.0 * k2 * x[1]);
  });
  CHECK(sup_norm(apply_multiplier(phi, wave2) - phi(5.0 * k2 * k2) * wave2) < 1e-12);
}

TEST_CASE("multiplier is self-adjoint and positive") {
  const auto phi = BernsteinSymbol::relativistic(0.5, 1.3);
  for (int d : {1, 2}) {
    const Grid g(d, d == 1 ? 64 : 16, 7.0);
    for (unsigned s = 0; s < 5; ++s) {
      const Field u = random_field(g, s), v = random_field(g, 100 + s);
      const double a = inner(apply_multiplier(phi, u), v);
      const double b = inner(u, apply_multiplier(phi, v));
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
      CHECK(dirichlet_form(phi, u, u).kinetic >= 0.0);
    }
  }
}

TEST_CASE("dirichlet form identities") {
  const auto phi = BernsteinSymbol::relativistic(1.0, 0.8);
  const Grid g(1, 64, 9.0);
  const double k = 2.0 * pi * 2.0 / g.L;
  const Field wave = Field::from_function(g, [&](const std::vector<double> &x) {
    return std::sin(k * x[0]);
  });
  const double n2 = inner(wave, wave);
  CHECK(rel(dirichlet_form(phi, wave, wave).kinetic, phi(k * k) * n2) < 1e-12);
  const Field V = Field::from_function(g, [](const std::vector<double> &x) {
    return x[0] * x[0];
  });
  for (unsigned s = 0; s < 5; ++s) {
    const Field u = random_field(g, s), v = random_field(g, 50 + s);
    const auto uv = dirichlet_form(phi, u, v, &V);
    const auto vu = dirichlet_form(phi, v, u, &V);
    CHECK(std::abs(uv.total - vu.total) <= 1e-12 * (1.0 + std::abs(uv.total)));
    CHECK(uv.potential == doctest::Approx(inner(hadamard(V, u), v)).epsilon(1e-12));
    const double pol = 0.25 * (dirichlet_form(phi, u + v, u + v, &V).total -
                               dirichlet_form(phi, u - v, u - v, &V).total);
    CHECK(std::abs(pol - uv.total) <= 1e-10 * (1.0 + std::abs(uv.total)));
  }
}

TEST_CASE("fourier seminorm") {
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const Grid g(1, 128, 20.0);
  CHECK(seminorm_fourier(phi, Field(g, 2.0)) == 0.0);
  const double k = 2.0 * pi * 4.0 / g.L;
  Field wave = Field::from_function(g, [&](const std::vector<double> &x) {
    return std::cos(k * x[0]);
  });
  wave = (1.0 / l2_norm(wave)) * wave;
  CHECK(rel(std::pow(seminorm_fourier(phi, wave), 2), phi(k * k)) < 1e-12);

  // Refinement on a fixed Gaussian.
  std::vector<double> values;
  for (int n : {16, 32, 64, 128})
    values.push_back(seminorm_fourier(phi, gaussian(Grid(1, n, 12.0))));
  for (std::size_t i = 2; i < values.size(); ++i)
    CHECK(std::abs(values[i] - values[i - 1]) <= std::abs(values[i - 1] - values[i - 2]));
}

TEST_CASE("direct seminorm agrees with the fourier route") {
  const Grid g(1, 128, 20.0);
  for (double m : {0.0, 1.0}) {
    const auto phi = BernsteinSymbol::relativistic(m, 1.0);
    const Field u = gaussian(g);
    const double f = seminorm_fourier(phi, u);
    const double d = seminorm_direct(phi, u);
    CHECK(std::abs(f * f - d * d) <= 1e-3 * (1.0 + f * f));
    CHECK(seminorm_direct(phi, Field(g, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  const auto phi = BernsteinSymbol::relativistic(0.5, 1.5);
  for (unsigned s = 0; s < 4; ++s) {
    const Field u = random_band_limited_field(g, s, 12);
    const double f = seminorm_fourier(phi, u);
    const double d = seminorm_direct(phi, u);
    CHECK(std::abs(f * f - d * d) <= 1e-3 * (1.0 + f * f));
  }
  const Grid g2(2, 16, 8.0);
  const Field u2 = gaussian(g2);
  const double f2 = seminorm_fourier(phi, u2), d2 = seminorm_direct(phi, u2);
  CHECK(std::abs(f2 * f2 - d2 * d2) <= 1e-3 * (1.0 + f2 * f2));
  CHECK_THROWS_AS(seminorm_direct(phi, Field(Grid(1, 512, 20.0))), CostGuard);
  CHECK_THROWS_AS(seminorm_direct(phi, Field(Grid(3, 64, 20.0))), CostGuard);
  const auto bare = BernsteinSymbol::custom("sqrt", [](double z) { return std::sqrt(z); });
  CHECK_THROWS_AS(seminorm_direct(bare, u2), DomainError);
}

TEST_CASE("massless seminorm ratio") {
  const Grid g(1, 128, 20.0);
  const Field u = gaussian(g);
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const double ratio = seminorm_direct(phi, u) / gagliardo_seminorm(0.5, u);
  CHECK(rel(ratio * ratio, 0.5 * massless_constant(1, 1.0)) < 1e-6);
  CHECK(gagliardo_seminorm(0.5, Field(g, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(gagliardo_seminorm(1.0, u), DomainError);
}

TEST_CASE("pointwise operator on explicit functions") {
  const auto cauchy = BernsteinSymbol::relativistic(0.0, 1.0);
  CHECK(std::abs(pointwise_nonlocal(cauchy, [](const std::vector<double> &) { return 1.0; },
                                    {0.3})) < 1e-12);
  for (double k : {0.5, 1.0, 2.0}) {
    const double x = 0.4;
    const double v = pointwise_nonlocal(
        cauchy, [k](const std::vector<double> &p) { return std::cos(k * p[0]); }, {x});
    CHECK(std::abs(v - k * std::cos(k * x)) < 1e-6);
  }
  const auto rel_phi = BernsteinSymbol::relativistic(1.0, 1.0);
  const double xs = -1.0 / std::sqrt(2.0);
  CHECK(pointwise_nonlocal(rel_phi,
                           [](const std::vector<double> &p) {
                             return p[0] * std::exp(-p[0] * p[0]);
                           },
                           {xs}) < 0.0);
  CHECK_THROWS_AS(pointwise_nonlocal(cauchy,
                                     [](const std::vector<double> &p) { return p[0] * p[0]; },
                                     {0.0}),
                  PreconditionError);
}

TEST_CASE("multiplier agrees with the pointwise quadrature") {
  // Wide box: the torus image error of the massless kernel is O(L^{-2}).
  const auto cauchy = BernsteinSymbol::relativistic(0.0, 1.0);
  const Grid g(1, 4096, 320.0);
  const Field Au = apply_multiplier(cauchy, gaussian(g));
  const auto centre = static_cast<std::size_t>(g.n / 2);
  const double pw = pointwise_nonlocal(
      cauchy, [](const std::vector<double> &p) { return std::exp(-p[0] * p[0]); }, {0.0});
  CHECK(std::abs(Au[centre] - pw) < 1e-4);
  CHECK(std::abs(pw - 2.0 / std::sqrt(pi)) < 1e-6);

  auto bump = [](const std::vector<double> &p) {
    const double t = 1.0 - p[0] * p[0];
    return t > 0.0 ? t * t * t : 0.0;
  };
  const Grid gb(1, 4096, 80.0);
  const Field B = Field::from_function(gb, bump);
  for (double m : {0.0, 1.0}) {
    const auto phi = BernsteinSymbol::relativistic(m, 1.0);
    const Field AB = apply_multiplier(phi, B);
    for (int offset : {0, 20, 40}) {
      const auto i = static_cast<std::size_t>(gb.n / 2 + offset);
      const double x = gb.coordinate(static_cast<int>(i));
      CAPTURE(m);
      CAPTURE(x);
      CHECK(std::abs(AB[i] - pointwise_nonlocal(phi, bump, {x})) < 1e-3);
    }
  }
}
