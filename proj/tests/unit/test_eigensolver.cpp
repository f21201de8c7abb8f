#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/eigensolver.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/potentials.hpp"
#include "nonlocal/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace nonlocal;

namespace {
const double pi = std::acos(-1.0);
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SolverConfig tight(double tau = 0.01) {
  SolverConfig c;
  c.tau = tau;
  c.tol = 1e-13;
  c.max_iters = 1000000;
  return c;
}

// Smallest eigenvalue of the torus multiplier compressed to the grid points
// of B_r, by dense diagonalisation.
double dense_dirichlet(const BernsteinSymbol &phi, const Grid &g, double r) {
  std::vector<double> xs;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(g.coordinate(i)) <= r * (1.0 + 1e-12))
      xs.push_back(g.coordinate(i));
  const int m = static_cast<int>(xs.size());
  std::vector<double> column(static_cast<std::size_t>(g.n), 0.0);
  for (int j = 0; j < g.n; ++j) {
    double acc = 0.0;
    for (int k = -g.n / 2; k < g.n / 2; ++k) {
      const double xi = 2.0 * pi * k / g.L;
      acc += phi(xi * xi) * std::cos(xi * j * g.h());
    }
    column[static_cast<std::size_t>(j)] = acc / g.n;
  }
  Eigen::MatrixXd A(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int lag = static_cast<int>(std::lround((xs[a] - xs[b]) / g.h()));
      A(a, b) = column[static_cast<std::size_t>((lag % g.n + g.n) % g.n)];
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return es.eigenvalues()(0);
}
} // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.tau = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = SolverConfig{};
  c.tol = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  CHECK(splitting_from_string("lie") == Splitting::Lie);
  CHECK(to_string(Splitting::Strang) == "strang");
  CHECK_THROWS_AS(splitting_from_string("yoshida"), DomainError);
}

TEST_CASE("free operator relaxes to the flat mode") {
  const Grid g(1, 128, 10.0);
  const auto phi = BernsteinSymbol::relativistic(1.0, 1.0);
  const auto r = ground_state(phi, Field(g), tight(0.05));
  CHECK(r.converged);
  CHECK(r.lambda >= 0.0);
  CHECK(r.lambda < 1e-10);
  const double flat = 1.0 / std::sqrt(g.L);
  CHECK(sup_norm(r.phi - Field(g, flat)) < 1e-5);
}

TEST_CASE("sharp well ground state") {
  const Grid g(1, 1024, 40.0);
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const auto V = sharp_well({1.0, 2.0, 0.0}, g);
  const auto r = ground_state(phi, V, tight());
  CHECK(r.converged);
  CHECK(r.lambda < 0.0);
  CHECK(std::abs(l2_norm(r.phi) - 1.0) < 1e-12);
  CHECK(*std::min_element(r.phi.values.begin(), r.phi.values.end()) > 0.0);
  CHECK(std::abs(r.lambda - dirichlet_form(phi, r.phi, r.phi, &V.field).total) < 1e-10);
  for (std::size_t i = 6; i < r.history.size(); ++i)
    CHECK(r.history[i] <= r.history[i - 1] + 1e-12);
  CHECK(r.history.size() == static_cast<std::size_t>(r.iters));
  CHECK(r.residual == doctest::Approx(fourier_residual(phi, V.field, r)));
}

TEST_CASE("ground state is simple") {
  const Grid g(1, 512, 30.0);
  const auto phi = BernsteinSymbol::relativistic(1.0, 1.2);
  const auto V = sharp_well({1.0, 3.0, 0.0}, g);
  auto c1 = tight(), c2 = tight();
  c1.seed = 3;
  c2.seed = 987654321;
  c1.vector_tol = c2.vector_tol = 1e-11;
  const auto a = ground_state(phi, V, c1), b = ground_state(phi, V, c2);
  CHECK(std::abs(std::abs(inner(a.phi, b.phi)) - 1.0) < 1e-6);
  CHECK(std::abs(a.lambda - b.lambda) < 1e-10);
}

TEST_CASE("seeded start fields") {
  const Grid g(2, 32, 6.0);
  const Field a = seeded_positive_field(g, 5), b = seeded_positive_field(g, 5);
  CHECK(a.values == b.values);
  CHECK(seeded_positive_field(g, 6).values != a.values);
  CHECK(*std::min_element(a.values.begin(), a.values.end()) > 0.0);
}

TEST_CASE("non-convergence and blow-up are reported") {
  const Grid g(1, 256, 20.0);
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  auto cfg = tight();
  cfg.max_iters = 3;
  const auto r = ground_state(phi, sharp_well({1.0, 2.0, 0.0}, g), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iters == 3);
  Field bad(g);
  bad[7] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ground_state(phi, bad, tight()), NumericalError);
}

TEST_CASE("dirichlet eigenvalue on a ball") {
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const Grid g(1, 1024, 8.0);
  const auto r = dirichlet_ground_state(phi, 1.0, g, tight(0.001));
  CHECK(r.converged);
  CHECK(r.lambda > 0.0);
  double outside = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.radius(k) > 1.0 * (1.0 + 1e-12))
      outside = std::max(outside, std::abs(r.phi[k]));
  CHECK(outside == 0.0);
  // Profile non-increasing on the right half.
  for (int i = g.n / 2; i + 1 < g.n; ++i)
    CHECK(r.phi[static_cast<std::size_t>(i + 1)] <= r.phi[static_cast<std::size_t>(i)] + 1e-8);
  CHECK_THROWS_AS(dirichlet_ground_state(phi, 4.0, g, tight()), BoxTooSmall);
}

TEST_CASE("dirichlet eigenvalue matches dense diagonalisation") {
  const Grid g(1, 256, 8.0);
  for (double m : {0.0, 1.0}) {
    const auto phi = BernsteinSymbol::relativistic(m, 1.0);
    const double dense = dense_dirichlet(phi, g, 1.0);
    const auto r = dirichlet_ground_state(phi, 1.0, g, tight(0.0005));
    CAPTURE(m);
    CHECK(rel(r.lambda, dense) < 1e-4);
  }
}

TEST_CASE("dirichlet eigenvalue scales under dilation") {
  // (-Laplacian)^{1/2} is 1-homogeneous: doubling the ball, box and step
  // halves the eigenvalue.
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const auto a = dirichlet_ground_state(phi, 1.0, Grid(1, 512, 8.0), tight(0.001));
  const auto b = dirichlet_ground_state(phi, 2.0, Grid(1, 512, 16.0), tight(0.002));
  CHECK(rel(b.lambda, 0.5 * a.lambda) < 1e-3);
}

TEST_CASE("dirichlet eigenvalue against the extrapolated reference") {
  // Reference: this solver at L = 8, tau = 5e-4 over n = 512, 1024, 2048,
  // extrapolated with the observed first-order rate.
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  std::vector<double> lam;
  for (int n : {512, 1024, 2048})
    lam.push_back(dirichlet_ground_state(phi, 1.0, Grid(1, n, 8.0), tight(0.0005)).lambda);
  const double p = std::log2((lam[1] - lam[0]) / (lam[2] - lam[1]));
  const double q = std::pow(2.0, p);
  const double extrapolated = (q * lam[2] - lam[1]) / (q - 1.0);
  CHECK(p == doctest::Approx(1.0).epsilon(0.05));
  CHECK(rel(extrapolated, 1.12829338241) < 1e-6);
  CHECK(lam[0] < lam[1]);
  CHECK(lam[1] < lam[2]);
  CHECK(lam[2] < extrapolated);
}

TEST_CASE("existence criterion and the Rayleigh bound") {
  const Grid g(1, 1024, 40.0);
  const auto phi = BernsteinSymbol::relativistic(0.0, 1.0);
  const auto cfg = tight();
  const auto base = existence_criterion(phi, 1.0, 1.0, g, tight(0.001));
  const double la = base.lambda_a;
  CHECK(existence_criterion(phi, 1.0, 2.0 * la, g, tight(0.001)).satisfied);
  CHECK_FALSE(existence_criterion(phi, 1.0, 0.5 * la, g, tight(0.001)).satisfied);

  const double v = 2.0 * la;
  const auto V = sharp_well({1.0, v, 0.0}, g);
  const auto r = ground_state(phi, V, cfg);
  CHECK(r.lambda < 0.0);
  const double probe = dirichlet_form(phi, base.dirichlet.phi, base.dirichlet.phi, &V.field).total;
  CHECK(probe == doctest::Approx(la - v).epsilon(1e-6));
  CHECK(r.lambda <= probe);
  CHECK(la - (r.lambda + v) > 1e-6);
}

TEST_CASE("fourier residual") {
  const Grid g(1, 128, 10.0);
  const auto phi = BernsteinSymbol::relativistic(1.0, 1.0);
  const double k = 2.0 * pi * 2.0 / g.L;
  EigenResult fake;
  fake.phi = Field::from_function(g, [&](const std::vector<double> &x) {
    return std::cos(k * x[0]);
  });
  fake.phi = (1.0 / l2_norm(fake.phi)) * fake.phi;
  fake.lambda = phi(k * k) + 0.75;
  CHECK(fourier_residual(phi, Field(g, 0.75), fake) < 1e-10);

  const Grid gw(1, 512, 30.0);
  const auto V = mollified_well({1.0, 2.0, 0.5}, gw);
  const auto coarse = ground_state(phi, V, tight(0.02));
  const auto fine = ground_state(phi, V, tight(0.01));
  CHECK(fine.residual < coarse.residual);

  SolverConfig lie = tight(0.01);
  lie.splitting = Splitting::Lie;
  const auto rl = ground_state(phi, V, lie);
  CHECK(std::abs(rl.lambda - fine.lambda) < 1e-2);
}

TEST_CASE("two-dimensional ground state") {
  const Grid g(2, 64, 12.0);
  const auto phi = BernsteinSymbol::relativistic(1.0, 1.0);
  const auto V = sharp_well({1.0, 3.0, 0.0}, g);
  const auto r = ground_state(phi, V, tight(0.02));
  CHECK(r.converged);
  CHECK(r.lambda < 0.0);
  CHECK(*std::min_element(r.phi.values.begin(), r.phi.values.end()) > 0.0);
}
