#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/experiments.hpp"
#include "nonlocal/io.hpp"
#include "nonlocal/potentials.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace nonlocal;

namespace {
const double pi = std::acos(-1.0);

SolverConfig solver(double tau = 0.01) {
  SolverConfig c;
  c.tau = tau;
  c.tol = 1e-13;
  c.max_iters = 1000000;
  return c;
}

const BernsteinSymbol &cauchy() {
  static const BernsteinSymbol phi = BernsteinSymbol::relativistic(0.0, 1.0);
  return phi;
}
} // namespace

TEST_CASE("stability sweep on a coarse grid") {
  const Grid g(1, 512, 20.0);
  const WellSpec w{1.0, 4.0, 0.0};
  StabilityOptions opt;
  opt.measure_floor = false;
  const auto r = stability_sweep(cauchy(), w, {0.4, 0.2, 0.0}, g, solver(), opt);
  REQUIRE(r.runs.size() == 3);
  REQUIRE(r.target.has_value());
  CHECK(r.parameter == "eps");
  // eps = 0 reuses the sharp-well run.
  CHECK(r.lambda_gaps[2] == 0.0);
  CHECK(r.l2_gaps[2] == 0.0);
  CHECK(r.lambda_gaps[0] > r.lambda_gaps[1]);
  CHECK(r.l2_gaps[0] > r.l2_gaps[1]);
  // The mollified well equals -v on B_a and spreads out to a + eps, so it
  // binds more strongly than the sharp well.
  CHECK(r.lambdas[0] < r.lambdas[1]);
  CHECK(r.lambdas[1] < r.lambda_target);
  CHECK(r.converged);
  CHECK(r.lemma_margins.empty());

  SUBCASE("operator images") {
    const auto img = operator_image_convergence(cauchy(), w, r);
    REQUIRE(img.gaps.size() == 3);
    CHECK(img.gaps[2] < 1e-12);
    CHECK(img.gaps[0] > img.gaps[1]);
    CHECK(img.triangle_holds);
    for (std::size_t i = 0; i < img.gaps.size(); ++i)
      CHECK(img.gaps[i] <= img.bounds[i] + 1e-8);
  }

  SUBCASE("csv export") {
    const auto dir = std::filesystem::temp_directory_path() / "nonlocal_sweep_csv";
    std::filesystem::create_directories(dir);
    write_stability_csv(r, dir / "r.csv");
    std::ifstream in(dir / "r.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "eps,lambda,gap_lambda,gap_l2");
    const auto j = to_json(r);
    CHECK(j.at("parameter") == "eps");
    CHECK(j.at("lambdas").size() == 3);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("stability sweep rejects bad schedules") {
  const Grid g(1, 512, 20.0);
  const WellSpec w{1.0, 4.0, 0.0};
  CHECK_THROWS_AS(stability_sweep(cauchy(), w, {}, g, solver()), DomainError);
  CHECK_THROWS_AS(stability_sweep(cauchy(), w, {0.2, 0.4}, g, solver()), DomainError);
  CHECK_THROWS_AS(stability_sweep(cauchy(), w, {-0.1}, g, solver()), DomainError);
  // h = 20/512, so eps = 0.05 < 2h is unresolved.
  CHECK_THROWS_AS(stability_sweep(cauchy(), w, {0.05}, g, solver()), DomainError);
  CHECK_THROWS_AS(stability_sweep(cauchy(), WellSpec{9.5, 1.0, 0.0}, {1.0}, g, solver()),
                  BoxTooSmall);
}

TEST_CASE("operator images need an eps sweep") {
  StabilityReport r;
  r.parameter = "k";
  CHECK_THROWS_AS(operator_image_convergence(cauchy(), WellSpec{}, r), PreconditionError);
}

TEST_CASE("uniform shift moves the eigenvalue exactly") {
  const Grid g(1, 256, 16.0);
  const WellSpec w{1.0, 3.0, 0.0};
  const auto r = shift_sweep(cauchy(), w, {1, 2, 4, 8}, g, solver());
  REQUIRE(r.converged);
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    CHECK(r.lambdas[i] ==
          doctest::Approx(r.lambda_target - w.v / r.parameters[i]).epsilon(1e-9));
    CHECK(r.l2_gaps[i] < 1e-5);
  }
  CHECK_THROWS_AS(shift_sweep(cauchy(), w, {}, g, solver()), DomainError);
  CHECK_THROWS_AS(shift_sweep(cauchy(), w, {0}, g, solver()), DomainError);
}

TEST_CASE("anharmonic sweep bookkeeping") {
  const Grid g(1, 512, 8.0);
  const auto r = anharmonic_to_dirichlet(cauchy(), {2, 8}, g, solver(0.002),
                                         solver(0.002));
  REQUIRE(r.outside_mass.size() == 2);
  CHECK(r.outside_mass[1] < r.outside_mass[0]);
  CHECK(r.lambda_gaps[1] < r.lambda_gaps[0]);
  CHECK_FALSE(r.clamped);
  CHECK_THROWS_AS(anharmonic_to_dirichlet(cauchy(), {4, 2}, g, solver(), solver()),
                  DomainError);
  CHECK_THROWS_AS(anharmonic_to_dirichlet(cauchy(), {1}, Grid(1, 64, 2.0), solver(),
                                          solver()),
                  BoxTooSmall);
}

TEST_CASE("ground states are symmetric and radially decreasing") {
  SUBCASE("d = 1 parity") {
    const Grid g(1, 512, 16.0);
    auto cfg = solver();
    cfg.vector_tol = 1e-13;
    const auto res = ground_state(cauchy(), sharp_well({1.0, 3.0, 0.0}, g), cfg);
    REQUIRE(res.converged);
    CHECK(symmetry_check(res).exact < 1e-10);
    const auto mono = monotonicity_check(res, 1.0);
    CHECK(mono.max_violation < 1e-10 * mono.chi0);
    CHECK(mono.symmetry_defect < 1e-10);
  }
  SUBCASE("d = 2 quarter turn, mollified well") {
    const Grid g(2, 64, 12.0);
    auto cfg = solver(0.05);
    cfg.vector_tol = 1e-11;
    const auto res = ground_state(cauchy(), mollified_well({1.0, 4.0, 0.8}, g), cfg);
    REQUIRE(res.converged);
    const auto s = symmetry_check(res, 4);
    CHECK(s.exact < 1e-9);
    // Bilinear interpolation on h = 0.19 limits the generic rotations.
    CHECK(s.interpolated < 5e-2);
    CHECK(monotonicity_check(res, 1.8).max_violation_outside < 1e-9);
  }
  SUBCASE("off-centre potential breaks parity") {
    const Grid g(1, 256, 16.0);
    Field V(g);
    for (int i = 0; i < g.n; ++i)
      V[static_cast<std::size_t>(i)] = std::abs(g.coordinate(i) - 1.5) <= 1.0 ? -3.0 : 0.0;
    const auto res = ground_state(cauchy(), V, solver());
    CHECK(symmetry_check(res).exact > 1e-2);
  }
}

TEST_CASE("monotonicity of explicit profiles") {
  const std::vector<double> r = {0.0, 0.5, 1.0, 1.5, 2.0};
  const auto dec = monotonicity_of_profile(r, {1.0, 0.9, 0.5, 0.2, 0.1}, 1.0);
  CHECK(dec.max_violation == 0.0);
  CHECK(dec.chi0 == 1.0);
  // An increase of 0.3 outside a = 1.
  const auto bad = monotonicity_of_profile(r, {1.0, 0.9, 0.5, 0.2, 0.5}, 1.0);
  CHECK(bad.max_violation == doctest::Approx(0.3));
  CHECK(bad.max_violation_outside == doctest::Approx(0.3));
  CHECK(bad.max_violation_inside == 0.0);
  // Shell averages of an odd field vanish; the negative control is the
  // raw odd profile x exp(-x^2) along the positive axis, which rises first.
  std::vector<double> xs, odd;
  for (int i = 0; i <= 40; ++i) {
    xs.push_back(0.1 * i);
    odd.push_back(xs.back() * std::exp(-xs.back() * xs.back()));
  }
  CHECK(monotonicity_of_profile(xs, odd).max_violation > 0.05);
  CHECK_THROWS_AS(monotonicity_of_profile({}, {}), DomainError);
  CHECK_THROWS_AS(monotonicity_of_profile({0.0, 1.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(monotonicity_of_profile({1.0, 0.0}, {1.0, 0.5}), DomainError);
}

TEST_CASE("moving plane difference") {
  const Grid g(1, 256, 16.0);
  Field u(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coordinate(i);
    u[static_cast<std::size_t>(i)] = std::exp(-x * x);
  }
  // Reflecting an even field about the origin changes nothing.
  const Field w0 = moving_plane_difference(u, 0.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < w0.size(); ++k)
    if (std::abs(g.coordinate(static_cast<int>(k))) < 7.0)
      worst = std::max(worst, std::abs(w0[k]));
  CHECK(worst < 1e-14);
  // About mu < 0 the reflection pulls x < mu towards the peak: w > 0 there.
  const double mu = -1.0;
  const Field w = moving_plane_difference(u, mu);
  const int i = g.nearest_index(-2.0);
  CHECK(w[static_cast<std::size_t>(i)] ==
        doctest::Approx(std::exp(0.0) - std::exp(-4.0)).epsilon(1e-12));
}

TEST_CASE("antisymmetric minimum constants and bounds") {
  CHECK(antisym_C1(1, 1.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(antisym_C2(1, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(antisym_C3(1, 1.0, 1.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(antisym_C4(1, 1.0, 1.0, 1.0) > 0.0);
  CHECK_THROWS_AS(antisym_C4(1, 0.0, 1.0, 1.0), DomainError);

  const double mu = -0.5;
  auto w = [mu](const std::vector<double> &x) {
    const double y = x[0] - mu;
    return y * std::exp(-y * y);
  };
  const auto c = antisymmetric_minimum_check(1.0, 1.0, 1, w, mu);
  // Minimum of y exp(-y^2) at y = -1/sqrt(2).
  REQUIRE(c.x_star.size() == 1);
  CHECK(c.x_star[0] == doctest::Approx(mu - 1.0 / std::sqrt(2.0)).epsilon(1e-7));
  CHECK(c.delta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));
  CHECK(c.reflection_defect < 1e-14);
  CHECK(c.lhs_negative);
  CHECK(c.rhs1_holds);
  CHECK(c.rhs2_holds);
  CHECK(c.lhs <= c.rhs1);
  CHECK(c.lhs <= c.rhs2);

  auto even = [](const std::vector<double> &x) { return std::exp(-x[0] * x[0]); };
  CHECK_THROWS_AS(antisymmetric_minimum_check(1.0, 1.0, 1, even, mu), PreconditionError);
  // Antisymmetric about mu but positive on x_1 < mu.
  auto flipped = [&](const std::vector<double> &x) { return -w(x); };
  CHECK_THROWS_AS(antisymmetric_minimum_check(1.0, 1.0, 1, flipped, mu),
                  PreconditionError);
  CHECK_THROWS_AS(antisymmetric_minimum_check(1.0, 1.0, 1, w, 0.5), DomainError);
  CHECK_THROWS_AS(antisymmetric_minimum_check(1.0, 1.0, 2, w, mu), DomainError);
}

TEST_CASE("embedding tail inequality") {
  const BernsteinSymbol phi = BernsteinSymbol::relativistic(1.0, 1.0);
  const Grid g(1, 256, 16.0);
  std::vector<Field> samples;
  Field gauss(g), flat(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coordinate(i);
    gauss[static_cast<std::size_t>(i)] = std::exp(-x * x);
    flat[static_cast<std::size_t>(i)] = 1.0;
  }
  samples.push_back(gauss);
  samples.push_back(flat);
  for (std::uint64_t s = 1; s <= 20; ++s)
    samples.push_back(random_band_limited_field(g, s, 8));
  const auto e = embedding_tail_check(phi, samples, 0.5);
  REQUIRE(e.lhs.size() == samples.size());
  CHECK(e.all_pass);
  // Constants have zero seminorm on both sides.
  CHECK(e.lhs[1] < 1e-10);
  CHECK(e.c_low > 0.0);
  CHECK(e.c_low <= embedding_lower_constant(phi, 1, 0.5) + 1e-15);
  CHECK_THROWS_AS(embedding_tail_check(phi, {}, 0.5), DomainError);
  CHECK_THROWS_AS(embedding_lower_constant(phi, 1, 1.0), DomainError);
}

TEST_CASE("band-limited fields") {
  const Grid g(2, 32, 10.0);
  const Field a = random_band_limited_field(g, 7, 3);
  const Field b = random_band_limited_field(g, 7, 3);
  const Field c = random_band_limited_field(g, 8, 3);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
}
