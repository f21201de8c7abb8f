#include "nonlocal/experiments.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/io.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/special_functions.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace nonlocal {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Runs job(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so the outcome does not depend on scheduling.
void run_jobs(std::size_t count, int threads,
              const std::function<void(std::size_t)> &job) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i)
      job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers)
          job(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

double aligned_gap(const Field &a, const Field &b) {
  const double sign = inner(a, b) < 0.0 ? -1.0 : 1.0;
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = sign * a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s * a.grid.cell_volume());
}

bool strictly_decreasing(const std::vector<double> &v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1]))
      return false;
  return true;
}

void fill_gaps(StabilityReport &r) {
  const EigenResult &t = *r.target;
  r.lambda_target = t.lambda;
  r.lambdas.clear();
  r.lambda_gaps.clear();
  r.l2_gaps.clear();
  r.inner_converged.clear();
  for (const auto &run : r.runs) {
    r.lambdas.push_back(run.lambda);
    r.lambda_gaps.push_back(std::abs(run.lambda - t.lambda));
    r.l2_gaps.push_back(aligned_gap(run.phi, t.phi));
    r.inner_converged.push_back(run.converged);
  }
  r.monotone_gap_decay = strictly_decreasing(r.lambda_gaps);
  r.monotone_l2_decay = strictly_decreasing(r.l2_gaps);
}

bool all_converged(const StabilityReport &r) {
  if (!r.target || !r.target->converged)
    return false;
  return std::all_of(r.inner_converged.begin(), r.inner_converged.end(),
                     [](bool b) { return b; });
}

} // namespace

StabilityReport stability_sweep(const BernsteinSymbol &phi, const WellSpec &well,
                                const std::vector<double> &eps_schedule,
                                const Grid &g, const SolverConfig &cfg,
                                const StabilityOptions &opt) {
  if (eps_schedule.empty())
    throw DomainError("stability_sweep: empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] >= 0.0))
      throw DomainError("stability_sweep: eps must be >= 0");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw DomainError("stability_sweep: eps schedule must be strictly decreasing");
  }
  WellSpec sharp = well;
  sharp.eps = 0.0;
  // Validate every potential before starting any solve.
  for (double e : eps_schedule) {
    WellSpec w = well;
    w.eps = e;
    (void)nonlocal::well(w, g);
  }

  StabilityReport r;
  r.parameter = "eps";
  r.parameters = eps_schedule;
  r.runs.resize(eps_schedule.size());
  std::optional<Grid> fine;
  if (opt.measure_floor)
    fine = Grid(g.d, 2 * g.n, g.L);
  std::optional<EigenResult> target, fine_target;

  const std::size_t jobs = eps_schedule.size() + 1 + (fine ? 1 : 0);
  run_jobs(jobs, opt.threads, [&](std::size_t i) {
    if (i == 0) {
      target = ground_state(phi, sharp_well(sharp, g), cfg);
    } else if (i <= eps_schedule.size()) {
      const double e = eps_schedule[i - 1];
      if (e == 0.0)
        return; // filled from the target below
      WellSpec w = well;
      w.eps = e;
      r.runs[i - 1] = ground_state(phi, mollified_well(w, g), cfg);
    } else {
      fine_target = ground_state(phi, sharp_well(sharp, *fine), cfg);
    }
  });
  for (std::size_t i = 0; i < eps_schedule.size(); ++i)
    if (eps_schedule[i] == 0.0)
      r.runs[i] = *target;
  r.target = target;
  if (fine_target)
    r.discretization_floor = std::abs(fine_target->lambda - target->lambda);
  fill_gaps(r);
  if (opt.lambda_a)
    for (double l : r.lambdas)
      r.lemma_margins.push_back(*opt.lambda_a - (l + well.v));
  r.converged = all_converged(r) &&
                r.lambda_gaps.back() < 10.0 * cfg.tol + 10.0 * r.discretization_floor;
  return r;
}

StabilityReport shift_sweep(const BernsteinSymbol &phi, const WellSpec &well,
                            const std::vector<int> &k_list, const Grid &g,
                            const SolverConfig &cfg, int threads) {
  if (k_list.empty())
    throw DomainError("shift_sweep: empty k list");
  WellSpec sharp = well;
  sharp.eps = 0.0;
  const PotentialField V = sharp_well(sharp, g);
  StabilityReport r;
  r.parameter = "k";
  r.runs.resize(k_list.size());
  std::optional<EigenResult> target;
  run_jobs(k_list.size() + 1, threads, [&](std::size_t i) {
    if (i == 0) {
      target = ground_state(phi, V, cfg);
      return;
    }
    const int k = k_list[i - 1];
    if (k < 1)
      throw DomainError("shift_sweep: k must be >= 1");
    r.runs[i - 1] = ground_state(phi, shift_potential(V, -well.v / k), cfg);
  });
  for (int k : k_list)
    r.parameters.push_back(k);
  r.target = target;
  fill_gaps(r);
  r.converged = all_converged(r);
  return r;
}

StabilityReport anharmonic_to_dirichlet(const BernsteinSymbol &phi,
                                        const std::vector<int> &k_list,
                                        const Grid &g, const SolverConfig &cfg,
                                        const SolverConfig &dirichlet_cfg,
                                        int threads) {
  if (k_list.empty())
    throw DomainError("anharmonic_to_dirichlet: empty k list");
  for (std::size_t i = 0; i < k_list.size(); ++i)
    if (k_list[i] < 1 || (i > 0 && k_list[i] <= k_list[i - 1]))
      throw DomainError("anharmonic_to_dirichlet: k list must be increasing and >= 1");
  if (!(1.0 < 0.5 * g.L))
    throw BoxTooSmall("anharmonic_to_dirichlet: the unit ball must fit in the box");

  StabilityReport r;
  r.parameter = "k";
  r.runs.resize(k_list.size());
  std::vector<char> clamped(k_list.size(), 0);
  std::optional<EigenResult> target;
  run_jobs(k_list.size() + 1, threads, [&](std::size_t i) {
    if (i == 0) {
      target = dirichlet_ground_state(phi, 1.0, g, dirichlet_cfg);
      return;
    }
    const PotentialField V = anharmonic(k_list[i - 1], g);
    clamped[i - 1] = V.meta.clamped;
    r.runs[i - 1] = ground_state(phi, V, cfg);
  });
  for (int k : k_list)
    r.parameters.push_back(k);
  r.target = target;
  fill_gaps(r);
  const Field outside = ball_mask(g, 1.0);
  for (const auto &run : r.runs) {
    double s = 0.0;
    for (std::size_t k = 0; k < run.phi.size(); ++k)
      if (outside[k] == 0.0)
        s += run.phi[k] * run.phi[k];
    r.outside_mass.push_back(s * g.cell_volume());
  }
  r.clamped = std::any_of(clamped.begin(), clamped.end(), [](char c) { return c; });
  r.converged = all_converged(r);
  return r;
}

ImageConvergence operator_image_convergence(const BernsteinSymbol &phi,
                                            const WellSpec &well,
                                            const StabilityReport &sweep,
                                            double slack) {
  if (!sweep.target || sweep.parameter != "eps")
    throw PreconditionError("operator_image_convergence: needs an eps sweep with its runs");
  if (!all_converged(sweep))
    throw PreconditionError("operator_image_convergence: some runs did not converge");
  const EigenResult &t = *sweep.target;
  const Grid &g = t.phi.grid;
  WellSpec sharp = well;
  sharp.eps = 0.0;
  const Field V = sharp_well(sharp, g).field;
  const Field image = apply_multiplier(phi, t.phi);
  const Field Vphi = hadamard(V, t.phi);

  ImageConvergence out;
  out.parameters = sweep.parameters;
  out.triangle_holds = true;
  for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
    const EigenResult &run = sweep.runs[i];
    const double sign = inner(run.phi, t.phi) < 0.0 ? -1.0 : 1.0;
    const Field pe = sign * run.phi;
    WellSpec w = well;
    w.eps = sweep.parameters[i];
    const Field Ve = nonlocal::well(w, g).field;
    const double gap = l2_norm(apply_multiplier(phi, pe) - image);
    const double bound = std::abs(run.lambda) * l2_norm(pe - t.phi) +
                         std::abs(run.lambda - t.lambda) * l2_norm(t.phi) +
                         l2_norm(hadamard(Ve, pe) - Vphi) + run.residual +
                         t.residual;
    out.gaps.push_back(gap);
    out.bounds.push_back(bound);
    if (!(gap <= bound + slack))
      out.triangle_holds = false;
  }
  out.decreasing = strictly_decreasing(out.gaps);
  return out;
}

SymmetryDefect symmetry_check(const EigenResult &result, int rotations) {
  const Field &u = result.phi;
  const Grid &g = u.grid;
  const int n = g.n;
  auto mirror = [n](int i) { return (n - i) % n; };
  std::vector<std::function<std::array<int, 3>(std::array<int, 3>)>> maps;
  for (int a = 0; a < g.d; ++a)
    maps.push_back([=](std::array<int, 3> idx) {
      idx[a] = mirror(idx[a]);
      return idx;
    });
  if (g.d >= 2) {
    // Quarter turn in the (x0, x1) plane and the swap of the first two axes.
    maps.push_back([=](std::array<int, 3> idx) {
      return std::array<int, 3>{mirror(idx[1]), idx[0], idx[2]};
    });
    maps.push_back([](std::array<int, 3> idx) {
      return std::array<int, 3>{idx[1], idx[0], idx[2]};
    });
  }
  if (g.d == 3) {
    maps.push_back([](std::array<int, 3> idx) {
      return std::array<int, 3>{idx[2], idx[0], idx[1]};
    });
  }
  SymmetryDefect out;
  for (const auto &map : maps) {
    Field mapped(g);
    for (std::size_t k = 0; k < u.size(); ++k)
      mapped[k] = u[g.flat(map(g.unflat(k)))];
    out.exact = std::max(out.exact, l2_norm(mapped - u));
  }
  if (g.d == 2 && rotations > 0) {
    for (int r = 0; r < rotations; ++r) {
      const double th = (r + 0.5) * 0.5 * std::numbers::pi / rotations;
      const double c = std::cos(th), s = std::sin(th);
      Field mapped(g);
      for (std::size_t k = 0; k < u.size(); ++k) {
        const auto x = g.point(k);
        mapped[k] = interpolate(u, {c * x[0] - s * x[1], s * x[0] + c * x[1]});
      }
      out.interpolated = std::max(out.interpolated, l2_norm(mapped - u));
    }
  }
  return out;
}

MonotonicityReport monotonicity_of_profile(const std::vector<double> &radii,
                                           const std::vector<double> &profile,
                                           double a) {
  if (radii.size() != profile.size() || radii.empty())
    throw DomainError("monotonicity: radii and profile must be non-empty and equal length");
  MonotonicityReport m;
  m.radii = radii;
  m.profile = profile;
  m.chi0 = profile.front();
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]))
      throw DomainError("monotonicity: radii must be increasing");
    const double inc = std::max(0.0, profile[i] - profile[i - 1]);
    m.max_violation = std::max(m.max_violation, inc);
    if (radii[i] <= a)
      m.max_violation_inside = std::max(m.max_violation_inside, inc);
    if (radii[i - 1] >= a)
      m.max_violation_outside = std::max(m.max_violation_outside, inc);
  }
  return m;
}

MonotonicityReport monotonicity_check(const EigenResult &result, double a) {
  // Ground states are determined up to sign; use the positive representative.
  Field u = result.phi;
  double total = 0.0;
  for (double x : u.values)
    total += x;
  if (total < 0.0)
    u = -1.0 * u;
  std::vector<double> radii, profile;
  for (const auto &[r, v] : radial_profile(u)) {
    radii.push_back(r);
    profile.push_back(v);
  }
  MonotonicityReport m = monotonicity_of_profile(radii, profile, a);
  EigenResult aligned = result;
  aligned.phi = u;
  m.symmetry_defect = symmetry_check(aligned, 0).exact;
  return m;
}

Field moving_plane_difference(const Field &u, double mu) {
  const Grid &g = u.grid;
  Field w(g);
  for (std::size_t k = 0; k < u.size(); ++k) {
    auto idx = g.unflat(k);
    idx[0] = g.nearest_index(2.0 * mu - g.coordinate(idx[0]));
    w[k] = u[g.flat(idx)] - u[k];
  }
  return w;
}

// ---------------------------------------------------------------------------
// Antisymmetric-minimum bounds

namespace {

QuadratureSpec constant_spec() {
  QuadratureSpec q;
  q.method = QuadMethod::AdaptiveSubdivision;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-11;
  q.max_evals = 1000000;
  return q;
}

// int_0^inf dz1 int_{R^{d-1}} f(sqrt(|z'|^2 + (1 + z1)^2)) dz'
double half_space_integral(int d, const std::function<double(double)> &f) {
  const QuadratureSpec q = constant_spec();
  if (d == 1)
    return quad::integrate_to_infinity([&](double z) { return f(1.0 + z); }, 0.0, q)
        .value;
  const double area = unit_sphere_area(d - 1);
  auto slab = [&](double z1) {
    const double b = 1.0 + z1;
    auto radial = [&](double rho) {
      return std::pow(rho, d - 2) * f(std::sqrt(rho * rho + b * b));
    };
    return area * quad::integrate_to_infinity(radial, 0.0, q).value;
  };
  return quad::integrate_to_infinity(slab, 0.0, q).value;
}

} // namespace

double antisym_C1(int d, double alpha) { return massive_prefactor(d, alpha); }

double antisym_C2(int d, double alpha) {
  return half_space_integral(d, [=](double s) { return std::pow(s, -(d + alpha)); });
}

double antisym_C3(int d, double m, double alpha) {
  return massive_prefactor(d, alpha) *
         std::pow(m, (d + alpha + 2.0) / (2.0 * alpha));
}

double antisym_C4(int d, double m, double alpha, double delta1) {
  if (!(m > 0.0) || !(delta1 > 0.0))
    throw DomainError("C4 needs m > 0 and delta_1 > 0");
  const double nu = 0.5 * (d + alpha);
  const double scale = std::pow(m, 1.0 / alpha) * delta1;
  const QuadratureSpec kq = kernel_spec();
  return half_space_integral(d, [=](double s) {
    return bessel_k(nu, scale * s, kq) / std::pow(s, nu);
  });
}

AntisymmetricCheck antisymmetric_minimum_check(double m, double alpha, int d,
                                               const PointFunction &w, double mu,
                                               const QuadratureSpec &q) {
  if (d != 1)
    throw DomainError("antisymmetric_minimum_check: implemented for d = 1");
  if (!(m >= 0.0))
    throw DomainError("antisymmetric_minimum_check: m must be >= 0");
  if (!(mu <= 0.0))
    throw DomainError("antisymmetric_minimum_check: mu must be <= 0");
  const BernsteinSymbol phi = BernsteinSymbol::relativistic(m, alpha);
  auto w1 = [&](double x) { return w(std::vector<double>{x}); };

  AntisymmetricCheck c;
  c.mu = mu;
  for (int i = 0; i < 100; ++i) {
    const double x = mu - 5.0 + 10.0 * i / 99.0;
    c.reflection_defect =
        std::max(c.reflection_defect, std::abs(w1(2.0 * mu - x) + w1(x)));
  }
  if (c.reflection_defect > 1e-10)
    throw PreconditionError("antisymmetric_minimum_check: w is not antisymmetric "
                            "about the plane (defect " +
                            std::to_string(c.reflection_defect) + ")");

  // Coarse scan of U_mu, then Brent refinement around the best sample.
  const double step = 0.01;
  double best_x = mu - step, best = w1(best_x);
  for (double x = mu - step; x > mu - 50.0; x -= step) {
    const double v = w1(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  if (!(best < 0.0))
    throw PreconditionError("antisymmetric_minimum_check: w has no negative "
                            "minimum on U_mu");
  const double lo = best_x - step;
  const double hi = std::min(best_x + step, mu - 1e-12);
  const auto found = boost::math::tools::brent_find_minima(w1, lo, hi, 52);
  const double xs = found.first;
  c.x_star = {xs};
  c.w_star = found.second;
  c.delta = mu - xs;

  c.lhs = pointwise_nonlocal(phi, w, c.x_star, 1e-3, q);
  c.lhs_negative = c.lhs < 0.0;
  c.C1 = antisym_C1(d, alpha);
  c.C2 = antisym_C2(d, alpha);
  if (m == 0.0) {
    c.rhs1 = c.rhs2 = nan;
    c.C3 = c.C4 = nan;
    return c;
  }
  c.C3 = antisym_C3(d, m, alpha);
  c.C4 = antisym_C4(d, m, alpha, c.delta);

  // |x - y^mu| = delta + t with t = mu - y_1 > 0.
  const double nu2 = 0.5 * (d + alpha + 2.0);
  const double scale = std::pow(m, 1.0 / alpha);
  const QuadratureSpec kq = kernel_spec();
  auto integrand = [&](double t) {
    if (t <= 0.0)
      return 0.0;
    const double dist = c.delta + t;
    return (w1(mu - t) - c.w_star) * t * bessel_k(nu2, scale * dist, kq) /
           std::pow(dist, nu2);
  };
  const double I = quad::integrate_to_infinity(integrand, 0.0, constant_spec()).value;
  c.boundary_integral = c.delta * I;

  const double C = std::min({2.0 * c.C1, c.C2, 2.0 * c.C3});
  const double Cp = std::min(2.0 * c.C3, c.C4);
  c.rhs1 = C * ((std::pow(c.delta, -alpha) - m) * c.w_star - c.boundary_integral);
  c.rhs2 = Cp * (std::pow(c.delta, 0.5 * (d - alpha)) * c.w_star -
                 c.boundary_integral);
  c.rhs1_holds = c.lhs <= c.rhs1;
  c.rhs2_holds = c.lhs <= c.rhs2;
  return c;
}

// ---------------------------------------------------------------------------
// Embedding tail bound

double embedding_lower_constant(const BernsteinSymbol &phi, int d, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("embedding_lower_constant: s must lie in (0,1)");
  const QuadratureSpec kq = kernel_spec();
  double c = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) {
    const double r = std::pow(10.0, -6.0 + 6.0 * i / 400.0);
    c = std::min(c, std::pow(r, d + 2.0 * s) * phi.jump_kernel(d, r, kq));
  }
  return c;
}

EmbeddingCheck embedding_tail_check(const BernsteinSymbol &phi,
                                    const std::vector<Field> &samples, double s,
                                    const QuadratureSpec &q) {
  if (samples.empty())
    throw DomainError("embedding_tail_check: no samples");
  EmbeddingCheck e;
  e.s = s;
  const int d = samples.front().grid.d;
  e.c_low = embedding_lower_constant(phi, d, s);
  if (!(e.c_low > 0.0))
    throw AssumptionViolation("embedding_tail_check: r^{d+2s} j(r) is not "
                              "bounded below on (0,1]");
  e.all_pass = true;
  for (const Field &u : samples) {
    const double g = gagliardo_seminorm(s, u, q);
    const double f = seminorm_fourier(phi, u);
    const double n = l2_norm(u);
    const double lhs = g * g;
    const double rhs = 2.0 / e.c_low * f * f +
                       4.0 * unit_sphere_area(d) / (2.0 * s) * n * n;
    e.lhs.push_back(lhs);
    e.rhs.push_back(rhs);
    if (!(lhs <= rhs))
      e.all_pass = false;
  }
  return e;
}

Field random_band_limited_field(const Grid &g, std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  Spectrum s;
  s.grid = g;
  const auto xi2 = frequency_squared(g);
  const double dk = 2.0 * std::numbers::pi / g.L;
  const double cut = dk * dk * kmax * kmax * (1.0 + 1e-12);
  s.coeffs.resize(xi2.size());
  for (std::size_t k = 0; k < xi2.size(); ++k) {
    const double re = uniform(), im = uniform();
    s.coeffs[k] = xi2[k] <= cut ? std::complex<double>(re, im) : 0.0;
  }
  Field u = inverse(s);
  const double nrm = l2_norm(u);
  return (1.0 / nrm) * u;
}

// ---------------------------------------------------------------------------
// Reports

using nlohmann::json;

namespace {
json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
} // namespace

json to_json(const StabilityReport &r) {
  json j = {{"parameter", r.parameter},
            {"parameters", r.parameters},
            {"lambdas", r.lambdas},
            {"lambda_target", r.lambda_target},
            {"lambda_gaps", r.lambda_gaps},
            {"l2_gaps", r.l2_gaps},
            {"inner_converged", r.inner_converged},
            {"discretization_floor", r.discretization_floor},
            {"converged", r.converged},
            {"monotone_gap_decay", r.monotone_gap_decay},
            {"monotone_l2_decay", r.monotone_l2_decay},
            {"clamped", r.clamped}};
  if (!r.op_gaps.empty())
    j["op_gaps"] = r.op_gaps;
  if (!r.lemma_margins.empty())
    j["lemma_margins"] = r.lemma_margins;
  if (!r.outside_mass.empty())
    j["outside_mass"] = r.outside_mass;
  if (r.target)
    j["target"] = to_json(*r.target);
  json runs = json::array();
  for (const auto &run : r.runs)
    runs.push_back(to_json(run));
  j["runs"] = runs;
  return j;
}

json to_json(const ImageConvergence &r) {
  return {{"parameters", r.parameters},
          {"gaps", r.gaps},
          {"bounds", r.bounds},
          {"decreasing", r.decreasing},
          {"triangle_holds", r.triangle_holds}};
}

json to_json(const MonotonicityReport &r) {
  return {{"radii", r.radii},
          {"profile", r.profile},
          {"max_violation", r.max_violation},
          {"max_violation_inside", r.max_violation_inside},
          {"max_violation_outside", r.max_violation_outside},
          {"chi0", r.chi0},
          {"symmetry_defect", r.symmetry_defect}};
}

json to_json(const AntisymmetricCheck &r) {
  return {{"mu", r.mu},
          {"x_star", r.x_star},
          {"w_star", r.w_star},
          {"delta", r.delta},
          {"lhs", r.lhs},
          {"rhs1", nullable(r.rhs1)},
          {"rhs2", nullable(r.rhs2)},
          {"constants",
           {{"C1", nullable(r.C1)},
            {"C2", nullable(r.C2)},
            {"C3", nullable(r.C3)},
            {"C4", nullable(r.C4)}}},
          {"boundary_integral", r.boundary_integral},
          {"reflection_defect", r.reflection_defect},
          {"lhs_negative", r.lhs_negative},
          {"rhs1_holds", r.rhs1_holds},
          {"rhs2_holds", r.rhs2_holds}};
}

json to_json(const EmbeddingCheck &r) {
  return {{"s", r.s},     {"c_low", r.c_low},       {"lhs", r.lhs},
          {"rhs", r.rhs}, {"all_pass", r.all_pass}};
}

void write_stability_csv(const StabilityReport &r,
                         const std::filesystem::path &path) {
  std::vector<std::string> header = {r.parameter, "lambda", "gap_lambda", "gap_l2"};
  const bool op = r.op_gaps.size() == r.parameters.size() && !r.op_gaps.empty();
  if (op)
    header.push_back("gap_op");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    std::vector<double> row = {r.parameters[i], r.lambdas[i], r.lambda_gaps[i],
                               r.l2_gaps[i]};
    if (op)
      row.push_back(r.op_gaps[i]);
    rows.push_back(row);
  }
  write_csv(path, header, rows);
}

} // namespace nonlocal
