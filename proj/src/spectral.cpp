#include "nonlocal/spectral.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/special_functions.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;

double grid_sum_weight(const Grid &g) {
  return g.cell_volume() / static_cast<double>(g.size());
}

// Integer |k|^2 of every half-complex coefficient, in fft.cpp's layout.
std::vector<long> lattice_norms(const Grid &g) {
  const int n = g.n;
  auto idx = [n](int j) { return static_cast<long>(j < n / 2 ? j : j - n); };
  std::vector<long> out;
  out.reserve(g.size() / n * (n / 2 + 1));
  const int outer = g.d >= 2 ? n : 1;
  const int middle = g.d == 3 ? n : 1;
  for (int a = 0; a < outer; ++a)
    for (int b = 0; b < middle; ++b)
      for (int c = 0; c <= n / 2; ++c) {
        long s = idx(c) * idx(c);
        if (g.d >= 2)
          s += idx(a) * idx(a);
        if (g.d == 3)
          s += idx(b) * idx(b);
        out.push_back(s);
      }
  return out;
}

// 1 - (spherical average of cos(xi . h)) for |xi||h| = x.
double one_minus_sphere_average(int d, double x) {
  switch (d) {
  case 1: {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
  }
  case 2:
    if (x < 1e-2) {
      const double x2 = x * x;
      return x2 / 4.0 - x2 * x2 / 64.0;
    }
    return 1.0 - std::cyl_bessel_j(0.0, x);
  default:
    if (x < 1e-2) {
      const double x2 = x * x;
      return x2 / 6.0 - x2 * x2 / 120.0;
    }
    return 1.0 - std::sin(x) / x;
  }
}

struct RadialWeight {
  std::function<double(double)> w;         // weight on |h| = r
  double order;                             // w ~ r^{-d-order} at 0
  std::function<double(double)> tail_from;  // int_R^inf r^{d-1} w(r) dr
};

// sigma_d int_0^inf r^{d-1} S(r) w(r) dr, where
// S(r) = spherical mean over |h| = r of int_torus |u(x+h) - u(x)|^2 dx
// for the trigonometric interpolant of u.
double structure_integral(const Field &u, const RadialWeight &rw,
                          const QuadratureSpec &q) {
  const Grid &g = u.grid;
  const Spectrum s = forward(u);
  const auto norms = lattice_norms(g);
  const auto weights = hermitian_weights(g);
  std::map<long, double> groups;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (norms[k] == 0)
      continue;
    groups[norms[k]] += weights[k] * std::norm(s.coeffs[k]);
  }
  const double scale = grid_sum_weight(g);
  const double dk = 2.0 * pi / g.L;
  std::vector<double> freqs, mass;
  double total_mass = 0.0;
  for (const auto &[k2, m] : groups) {
    freqs.push_back(dk * std::sqrt(static_cast<double>(k2)));
    mass.push_back(2.0 * scale * m);
    total_mass += 2.0 * scale * m;
  }
  if (total_mass == 0.0)
    return 0.0;
  const int d = g.d;
  auto S = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i)
      acc += mass[i] * one_minus_sphere_average(d, freqs[i] * r);
    return acc;
  };
  auto integrand = [&](double r) {
    return r > 0.0 ? std::pow(r, d - 1) * S(r) * rw.w(r) : 0.0;
  };

  const double xi_max = freqs.back();
  const double rho = 0.5 * pi / xi_max;
  const double r_far = 32.0 * g.L;
  QuadratureSpec panel = q;
  panel.method = QuadMethod::AdaptiveSubdivision;
  panel.abs_tol = 1e-300; // integrand is non-negative: relative control suffices

  double sum = 0.0;
  if (rw.order < 2.0) {
    // r = rho s^gexp makes the r^{1-order} behaviour at 0 smooth in s.
    const double gexp = 2.0 / (2.0 - rw.order);
    auto graded = [&](double t) {
      if (t <= 0.0)
        return 0.0;
      return integrand(rho * std::pow(t, gexp)) * rho * gexp *
             std::pow(t, gexp - 1.0);
    };
    sum += quad::gauss_kronrod(graded, 0.0, 1.0, panel).value;
  } else {
    sum += quad::tanh_sinh(integrand, 0.0, rho, panel).value;
  }
  const double width = 4.0 * pi / xi_max;
  for (double a = rho; a < r_far; a += width)
    sum += quad::gauss_kronrod(integrand, a, std::min(a + width, r_far), panel)
               .value;
  // Beyond r_far the oscillatory part of S averages out against the smooth,
  // decaying weight; S is replaced by its mean.
  sum += total_mass * rw.tail_from(r_far);
  return unit_sphere_area(d) * sum;
}

void cost_guard(const Grid &g, const char *who) {
  const int limit = g.d == 1 ? 256 : (g.d == 2 ? 64 : 32);
  if (g.n > limit)
    throw CostGuard(std::string(who) + ": n = " + std::to_string(g.n) +
                    " exceeds the direct-quadrature limit " +
                    std::to_string(limit) + " in d = " + std::to_string(g.d) +
                    "; use seminorm_fourier instead");
}

// int_a^inf r^{d-1} j(r) dr
double kernel_tail(const BernsteinSymbol &phi, int d, double a) {
  if (phi.kind() == SymbolKind::Relativistic && phi.mass() == 0.0)
    return massless_constant(d, phi.alpha()) * std::pow(a, -phi.alpha()) /
           phi.alpha();
  const QuadratureSpec kq = kernel_spec();
  QuadratureSpec q;
  q.method = QuadMethod::AdaptiveSubdivision;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-12;
  q.max_evals = 1000000;
  auto f = [&](double r) { return std::pow(r, d - 1) * phi.jump_kernel(d, r, kq); };
  return quad::integrate_to_infinity(f, a, q).value;
}

// int_0^eps r^{d+1} j(r) dr
double kernel_inner_moment(const BernsteinSymbol &phi, int d, double eps) {
  const double order = phi.singular_order();
  if (phi.kind() == SymbolKind::Relativistic && phi.mass() == 0.0)
    return massless_constant(d, order) * std::pow(eps, 2.0 - order) /
           (2.0 - order);
  const QuadratureSpec kq = kernel_spec();
  QuadratureSpec q;
  q.method = QuadMethod::AdaptiveSubdivision;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-12;
  auto f = [&](double r) {
    return r > 0.0 ? std::pow(r, d + 1) * phi.jump_kernel(d, r, kq) : 0.0;
  };
  if (order < 2.0) {
    const double gexp = 2.0 / (2.0 - order);
    auto graded = [&](double t) {
      return t > 0.0 ? f(eps * std::pow(t, gexp)) * eps * gexp *
                           std::pow(t, gexp - 1.0)
                     : 0.0;
    };
    return quad::gauss_kronrod(graded, 0.0, 1.0, q).value;
  }
  return quad::tanh_sinh(f, 0.0, eps, q).value;
}

// Unit directions and weights for integrals over S^{d-1} of functions that
// are even under theta -> -theta; weights sum to |S^{d-1}|.
struct SphereRule {
  std::vector<std::vector<double>> dirs;
  std::vector<double> weights;
};

SphereRule sphere_rule(int d) {
  SphereRule rule;
  if (d == 1) {
    rule.dirs = {{1.0}};
    rule.weights = {2.0};
  } else if (d == 2) {
    const int m = 64;
    for (int i = 0; i < m; ++i) {
      const double t = pi * i / m;
      rule.dirs.push_back({std::cos(t), std::sin(t)});
      rule.weights.push_back(2.0 * pi / m);
    }
  } else {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto &x = GL::abscissa();
    const auto &w = GL::weights();
    const int m = 32;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int sign : {1, -1}) {
        if (x[i] == 0.0 && sign < 0)
          continue;
        const double c = sign * x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int k = 0; k < m; ++k) {
          const double ph = 2.0 * pi * k / m;
          rule.dirs.push_back({s * std::cos(ph), s * std::sin(ph), c});
          rule.weights.push_back(w[i] * 2.0 * pi / m);
        }
      }
    }
  }
  return rule;
}

} // namespace

Field apply_radial_multiplier(const std::function<double(double)> &g,
                              const Field &u) {
  u.check_finite("apply_multiplier input");
  Spectrum s = forward(u);
  const auto xi2 = frequency_squared(u.grid);
  for (std::size_t k = 0; k < s.coeffs.size(); ++k)
    s.coeffs[k] *= g(xi2[k]);
  Field out = inverse(s);
  out.check_finite("apply_multiplier output");
  return out;
}

Field apply_multiplier(const BernsteinSymbol &phi, const Field &u) {
  return apply_radial_multiplier([&](double z) { return phi(z); }, u);
}

double seminorm_fourier(const BernsteinSymbol &phi, const Field &u) {
  const Spectrum s = forward(u);
  const auto xi2 = frequency_squared(u.grid);
  const auto w = hermitian_weights(u.grid);
  double acc = 0.0;
  for (std::size_t k = 0; k < s.coeffs.size(); ++k)
    acc += w[k] * phi(xi2[k]) * std::norm(s.coeffs[k]);
  return std::sqrt(std::max(0.0, acc * grid_sum_weight(u.grid)));
}

double seminorm_direct(const BernsteinSymbol &phi, const Field &u,
                       const QuadratureSpec &q) {
  cost_guard(u.grid, "seminorm_direct");
  if (!phi.has_kernel())
    throw DomainError("seminorm_direct: symbol has no jump kernel");
  q.validate();
  const int d = u.grid.d;
  const QuadratureSpec kq = kernel_spec();
  RadialWeight rw{[&](double r) { return phi.jump_kernel(d, r, kq); },
                  phi.singular_order(),
                  [&](double a) { return kernel_tail(phi, d, a); }};
  return std::sqrt(0.5 * structure_integral(u, rw, q));
}

double gagliardo_seminorm(double s, const Field &u, const QuadratureSpec &q) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("gagliardo_seminorm: s must lie in (0,1)");
  cost_guard(u.grid, "gagliardo_seminorm");
  q.validate();
  const int d = u.grid.d;
  RadialWeight rw{[=](double r) { return std::pow(r, -d - 2.0 * s); }, 2.0 * s,
                  [=](double a) { return std::pow(a, -2.0 * s) / (2.0 * s); }};
  return std::sqrt(structure_integral(u, rw, q));
}

FormValue dirichlet_form(const BernsteinSymbol &phi, const Field &u,
                         const Field &v, const Field *V) {
  require_same_grid(u, v, "dirichlet_form");
  if (V)
    require_same_grid(u, *V, "dirichlet_form");
  const Spectrum su = forward(u);
  const Spectrum sv = forward(v);
  const auto xi2 = frequency_squared(u.grid);
  const auto w = hermitian_weights(u.grid);
  double acc = 0.0;
  for (std::size_t k = 0; k < su.coeffs.size(); ++k)
    acc += w[k] * phi(xi2[k]) *
           (su.coeffs[k] * std::conj(sv.coeffs[k])).real();
  FormValue f;
  f.kinetic = acc * grid_sum_weight(u.grid);
  if (V) {
    double p = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
      p += (*V)[k] * u[k] * v[k];
    f.potential = p * u.grid.cell_volume();
  }
  f.total = f.kinetic + f.potential;
  return f;
}

double max_symbol(const BernsteinSymbol &phi, const Grid &g) {
  const double kmax = pi * g.n / g.L;
  return phi(g.d * kmax * kmax);
}

double pointwise_nonlocal(const BernsteinSymbol &phi, const PointFunction &u,
                          const std::vector<double> &x, double eps_cut,
                          const QuadratureSpec &q) {
  const int d = static_cast<int>(x.size());
  if (d < 1 || d > 3)
    throw DomainError("pointwise_nonlocal: dimension must be 1, 2 or 3");
  if (!(eps_cut > 0.0 && eps_cut < 1.0))
    throw DomainError("pointwise_nonlocal: eps_cut must lie in (0,1)");
  if (!phi.has_kernel())
    throw DomainError("pointwise_nonlocal: symbol has no jump kernel");
  q.validate();

  const double u0 = u(x);
  auto shifted = [&](const std::vector<double> &dir, double r) {
    std::vector<double> y = x;
    for (int a = 0; a < d; ++a)
      y[a] += r * dir[a];
    return u(y);
  };

  // Range probe along the axes.
  double near_scale = std::abs(u0);
  for (int a = 0; a < d; ++a) {
    std::vector<double> e(d, 0.0);
    e[a] = 1.0;
    near_scale = std::max(near_scale, std::abs(shifted(e, 1.0)));
  }
  for (int k = 0; k <= 12; ++k) {
    const double r = std::pow(10.0, k);
    for (int a = 0; a < d; ++a) {
      std::vector<double> e(d, 0.0);
      e[a] = 1.0;
      for (double sgn : {1.0, -1.0}) {
        const double val = shifted(e, sgn * r);
        if (!std::isfinite(val) || std::abs(val) > 1e6 * (1.0 + near_scale))
          throw PreconditionError(
              "pointwise_nonlocal: u appears unbounded (probe at distance " +
              std::to_string(r) + ")");
      }
    }
  }

  const SphereRule rule = sphere_rule(d);
  const QuadratureSpec kq = kernel_spec();
  auto j = [&](double r) { return phi.jump_kernel(d, r, kq); };

  // |h| < eps_cut: D(h) ~ h^T D^2u h, whose spherical mean is r^2 Lap u / d.
  double lap = 0.0;
  for (int a = 0; a < d; ++a) {
    std::vector<double> e(d, 0.0);
    e[a] = 1.0;
    lap += (shifted(e, eps_cut) - 2.0 * u0 + shifted(e, -eps_cut)) /
           (eps_cut * eps_cut);
  }
  const double area = unit_sphere_area(d);
  const double inner =
      -0.5 * area * (lap / d) * kernel_inner_moment(phi, d, eps_cut);

  // eps_cut <= |h| <= 1, in v = log r.
  auto second_difference_mean = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.dirs.size(); ++i)
      acc += rule.weights[i] *
             (shifted(rule.dirs[i], r) - 2.0 * u0 + shifted(rule.dirs[i], -r));
    return acc;
  };
  auto middle_integrand = [&](double v) {
    const double r = std::exp(v);
    return std::pow(r, d) * j(r) * second_difference_mean(r);
  };
  QuadratureSpec mid = q;
  mid.method = QuadMethod::AdaptiveSubdivision;
  double middle = 0.0;
  try {
    middle = -0.5 * quad::gauss_kronrod(middle_integrand, std::log(eps_cut),
                                        0.0, mid)
                        .value;
  } catch (const QuadratureError &e) {
    throw QuadratureError("pointwise_nonlocal: inner region failed",
                          inner - 0.5 * e.partial_value, e.error_estimate);
  }

  // |h| > 1. A far-field constant c (when u visibly tends to one) is removed
  // so that the shell sums decay; the constant parts go through int j.
  double far_min = std::numeric_limits<double>::infinity();
  double far_max = -far_min;
  for (std::size_t i = 0; i < rule.dirs.size(); i += std::max<std::size_t>(1, rule.dirs.size() / 16)) {
    for (double r : {1e6, -1e6, 3.7e6, -3.7e6}) {
      const double val = shifted(rule.dirs[i], r);
      far_min = std::min(far_min, val);
      far_max = std::max(far_max, val);
    }
  }
  const double c = far_max - far_min <= 1e-12 * (1.0 + std::abs(far_max))
                       ? 0.5 * (far_max + far_min)
                       : 0.0;
  auto outer_mean = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.dirs.size(); ++i)
      acc += rule.weights[i] *
             (shifted(rule.dirs[i], r) + shifted(rule.dirs[i], -r) - 2.0 * c);
    return acc;
  };
  auto outer_integrand = [&](double r) {
    return std::pow(r, d - 1) * j(r) * outer_mean(r);
  };
  double outer = -(c - u0) * area * kernel_tail(phi, d, 1.0);
  QuadratureSpec panel = q;
  panel.method = QuadMethod::AdaptiveSubdivision;
  int quiet = 0;
  double R = 1.0;
  for (; R < 1e9 && quiet < 2; R *= 2.0) {
    const double width = std::max(1.0, R / 16.0);
    double shell = 0.0;
    try {
      for (double a = R; a < 2.0 * R; a += width)
        shell += quad::gauss_kronrod(outer_integrand, a,
                                     std::min(a + width, 2.0 * R), panel)
                     .value;
    } catch (const QuadratureError &e) {
      throw QuadratureError("pointwise_nonlocal: outer shell failed",
                            inner + middle + outer - 0.5 * shell,
                            e.error_estimate);
    }
    outer -= 0.5 * shell;
    const double target = 0.1 * q.target(inner + middle + outer);
    quiet = std::abs(0.5 * shell) < target ? quiet + 1 : 0;
  }
  if (quiet < 2)
    throw QuadratureError("pointwise_nonlocal: outer shells did not settle",
                          inner + middle + outer,
                          std::numeric_limits<double>::infinity());
  return inner + middle + outer;
}

} // namespace nonlocal
