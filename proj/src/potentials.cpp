#include "nonlocal/potentials.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/special_functions.hpp"

#include <cmath>
using std::isnan; // pchip.hpp calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;

// Points with |x| within this relative slack of a are counted inside; it
// absorbs the rounding in -L/2 + i h.
constexpr double kBoundarySlack = 1e-12;

void require_fits(double extent, const Grid &g, const char *who) {
  if (!(extent < 0.5 * g.L))
    throw BoxTooSmall(std::string(who) + ": radius " + std::to_string(extent) +
                      " does not fit in the box half-width " +
                      std::to_string(0.5 * g.L));
}

} // namespace

void WellSpec::validate() const {
  if (!(a > 0.0))
    throw DomainError("well: radius a must be > 0");
  if (!(v > 0.0))
    throw DomainError("well: depth v must be > 0");
  if (!(eps >= 0.0))
    throw DomainError("well: eps must be >= 0");
}

PotentialField sharp_well(const WellSpec &spec, const Grid &g) {
  spec.validate();
  require_fits(spec.a, g, "sharp_well");
  PotentialField V{Field(g), {"sharp_well", {{"a", spec.a}, {"v", spec.v}, {"eps", 0.0}}, false}};
  const double edge = spec.a * (1.0 + kBoundarySlack);
  for (std::size_t k = 0; k < V.field.size(); ++k)
    V.field[k] = g.radius(k) <= edge ? -spec.v : 0.0;
  return V;
}

double mollifier_constant(int d) {
  if (d < 1 || d > 3)
    throw DomainError("mollifier_constant: dimension must be 1, 2 or 3");
  static std::mutex mu;
  static std::array<double, 4> cache{0, 0, 0, 0};
  std::lock_guard<std::mutex> lock(mu);
  if (cache[d] == 0.0) {
    QuadratureSpec q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-12;
    auto f = [d](double r) {
      return r < 1.0 ? std::pow(r, d - 1) * std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    };
    const double integral = quad::tanh_sinh(f, 0.0, 1.0, q).value;
    cache[d] = 1.0 / (unit_sphere_area(d) * integral);
  }
  return cache[d];
}

double mollifier(int d, double r) {
  if (r >= 1.0)
    return 0.0;
  return mollifier_constant(d) * std::exp(-1.0 / (1.0 - r * r));
}

PotentialField mollified_well(const WellSpec &spec, const Grid &g) {
  spec.validate();
  if (!(spec.eps > 0.0))
    throw DomainError("mollified_well: eps must be > 0");
  require_fits(spec.a + spec.eps, g, "mollified_well");
  const double h = g.h();
  if (spec.eps < 2.0 * h * (1.0 - 1e-12))
    throw DomainError("mollified_well: eps must be at least 2h to be resolved");

  // eta is radial; tabulate the continuum profile across the transition
  // shell and interpolate monotonically.
  constexpr int nodes = 1025;
  std::vector<double> rs(nodes), etas(nodes);
  for (int i = 0; i < nodes; ++i) {
    rs[i] = spec.a + spec.eps * i / (nodes - 1);
    etas[i] = i == 0 ? 1.0
              : i == nodes - 1
                  ? 0.0
                  : mollified_profile(g.d, spec.a, spec.eps, rs[i]);
  }
  const double r_lo = rs.front(), r_hi = rs.back();
  boost::math::interpolators::pchip<std::vector<double>> eta(std::move(rs),
                                                             std::move(etas));

  PotentialField V{Field(g),
                   {"mollified_well",
                    {{"a", spec.a}, {"v", spec.v}, {"eps", spec.eps}},
                    false}};
  const double inner_edge = spec.a * (1.0 + kBoundarySlack);
  for (std::size_t k = 0; k < V.field.size(); ++k) {
    const double r = g.radius(k);
    if (r <= inner_edge)
      V.field[k] = -spec.v;
    else if (r >= r_hi)
      V.field[k] = 0.0;
    else
      V.field[k] = -spec.v * std::clamp(eta(std::max(r, r_lo)), 0.0, 1.0);
  }
  return V;
}

PotentialField well(const WellSpec &spec, const Grid &g) {
  return spec.eps > 0.0 ? mollified_well(spec, g) : sharp_well(spec, g);
}

double mollified_profile(int d, double a, double eps, double r) {
  if (!(eps > 0.0))
    return r <= a ? 1.0 : 0.0;
  const double half = 0.5 * eps;
  const double R = a + half;
  if (r <= a)
    return 1.0;
  if (r >= a + eps)
    return 0.0;
  QuadratureSpec q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-11;
  // Integrate rho_{eps/2} over |y| = s, weighted by the fraction of that
  // sphere lying inside B_R(-x), i.e. |x + y| <= R.
  auto fraction = [&](double s) {
    if (s <= 0.0)
      return 1.0;
    // cos of the angle between y and -x at which |x + y| = R.
    const double c = (r * r + s * s - R * R) / (2.0 * r * s);
    if (c >= 1.0)
      return 0.0;
    if (c <= -1.0)
      return 1.0;
    // Points with cos(angle(y, -x)) >= c are inside.
    if (d == 1)
      return 0.5; // exactly one of +-s qualifies when |c| < 1
    if (d == 2)
      return std::acos(c) / pi;
    return 0.5 * (1.0 - c);
  };
  auto f = [&](double s) {
    const double rho = std::pow(2.0 / eps, d) * mollifier(d, s / half);
    return unit_sphere_area(d) * std::pow(s, d - 1) * rho * fraction(s);
  };
  // fraction() has a kink at s = |r - R|, where the sphere first meets the
  // ball boundary.
  const double kink = std::min(half, std::abs(r - R));
  double total = 0.0;
  if (kink > 0.0)
    total += quad::gauss_kronrod(f, 0.0, kink, q).value;
  total += quad::gauss_kronrod(f, kink, half, q).value;
  return std::clamp(total, 0.0, 1.0);
}

double mollifier_spot_check(const PotentialField &V, const WellSpec &spec) {
  const Grid &g = V.field.grid;
  double worst = 0.0;
  for (int i = 1; i <= 5; ++i) {
    const double target = spec.a + spec.eps * i / 6.0;
    // Nearest grid point on the positive first axis.
    const int idx = g.nearest_index(target);
    std::array<int, 3> full{g.n / 2, g.n / 2, g.n / 2};
    full[0] = idx;
    const std::size_t k = g.flat(full);
    const double r = g.radius(k);
    const double eta = -V.field[k] / spec.v;
    worst = std::max(worst,
                     std::abs(eta - mollified_profile(g.d, spec.a, spec.eps, r)));
  }
  return worst;
}

PotentialField anharmonic(int k, const Grid &g) {
  if (k < 1)
    throw DomainError("anharmonic: k must be >= 1");
  PotentialField V{Field(g), {"anharmonic", {{"k", static_cast<double>(k)}}, false}};
  for (std::size_t i = 0; i < V.field.size(); ++i) {
    const double r = g.radius(i);
    double val = std::pow(r, 2.0 * k);
    if (!(val <= 1e300)) {
      val = 1e300;
      V.meta.clamped = true;
    }
    V.field[i] = val;
  }
  return V;
}

PotentialField reflect_potential(const PotentialField &V, double mu) {
  if (!(mu <= 0.0))
    throw DomainError("reflect_potential: plane offset mu must be <= 0");
  const Grid &g = V.field.grid;
  const auto &p = V.meta.params;
  if (p.count("a")) {
    const double extent = 2.0 * std::abs(mu) + p.at("a") +
                          (p.count("eps") ? p.at("eps") : 0.0);
    require_fits(extent, g, "reflect_potential");
  }
  PotentialField out{Field(g), V.meta};
  out.meta.params["mu"] = mu;
  for (std::size_t k = 0; k < V.field.size(); ++k) {
    auto idx = g.unflat(k);
    idx[0] = g.nearest_index(2.0 * mu - g.coordinate(idx[0]));
    out.field[k] = V.field[g.flat(idx)];
  }
  return out;
}

PotentialField shift_potential(const PotentialField &V, double c) {
  PotentialField out = V;
  for (double &x : out.field.values)
    x += c;
  out.meta.params["shift"] = c;
  return out;
}

} // namespace nonlocal
