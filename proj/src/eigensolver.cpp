#include "nonlocal/eigensolver.hpp"
#include "nonlocal/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace nonlocal {

std::string to_string(Splitting s) {
  return s == Splitting::Lie ? "lie" : "strang";
}

Splitting splitting_from_string(const std::string &s) {
  if (s == "lie")
    return Splitting::Lie;
  if (s == "strang")
    return Splitting::Strang;
  throw DomainError("unknown splitting '" + s + "' (expected lie or strang)");
}

void SolverConfig::validate() const {
  if (!(tau > 0.0))
    throw DomainError("solver: tau must be > 0");
  if (!(tol > 0.0))
    throw DomainError("solver: tol must be > 0");
  if (!(vector_tol >= 0.0))
    throw DomainError("solver: vector_tol must be >= 0");
  if (max_iters < 1)
    throw DomainError("solver: max_iters must be >= 1");
  if (projection && !(*projection > 0.0))
    throw DomainError("solver: projection radius must be > 0");
}

Field ball_mask(const Grid &g, double r) {
  Field m(g);
  const double edge = r * (1.0 + 1e-12);
  for (std::size_t k = 0; k < m.size(); ++k)
    m[k] = g.radius(k) <= edge ? 1.0 : 0.0;
  return m;
}

Field seeded_positive_field(const Grid &g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Field u(g);
  // Drawn from the raw 64-bit stream so the field does not depend on the
  // standard library's distribution implementation.
  for (double &x : u.values)
    x = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u;
}

namespace {

void normalise(Field &u, const char *context) {
  const double nrm = l2_norm(u);
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw NumericalError(std::string(context) +
                         ": iterate norm is zero or not finite");
  for (double &x : u.values)
    x /= nrm;
}

void apply_mask(Field &u, const Field *mask) {
  if (!mask)
    return;
  for (std::size_t k = 0; k < u.size(); ++k)
    u[k] *= (*mask)[k];
}

} // namespace

EigenResult ground_state(const BernsteinSymbol &phi, const Field &V,
                         const SolverConfig &cfg, const Field *initial) {
  cfg.validate();
  V.check_finite("ground_state potential");
  const Grid &g = V.grid;
  if (cfg.projection && !(*cfg.projection < 0.5 * g.L))
    throw BoxTooSmall("ground_state: projection ball does not fit in the box");

  double vmin = V[0];
  for (double x : V.values)
    vmin = std::min(vmin, x);

  std::optional<Field> mask;
  if (cfg.projection)
    mask = ball_mask(g, *cfg.projection);
  const Field *pm = mask ? &*mask : nullptr;

  // Potential factors, shifted by min V so that they never overflow; the
  // shift only rescales u and is removed by normalisation.
  const double vfrac = cfg.splitting == Splitting::Strang ? 0.5 : 1.0;
  Field ev(g);
  for (std::size_t k = 0; k < ev.size(); ++k)
    ev[k] = std::exp(-vfrac * cfg.tau * (V[k] - vmin));
  auto kinetic = [&](double z) { return std::exp(-cfg.tau * phi(z)); };

  Field u;
  if (initial) {
    require_same_grid(*initial, V, "ground_state initial field");
    u = *initial;
  } else {
    u = seeded_positive_field(g, cfg.seed);
    apply_mask(u, pm);
    u = apply_radial_multiplier(kinetic, u);
    apply_mask(u, pm);
  }
  normalise(u, "ground_state");

  EigenResult res;
  res.config = cfg;
  double prev = dirichlet_form(phi, u, u, &V).total;
  Field last = u;
  for (long it = 1; it <= cfg.max_iters; ++it) {
    if (cfg.vector_tol > 0.0)
      last = u;
    if (cfg.splitting == Splitting::Strang) {
      u = hadamard(ev, u);
      apply_mask(u, pm);
      u = apply_radial_multiplier(kinetic, u);
      apply_mask(u, pm);
      u = hadamard(ev, u);
      apply_mask(u, pm);
    } else {
      u = apply_radial_multiplier(kinetic, u);
      apply_mask(u, pm);
      u = hadamard(ev, u);
      apply_mask(u, pm);
    }
    normalise(u, "ground_state");
    const double lambda = dirichlet_form(phi, u, u, &V).total;
    if (!std::isfinite(lambda)) {
      std::ostringstream os;
      os << "ground_state: eigenvalue estimate became non-finite at iteration "
         << it << " (last finite value " << prev << ")";
      throw NumericalError(os.str());
    }
    res.history.push_back(lambda);
    res.iters = it;
    const bool settled =
        cfg.vector_tol <= 0.0 || l2_norm(u - last) < cfg.vector_tol;
    if (std::abs(lambda - prev) < cfg.tol && settled) {
      res.converged = true;
      prev = lambda;
      break;
    }
    prev = lambda;
  }
  res.lambda = prev;
  res.phi = std::move(u);
  res.residual = fourier_residual(phi, V, res);
  return res;
}

EigenResult dirichlet_ground_state(const BernsteinSymbol &phi, double r,
                                   const Grid &g, SolverConfig cfg) {
  if (!(r > 0.0))
    throw DomainError("dirichlet_ground_state: radius must be > 0");
  if (!(r < 0.5 * g.L))
    throw BoxTooSmall("dirichlet_ground_state: ball radius must be < L/2");
  cfg.projection = r;
  return ground_state(phi, Field(g), cfg);
}

ExistenceCriterion existence_criterion(const BernsteinSymbol &phi, double a,
                                       double v, const Grid &g,
                                       const SolverConfig &cfg) {
  ExistenceCriterion out;
  out.dirichlet = dirichlet_ground_state(phi, a, g, cfg);
  out.lambda_a = out.dirichlet.lambda;
  out.satisfied = out.lambda_a - v < 0.0;
  return out;
}

double fourier_residual(const BernsteinSymbol &phi, const Field &V,
                        const EigenResult &result) {
  const Field &u = result.phi;
  require_same_grid(u, V, "fourier_residual");
  Field r = apply_multiplier(phi, u);
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] += (V[k] - result.lambda) * u[k];
  if (result.config.projection) {
    const Field mask = ball_mask(u.grid, *result.config.projection);
    r = hadamard(mask, r);
  }
  return l2_norm(r);
}

} // namespace nonlocal
