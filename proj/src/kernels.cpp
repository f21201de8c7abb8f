#include "nonlocal/kernels.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;

void check_dim_alpha(int d, double alpha, const char *who) {
  if (d < 1)
    throw DomainError(std::string(who) + ": dimension must be >= 1");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError(std::string(who) + ": alpha must lie in (0,2)");
}

void check_radius(double r, const char *who) {
  if (!(r > 0.0))
    throw DomainError(std::string(who) + ": radius must be positive");
}

void check_mass(double m, const char *who) {
  if (!(m > 0.0))
    throw DomainError(std::string(who) + ": mass must be positive");
}

} // namespace

QuadratureSpec kernel_spec() {
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-12;
  q.max_evals = 2000000;
  return q;
}

double massless_constant(int d, double alpha) {
  check_dim_alpha(d, alpha, "massless_constant");
  return std::pow(2.0, alpha) * gamma_function(0.5 * (d + alpha)) /
         (std::pow(pi, 0.5 * d) * std::abs(gamma_function(-0.5 * alpha)));
}

double massive_prefactor(int d, double alpha) {
  check_dim_alpha(d, alpha, "massive_prefactor");
  return alpha * std::pow(2.0, 0.5 * (alpha - d)) /
         (std::pow(pi, 0.5 * d) * gamma_function(1.0 - 0.5 * alpha));
}

double j_massless(int d, double alpha, double r) {
  check_dim_alpha(d, alpha, "j_massless");
  check_radius(r, "j_massless");
  return massless_constant(d, alpha) / std::pow(r, d + alpha);
}

double j_massive(int d, double alpha, double mass, double r,
                 const QuadratureSpec &q) {
  check_dim_alpha(d, alpha, "j_massive");
  check_radius(r, "j_massive");
  check_mass(mass, "j_massive");
  const double nu = 0.5 * (d + alpha);
  const double scale = std::pow(mass, 1.0 / alpha);
  return massive_prefactor(d, alpha) * std::pow(mass, nu / alpha) *
         std::pow(r, -nu) * bessel_k(nu, scale * r, q);
}

double sigma(int d, double alpha, double mass, double r,
             const QuadratureSpec &q) {
  check_dim_alpha(d, alpha, "sigma");
  check_radius(r, "sigma");
  check_mass(mass, "sigma");
  const double nu = 0.5 * (d + alpha);
  const double upper = std::pow(mass, 1.0 / alpha) * r;
  auto f = [&](double w) { return std::pow(w, nu) * bessel_k(nu - 1.0, w, q); };
  const double integral = quad::integrate(f, 0.0, upper, q).value;
  return massive_prefactor(d, alpha) * integral / std::pow(r, d + alpha);
}

double sigma_difference_form(int d, double alpha, double mass, double r,
                             const QuadratureSpec &q) {
  return j_massless(d, alpha, r) - j_massive(d, alpha, mass, r, q);
}

double j_prime_massive(int d, double alpha, double mass, double r,
                       const QuadratureSpec &q) {
  check_dim_alpha(d, alpha, "j_prime_massive");
  check_radius(r, "j_prime_massive");
  check_mass(mass, "j_prime_massive");
  const double nu = 0.5 * (d + alpha);
  const double scale = std::pow(mass, 1.0 / alpha);
  return -massive_prefactor(d, alpha) *
         std::pow(mass, (d + alpha + 2.0) / (2.0 * alpha)) *
         bessel_k(nu + 1.0, scale * r, q) / std::pow(r, nu);
}

// ---------------------------------------------------------------------------
// Heat and resolvent kernels

namespace {

//! Frequency beyond which k^d e^{-t Phi(k^2)} is negligible. Throws when the
//! symbol does not grow, i.e. e^{-t Phi} is not integrable.
double frequency_cutoff(const BernsteinSymbol &phi, int d, double t) {
  double k = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double envelope = std::exp(-t * phi(k * k) + d * std::log(k));
    if (envelope < 1e-18 && k > 1.0)
      return k;
    k *= 1.5;
    if (k > 1e12)
      break;
  }
  throw AssumptionViolation(
      "heat kernel: e^{-t Phi(|xi|^2)} is not integrable (symbol does not "
      "grow fast enough)");
}

double radial_fourier_weight(int d, double k, double r) {
  switch (d) {
  case 1:
    return std::cos(k * r);
  case 2:
    return k * std::cyl_bessel_j(0.0, k * r);
  case 3:
    return r > 0.0 ? k * std::sin(k * r) / r : k * k;
  default:
    throw DomainError("heat kernel: dimension must be 1, 2 or 3");
  }
}

double radial_fourier_prefactor(int d) {
  switch (d) {
  case 1:
    return 1.0 / pi;
  case 2:
    return 1.0 / (2.0 * pi);
  default:
    return 1.0 / (2.0 * pi * pi);
  }
}

} // namespace

double heat_kernel_radial(const BernsteinSymbol &phi, int d, double t,
                          double r, const QuadratureSpec &q) {
  if (d < 1 || d > 3)
    throw DomainError("heat kernel: dimension must be 1, 2 or 3");
  if (!(t > 0.0))
    throw DomainError("heat kernel: time must be positive");
  if (!(r >= 0.0))
    throw DomainError("heat kernel: radius must be >= 0");
  q.validate();
  const double kmax = frequency_cutoff(phi, d, t);
  auto f = [&](double k) {
    return std::exp(-t * phi(k * k)) * radial_fourier_weight(d, k, r);
  };
  // Half-period pieces keep each Gauss-Kronrod panel non-oscillatory.
  const double width = r > 0.0 ? std::min(pi / r, kmax / 8.0) : kmax / 8.0;
  const long pieces = static_cast<long>(std::ceil(kmax / width));
  if (pieces > q.max_evals)
    throw QuadratureError("heat kernel: too many oscillations for budget", 0.0,
                          std::numeric_limits<double>::infinity());
  QuadratureSpec piece_spec = q;
  piece_spec.abs_tol = std::max(q.abs_tol / static_cast<double>(pieces), 1e-300);
  double sum = 0.0;
  for (long i = 0; i < pieces; ++i) {
    const double a = i * width;
    const double b = std::min(kmax, (i + 1) * width);
    sum += quad::gauss_kronrod(f, a, b, piece_spec).value;
  }
  return radial_fourier_prefactor(d) * sum;
}

double heat_kernel(const BernsteinSymbol &phi, double t,
                   const std::vector<double> &x, const QuadratureSpec &q) {
  double r2 = 0.0;
  for (double xi : x)
    r2 += xi * xi;
  return heat_kernel_radial(phi, static_cast<int>(x.size()), t, std::sqrt(r2),
                            q);
}

double heat_kernel_mass(const BernsteinSymbol &phi, int d, double t,
                        const QuadratureSpec &q) {
  const double area = unit_sphere_area(d);
  QuadratureSpec inner = q;
  inner.abs_tol = std::min(q.abs_tol, 1e-13);
  auto density = [&](double r) {
    return r == 0.0 && d > 1
               ? 0.0
               : std::pow(r, d - 1) * heat_kernel_radial(phi, d, t, r, inner);
  };
  // Radius past which the radial density is negligible; the far tail (if
  // any) is closed with the small-time-free asymptotic p_t ~ t j.
  double cut = 1.0;
  while (cut < 1e3 && std::abs(density(cut)) > 1e-14)
    cut *= 2.0;
  QuadratureSpec outer = q;
  outer.abs_tol = std::max(q.abs_tol, 1e-12);
  double mass = quad::gauss_kronrod(density, 0.0, cut, outer).value;
  if (phi.has_kernel() && std::abs(density(cut)) > 1e-14) {
    auto tail = [&](double r) {
      return t * std::pow(r, d - 1) * phi.jump_kernel(d, r);
    };
    mass += quad::integrate_to_infinity(tail, cut, outer).value;
  }
  return area * mass;
}

ResolventValue resolvent_kernel(const BernsteinSymbol &phi,
                                const std::vector<double> &x,
                                const QuadratureSpec &q) {
  const int d = static_cast<int>(x.size());
  double r2 = 0.0;
  for (double xi : x)
    r2 += xi * xi;
  const double r = std::sqrt(r2);
  if (!(r > 0.0))
    throw DomainError("resolvent_kernel: x must be non-zero");
  q.validate();

  // Below t0 the inner oscillatory integral needs too many panels; there
  // p_t(x) = t j(|x|) + O(t^2) is used instead.
  const double k_budget = 2e4 * pi / r;
  const double t0 = std::min(0.05, 40.0 / phi(k_budget * k_budget));

  QuadratureSpec inner = q;
  inner.abs_tol = std::min(q.abs_tol, 1e-14);
  auto f = [&](double t) {
    return std::exp(-t) * heat_kernel_radial(phi, d, t, r, inner);
  };
  const double main = quad::integrate_to_infinity(f, t0, q).value;

  ResolventValue out;
  const double weight = 1.0 - (1.0 + t0) * std::exp(-t0); // int_0^t0 t e^-t
  if (phi.has_kernel()) {
    const double small = weight * phi.jump_kernel(d, r);
    out.value = main + small;
    out.truncation_error = std::abs(small) * t0;
  } else {
    out.value = main;
    out.truncation_error = std::abs(f(t0)) * t0;
  }
  return out;
}

std::vector<double> second_moment_decay(const BernsteinSymbol &phi, int d,
                                        const std::vector<double> &radii,
                                        const QuadratureSpec &q) {
  if (radii.size() < 2)
    throw DomainError("second_moment_decay: need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw DomainError("second_moment_decay: radii must be positive and "
                        "strictly increasing");
  }
  if (!phi.has_kernel())
    throw DomainError("second_moment_decay: symbol has no jump kernel");
  const QuadratureSpec kq = kernel_spec();
  auto moment_density = [&](double r) {
    return std::pow(r, d + 1) * phi.jump_kernel(d, r, kq);
  };

  // Graded substitution r = R s^g on the first panel flattens the
  // r^{1-order} behaviour at the origin.
  const double order = phi.singular_order();
  QuadratureSpec gk = q;
  gk.method = QuadMethod::AdaptiveSubdivision;
  double cumulative = 0.0;
  try {
    if (order < 2.0) {
      const double g = 2.0 / (2.0 - order);
      const double r0 = radii.front();
      auto graded = [&](double s) {
        if (s <= 0.0)
          return 0.0;
        return moment_density(r0 * std::pow(s, g)) * r0 * g *
               std::pow(s, g - 1.0);
      };
      cumulative = quad::gauss_kronrod(graded, 0.0, 1.0, gk).value;
    } else {
      cumulative = quad::tanh_sinh(moment_density, 0.0, radii.front(), q).value;
    }
  } catch (const QuadratureError &e) {
    throw QuadratureError(
        "second_moment_decay: inner panel failed; r^{d+1} j(r) must be "
        "integrable at 0",
        e.partial_value, e.error_estimate);
  }

  const double area = unit_sphere_area(d);
  std::vector<double> out;
  out.reserve(radii.size());
  out.push_back(area * cumulative / (radii[0] * radii[0]));
  for (std::size_t i = 1; i < radii.size(); ++i) {
    cumulative +=
        quad::gauss_kronrod(moment_density, radii[i - 1], radii[i], gk).value;
    out.push_back(area * cumulative / (radii[i] * radii[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernel tables

std::string to_string(KernelId k) {
  switch (k) {
  case KernelId::J:
    return "j";
  case KernelId::Sigma:
    return "sigma";
  case KernelId::JPrime:
    return "j_prime";
  case KernelId::Heat:
    return "heat";
  case KernelId::Resolvent:
    return "resolvent";
  }
  return "j";
}

KernelId kernel_id_from_string(const std::string &s) {
  if (s == "j")
    return KernelId::J;
  if (s == "sigma")
    return KernelId::Sigma;
  if (s == "j_prime")
    return KernelId::JPrime;
  if (s == "heat")
    return KernelId::Heat;
  if (s == "resolvent")
    return KernelId::Resolvent;
  throw DomainError("unknown kernel id '" + s + "'");
}

void KernelTable::validate() const {
  if (radii.size() != values.size() || radii.size() != error_estimates.size())
    throw DomainError("KernelTable: length mismatch");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw DomainError("KernelTable: radii must be positive and increasing");
  }
  if (kernel_id == KernelId::J || kernel_id == KernelId::Sigma) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < -error_estimates[i])
        throw DomainError("KernelTable: negative kernel value");
      if (kernel_id == KernelId::J && i > 0 &&
          values[i] > values[i - 1] + error_estimates[i] + error_estimates[i - 1])
        throw DomainError("KernelTable: jump kernel must be non-increasing");
    }
  }
}

KernelTable build_kernel_table(KernelId id, const BernsteinSymbol &phi, int d,
                               const std::vector<double> &radii,
                               std::optional<double> time,
                               const QuadratureSpec &q, int threads) {
  if (phi.kind() != SymbolKind::Relativistic)
    throw DomainError("build_kernel_table: relativistic symbols only");
  KernelTable table;
  table.kernel_id = id;
  table.dimension = d;
  table.mass = phi.mass();
  table.alpha = phi.alpha();
  table.time = time;
  table.quadrature = q;
  table.radii = radii;
  table.values.assign(radii.size(), 0.0);
  table.error_estimates.assign(radii.size(), 0.0);
  if (id == KernelId::Heat && !time)
    throw DomainError("build_kernel_table: heat kernel needs a time");
  if ((id == KernelId::Sigma || id == KernelId::JPrime) && !(phi.mass() > 0.0))
    throw DomainError("build_kernel_table: sigma and j_prime need mass > 0");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw DomainError("build_kernel_table: radii must be positive and increasing");

  const QuadratureSpec kq = kernel_spec();
  const double eps = std::numeric_limits<double>::epsilon();
  auto sample = [&](std::size_t i) {
    const double r = radii[i];
    double v = 0.0, err = 0.0;
    switch (id) {
    case KernelId::J:
      v = phi.jump_kernel(d, r, kq);
      err = phi.mass() == 0.0 ? 4.0 * eps * v : kq.target(v);
      break;
    case KernelId::Sigma:
      v = sigma(d, phi.alpha(), phi.mass(), r, kq);
      err = kq.target(v) + 4.0 * eps * j_massless(d, phi.alpha(), r);
      break;
    case KernelId::JPrime:
      v = j_prime_massive(d, phi.alpha(), phi.mass(), r, kq);
      err = kq.target(v);
      break;
    case KernelId::Heat: {
      std::vector<double> x(d, 0.0);
      x[0] = r;
      v = heat_kernel(phi, *time, x, q);
      err = q.target(v);
      break;
    }
    case KernelId::Resolvent: {
      std::vector<double> x(d, 0.0);
      x[0] = r;
      const auto res = resolvent_kernel(phi, x, q);
      v = res.value;
      err = q.target(v) + res.truncation_error;
      break;
    }
    }
    table.values[i] = v;
    table.error_estimates[i] = err;
  };

  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(radii.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < radii.size(); ++i)
      sample(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < radii.size(); i += workers)
            sample(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto &t : pool)
      t.join();
    for (auto &e : errors)
      if (e)
        std::rethrow_exception(e);
  }
  return table;
}

} // namespace nonlocal
