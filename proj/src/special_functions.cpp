#include "nonlocal/special_functions.hpp"
#include "nonlocal/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nonlocal {

double bessel_k(double xi, double z, const QuadratureSpec &q) {
  if (!(xi > -0.5))
    throw DomainError("bessel_k: order must exceed -1/2, got " +
                      std::to_string(xi));
  if (!(z > 0.0))
    throw DomainError("bessel_k: argument must be positive, got " +
                      std::to_string(z));
  q.validate();
  xi = std::abs(xi); // K_{-xi} = K_xi

  // log of the integrand in u = log t, shifted by its maximum so that the
  // quadrature runs on an O(1) function for every (xi, z).
  const double log_quarter_z2 = 2.0 * std::log(0.5 * z);
  const double y_star = 0.5 * z * z / (std::sqrt(xi * xi + z * z) + xi);
  const double u_star = std::log(y_star);
  auto log_integrand = [&](double u) {
    return -xi * u - std::exp(u) - std::exp(log_quarter_z2 - u);
  };
  const double peak = log_integrand(u_star);
  auto scaled = [&](double u) { return std::exp(log_integrand(u) - peak); };

  const double log_prefactor = std::log(0.5) + xi * std::log(0.5 * z) + peak;
  const double prefactor = std::exp(log_prefactor);

  // The scaled integral is O(1); translate the absolute target accordingly.
  QuadratureSpec scaled_spec = q;
  scaled_spec.abs_tol = prefactor > 0.0
                            ? std::max(q.abs_tol / prefactor, 1e-300)
                            : q.abs_tol;

  QuadResult r;
  bool done = false;
  if (q.method == QuadMethod::DoubleExponential) {
    try {
      r = quad::de_trapezoid(scaled, u_star, scaled_spec);
      done = true;
    } catch (const QuadratureError &) {
      // fall through to subdivision
    }
  }
  if (!done) {
    // Width where the integrand has dropped below e^{-60} of its peak.
    double lo = u_star - 1.0, hi = u_star + 1.0;
    while (log_integrand(lo) - peak > -60.0)
      lo -= 1.0;
    while (log_integrand(hi) - peak > -60.0)
      hi += 1.0;
    try {
      r = quad::gauss_kronrod(scaled, lo, hi, scaled_spec);
    } catch (const QuadratureError &e) {
      throw QuadratureError("bessel_k: quadrature did not converge",
                            prefactor * e.partial_value,
                            prefactor * e.error_estimate);
    }
  }
  return prefactor * r.value;
}

double gamma_function(double s) {
  if (std::isnan(s))
    throw DomainError("gamma_function: NaN argument");
  if (s <= 0.0 && s == std::floor(s))
    throw PoleError("gamma_function: pole at " + std::to_string(s));
  return std::tgamma(s);
}

double lower_incomplete_gamma(double s, double x, const QuadratureSpec &q) {
  if (!(s > 0.0))
    throw DomainError("lower_incomplete_gamma: s must be > 0");
  if (!(x >= 0.0))
    throw DomainError("lower_incomplete_gamma: x must be >= 0");
  q.validate();
  if (x == 0.0)
    return 0.0;
  // Beyond this point e^{-z} z^{s-1} is below double resolution relative to
  // Gamma(s).
  const double upper = std::min(x, s + 60.0 + 20.0 * std::sqrt(s));
  auto f = [s](double z) { return std::exp((s - 1.0) * std::log(z) - z); };
  if (s < 1.0) {
    // Endpoint singularity z^{s-1}: tanh-sinh regardless of method.
    return quad::tanh_sinh(f, 0.0, upper, q).value;
  }
  return quad::integrate(f, 0.0, upper, q).value;
}

double unit_sphere_area(int d) {
  if (d < 1)
    throw DomainError("unit_sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

} // namespace nonlocal
