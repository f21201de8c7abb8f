#include "nonlocal/bernstein.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nonlocal {

BernsteinSymbol BernsteinSymbol::relativistic(double mass, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError("relativistic symbol: alpha must lie in (0,2)");
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw DomainError("relativistic symbol: mass must be >= 0");
  BernsteinSymbol s;
  s.kind_ = SymbolKind::Relativistic;
  s.mass_ = mass;
  s.alpha_ = alpha;
  return s;
}

BernsteinSymbol
BernsteinSymbol::custom(std::string name, std::function<double(double)> phi,
                        std::function<double(double)> levy_density) {
  if (!phi)
    throw DomainError("custom symbol: Phi must be callable");
  BernsteinSymbol s;
  s.kind_ = SymbolKind::Custom;
  s.name_ = std::move(name);
  s.phi_ = std::move(phi);
  s.density_ = std::move(levy_density);
  return s;
}

double BernsteinSymbol::operator()(double z) const {
  if (z <= 0.0)
    return 0.0;
  if (kind_ == SymbolKind::Custom)
    return phi_(z);
  if (mass_ == 0.0)
    return std::pow(z, 0.5 * alpha_);
  // m * ((1 + z/m^{2/alpha})^{alpha/2} - 1) without cancellation for small z.
  const double scale = std::pow(mass_, 2.0 / alpha_);
  return mass_ * std::expm1(0.5 * alpha_ * std::log1p(z / scale));
}

double BernsteinSymbol::mass() const {
  if (kind_ != SymbolKind::Relativistic)
    throw DomainError("mass() is defined for relativistic symbols only");
  return mass_;
}

double BernsteinSymbol::alpha() const {
  if (kind_ != SymbolKind::Relativistic)
    throw DomainError("alpha() is defined for relativistic symbols only");
  return alpha_;
}

double BernsteinSymbol::singular_order() const {
  return kind_ == SymbolKind::Relativistic ? alpha_ : 2.0;
}

double BernsteinSymbol::jump_kernel(int d, double r,
                                    const QuadratureSpec &q) const {
  if (kind_ == SymbolKind::Relativistic) {
    if (mass_ == 0.0)
      return j_massless(d, alpha_, r);
    return j_massive(d, alpha_, mass_, r, q);
  }
  if (!density_)
    throw DomainError("custom symbol '" + name_ +
                      "' has no Levy density; kernel operations are disabled");
  return subordinated_kernel(density_, d, r, q);
}

std::string BernsteinSymbol::describe() const {
  std::ostringstream os;
  if (kind_ == SymbolKind::Relativistic)
    os << "relativistic(m=" << mass_ << ", alpha=" << alpha_ << ")";
  else
    os << "custom(" << name_ << (density_ ? ", with density" : "") << ")";
  return os.str();
}

double subordinated_kernel(const std::function<double(double)> &levy_density,
                           int d, double r, const QuadratureSpec &q) {
  if (d < 1)
    throw DomainError("subordinated_kernel: dimension must be >= 1");
  if (!(r > 0.0))
    throw DomainError("subordinated_kernel: radius must be positive");
  // t = e^u; the Gaussian factor gives double-exponential decay as u -> -inf.
  const double half_d = 0.5 * d;
  const double r2 = r * r;
  auto f = [&](double u) {
    const double t = std::exp(u);
    const double m = levy_density(t);
    if (m == 0.0)
      return 0.0;
    return std::exp(-half_d * std::log(4.0 * std::numbers::pi * t) -
                    r2 / (4.0 * t) + u) *
           m;
  };
  const double centre = std::log(r2 / (2.0 * (d + 2.0)));
  return quad::de_trapezoid(f, centre, q).value;
}

std::function<double(double)> relativistic_levy_density(double mass,
                                                        double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError("relativistic_levy_density: alpha must lie in (0,2)");
  const double c = 0.5 * alpha / gamma_function(1.0 - 0.5 * alpha);
  const double rate = mass > 0.0 ? std::pow(mass, 2.0 / alpha) : 0.0;
  return [c, rate, alpha](double t) {
    return c * std::exp(-rate * t - (1.0 + 0.5 * alpha) * std::log(t));
  };
}

} // namespace nonlocal
