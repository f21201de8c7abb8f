#pragma once

#include "nonlocal/quadrature.hpp"

#include <functional>
#include <memory>
#include <string>

namespace nonlocal {

enum class SymbolKind { Relativistic, Custom };

//! A Bernstein function Phi in the class with zero killing and drift terms,
//! used as the kinetic symbol Phi(-Laplacian).
//!
//! The relativistic family is Phi_{m,alpha}(z) = (z + m^{2/alpha})^{alpha/2} - m
//! with m >= 0 and alpha in (0, 2); m = 0 is the fractional Laplacian.
//! Custom symbols carry only Phi; if a Levy density is supplied their jump
//! kernel is obtained by Gaussian subordination, otherwise kernel-level
//! operations throw.
class BernsteinSymbol {
public:
  static BernsteinSymbol relativistic(double mass, double alpha);
  static BernsteinSymbol custom(std::string name,
                                std::function<double(double)> phi,
                                std::function<double(double)> levy_density = {});

  //! Phi(z) for z >= 0, with Phi(0) = 0.
  double operator()(double z) const;

  SymbolKind kind() const { return kind_; }
  bool has_closed_kernel() const { return kind_ == SymbolKind::Relativistic; }
  bool has_kernel() const { return has_closed_kernel() || bool(density_); }

  //! Relativistic parameters; throw DomainError for custom symbols.
  double mass() const;
  double alpha() const;

  //! Radial jump kernel j_Phi(r) in dimension d.
  double jump_kernel(int d, double r, const QuadratureSpec &q = {}) const;

  //! Order of the kernel singularity at the origin, j ~ r^{-d-order}
  //! (alpha for the relativistic family; a conservative 2 otherwise).
  double singular_order() const;

  std::string describe() const;

private:
  BernsteinSymbol() = default;
  SymbolKind kind_ = SymbolKind::Relativistic;
  double mass_ = 0.0;
  double alpha_ = 1.0;
  std::string name_;
  std::function<double(double)> phi_;
  std::function<double(double)> density_;
};

//! j_Phi(r) = int_0^inf (4 pi t)^{-d/2} exp(-r^2/(4t)) m_Phi(t) dt
double subordinated_kernel(const std::function<double(double)> &levy_density,
                           int d, double r, const QuadratureSpec &q = {});

//! Levy density of Phi_{m,alpha}: alpha/(2 Gamma(1-alpha/2)) e^{-m^{2/alpha} t} t^{-1-alpha/2}.
std::function<double(double)> relativistic_levy_density(double mass,
                                                        double alpha);

} // namespace nonlocal
