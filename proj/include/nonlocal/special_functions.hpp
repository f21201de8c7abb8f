#pragma once

#include "nonlocal/quadrature.hpp"

namespace nonlocal {

//! Modified Bessel function of the third kind K_xi(z), evaluated from
//!   K_xi(z) = 1/2 (z/2)^xi int_0^inf t^{-xi-1} exp(-t - z^2/(4t)) dt
//! after the substitution t = e^u. Requires xi > -1/2 and z > 0.
//! Falls back to adaptive subdivision if the trapezoid stalls.
double bessel_k(double xi, double z, const QuadratureSpec &q = {});

//! Gamma function, including negative non-integer arguments.
//! Throws PoleError at 0, -1, -2, ...
double gamma_function(double s);

//! Lower incomplete gamma function int_0^x z^{s-1} e^{-z} dz for s > 0, x >= 0.
double lower_incomplete_gamma(double s, double x, const QuadratureSpec &q = {});

//! Surface measure of the unit sphere S^{d-1} in R^d (2 for d = 1).
double unit_sphere_area(int d);

} // namespace nonlocal
