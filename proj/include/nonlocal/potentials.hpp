#pragma once

#include "nonlocal/grid.hpp"

#include <map>
#include <string>

namespace nonlocal {

//! Spherical well of radius a and depth v; eps > 0 selects the mollified
//! well V_eps = -v eta_eps, eps = 0 the sharp well -v 1_{B_a}.
struct WellSpec {
  double a = 1.0;
  double v = 1.0;
  double eps = 0.0;
  void validate() const;
};

struct PotentialMeta {
  std::string kind; // "sharp_well", "mollified_well", "anharmonic", "shifted", ...
  std::map<std::string, double> params;
  //! Set when values were clamped at the overflow guard.
  bool clamped = false;
};

struct PotentialField {
  Field field;
  PotentialMeta meta;
};

//! Grid points with |x| <= a get -v, all others 0.
PotentialField sharp_well(const WellSpec &spec, const Grid &g);

//! rho(x) = C_rho exp(-1/(1-|x|^2)) on |x| < 1, with C_rho making int rho = 1.
//! The constant is computed once per dimension and cached.
double mollifier_constant(int d);
double mollifier(int d, double r);

//! -v (rho_{eps/2} * 1_{B_{a+eps/2}}), rho_{eps/2}(x) = (2/eps)^d rho(2x/eps).
//! eta is the continuum convolution, tabulated by quadrature across the shell
//! a < |x| < a + eps and interpolated monotonically; it is exactly 1 on B_a
//! and 0 outside B_{a+eps}. Requires eps >= 2h.
PotentialField mollified_well(const WellSpec &spec, const Grid &g);

//! Sharp or mollified well according to spec.eps.
PotentialField well(const WellSpec &spec, const Grid &g);

//! The continuum cutoff eta_eps(|x| = r) by quadrature; used to spot-check
//! the grid construction.
double mollified_profile(int d, double a, double eps, double r);

//! Largest |eta_grid - eta_continuum| over five radii in the transition shell.
double mollifier_spot_check(const PotentialField &V, const WellSpec &spec);

//! V_k(x) = |x|^{2k}; values above 1e300 are clamped and flagged.
PotentialField anharmonic(int k, const Grid &g);

//! V^mu(x) = V(2 mu - x_1, x'), sampled at the nearest grid point.
//! For wells the reflected support must stay inside the box.
PotentialField reflect_potential(const PotentialField &V, double mu);

//! V + c, used for the uniform-shift stability variant.
PotentialField shift_potential(const PotentialField &V, double c);

} // namespace nonlocal
