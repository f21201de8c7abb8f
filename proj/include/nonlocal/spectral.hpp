#pragma once

#include "nonlocal/bernstein.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nonlocal {

//! Multiply the spectrum of u by g(|xi|^2) and transform back.
Field apply_radial_multiplier(const std::function<double(double)> &g,
                              const Field &u);

//! Phi(-Laplacian) u on the torus, with Phi(0) = 0 on the zero mode.
Field apply_multiplier(const BernsteinSymbol &phi, const Field &u);

//! [u]_Phi = (int Phi(|xi|^2) |u^(xi)|^2 dxi)^{1/2} on the frequency lattice.
double seminorm_fourier(const BernsteinSymbol &phi, const Field &u);

//! [u]_Phi from (1/2) int int |u(x+h) - u(x)|^2 j_Phi(|h|) dx dh.
//!
//! The x-integral of |u(. + h) - u|^2 over the torus is evaluated exactly for
//! the trigonometric interpolant of u and averaged over spheres |h| = r; the
//! remaining radial integral against j_Phi is done by quadrature with a
//! graded mesh at r = 0 and an analytic tail. Refuses (CostGuard) grids with
//! n > 256 in d = 1, n > 64 in d = 2, and any d = 3 grid with n > 32.
double seminorm_direct(const BernsteinSymbol &phi, const Field &u,
                       const QuadratureSpec &q = {});

//! [[u]]_s = (int int |u(x+y) - u(x)|^2 / |y|^{d+2s} dy dx)^{1/2}, s in (0,1),
//! by the same route as seminorm_direct.
double gagliardo_seminorm(double s, const Field &u,
                          const QuadratureSpec &q = {});

struct FormValue {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

//! A_{Phi,V}(u, v) = E_Phi(u, v) + <V u, v>, kinetic part computed spectrally.
FormValue dirichlet_form(const BernsteinSymbol &phi, const Field &u,
                         const Field &v, const Field *V = nullptr);

using PointFunction = std::function<double(const std::vector<double> &)>;

//! Phi(-Laplacian) u (x) = -(1/2) int (u(x+h) - 2u(x) + u(x-h)) j_Phi(|h|) dh
//! for a bounded u that is C^2 near x.
//!
//! The region |h| < eps_cut uses the second-order Taylor model of the
//! difference (Laplacian by central differences of step eps_cut); the region
//! eps_cut <= |h| <= 1 is integrated in log r, and |h| > 1 in doubling shells
//! until two consecutive shells fall below the tolerance. The constant part
//! -2u(x) of the outer region is integrated against j_Phi separately.
//! Throws PreconditionError if a range probe finds u unbounded.
double pointwise_nonlocal(const BernsteinSymbol &phi, const PointFunction &u,
                          const std::vector<double> &x, double eps_cut = 1e-3,
                          const QuadratureSpec &q = {});

//! Largest Phi(|xi|^2) over the frequency lattice.
double max_symbol(const BernsteinSymbol &phi, const Grid &g);

} // namespace nonlocal
