#pragma once

#include "nonlocal/grid.hpp"

#include <complex>
#include <vector>

namespace nonlocal {

//! Half-complex spectrum of a real field: n^{d-1} (n/2 + 1) coefficients,
//! unnormalized forward transform U_k = sum_x u(x) e^{-2 pi i k.j/n}.
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> coeffs;
};

Spectrum forward(const Field &u);
//! Inverse transform including the 1/N normalization.
Field inverse(const Spectrum &s);

//! |xi_k|^2 for every half-complex coefficient, xi = 2 pi k / L with k in
//! [-n/2, n/2).
std::vector<double> frequency_squared(const Grid &g);

//! Multiplicity of each half-complex coefficient in the full spectrum
//! (1 for the self-conjugate last-axis planes, 2 otherwise).
std::vector<double> hermitian_weights(const Grid &g);

} // namespace nonlocal
