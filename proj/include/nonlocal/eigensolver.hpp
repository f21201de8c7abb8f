#pragma once

#include "nonlocal/bernstein.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/potentials.hpp"
#include "nonlocal/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nonlocal {

enum class Splitting { Lie, Strang };

std::string to_string(Splitting s);
Splitting splitting_from_string(const std::string &s);

struct SolverConfig {
  double tau = 0.01;
  //! Stop once successive eigenvalue estimates differ by less than tol.
  double tol = 1e-12;
  //! When > 0, additionally require ||u_k - u_{k-1}||_2 < vector_tol. The
  //! eigenvalue settles quadratically faster than the eigenfunction, so this
  //! is what drives symmetry-breaking components of the start field out.
  double vector_tol = 0.0;
  long max_iters = 200000;
  Splitting splitting = Splitting::Strang;
  std::uint64_t seed = 1;
  //! Dirichlet mode: iterates are restricted to grid points with |x| <= r.
  std::optional<double> projection;

  void validate() const;
};

struct EigenResult {
  double lambda = 0.0;
  Field phi;
  double residual = 0.0;
  long iters = 0;
  std::vector<double> history;
  bool converged = false;
  SolverConfig config;
};

//! Ground state of Phi(-Laplacian) + V by normalised imaginary-time
//! propagation. The eigenvalue is the Rayleigh quotient A_{Phi,V}(u,u) of the
//! current iterate. `initial`, when given, replaces the seeded start field.
EigenResult ground_state(const BernsteinSymbol &phi, const Field &V,
                         const SolverConfig &cfg,
                         const Field *initial = nullptr);

inline EigenResult ground_state(const BernsteinSymbol &phi,
                                const PotentialField &V,
                                const SolverConfig &cfg) {
  return ground_state(phi, V.field, cfg);
}

//! Principal eigenvalue of Phi(-Laplacian) on B_r with zero exterior
//! condition: the same iteration with V = 0 and projection onto B_r.
EigenResult dirichlet_ground_state(const BernsteinSymbol &phi, double r,
                                   const Grid &g, SolverConfig cfg);

struct ExistenceCriterion {
  double lambda_a = 0.0;
  bool satisfied = false;
  EigenResult dirichlet;
};

//! lambda_a = Dirichlet eigenvalue of B_a; satisfied iff lambda_a - v < 0,
//! in which case the sharp well of radius a and depth v has a ground state.
ExistenceCriterion existence_criterion(const BernsteinSymbol &phi, double a,
                                       double v, const Grid &g,
                                       const SolverConfig &cfg);

//! || Phi(|xi|^2) phi^ - lambda phi^ - F[V phi] ||_2 (restricted to the ball in
//! Dirichlet mode).
double fourier_residual(const BernsteinSymbol &phi, const Field &V,
                        const EigenResult &result);

//! Mask of grid points with |x| <= r.
Field ball_mask(const Grid &g, double r);

//! Deterministic positive start field for a seed.
Field seeded_positive_field(const Grid &g, std::uint64_t seed);

} // namespace nonlocal
