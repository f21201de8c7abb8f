#pragma once

#include "nonlocal/bernstein.hpp"
#include "nonlocal/eigensolver.hpp"
#include "nonlocal/potentials.hpp"
#include "nonlocal/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nonlocal {

//! Convergence of ground states along a sequence of potentials V_k -> V.
struct StabilityReport {
  std::string parameter; // "eps", "k" or "shift"
  std::vector<double> parameters;
  std::vector<double> lambdas;
  double lambda_target = 0.0;
  std::vector<double> lambda_gaps; // |lambda_k - lambda_target|
  std::vector<double> l2_gaps;     // sign-aligned ||phi_k - phi||_2
  std::vector<double> op_gaps;     // ||Phi(-Lap)(phi_k - phi)||_2, when computed
  std::vector<bool> inner_converged;
  //! |lambda(n) - lambda(2n)| of the target run (0 when not measured).
  double discretization_floor = 0.0;
  bool converged = false;
  bool monotone_gap_decay = false;
  bool monotone_l2_decay = false;
  //! lambda_a - (lambda_k + v): positive when the Rayleigh bound with the
  //! Dirichlet eigenfunction of B_a is respected (wells only).
  std::vector<double> lemma_margins;
  //! Anharmonic runs: L^2 mass of phi_k outside the unit ball, and whether
  //! any potential hit the overflow clamp.
  std::vector<double> outside_mass;
  bool clamped = false;

  //! Kept for downstream drivers (operator images, monotonicity); not exported.
  std::vector<EigenResult> runs;
  std::optional<EigenResult> target;
};

struct StabilityOptions {
  int threads = 1;
  //! Run the target again on a grid with n doubled to measure the floor.
  bool measure_floor = true;
  //! Dirichlet eigenvalue of B_a for the margin column, if known.
  std::optional<double> lambda_a;
};

//! Mollified wells V_eps (eps from the schedule, strictly decreasing, each
//! either 0 or >= 2h) against the sharp well with the same a, v.
StabilityReport stability_sweep(const BernsteinSymbol &phi, const WellSpec &well,
                                 const std::vector<double> &eps_schedule,
                                 const Grid &g, const SolverConfig &cfg,
                                 const StabilityOptions &opt = {});

//! V_k = V - v/k for the sharp well; lambda_k = lambda - v/k exactly.
StabilityReport shift_sweep(const BernsteinSymbol &phi, const WellSpec &well,
                            const std::vector<int> &k_list, const Grid &g,
                            const SolverConfig &cfg, int threads = 1);

//! Anharmonic oscillators |x|^{2k} against the Dirichlet problem on B_1.
//! `dirichlet_cfg` controls the projected target run.
StabilityReport anharmonic_to_dirichlet(const BernsteinSymbol &phi,
                                        const std::vector<int> &k_list,
                                        const Grid &g, const SolverConfig &cfg,
                                        const SolverConfig &dirichlet_cfg,
                                        int threads = 1);

struct ImageConvergence {
  std::vector<double> parameters;
  std::vector<double> gaps;   // ||Phi(-Lap) phi_eps - Phi(-Lap) phi||_2
  std::vector<double> bounds; // identity-based triangle bound
  bool decreasing = false;
  bool triangle_holds = false;
};

//! Operator images of the runs of a stability sweep. The bound is
//! |lambda_e| ||phi_e - phi|| + |lambda_e - lambda| ||phi|| + ||V_e phi_e - V phi||
//! plus the two discrete eigen-residuals, which the continuum identity omits.
ImageConvergence operator_image_convergence(const BernsteinSymbol &phi,
                                            const WellSpec &well,
                                            const StabilityReport &sweep,
                                            double slack = 1e-8);

struct SymmetryDefect {
  //! max ||phi o R - phi||_2 over grid-exact maps (parity, axis flips and
  //! permutations).
  double exact = 0.0;
  //! max over sampled generic rotations (d = 2 only), by bilinear
  //! interpolation of phi o R.
  double interpolated = 0.0;
};

SymmetryDefect symmetry_check(const EigenResult &result, int rotations = 8);

struct MonotonicityReport {
  std::vector<double> radii;
  std::vector<double> profile;
  //! Largest positive increment of the profile between consecutive shells.
  double max_violation = 0.0;
  double max_violation_inside = 0.0;  // shells with r <= a
  double max_violation_outside = 0.0; // shells with r >= a (or a + eps)
  double chi0 = 0.0;
  double symmetry_defect = 0.0;
};

//! Shell-averaged profile of result.phi with violation statistics; `a` splits
//! the inside/outside flags (pass a + eps for mollified wells).
MonotonicityReport monotonicity_check(const EigenResult &result, double a = 0.0);

//! Monotonicity statistics of an arbitrary radial sample list.
MonotonicityReport monotonicity_of_profile(const std::vector<double> &radii,
                                           const std::vector<double> &profile,
                                           double a = 0.0);

//! w_mu(x) = u(x^mu) - u(x) with x^mu = (2 mu - x_1, x'), nearest grid point.
Field moving_plane_difference(const Field &u, double mu);

struct AntisymmetricCheck {
  double mu = 0.0;
  std::vector<double> x_star;
  double w_star = 0.0;
  double delta = 0.0;
  double lhs = 0.0;
  //! Right sides (m > 0 only; NaN otherwise).
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0;
  //! delta int_{U_mu} (w(y) - w(x)) (mu - y_1) K(...)/|x - y^mu|^{...} dy
  double boundary_integral = 0.0;
  double reflection_defect = 0.0;
  bool lhs_negative = false;
  bool rhs1_holds = false;
  bool rhs2_holds = false;
};

//! Second-difference value of Phi_{m,alpha}(-Laplacian) w at the minimiser of
//! w on U_mu = {x_1 < mu}, compared with the explicit upper bounds for the
//! relativistic operator. Bounds use delta_1 = delta. d = 1 only.
AntisymmetricCheck antisymmetric_minimum_check(double m, double alpha, int d,
                                               const PointFunction &w, double mu,
                                               const QuadratureSpec &q = {});

//! Constants of the antisymmetric-minimum bounds.
double antisym_C1(int d, double alpha);
double antisym_C2(int d, double alpha);
double antisym_C3(int d, double m, double alpha);
double antisym_C4(int d, double m, double alpha, double delta1);

struct EmbeddingCheck {
  double s = 0.0;
  double c_low = 0.0;
  std::vector<double> lhs; // [[u]]_s^2
  std::vector<double> rhs; // (2/c_low)[u]_Phi^2 + (4 sigma_d/(2s))||u||^2
  bool all_pass = false;
};

//! min over r in (0,1] of r^{d+2s} j_Phi(r), on a log grid.
double embedding_lower_constant(const BernsteinSymbol &phi, int d, double s);

EmbeddingCheck embedding_tail_check(const BernsteinSymbol &phi,
                                    const std::vector<Field> &samples, double s,
                                    const QuadratureSpec &q = {});

//! Real field with random Fourier coefficients on |k| <= kmax (lattice
//! units), zero elsewhere; deterministic in the seed.
Field random_band_limited_field(const Grid &g, std::uint64_t seed, int kmax);

nlohmann::json to_json(const StabilityReport &r);
nlohmann::json to_json(const ImageConvergence &r);
nlohmann::json to_json(const MonotonicityReport &r);
nlohmann::json to_json(const AntisymmetricCheck &r);
nlohmann::json to_json(const EmbeddingCheck &r);

//! `<parameter>,lambda,gap_lambda,gap_l2[,gap_op]` rows.
void write_stability_csv(const StabilityReport &r,
                         const std::filesystem::path &path);

} // namespace nonlocal
