#pragma once

#include "nonlocal/bernstein.hpp"
#include "nonlocal/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nonlocal {

//! Spec used internally for kernel evaluations: relative accuracy only, so
//! exponentially small Bessel values keep their significant digits.
QuadratureSpec kernel_spec();

//! c(d, alpha) = 2^alpha Gamma((d+alpha)/2) / (pi^{d/2} |Gamma(-alpha/2)|)
double massless_constant(int d, double alpha);

//! alpha 2^{(alpha-d)/2} / (pi^{d/2} Gamma(1 - alpha/2)); the common prefactor
//! of the massive kernel, its derivative and sigma.
double massive_prefactor(int d, double alpha);

//! j_{0,alpha}(r) = c(d,alpha) / r^{d+alpha}
double j_massless(int d, double alpha, double r);

//! Bessel form of the massive relativistic jump kernel.
double j_massive(int d, double alpha, double mass, double r,
                 const QuadratureSpec &q = kernel_spec());

//! sigma_{m,alpha}(r) = j_{0,alpha}(r) - j_{m,alpha}(r), evaluated from the
//! finite integral int_0^{m^{1/alpha} r} w^{(d+alpha)/2} K_{(d+alpha)/2-1}(w) dw.
double sigma(int d, double alpha, double mass, double r,
             const QuadratureSpec &q = kernel_spec());

//! The same quantity through the closed difference of the two kernels.
double sigma_difference_form(int d, double alpha, double mass, double r,
                             const QuadratureSpec &q = kernel_spec());

//! d/dr j_{m,alpha}(r) (strictly negative).
double j_prime_massive(int d, double alpha, double mass, double r,
                       const QuadratureSpec &q = kernel_spec());

//! Transition density p_t(x) of the subordinate process, from the radial
//! Fourier reduction of (2 pi)^{-d} int e^{-i x.xi} e^{-t Phi(|xi|^2)} d xi.
//! `x` is a point of R^d with d = x.size() in {1, 2, 3}.
double heat_kernel(const BernsteinSymbol &phi, double t,
                   const std::vector<double> &x,
                   const QuadratureSpec &q = {});

//! Radial form of heat_kernel for dimension d and |x| = r.
double heat_kernel_radial(const BernsteinSymbol &phi, int d, double t,
                          double r, const QuadratureSpec &q = {});

//! int_{R^d} p_t(x) dx, computed by radial quadrature of heat_kernel.
double heat_kernel_mass(const BernsteinSymbol &phi, int d, double t,
                        const QuadratureSpec &q = {});

struct ResolventValue {
  double value = 0.0;
  //! Size of the small-time contribution that was replaced by t j(|x|).
  double truncation_error = 0.0;
};

//! G_1(x) = int_0^inf e^{-t} p_t(x) dt for x != 0.
ResolventValue resolvent_kernel(const BernsteinSymbol &phi,
                                const std::vector<double> &x,
                                const QuadratureSpec &q = {});

//! M(R) = R^{-2} int_{B_R} |x|^2 j_Phi(|x|) dx for each R in an increasing list.
std::vector<double> second_moment_decay(const BernsteinSymbol &phi, int d,
                                        const std::vector<double> &radii,
                                        const QuadratureSpec &q = {});

enum class KernelId { J, Sigma, JPrime, Heat, Resolvent };

std::string to_string(KernelId k);
KernelId kernel_id_from_string(const std::string &s);

//! Radial samples of one kernel with per-sample error estimates.
struct KernelTable {
  KernelId kernel_id = KernelId::J;
  int dimension = 1;
  double mass = 0.0;
  double alpha = 1.0;
  std::optional<double> time; // heat kernel only
  QuadratureSpec quadrature;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> error_estimates;

  //! Throws DomainError if radii are not strictly increasing and positive or
  //! the kernel-specific sign/monotonicity invariants fail.
  void validate() const;
};

//! Evaluate a relativistic kernel on the given radii. Samples are independent
//! and may be computed on `threads` workers; ordering is deterministic.
KernelTable build_kernel_table(KernelId id, const BernsteinSymbol &phi, int d,
                               const std::vector<double> &radii,
                               std::optional<double> time = std::nullopt,
                               const QuadratureSpec &q = {}, int threads = 1);

} // namespace nonlocal
