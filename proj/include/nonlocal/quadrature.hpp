#pragma once

#include <functional>
#include <string>

namespace nonlocal {

enum class QuadMethod { AdaptiveSubdivision, DoubleExponential };

//! Error control shared by every integral representation in the library.
struct QuadratureSpec {
  QuadMethod method = QuadMethod::DoubleExponential;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  long max_evals = 200000;

  //! Throws DomainError unless abs_tol > 0, rel_tol > 0, max_evals >= 100.
  void validate() const;
  //! max(abs_tol, rel_tol*|value|)
  double target(double value) const;
};

std::string to_string(QuadMethod m);
QuadMethod quad_method_from_string(const std::string &s);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
};

using Integrand = std::function<double(double)>;

namespace quad {

//! Globally adaptive 7/15-point Gauss-Kronrod on the finite interval [a, b].
//! Throws QuadratureError (carrying the partial value) when the error target
//! is not met within spec.max_evals.
QuadResult gauss_kronrod(const Integrand &f, double a, double b,
                         const QuadratureSpec &spec);

//! tanh-sinh rule on [a, b]; tolerates integrable endpoint singularities.
QuadResult tanh_sinh(const Integrand &f, double a, double b,
                     const QuadratureSpec &spec);

//! Trapezoidal rule on the whole real line for integrands with
//! double-exponential decay in both directions. `centre` should sit near
//! the bulk of the integrand. Step is halved until successive sums agree.
QuadResult de_trapezoid(const Integrand &f, double centre,
                        const QuadratureSpec &spec);

//! Finite interval, rule chosen by spec.method.
QuadResult integrate(const Integrand &f, double a, double b,
                     const QuadratureSpec &spec);

//! [a, inf) via x = a + t/(1-t) and Gauss-Kronrod on [0, 1).
QuadResult integrate_to_infinity(const Integrand &f, double a,
                                 const QuadratureSpec &spec);

} // namespace quad
} // namespace nonlocal
