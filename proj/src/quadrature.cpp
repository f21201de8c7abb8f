#include "nonlocal/quadrature.hpp"
#include "nonlocal/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace nonlocal {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0))
    throw DomainError("QuadratureSpec: abs_tol must be > 0");
  if (!(rel_tol > 0.0))
    throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (max_evals < 100)
    throw DomainError("QuadratureSpec: max_evals must be >= 100");
}

double QuadratureSpec::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

std::string to_string(QuadMethod m) {
  return m == QuadMethod::AdaptiveSubdivision ? "adaptive-subdivision"
                                              : "double-exponential";
}

QuadMethod quad_method_from_string(const std::string &s) {
  if (s == "adaptive-subdivision")
    return QuadMethod::AdaptiveSubdivision;
  if (s == "double-exponential")
    return QuadMethod::DoubleExponential;
  throw DomainError("unknown quadrature method '" + s + "'");
}

namespace quad {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment &o) const { return error < o.error; }
};

Segment gk15(const Integrand &f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += wgk[j] * s;
    if (j % 2 == 1)
      gauss += wg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

void check_finite(double v, const char *where) {
  if (!std::isfinite(v))
    throw NumericalError(std::string(where) + ": non-finite integrand value");
}

} // namespace

QuadResult gauss_kronrod(const Integrand &f, double a, double b,
                         const QuadratureSpec &spec) {
  spec.validate();
  if (a == b)
    return {};
  if (b < a) {
    auto r = gauss_kronrod(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  check_finite(first.value, "gauss_kronrod");
  heap.push(first);
  long evals = 15;
  double total = first.value;
  double err = first.error;
  while (err > spec.target(total)) {
    if (evals + 30 > spec.max_evals)
      throw QuadratureError("gauss_kronrod: evaluation budget exhausted",
                            total, err);
    const Segment s = heap.top();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b))
      throw QuadratureError("gauss_kronrod: interval underflow", total, err);
    heap.pop();
    const Segment l = gk15(f, s.a, mid);
    const Segment r = gk15(f, mid, s.b);
    check_finite(l.value + r.value, "gauss_kronrod");
    evals += 30;
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    // Re-summing now and then keeps cancellation drift out of `err`.
    if (evals % 3000 < 30) {
      auto copy = heap;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  // Final exact resummation in deterministic order.
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment &x, const Segment &y) { return x.a < y.a; });
  total = 0.0;
  err = 0.0;
  for (const auto &s : segs) {
    total += s.value;
    err += s.error;
  }
  return {total, err, evals};
}

QuadResult tanh_sinh(const Integrand &f, double a, double b,
                     const QuadratureSpec &spec) {
  spec.validate();
  if (a == b)
    return {};
  const double c = 0.5 * (a + b);
  const double h0 = 0.5 * (b - a);
  const double half_pi = 0.5 * std::numbers::pi;
  // Nodes are generated from the distance to the nearer endpoint so that
  // singular endpoints are never sampled exactly.
  auto term = [&](double t) {
    const double s = half_pi * std::sinh(t);
    const double ch = std::cosh(s);
    const double w = half_pi * std::cosh(t) / (ch * ch);
    const double dist = 1.0 / (std::exp(s) * ch); // 1 - tanh(s)
    if (dist < 1e-40 || w == 0.0)
      return 0.0;
    const double xp = b - h0 * dist;
    const double xm = a + h0 * dist;
    double v = 0.0;
    if (xp < b && xp > a)
      v += f(xp);
    if (xm > a && xm < b)
      v += f(xm);
    return w * v;
  };
  constexpr double tmax = 6.0;
  double step = 0.5;
  double sum = half_pi * f(c);
  long evals = 1;
  for (double t = step; t <= tmax; t += step) {
    sum += term(t);
    evals += 2;
  }
  double estimate = h0 * step * sum;
  for (int level = 1; level < 16; ++level) {
    step *= 0.5;
    for (double t = step; t <= tmax; t += 2.0 * step) {
      sum += term(t);
      evals += 2;
    }
    const double next = h0 * step * sum;
    check_finite(next, "tanh_sinh");
    const double err = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && err <= spec.target(next))
      return {next, err, evals};
    if (evals > spec.max_evals)
      throw QuadratureError("tanh_sinh: evaluation budget exhausted", next,
                            err);
  }
  throw QuadratureError("tanh_sinh: no convergence", estimate,
                        std::abs(estimate));
}

QuadResult de_trapezoid(const Integrand &f, double centre,
                        const QuadratureSpec &spec) {
  spec.validate();
  const double peak = std::abs(f(centre));
  long evals = 1;
  // Find where the tails fall below a negligible fraction of the peak.
  auto extent = [&](double dir) {
    double off = 0.25;
    for (int i = 0; i < 200; ++i) {
      const double v = std::abs(f(centre + dir * off));
      ++evals;
      if (v <= 1e-18 * peak || v == 0.0)
        return off;
      off *= 1.25;
    }
    return off;
  };
  const double lo = centre - extent(-1.0);
  const double hi = centre + extent(1.0);
  double step = (hi - lo) / 16.0;
  double sum = 0.0;
  for (int i = 0; i <= 16; ++i) {
    sum += f(lo + i * step);
    ++evals;
  }
  double estimate = step * sum;
  for (int level = 0; level < 20; ++level) {
    const long npts = std::lround((hi - lo) / step);
    for (long i = 0; i < npts; ++i)
      sum += f(lo + (i + 0.5) * step);
    evals += npts;
    step *= 0.5;
    const double next = step * sum;
    check_finite(next, "de_trapezoid");
    const double err = std::abs(next - estimate);
    estimate = next;
    // Trapezoid converges quadratically in the exponent once resolved, so a
    // small change between levels is already far above the true error.
    if (level >= 1 && err <= spec.target(next))
      return {next, err, evals};
    if (evals > spec.max_evals)
      throw QuadratureError("de_trapezoid: evaluation budget exhausted", next,
                            err);
  }
  throw QuadratureError("de_trapezoid: no convergence", estimate,
                        std::abs(estimate));
}

QuadResult integrate(const Integrand &f, double a, double b,
                     const QuadratureSpec &spec) {
  if (spec.method == QuadMethod::DoubleExponential)
    return tanh_sinh(f, a, b, spec);
  return gauss_kronrod(f, a, b, spec);
}

QuadResult integrate_to_infinity(const Integrand &f, double a,
                                 const QuadratureSpec &spec) {
  auto g = [&](double t) {
    if (t >= 1.0)
      return 0.0;
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return gauss_kronrod(g, 0.0, 1.0, spec);
}

} // namespace quad
} // namespace nonlocal
