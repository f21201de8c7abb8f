#include "nonlocal/grid.hpp"
#include "nonlocal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace nonlocal {

Grid::Grid(int d_, int n_, double L_) : d(d_), n(n_), L(L_) { validate(); }

void Grid::validate() const {
  if (d < 1 || d > 3)
    throw DomainError("grid: dimension must be 1, 2 or 3");
  if (n < 16 || (n & (n - 1)) != 0)
    throw DomainError("grid: n must be a power of two >= 16, got " +
                      std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L))
    throw DomainError("grid: L must be positive");
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < d; ++i)
    s *= static_cast<std::size_t>(n);
  return s;
}

double Grid::cell_volume() const { return std::pow(h(), d); }

int Grid::nearest_index(double x) const {
  const long i = std::lround((x + 0.5 * L) / h());
  return static_cast<int>(((i % n) + n) % n);
}

std::size_t Grid::flat(const std::array<int, 3> &idx) const {
  std::size_t k = 0;
  for (int a = 0; a < d; ++a)
    k = k * n + static_cast<std::size_t>(idx[a]);
  return k;
}

std::array<int, 3> Grid::unflat(std::size_t k) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(k % n);
    k /= n;
  }
  return idx;
}

std::vector<double> Grid::point(std::size_t k) const {
  const auto idx = unflat(k);
  std::vector<double> x(d);
  for (int a = 0; a < d; ++a)
    x[a] = coordinate(idx[a]);
  return x;
}

double Grid::radius(std::size_t k) const {
  const auto idx = unflat(k);
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) {
    const double c = coordinate(idx[a]);
    r2 += c * c;
  }
  return std::sqrt(r2);
}

Field::Field(const Grid &g, double fill) : grid(g), values(g.size(), fill) {
  g.validate();
}

Field::Field(const Grid &g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  g.validate();
  if (values.size() != g.size())
    throw GridMismatch("field: value count does not match grid");
}

Field Field::from_function(
    const Grid &g, const std::function<double(const std::vector<double> &)> &f) {
  Field u(g);
  for (std::size_t k = 0; k < u.size(); ++k)
    u[k] = f(g.point(k));
  return u;
}

void Field::check_finite(const char *context) const {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!std::isfinite(values[k]))
      throw NumericalError(std::string(context) + ": non-finite value at index " +
                           std::to_string(k));
}

void require_same_grid(const Field &a, const Field &b, const char *context) {
  if (a.grid != b.grid)
    throw GridMismatch(std::string(context) + ": fields live on different grids");
}

double inner(const Field &a, const Field &b) {
  require_same_grid(a, b, "inner");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += a[k] * b[k];
  return s * a.grid.cell_volume();
}

double l2_norm(const Field &u) { return std::sqrt(inner(u, u)); }

double lp_norm(const Field &u, double p) {
  if (!(p >= 1.0))
    throw DomainError("lp_norm: p must be >= 1");
  double s = 0.0;
  for (double v : u.values)
    s += std::pow(std::abs(v), p);
  return std::pow(s * u.grid.cell_volume(), 1.0 / p);
}

double sup_norm(const Field &u) {
  double m = 0.0;
  for (double v : u.values)
    m = std::max(m, std::abs(v));
  return m;
}

Field operator+(const Field &a, const Field &b) {
  require_same_grid(a, b, "operator+");
  Field c = a;
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] += b[k];
  return c;
}

Field operator-(const Field &a, const Field &b) {
  require_same_grid(a, b, "operator-");
  Field c = a;
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] -= b[k];
  return c;
}

Field operator*(double s, const Field &a) {
  Field c = a;
  for (double &v : c.values)
    v *= s;
  return c;
}

Field hadamard(const Field &a, const Field &b) {
  require_same_grid(a, b, "hadamard");
  Field c = a;
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] *= b[k];
  return c;
}

double interpolate(const Field &u, const std::vector<double> &x) {
  const Grid &g = u.grid;
  if (static_cast<int>(x.size()) != g.d)
    throw DomainError("interpolate: point dimension does not match grid");
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0, 0, 0};
  for (int a = 0; a < g.d; ++a) {
    const double s = (x[a] + 0.5 * g.L) / g.h();
    const double f = std::floor(s);
    base[a] = static_cast<int>(f);
    frac[a] = s - f;
  }
  double value = 0.0;
  for (int corner = 0; corner < (1 << g.d); ++corner) {
    std::array<int, 3> idx{0, 0, 0};
    double w = 1.0;
    for (int a = 0; a < g.d; ++a) {
      const int bit = (corner >> a) & 1;
      idx[a] = (((base[a] + bit) % g.n) + g.n) % g.n;
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0)
      value += w * u[g.flat(idx)];
  }
  return value;
}

std::vector<std::pair<double, double>> radial_profile(const Field &u) {
  const Grid &g = u.grid;
  const double h = g.h();
  std::map<long, std::pair<double, double>> bins; // bin -> (sum r, sum u), count separately
  std::map<long, long> counts;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double r = g.radius(k);
    const long b = std::lround(r / h);
    bins[b].first += r;
    bins[b].second += u[k];
    ++counts[b];
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(bins.size());
  for (const auto &[b, sums] : bins) {
    const double c = static_cast<double>(counts[b]);
    out.emplace_back(sums.first / c, sums.second / c);
  }
  return out;
}

} // namespace nonlocal
