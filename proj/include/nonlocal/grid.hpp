#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace nonlocal {

//! Uniform periodic grid on the torus [-L/2, L/2)^d, standing in for R^d.
//! Point i along an axis sits at -L/2 + i h, so the origin is a grid point and
//! x -> -x maps the grid onto itself.
struct Grid {
  int d = 1;
  int n = 64;
  double L = 20.0;

  Grid() = default;
  Grid(int d, int n, double L);

  //! Throws DomainError unless d in {1,2,3}, n >= 16 a power of two, L > 0.
  void validate() const;

  double h() const { return L / n; }
  std::size_t size() const;
  //! h^d, the measure attached to each grid point.
  double cell_volume() const;
  double coordinate(int i) const { return -0.5 * L + i * h(); }
  //! Per-axis index of the point nearest to the coordinate x (wrapped).
  int nearest_index(double x) const;

  //! Row-major flat index; the last axis varies fastest.
  std::size_t flat(const std::array<int, 3> &idx) const;
  std::array<int, 3> unflat(std::size_t k) const;
  //! Coordinates of flat point k (d entries).
  std::vector<double> point(std::size_t k) const;
  double radius(std::size_t k) const;

  bool operator==(const Grid &o) const {
    return d == o.d && n == o.n && L == o.L;
  }
  bool operator!=(const Grid &o) const { return !(*this == o); }
};

//! Real samples on a grid; norms and inner products carry the weight h^d.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid &g, double fill = 0.0);
  Field(const Grid &g, std::vector<double> v);

  static Field from_function(const Grid &g,
                             const std::function<double(const std::vector<double> &)> &f);

  std::size_t size() const { return values.size(); }
  double &operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  //! Throws NumericalError if any entry is NaN or infinite.
  void check_finite(const char *context) const;
};

void require_same_grid(const Field &a, const Field &b, const char *context);

double inner(const Field &a, const Field &b);
double l2_norm(const Field &u);
double lp_norm(const Field &u, double p);
double sup_norm(const Field &u);

Field operator+(const Field &a, const Field &b);
Field operator-(const Field &a, const Field &b);
Field operator*(double s, const Field &a);
//! Pointwise product.
Field hadamard(const Field &a, const Field &b);

//! Value of the field at an arbitrary point by multilinear interpolation of
//! the periodic samples.
double interpolate(const Field &u, const std::vector<double> &x);

//! Shell average of u over |x| in bins of width h, returned as (r, mean) pairs
//! sorted by r. In d = 1 this averages u(x) and u(-x).
std::vector<std::pair<double, double>> radial_profile(const Field &u);

} // namespace nonlocal
