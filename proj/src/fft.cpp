#include "nonlocal/fft.hpp"
#include "nonlocal/errors.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

namespace nonlocal {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are made once per (d, n) on aligned scratch arrays and reused with
// per-call fftw_malloc buffers, which share the same alignment.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair> plan_cache;

std::size_t complex_count(const Grid &g) {
  return g.size() / g.n * (g.n / 2 + 1);
}

const PlanPair &plans_for(const Grid &g) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(g.d, g.n);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end())
    return it->second;
  int dims[3] = {g.n, g.n, g.n};
  double *real = fftw_alloc_real(g.size());
  fftw_complex *cplx = fftw_alloc_complex(complex_count(g));
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c(g.d, dims, real, cplx, FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r(g.d, dims, cplx, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(cplx);
  if (!p.r2c || !p.c2r)
    throw NumericalError("fft: plan creation failed");
  return plan_cache.emplace(key, p).first->second;
}

struct Buffers {
  double *real;
  fftw_complex *cplx;
  explicit Buffers(const Grid &g)
      : real(fftw_alloc_real(g.size())),
        cplx(fftw_alloc_complex(complex_count(g))) {}
  ~Buffers() {
    fftw_free(real);
    fftw_free(cplx);
  }
  Buffers(const Buffers &) = delete;
  Buffers &operator=(const Buffers &) = delete;
};

} // namespace

Spectrum forward(const Field &u) {
  const Grid &g = u.grid;
  const PlanPair &p = plans_for(g);
  Buffers b(g);
  std::memcpy(b.real, u.values.data(), g.size() * sizeof(double));
  fftw_execute_dft_r2c(p.r2c, b.real, b.cplx);
  Spectrum s;
  s.grid = g;
  const std::size_t m = complex_count(g);
  s.coeffs.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    s.coeffs[k] = {b.cplx[k][0], b.cplx[k][1]};
  return s;
}

Field inverse(const Spectrum &s) {
  const Grid &g = s.grid;
  const std::size_t m = complex_count(g);
  if (s.coeffs.size() != m)
    throw GridMismatch("inverse: spectrum size does not match grid");
  const PlanPair &p = plans_for(g);
  Buffers b(g);
  for (std::size_t k = 0; k < m; ++k) {
    b.cplx[k][0] = s.coeffs[k].real();
    b.cplx[k][1] = s.coeffs[k].imag();
  }
  // c2r destroys its input; b.cplx is scratch.
  fftw_execute_dft_c2r(p.c2r, b.cplx, b.real);
  Field u(g);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    u[k] = b.real[k] * scale;
  return u;
}

std::vector<double> frequency_squared(const Grid &g) {
  const int n = g.n;
  const int half = n / 2 + 1;
  const double dk = 2.0 * std::numbers::pi / g.L;
  auto freq = [&](int j) { return dk * (j < n / 2 ? j : j - n); };
  std::vector<double> out(complex_count(g));
  std::size_t k = 0;
  const int outer = g.d >= 2 ? n : 1;
  const int middle = g.d == 3 ? n : 1;
  for (int a = 0; a < outer; ++a) {
    for (int b = 0; b < middle; ++b) {
      double base = 0.0;
      if (g.d == 2) {
        base = freq(a) * freq(a);
      } else if (g.d == 3) {
        base = freq(a) * freq(a) + freq(b) * freq(b);
      }
      for (int c = 0; c < half; ++c) {
        const double fc = freq(c);
        out[k++] = base + fc * fc;
      }
    }
  }
  return out;
}

std::vector<double> hermitian_weights(const Grid &g) {
  const int half = g.n / 2 + 1;
  std::vector<double> w(complex_count(g));
  for (std::size_t k = 0; k < w.size(); ++k) {
    const int c = static_cast<int>(k % half);
    w[k] = (c == 0 || c == g.n / 2) ? 1.0 : 2.0;
  }
  return w;
}

} // namespace nonlocal
