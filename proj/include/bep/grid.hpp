#pragma once
/**
 * Periodic grid geometry and the field containers the rest of the library
 * works on.
 *
 * Conventions, fixed here once and relied on everywhere:
 *
 *   - The domain is the dim-dimensional torus [0, L)^dim sampled at n points
 *     per axis, x_j = j L / n (no duplicated endpoint).
 *   - Flat storage is row-major: in 3-D the point (i0, i1, i2) lives at
 *     flat = (i0 * n + i1) * n + i2; spectral modes use the same layout.
 *   - Spectral slot i along an axis carries integer frequency m = i for
 *     i < (n+1)/2 and m = i - n otherwise, i.e. m in [-n/2, n/2) for even n;
 *     the physical wavenumber is xi = 2 pi m / L.
 *   - A spectral field stores Fourier-series amplitudes: f(x) =
 *     sum_m c_m exp(i xi_m . x).  With this normalization c_0 is the mean
 *     of f.  (The transforms in fft.hpp implement exactly this pairing.)
 */
#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "bep/errors.hpp"

namespace bep {

using cplx = std::complex<double>;

struct GridSpec {
  int n = 32;                       ///< points per axis
  double L = 2.0 * std::numbers::pi;  ///< box edge length
  int dim = 3;                      ///< 1, 2 or 3

  bool operator==(const GridSpec&) const = default;

  /// Throws ValidationError unless n >= 2, L > 0 and dim in {1,2,3}.
  void validate() const;

  std::size_t num_points() const {
    std::size_t p = 1;
    for (int d = 0; d < dim; ++d) p *= static_cast<std::size_t>(n);
    return p;
  }
  double dx() const { return L / n; }
  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= dx();
    return v;
  }
  double volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= L;
    return v;
  }

  /// Integer frequency stored in spectral slot i (0 <= i < n).
  int freq_of(int i) const { return (i < (n + 1) / 2) ? i : i - n; }
  /// Physical wavenumber for integer frequency m.
  double wavenumber(int m) const { return 2.0 * std::numbers::pi * m / L; }

  /// Decode a flat index into per-axis slots (unused axes stay 0).
  std::array<int, 3> decode(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(flat % n);
      flat /= n;
    }
    return idx;
  }
  std::size_t encode(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim; ++d) flat = flat * n + idx[d];
    return flat;
  }
};

/// Visit every mode (or grid point) once: f(flat, slots) with slots the
/// per-axis indices.  Loops are unrolled per dimension so the hot paths
/// stay branch-free inside.
template <class F>
inline void for_each_slot(const GridSpec& g, F&& f) {
  const int n = g.n;
  if (g.dim == 1) {
    for (int i0 = 0; i0 < n; ++i0)
      f(static_cast<std::size_t>(i0), std::array<int, 3>{i0, 0, 0});
  } else if (g.dim == 2) {
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1, ++flat)
        f(flat, std::array<int, 3>{i0, i1, 0});
  } else {
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2, ++flat)
          f(flat, std::array<int, 3>{i0, i1, i2});
  }
}

struct RealField {
  GridSpec grid;
  std::vector<double> v;

  static RealField zeros(const GridSpec& g) {
    g.validate();
    return RealField{g, std::vector<double>(g.num_points(), 0.0)};
  }
};

struct SpectralField {
  GridSpec grid;
  std::vector<cplx> c;

  static SpectralField zeros(const GridSpec& g) {
    g.validate();
    return SpectralField{g, std::vector<cplx>(g.num_points(), cplx{0.0, 0.0})};
  }
  /// Mean of the underlying physical field (the zero-mode amplitude).
  cplx mean() const { return c[0]; }
};

/// dim-component vector fields; comp.size() == grid.dim always.
struct RealVecField {
  GridSpec grid;
  std::vector<RealField> comp;

  static RealVecField zeros(const GridSpec& g) {
    g.validate();
    RealVecField w{g, {}};
    for (int d = 0; d < g.dim; ++d) w.comp.push_back(RealField::zeros(g));
    return w;
  }
};

struct SpectralVecField {
  GridSpec grid;
  std::vector<SpectralField> comp;

  static SpectralVecField zeros(const GridSpec& g) {
    g.validate();
    SpectralVecField w{g, {}};
    for (int d = 0; d < g.dim; ++d) w.comp.push_back(SpectralField::zeros(g));
    return w;
  }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* where) {
  if (!(a == b))
    throw GridMismatchError(std::string(where) + ": fields live on different grids");
}

// --- small in-place arithmetic used by the integrators -----------------

inline void axpy(double a, const SpectralField& x, SpectralField& y) {
  require_same_grid(x.grid, y.grid, "axpy");
  for (std::size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}

inline void axpy(double a, const SpectralVecField& x, SpectralVecField& y) {
  require_same_grid(x.grid, y.grid, "axpy");
  for (std::size_t d = 0; d < y.comp.size(); ++d) axpy(a, x.comp[d], y.comp[d]);
}

}  // namespace bep
