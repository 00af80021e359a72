#include "bep/spectral_ops.hpp"

#include <cmath>
#include <cstdlib>

namespace bep {

void GridSpec::validate() const {
  if (n < 4 || n % 2 != 0)
    throw ValidationError("grid: n must be an even integer >= 4");
  if (!(L > 0.0)) throw ValidationError("grid: box length must be positive");
  if (dim != 1 && dim != 3) throw ValidationError("grid: dim must be 1 or 3");
}

SpectralField derive(const SpectralField& f, const std::array<int, 3>& order) {
  f.grid.validate();
  int total = 0;
  for (int d = 0; d < 3; ++d) {
    if (order[d] < 0) throw ValidationError("derive: negative derivative order");
    if (d >= f.grid.dim && order[d] > 0)
      throw ValidationError("derive: derivative along an absent axis");
    total += order[d];
  }
  if (total > 3) throw ValidationError("derive: total order above 3");

  const GridSpec& g = f.grid;
  // Per-axis multiplier tables: slot i -> (i xi_i)^order, with the Nyquist
  // slot zeroed whenever its derivative count is odd (m = -n/2 has no
  // conjugate partner; zeroing keeps derivatives of real data real).
  std::array<std::vector<cplx>, 3> axis;
  for (int d = 0; d < g.dim; ++d) {
    axis[d].resize(g.n);
    for (int i = 0; i < g.n; ++i) {
      const int m = g.freq_of(i);
      const bool nyquist = (2 * m == -g.n);
      if (order[d] > 0 && nyquist && (order[d] % 2 == 1)) {
        axis[d][i] = cplx(0.0, 0.0);
        continue;
      }
      cplx fac(1.0, 0.0);
      const cplx ixi(0.0, g.wavenumber(m));
      for (int p = 0; p < order[d]; ++p) fac *= ixi;
      axis[d][i] = fac;
    }
  }

  SpectralField out{g, std::vector<cplx>(g.num_points())};
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    cplx fac(1.0, 0.0);
    for (int d = 0; d < g.dim; ++d) fac *= axis[d][idx[d]];
    out.c[flat] = fac * f.c[flat];
  });
  return out;
}

SpectralField divergence(const SpectralVecField& w) {
  w.grid.validate();
  SpectralField out = SpectralField::zeros(w.grid);
  for (int d = 0; d < w.grid.dim; ++d) {
    std::array<int, 3> order{0, 0, 0};
    order[d] = 1;
    axpy(1.0, derive(w.comp[d], order), out);
  }
  return out;
}

SpectralVecField gradient(const SpectralField& f) {
  SpectralVecField out{f.grid, {}};
  for (int d = 0; d < f.grid.dim; ++d) {
    std::array<int, 3> order{0, 0, 0};
    order[d] = 1;
    out.comp.push_back(derive(f, order));
  }
  return out;
}

SpectralField poisson_solve(const SpectralField& rhs, double mean_tol) {
  rhs.grid.validate();
  const double mean = std::abs(rhs.c[0]);
  if (mean > mean_tol)
    throw NonZeroMeanError("poisson_solve: source has nonzero mean", mean);

  const GridSpec& g = rhs.grid;
  SpectralField phi{g, std::vector<cplx>(g.num_points())};
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double xi = g.wavenumber(g.freq_of(idx[d]));
      r2 += xi * xi;
    }
    phi.c[flat] = (r2 == 0.0) ? cplx(0.0, 0.0) : -rhs.c[flat] / r2;
  });
  return phi;
}

int dealias_kmax(int n) { return (n - 1) / 3; }

void apply_dealias(SpectralField& f) {
  const GridSpec& g = f.grid;
  const int K = dealias_kmax(g.n);
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    for (int d = 0; d < g.dim; ++d) {
      if (std::abs(g.freq_of(idx[d])) > K) {
        f.c[flat] = cplx(0.0, 0.0);
        return;
      }
    }
  });
}

void apply_dealias(SpectralVecField& w) {
  for (auto& comp : w.comp) apply_dealias(comp);
}

SpectralField zero_pad(const SpectralField& f, int fine_n) {
  const GridSpec& g = f.grid;
  g.validate();
  if (fine_n < g.n)
    throw ValidationError("zero_pad: target grid is coarser than the source");
  GridSpec fine{fine_n, g.L, g.dim};
  fine.validate();
  SpectralField out = SpectralField::zeros(fine);
  bool nyquist_content = false;
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    if (f.c[flat] == cplx(0.0, 0.0)) return;
    std::array<int, 3> tgt{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      const int m = g.freq_of(idx[d]);
      if (2 * m == -g.n && fine_n > g.n) {
        nyquist_content = true;
        return;
      }
      tgt[d] = (m >= 0) ? m : m + fine_n;
    }
    out.c[fine.encode(tgt)] = f.c[flat];
  });
  if (nyquist_content)
    throw ValidationError(
        "zero_pad: source carries Nyquist content, which has no unambiguous "
        "representation on the finer grid");
  return out;
}

SpectralField restrict_modes(const SpectralField& f, int coarse_n) {
  const GridSpec& g = f.grid;
  g.validate();
  if (coarse_n > g.n)
    throw ValidationError("restrict_modes: target grid is finer than the source");
  GridSpec coarse{coarse_n, g.L, g.dim};
  coarse.validate();
  SpectralField out = SpectralField::zeros(coarse);
  for_each_slot(coarse, [&](std::size_t flat, const std::array<int, 3>& idx) {
    std::array<int, 3> src{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
      const int m = coarse.freq_of(idx[d]);
      // Keep only |m| < coarse_n/2: the coarse Nyquist plane aggregates
      // several fine modes and is left empty.
      if (2 * std::abs(m) >= coarse_n) return;
      src[d] = (m >= 0) ? m : m + g.n;
    }
    out.c[flat] = f.c[g.encode(src)];
  });
  return out;
}

}  // namespace bep
