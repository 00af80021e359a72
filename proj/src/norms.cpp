#include "bep/norms.hpp"

#include <cmath>

namespace bep {

Norms grid_norms(const RealField& f) {
  const double dV = f.grid.cell_volume();
  double l1 = 0.0, l2sq = 0.0, linf = 0.0;
  for (double x : f.v) {
    const double a = std::abs(x);
    l1 += a;
    l2sq += x * x;
    if (a > linf) linf = a;
  }
  return Norms{l1 * dV, std::sqrt(l2sq * dV), linf};
}

double spectral_l2(const SpectralField& f) { return hk_seminorm(f, 0); }

double hk_seminorm(const SpectralField& f, int k) {
  if (k < 0) throw ValidationError("hk_seminorm: negative order");
  const GridSpec& g = f.grid;
  double acc = 0.0;
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double xi = g.wavenumber(g.freq_of(idx[d]));
      r2 += xi * xi;
    }
    double w = 1.0;
    for (int j = 0; j < k; ++j) w *= r2;  // |xi|^{2k}
    acc += w * std::norm(f.c[flat]);
  });
  return std::sqrt(g.volume() * acc);
}

double hk_norm(const SpectralField& f, int k) {
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double s = hk_seminorm(f, j);
    acc += s * s;
  }
  return std::sqrt(acc);
}

double spectral_l2(const SpectralVecField& w) {
  double acc = 0.0;
  for (const auto& comp : w.comp) {
    const double s = spectral_l2(comp);
    acc += s * s;
  }
  return std::sqrt(acc);
}

double hk_seminorm(const SpectralVecField& w, int k) {
  double acc = 0.0;
  for (const auto& comp : w.comp) {
    const double s = hk_seminorm(comp, k);
    acc += s * s;
  }
  return std::sqrt(acc);
}

}  // namespace bep
