#include "bep/hodge.hpp"

#include <cmath>

namespace bep {

ZeroModePolicy ZeroModePolicy::of(const SpectralVecField& w) {
  ZeroModePolicy z;
  z.dim = w.grid.dim;
  for (int d = 0; d < z.dim; ++d) z.mean[d] = w.comp[d].c[0];
  return z;
}

namespace {

// Effective wavevector of a slot, matching the first-derivative multiplier
// convention: the unpaired Nyquist frequency has no representable first
// derivative, so its component is zero.  Using the same convention here
// keeps div(d) exactly zero under the code's own divergence operator and
// keeps v Hermitian (hence real in physical space) for every real input.
void effective_xi(const GridSpec& g, const std::array<int, 3>& idx,
                  double xi[3], double& r2) {
  r2 = 0.0;
  for (int d = 0; d < g.dim; ++d) {
    xi[d] = idx[d] == g.n / 2 ? 0.0 : g.wavenumber(g.freq_of(idx[d]));
    r2 += xi[d] * xi[d];
  }
}

}  // namespace

HodgeParts hodge_decompose(const SpectralVecField& w) {
  const GridSpec& g = w.grid;
  g.validate();
  HodgeParts parts{SpectralField::zeros(g), SpectralVecField::zeros(g)};

  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    if (flat == 0) return;  // the mean belongs to the sidecar
    double xi[3];
    double r2;
    effective_xi(g, idx, xi, r2);
    if (r2 == 0.0) {
      // Pure-Nyquist slot: the projector degenerates to the identity, so
      // the whole amplitude is solenoidal in the discrete sense.
      for (int d = 0; d < g.dim; ++d)
        parts.d.comp[d].c[flat] = w.comp[d].c[flat];
      return;
    }
    const double r = std::sqrt(r2);

    cplx dot(0.0, 0.0);
    for (int d = 0; d < g.dim; ++d) dot += xi[d] * w.comp[d].c[flat];

    parts.v.c[flat] = cplx(0.0, 1.0) * dot / r;
    const cplx proj = dot / r2;
    for (int d = 0; d < g.dim; ++d)
      parts.d.comp[d].c[flat] = w.comp[d].c[flat] - xi[d] * proj;
  });
  return parts;
}

SpectralVecField hodge_reconstruct(const HodgeParts& parts,
                                   const ZeroModePolicy& zero_mode) {
  const GridSpec& g = parts.v.grid;
  g.validate();
  require_same_grid(g, parts.d.grid, "hodge_reconstruct");
  if (zero_mode.dim != g.dim)
    throw GridMismatchError("hodge_reconstruct: zero-mode dimension mismatch");

  SpectralVecField w = SpectralVecField::zeros(g);
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    if (flat == 0) {
      for (int d = 0; d < g.dim; ++d) w.comp[d].c[flat] = zero_mode.mean[d];
      return;
    }
    double xi[3];
    double r2;
    effective_xi(g, idx, xi, r2);
    if (r2 == 0.0) {  // pure-Nyquist slot: everything lives in d
      for (int d = 0; d < g.dim; ++d)
        w.comp[d].c[flat] = parts.d.comp[d].c[flat];
      return;
    }
    const double r = std::sqrt(r2);
    const cplx minus_i_v = cplx(0.0, -1.0) * parts.v.c[flat];
    for (int d = 0; d < g.dim; ++d)
      w.comp[d].c[flat] = (xi[d] / r) * minus_i_v + parts.d.comp[d].c[flat];
  });
  return w;
}

}  // namespace bep
