#pragma once
/**
 * Grid-function and spectral norms.
 *
 * Physical-side norms are plain Riemann sums on the uniform grid:
 *   L1 = sum |f| dV,  L2 = sqrt(sum |f|^2 dV),  Linf = max |f|.
 * Spectral-side L2/Hk norms use Parseval in the fft.hpp convention, with
 * the homogeneous multiplier |xi|^k for the k-th derivative seminorm.
 * spectral_l2(forward(f)) and grid_norms(f).l2 agree to roundoff.
 */
#include "bep/grid.hpp"

namespace bep {

struct Norms {
  double l1, l2, linf;
};

Norms grid_norms(const RealField& f);

/// sqrt(volume * sum_m |c_m|^2)  ==  grid L2 of the represented field.
double spectral_l2(const SpectralField& f);

/// Homogeneous seminorm sqrt(volume * sum_m |xi_m|^{2k} |c_m|^2); k = 0
/// recovers spectral_l2.
double hk_seminorm(const SpectralField& f, int k);

/// Inhomogeneous Sobolev norm sqrt(sum_{j<=k} hk_seminorm(f,j)^2).
double hk_norm(const SpectralField& f, int k);

/// Euclidean combination over vector components.
double spectral_l2(const SpectralVecField& w);
double hk_seminorm(const SpectralVecField& w, int k);

}  // namespace bep
