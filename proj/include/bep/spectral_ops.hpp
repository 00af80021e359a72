#pragma once
/**
 * Mode-space operators: differentiation, the periodic Poisson solve,
 * 2/3-rule dealiasing, and zero-pad / mode-restriction transfers between
 * grids.  All of them act on SpectralField amplitudes in the convention of
 * fft.hpp.
 */
#include <array>
#include <cstdint>
#include <vector>

#include "bep/grid.hpp"

namespace bep {

/// Partial derivative with multi-index `order` (order[d] applied along axis
/// d): each coefficient is multiplied by prod_d (i xi_d)^{order[d]}.  On
/// even grids the Nyquist slot m = -n/2 has no signed partner, so any axis
/// with an odd derivative count zeroes that slot (the standard convention
/// that keeps derivatives of real fields real).  Total order must be <= 3.
SpectralField derive(const SpectralField& f, const std::array<int, 3>& order);

/// Divergence of a spectral vector field.
SpectralField divergence(const SpectralVecField& w);

/// Gradient of a spectral scalar field.
SpectralVecField gradient(const SpectralField& f);

/// Solve Laplace(phi) = rhs on the torus:  phi_hat = -rhs_hat / |xi|^2 with
/// phi_hat(0) = 0.  Solvability requires a mean-free source; |mean rhs|
/// above `mean_tol` throws NonZeroMeanError.
SpectralField poisson_solve(const SpectralField& rhs, double mean_tol = 1e-12);

/// Largest retained integer frequency of the 2/3 rule on an n-point axis:
/// K = floor((n-1)/3).  Products of two band-limited fields (|m| <= K)
/// then alias only onto killed modes, because 2K - n < -K.
int dealias_kmax(int n);

/// Zero every mode with any |m_d| > dealias_kmax(n).  The Nyquist planes
/// fall outside the band for every n >= 2, so they are always cleared.
void apply_dealias(SpectralField& f);
void apply_dealias(SpectralVecField& w);

/// Transfer amplitudes onto a finer grid with fine_n >= n points per axis
/// (same L, same dim).  Band-limited data is reproduced exactly: the
/// underlying trigonometric polynomial does not change, only its sampling.
/// Requires the source Nyquist planes to be empty when fine_n > n.
SpectralField zero_pad(const SpectralField& f, int fine_n);

/// Keep only the modes representable without ambiguity on a coarse grid
/// (|m_d| < coarse_n/2) and return them as a coarse-grid field; used to
/// compare runs at different resolutions on their shared modes.
SpectralField restrict_modes(const SpectralField& f, int coarse_n);

}  // namespace bep
