#pragma once
/**
 * Discrete Fourier transforms pinned to the library's analysis convention.
 *
 *   forward:  c_m = (1/N) sum_j f(x_j) exp(-i xi_m . x_j)      (N = n^dim)
 *   inverse:  f(x_j) = sum_m c_m exp(+i xi_m . x_j)
 *
 * so forward(inverse(c)) == c and c_0 is the mean of f.  Under this scaling
 * the discrete Parseval identity reads
 *
 *   sum_j |f(x_j)|^2 * cell_volume  ==  volume * sum_m |c_m|^2,
 *
 * i.e. the grid L2 norm equals sqrt(volume) times the l2 norm of the
 * coefficients.  The backend is double-precision FFTW with deterministic
 * (heuristic-free) planning; everything runs single-threaded.
 */
#include "bep/grid.hpp"

namespace bep {

/// Real samples -> spectral amplitudes (complex full-cube storage, so the
/// conjugate mode -m is directly addressable).
SpectralField fft_forward(const RealField& f);

/// Spectral amplitudes -> real samples.  The imaginary residue of the
/// inverse transform is dropped; pipelines in this library only ever
/// invert (numerically) Hermitian data.
RealField fft_inverse(const SpectralField& f);

}  // namespace bep
