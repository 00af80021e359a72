#pragma once
/**
 * Deterministic random initial data.
 *
 * The one recipe used throughout ("band_random"): draw i.i.d. standard
 * normals at every grid point, transform, keep only the band
 * 1 <= |m|_inf <= kmax (in particular the mean is removed), transform
 * back, and rescale so the sup norm is exactly `amplitude`.
 *
 * Reproducibility contract: the normal stream is a fixed Box-Muller
 * construction over std::mt19937_64, whose bit stream is pinned by the
 * standard — no std::normal_distribution, whose output sequence is
 * implementation-defined.  One engine, seeded once, feeds all fields of a
 * state in a documented order, so a (seed, grid, kmax) triple fully
 * determines every sample.
 */
#include <cstdint>
#include <random>

#include "bep/grid.hpp"

namespace bep {

/// Fixed Box-Muller normal sampler over a caller-owned engine.
double draw_normal(std::mt19937_64& eng);

/// One scalar band-limited random field, sup-normalized to `amplitude`.
/// Draws exactly grid.num_points() normals from `eng`, so successive calls
/// with one engine give independent fields in a reproducible order.
/// Requires 1 <= kmax <= n/2 - 1 (ValidationError otherwise): the band
/// must be non-empty and clear of the Nyquist planes.
RealField band_random_field(const GridSpec& grid, int kmax, double amplitude,
                            std::mt19937_64& eng);

/// The same draw delivered as spectral amplitudes: every mode outside
/// 1 <= |m|_inf <= kmax is exactly 0.0 (in particular the mean), which the
/// physical-space variant can only promise to roundoff.
SpectralField band_random_modes(const GridSpec& grid, int kmax,
                                double amplitude, std::mt19937_64& eng);

}  // namespace bep
