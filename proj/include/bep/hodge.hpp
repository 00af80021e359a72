#pragma once
/**
 * Mode-space Hodge splitting of a periodic vector field.
 *
 * Away from the zero mode every Fourier amplitude w_hat(xi) splits into a
 * compressible part along xi and a solenoidal remainder:
 *
 *   v_hat(xi) = i xi . w_hat(xi) / |xi|          (scalar amplitude)
 *   d_hat(xi) = (I - xi xi^T / |xi|^2) w_hat(xi) (divergence-free part)
 *   w_hat(xi) = -i (xi/|xi|) v_hat(xi) + d_hat(xi)
 *
 * v is the zeroth-order scalar carrying all of div w (div w has symbol
 * i xi . w_hat = |xi| v_hat), stored as a plain scalar field; d is stored
 * as a plain vector field with xi . d_hat = 0 per mode.  The splitting is
 * orthogonal mode by mode, so L2 norms satisfy Pythagoras exactly.
 *
 * The zero mode (the spatial mean of w) belongs to neither part; it is
 * carried in a small sidecar so decompose/reconstruct is lossless.
 *
 * The projector uses the same effective wavevector as the derivative
 * operator: the unpaired Nyquist frequency contributes zero (its first
 * derivative is not representable on the grid).  This keeps div(d)
 * exactly zero under the code's divergence and keeps v real-valued for
 * real inputs even when Nyquist content is present; slots whose entire
 * effective wavevector vanishes are carried verbatim inside d.
 */
#include <array>

#include "bep/grid.hpp"

namespace bep {

struct HodgeParts {
  SpectralField v;      ///< compressible amplitude, zero mode cleared
  SpectralVecField d;   ///< solenoidal remainder, zero mode cleared
};

/// Spatial mean of each component of w, kept out of both Hodge parts.
struct ZeroModePolicy {
  int dim = 3;
  std::array<cplx, 3> mean{};

  static ZeroModePolicy of(const SpectralVecField& w);
};

HodgeParts hodge_decompose(const SpectralVecField& w);

SpectralVecField hodge_reconstruct(const HodgeParts& parts,
                                   const ZeroModePolicy& zero_mode);

}  // namespace bep
