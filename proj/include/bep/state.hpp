#pragma once
/**
 * Two-fluid state containers and the exact linear change of variables
 * between the per-species (primitive) picture and the sum/difference
 * picture the analysis machinery prefers.
 *
 *   n1 = rho1 + rho2 - 2        w1 = u1 + u2
 *   n2 = rho1 - rho2            w2 = u1 - u2
 *
 * with the constant background rho == 1 subtracted, i.e. both pictures
 * store perturbations.  The map and its inverse are their own exact
 * floating-point inverses up to one rounding per entry.
 *
 * The isentropic pressure law P(rho) = rho^gamma / gamma is normalized so
 * the acoustic coefficient P'(1) = 1; the convection-free momentum
 * nonlinearity only ever needs the enthalpy-slope remainder
 *   h(rho) = rho^(gamma-2) - 1,       h(1) = 0 exactly.
 */
#include <vector>

#include "bep/grid.hpp"

namespace bep {

struct PressureLaw {
  double gamma = 5.0 / 3.0;

  void validate() const {
    if (!(gamma > 1.0))
      throw ValidationError("pressure law requires gamma > 1");
  }
  double pressure(double rho) const;
  /// rho^(gamma-2) - 1, evaluated with expm1/log1p so h(1+s) is accurate
  /// for the small perturbations this code lives on.
  double h(double rho) const;
};

/// Per-species perturbations: sigma_i = rho_i - 1 and velocities u_i.
struct PrimitiveState {
  RealField sigma1, sigma2;
  RealVecField u1, u2;
};

/// Sum/difference perturbations.
struct SumDiffState {
  RealField n1, n2;
  RealVecField w1, w2;
};

/// Spectral twins, used as the solver's working representation.
struct PrimitiveSpectral {
  SpectralField sigma1, sigma2;
  SpectralVecField u1, u2;
  static PrimitiveSpectral zeros(const GridSpec& g) {
    return {SpectralField::zeros(g), SpectralField::zeros(g),
            SpectralVecField::zeros(g), SpectralVecField::zeros(g)};
  }
};

struct SumDiffSpectral {
  SpectralField n1, n2;
  SpectralVecField w1, w2;
  static SumDiffSpectral zeros(const GridSpec& g) {
    return {SpectralField::zeros(g), SpectralField::zeros(g),
            SpectralVecField::zeros(g), SpectralVecField::zeros(g)};
  }
};

// --- change of variables (exact linear maps, componentwise) -------------

SumDiffState to_sumdiff(const PrimitiveState& p);
PrimitiveState to_primitive(const SumDiffState& s);
SumDiffSpectral to_sumdiff(const PrimitiveSpectral& p);
PrimitiveSpectral to_primitive(const SumDiffSpectral& s);

// --- physical <-> spectral --------------------------------------------

SumDiffState to_physical(const SumDiffSpectral& s);
SumDiffSpectral to_spectral(const SumDiffState& s);

// --- admissibility ------------------------------------------------------

/// Densities reconstructed from sum/difference fields must stay inside
/// [lo, hi]; the pressure slope is evaluated at exactly these arguments.
struct AdmissibleBox {
  double lo = 0.5;
  double hi = 2.0;
};

/// Checks rho_1 = 1 + (n1+n2)/2 and rho_2 = 1 + (n1-n2)/2 pointwise
/// against the box; throws InadmissibleStateError tagged with `t`.
void check_admissible(const RealField& n1, const RealField& n2,
                      const AdmissibleBox& box, double t);

}  // namespace bep
