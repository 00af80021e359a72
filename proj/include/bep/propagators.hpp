#pragma once
/**
 * Closed-form frequency-space propagators for the two linear blocks of the
 * damped two-fluid system, written in sum/difference variables and Hodge
 * coordinates.  Per mode with r = |xi| > 0 the compressible pair
 * y = (n_hat, v_hat) obeys y' = S y with
 *
 *   sum block (damped Euler):              S = [[0, -r], [r,       -1]]
 *   difference block (Poisson-coupled):    S = [[0, -r], [r + 2/r, -1]]
 *
 * Both share trace -1; the determinants are r^2 and r^2 + 2, giving the
 * characteristic polynomial  lambda^2 + lambda + det.  The matrix
 * exponential is assembled from two scalar coefficients,
 *
 *   exp(t S) = E0(t) I + E1(t) S,
 *   E1 = (e^{l+ t} - e^{l- t}) / (l+ - l-),
 *   E0 = (l+ e^{l- t} - l- e^{l+ t}) / (l+ - l-),
 *
 * evaluated on three numerically disjoint branches (real roots, complex
 * pair, near-double root) so there is no cancellation anywhere on
 * r in (0, inf), t >= 0.  E0 and E1 are real on every branch.
 *
 * Solenoidal velocity parts and velocity means see pure damping e^{-t};
 * the sum-density mean is conserved; the difference-density mean must
 * vanish (the Poisson coupling has no zero-mode extension).
 */
#include <array>

#include "bep/state.hpp"

namespace bep {

enum class SymbolKind {
  EulerDamped,         ///< sum block: no electrostatic coupling
  EulerPoissonDamped,  ///< difference block: + 2/r coupling entry
};

/// Lower-left symbol entry: r (EulerDamped) or r + 2/r (EulerPoissonDamped).
double coupling_entry(SymbolKind kind, double r);

/// The 2x2 generator [[0, -r], [coupling, -1]]; requires r > 0.
std::array<std::array<double, 2>, 2> symbol_matrix(SymbolKind kind, double r);

/// det(S): r^2 or r^2 + 2.
double symbol_det(SymbolKind kind, double r);

struct EigenPair {
  cplx plus;   ///< the root with the larger real part (ties: Im >= 0)
  cplx minus;
};

/// Roots of lambda^2 + lambda + det = 0, via cancellation-free formulas:
/// on the real branch (EulerDamped, r < 1/2, s = sqrt(1 - 4 r^2))
///   lambda+ = -2 r^2 / (1 + s),   lambda- = -(1 + s) / 2,
/// and on the complex branch lambda+- = (-1 +- i q)/2 with
/// q = sqrt(4 det - 1).  The Poisson-coupled kind is always complex with
/// real part exactly -1/2.
EigenPair eigenvalues(SymbolKind kind, double r);

struct GreensCoeffs {
  double e0, e1;  ///< exp(t S) = e0 I + e1 S
};

GreensCoeffs greens_coeffs(SymbolKind kind, double r, double t);

struct PropagatorSample {
  double r, t;
  std::array<std::array<double, 2>, 2> g;  ///< exp(t S), row-major
};

/// Assembled 2x2 propagator exp(t S) for one (r, t); requires r > 0, t >= 0.
PropagatorSample propagator(SymbolKind kind, double r, double t);

/// Uniform exponential decay rate of exp(t S) over all modes with
/// |xi| >= eta (eta > 0): for the Euler block
/// min(1/2, (1 - sqrt(max(0, 1 - 4 eta^2))) / 2), i.e. the slow-root rate
/// 2 eta^2 / (1 + sqrt(1 - 4 eta^2)) below eta = 1/2 and 1/2 beyond;
/// the Poisson-coupled block is oscillatory at every frequency, rate 1/2.
double spectral_gap(SymbolKind kind, double eta);

/// Exact solution operator of the full linear system over time t >= 0:
/// per mode, Hodge-split each velocity, advance (n1,v1) by the Euler
/// propagator and (n2,v2) by the Poisson-coupled propagator, damp the
/// solenoidal parts and the velocity means by e^{-t}, keep the n1 mean,
/// and reassemble.  Precondition: |mean n2| <= mean_tol (NonZeroMeanError).
SumDiffSpectral apply_linear_semigroup(const SumDiffSpectral& state, double t,
                                       double mean_tol = 1e-12);

/// Same operator in the per-species picture: both (sigma_i, u_i) pairs
/// advance by the Euler propagator — the electrostatic force is not part
/// of the linear stage there (it is applied with the nonlinear terms).
PrimitiveSpectral apply_linear_semigroup_primitive(const PrimitiveSpectral& state,
                                                   double t);

}  // namespace bep
