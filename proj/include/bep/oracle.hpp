#pragma once
/**
 * Independent cross-checks for the closed-form machinery.  Nothing here
 * reuses the formulas under test: the propagator oracle integrates the
 * 2x2 mode ODE directly, the nonlinear-term oracle differentiates with
 * finite differences instead of Fourier multipliers, and the refinement
 * oracle re-runs a configuration at higher resolution.
 */
#include <array>
#include <span>
#include <vector>

#include "bep/nonlinear.hpp"
#include "bep/propagators.hpp"

namespace bep {

/// exp(t S) by classical RK4 on M' = S M, M(0) = I, with a fixed step of
/// ~`dt` (adjusted to land on t exactly).  Global error is O(dt^4), far
/// below the closed form's comparison tolerances for dt = 1e-4.
std::array<std::array<double, 2>, 2> ode_propagator(SymbolKind kind, double r,
                                                    double t,
                                                    double dt = 1e-4);

/// Propagators at several increasing times from one continued integration
/// (cheaper than restarting, bit-reproducible for fixed inputs).
std::vector<std::array<std::array<double, 2>, 2>> ode_propagator_series(
    SymbolKind kind, double r, std::span<const double> times,
    double dt = 1e-4);

/// The four nonlinear terms evaluated the pedestrian way: the state's
/// trigonometric interpolant is sampled on a fine grid (fine_n points per
/// axis, same box), products are formed pointwise, and every derivative
/// is a second-order centered difference on that fine grid.  Returned as
/// physical fields on the fine grid; agreement with the spectral terms is
/// O(h^2) in the fine spacing.
struct FdRhs {
  RealField f1, f3;
  RealVecField f2, f4;
};

FdRhs fd_check_rhs(const SumDiffSpectral& s, const PressureLaw& law,
                   int fine_n);

/// Re-run `cfg` with dt/10 and doubled grid, and compare the two runs'
/// snapshots on their shared spectral modes.  Snapshot times match by
/// construction (both runs land exactly on multiples of the stride).
struct ReferenceReport {
  std::vector<double> t;
  std::vector<double> rel_gap;  ///< L2 gap / L2 of the reference state
  double max_rel_gap = 0.0;
};

/// Hard resource caps (refined run: n <= 64 per axis, <= 200000 steps)
/// throw ResourceGuardError before any work happens.
ReferenceReport reference_simulate(const SimConfig& cfg);

}  // namespace bep
