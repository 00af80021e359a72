#pragma once
/**
 * Adaptive Gauss-Kronrod (G7-K15) quadrature on a finite interval.
 *
 * The interval is seeded with caller-supplied breakpoints (or used whole),
 * each panel gets a 15-point Kronrod value plus the embedded 7-point Gauss
 * error estimate, and the panel with the worst estimate is bisected until
 * the summed estimate meets max(rel_tol * |integral|, abs_tol) or the
 * panel budget runs out.
 */
#include <functional>
#include <span>

#include "bep/errors.hpp"

namespace bep {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   ///< summed panel error estimates
  int panels = 0;
  bool converged = false;
};

/// Integrate f over [a, b].  Throws QuadratureError (carrying the achieved
/// error estimate) if the budget is exhausted before the tolerance is met.
QuadResult adaptive_gk(const std::function<double(double)>& f, double a,
                       double b, double rel_tol, double abs_tol = 0.0,
                       int max_panels = 2000,
                       std::span<const double> breakpoints = {});

}  // namespace bep
