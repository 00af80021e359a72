#pragma once
/**
 * Continuum decay experiments for the frequency-space propagators on
 * whole-space R^3: radially symmetric initial data is pushed through the
 * closed-form 2x2 propagator mode by mode and derivative-weighted L2 norms
 * are recovered by radial quadrature,
 *
 *   || D^k component(t) ||_2^2 = 4 pi * int_0^inf r^{2k+2}
 *        | G_row(r,t) . (n0_hat(r), v0_hat(r)) |^2 dr,
 *
 * in the unitary Fourier normalization (Plancherel with constant 1), so
 * the numbers reported ARE physical L2 norms.  Fitted decay exponents are
 * then compared against the sharp linear-theory predictions:
 *
 *   Euler block:     ||D^k n|| ~ (1+t)^{-3/4 - k/2},
 *                    ||D^k w|| ~ (1+t)^{-5/4 - k/2}   (algebraic fit),
 *   Poisson block:   both components ~ e^{-t/2}        (exponential fit).
 */
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bep/propagators.hpp"

namespace bep {

/// Radial frequency profile f_hat(r) of a radially symmetric function,
/// valid on [0, r_cut] with |f_hat| below tail tolerance beyond.  `mass`
/// is f_hat(0), which in the unitary convention is the space integral of
/// f divided by (2 pi)^{3/2}.
struct RadialProfile {
  std::function<double(double)> fhat;
  double r_cut = 0.0;
  double mass = 0.0;
};

/// Frequency profile of the Gaussian a * exp(-|x|^2 / (2 sigma^2)):
/// f_hat(r) = a sigma^3 exp(-sigma^2 r^2 / 2).  r_cut is placed where the
/// profile falls below tail_tol, so the discarded tail contributes less
/// than tail_tol^2 * O(r_cut^5) to every norm integral — far below any
/// quadrature tolerance used here.
RadialProfile gaussian_bump(double amplitude, double sigma,
                            double tail_tol = 1e-18);

enum class BlockComponent { density, velocity };

struct DecayExperiment {
  SymbolKind kind = SymbolKind::EulerDamped;
  RadialProfile n0, v0;   ///< initial density / compressible-velocity data
  int k = 0;              ///< derivative count in the norm weight
  double quad_rel_tol = 1e-8;
};

/// || D^k component(t) ||_2 for one time; adaptive quadrature failures
/// propagate as QuadratureError.
double l2_norm_at(const DecayExperiment& e, BlockComponent c, double t);

/// Combined block norm sqrt(density^2 + velocity^2) at one time.
double block_l2_norm_at(const DecayExperiment& e, double t);

/// `count` geometrically spaced times from lo to hi inclusive.
std::vector<double> geometric_times(double lo, double hi, int count);

enum class FitKind {
  algebraic,    ///< least squares of log norm against log(1 + t)
  exponential,  ///< least squares of log norm against t
};

struct ExponentFit {
  FitKind kind = FitKind::algebraic;
  double slope = 0.0;      ///< fitted exponent (algebraic) or -rate (exponential)
  double intercept = 0.0;
  double rms_residual = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
};

/// Fit a decay exponent to (t, norm) samples; norms must be positive.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& series,
                         FitKind kind);

/// One row of the verification table: a component/derivative pair, its
/// predicted exponent (algebraic) or rate (exponential), the fitted value
/// and the pass verdict at the stated tolerance.
struct LemmaRow {
  std::string label;     ///< "n" or "w"
  int k = 0;
  FitKind fit_kind = FitKind::algebraic;
  double predicted = 0.0;
  double fitted = 0.0;
  double tolerance = 0.0;
  double rms_residual = 0.0;
  bool pass = false;
  std::vector<std::pair<double, double>> series;  ///< the fitted samples
};

struct LemmaReport {
  SymbolKind kind = SymbolKind::EulerDamped;
  std::vector<LemmaRow> rows;
  bool all_pass = false;
};

/// Run the full experiment for one kind and derivative count k with the
/// given initial profiles.  Euler block: algebraic fits over 25 geometric
/// times in [10, 1000], predictions -(3/4 + k/2) and -(5/4 + k/2),
/// tolerance 0.05.  Poisson block: exponential fits over [1, 20],
/// predicted rate 1/2 for both components, tolerance 0.02.
LemmaReport lemma_report(SymbolKind kind, int k, const RadialProfile& n0,
                         const RadialProfile& v0, double quad_rel_tol = 1e-8);

}  // namespace bep
