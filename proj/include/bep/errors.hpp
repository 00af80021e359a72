#pragma once
/**
 * Exception taxonomy for the whole library.
 *
 * Every failure a caller can reasonably branch on gets its own type; all of
 * them derive from bep::Error (itself a std::runtime_error) so a coarse
 * catch remains possible.  Errors raised mid-integration carry the
 * simulation time at which the guard tripped.
 */
#include <stdexcept>
#include <string>

namespace bep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad grid spec, bad config value, unknown key.
struct ValidationError : Error {
  using Error::Error;
};

/// Two fields that must share a grid do not.
struct GridMismatchError : Error {
  using Error::Error;
};

/// A field that must have zero mean (difference density, Poisson source)
/// carries a mean above tolerance.  The offending mean is reported.
struct NonZeroMeanError : Error {
  double mean;
  explicit NonZeroMeanError(const std::string& what, double mean_)
      : Error(what), mean(mean_) {}
};

/// A density (or a density argument to the pressure law) is <= 0.
struct NonPositiveDensityError : Error {
  using Error::Error;
};

/// A reconstructed density left the admissible box during time stepping.
struct InadmissibleStateError : Error {
  double t;
  InadmissibleStateError(const std::string& what, double t_)
      : Error(what), t(t_) {}
};

/// The advective CFL guard rejected the requested time step.
struct CflError : Error {
  double t;
  CflError(const std::string& what, double t_) : Error(what), t(t_) {}
};

/// Adaptive quadrature exhausted its panel budget; carries the error
/// estimate it did achieve so the caller can judge how bad things are.
struct QuadratureError : Error {
  double achieved_error;
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_error(achieved) {}
};

/// An interpolation-inequality ratio was requested for a field with a
/// vanishing derivative norm (e.g. a constant field).
struct DegenerateFieldError : Error {
  using Error::Error;
};

/// A reference/refinement run would exceed the hard resource caps.
struct ResourceGuardError : Error {
  using Error::Error;
};

}  // namespace bep
