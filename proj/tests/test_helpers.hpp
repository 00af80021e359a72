#pragma once
// Shared helpers for the unit-test suite: deterministic random fields and
// small comparison utilities.
#include <cmath>
#include <random>

#include "bep/fft.hpp"
#include "bep/grid.hpp"
#include "bep/initial_data.hpp"

namespace bept {

using namespace bep;

/// Unnormalized white-noise field (every point i.i.d. normal).
inline RealField noise_field(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  RealField f = RealField::zeros(g);
  for (auto& x : f.v) x = draw_normal(eng);
  return f;
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

inline double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const auto& c : a.c) m = std::max(m, std::abs(c));
  return m;
}

/// Largest |c(-xi) - conj(c(xi))| over all modes: 0 for the transform of
/// any real field, up to roundoff.
inline double hermitian_defect(const SpectralField& f) {
  const GridSpec& g = f.grid;
  double worst = 0.0;
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    std::array<int, 3> neg{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) neg[d] = (g.n - idx[d]) % g.n;
    const cplx a = f.c[flat];
    const cplx b = f.c[g.encode(neg)];
    worst = std::max(worst, std::abs(b - std::conj(a)));
  });
  return worst;
}

}  // namespace bept
