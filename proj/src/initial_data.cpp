#include "bep/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "bep/fft.hpp"
#include "bep/norms.hpp"
#include "bep/spectral_ops.hpp"

namespace bep {

double draw_normal(std::mt19937_64& eng) {
  // 53-bit uniforms mapped to (0, 1], then one Box-Muller cosine draw.
  // Exactly two engine outputs per call, so the stream position after any
  // sequence of draws is determined by the count alone.
  const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53;
  const double u2 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

SpectralField band_random_modes(const GridSpec& grid, int kmax,
                                double amplitude, std::mt19937_64& eng) {
  grid.validate();
  if (kmax < 1 || 2 * kmax >= grid.n)
    throw ValidationError(
        "band_random_modes: need 1 <= kmax <= n/2 - 1 for a usable band");
  if (!(amplitude >= 0.0))
    throw ValidationError("band_random_modes: amplitude must be >= 0");

  RealField noise = RealField::zeros(grid);
  for (auto& x : noise.v) x = draw_normal(eng);

  SpectralField hat = fft_forward(noise);
  for_each_slot(grid, [&](std::size_t flat, const std::array<int, 3>& idx) {
    int mmax = 0;
    for (int d = 0; d < grid.dim; ++d) {
      const int a = std::abs(grid.freq_of(idx[d]));
      if (a > mmax) mmax = a;
    }
    if (mmax < 1 || mmax > kmax) hat.c[flat] = cplx(0.0, 0.0);
  });

  const double linf = grid_norms(fft_inverse(hat)).linf;
  if (linf == 0.0)
    throw DegenerateFieldError("band_random_modes: drawn field vanishes");
  const double scale = amplitude / linf;
  for (auto& c : hat.c) c *= scale;
  return hat;
}

RealField band_random_field(const GridSpec& grid, int kmax, double amplitude,
                            std::mt19937_64& eng) {
  return fft_inverse(band_random_modes(grid, kmax, amplitude, eng));
}

}  // namespace bep
