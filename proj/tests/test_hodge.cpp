// Mode-space Hodge splitting: losslessness, orthogonality, divergence capture.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bep/fft.hpp"
#include "bep/hodge.hpp"
#include "bep/norms.hpp"
#include "bep/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace bep;
using bept::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralVecField noise_vec(const GridSpec& g, unsigned seed) {
  SpectralVecField w = SpectralVecField::zeros(g);
  for (int d = 0; d < g.dim; ++d)
    w.comp[d] = fft_forward(bept::noise_field(g, seed + 100 * d));
  return w;
}

}  // namespace

TEST_CASE("decompose/reconstruct is lossless including the mean") {
  const GridSpec g{16, 2.0 * kPi, 3};
  SpectralVecField w = noise_vec(g, 3);
  // Give the field a nontrivial mean so the sidecar matters.
  w.comp[0].c[0] = cplx(0.7, 0.0);
  w.comp[2].c[0] = cplx(-0.4, 0.0);

  const ZeroModePolicy zm = ZeroModePolicy::of(w);
  CHECK(zm.mean[0] == cplx(0.7, 0.0));
  CHECK(zm.mean[2] == cplx(-0.4, 0.0));

  const HodgeParts parts = hodge_decompose(w);
  CHECK(std::abs(parts.v.c[0]) == 0.0);
  for (int d = 0; d < g.dim; ++d) CHECK(std::abs(parts.d.comp[d].c[0]) == 0.0);

  const SpectralVecField back = hodge_reconstruct(parts, zm);
  for (int d = 0; d < g.dim; ++d)
    CHECK(max_abs_diff(back.comp[d], w.comp[d]) < 1e-13);
}

TEST_CASE("splitting is orthogonal: Pythagoras in L2") {
  const GridSpec g{16, 3.0, 3};
  SpectralVecField w = noise_vec(g, 17);
  for (int d = 0; d < g.dim; ++d) w.comp[d].c[0] = cplx(0.0, 0.0);

  const HodgeParts parts = hodge_decompose(w);
  const double wsq = [&] {
    double s = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double nd = spectral_l2(w.comp[d]);
      s += nd * nd;
    }
    return s;
  }();
  const double vsq = spectral_l2(parts.v) * spectral_l2(parts.v);
  const double dsq = [&] {
    double s = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double nd = spectral_l2(parts.d.comp[d]);
      s += nd * nd;
    }
    return s;
  }();
  CHECK(std::abs(wsq - (vsq + dsq)) < 1e-12 * wsq);
}

TEST_CASE("solenoidal part is divergence free mode by mode") {
  const GridSpec g{16, 2.0 * kPi, 3};
  const HodgeParts parts = hodge_decompose(noise_vec(g, 29));
  SpectralField div = divergence(parts.d);
  CHECK(bept::max_abs(div) < 1e-13);
}

TEST_CASE("compressible amplitude carries the divergence") {
  // div w has symbol i xi . w_hat = |xi| v_hat, so derive-based divergence
  // of w must equal the multiplier |xi| applied to v.
  const GridSpec g{16, 2.0 * kPi, 3};
  const SpectralVecField w = noise_vec(g, 31);
  const HodgeParts parts = hodge_decompose(w);
  const SpectralField div = divergence(w);
  double worst = 0.0;
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    double xi2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      if (idx[d] == g.n / 2) continue;  // no first derivative at Nyquist
      const double k = g.wavenumber(g.freq_of(idx[d]));
      xi2 += k * k;
    }
    const cplx expect = std::sqrt(xi2) * parts.v.c[flat];
    worst = std::max(worst, std::abs(div.c[flat] - expect));
  });
  CHECK(worst < 1e-12);
}

TEST_CASE("gradient fields are purely compressible") {
  const GridSpec g{16, 2.0 * kPi, 3};
  SpectralField phi = fft_forward(bept::noise_field(g, 37));
  phi.c[0] = cplx(0.0, 0.0);
  const SpectralVecField w = gradient(phi);
  const HodgeParts parts = hodge_decompose(w);
  for (int d = 0; d < g.dim; ++d)
    CHECK(bept::max_abs(parts.d.comp[d]) < 1e-13);
}

TEST_CASE("one-dimensional band-limited fields have no solenoidal part") {
  const GridSpec g{32, 2.0 * kPi, 1};
  SpectralVecField w = SpectralVecField::zeros(g);
  w.comp[0] = fft_forward(bept::noise_field(g, 41));
  w.comp[0].c[0] = cplx(0.0, 0.0);
  apply_dealias(w.comp[0]);  // every vector field without Nyquist content
                             // is curl-free on a circle
  const HodgeParts parts = hodge_decompose(w);
  CHECK(bept::max_abs(parts.d.comp[0]) < 1e-15);
  // And the whole field is recovered from v alone.
  const SpectralVecField back =
      hodge_reconstruct(parts, ZeroModePolicy::of(w));
  CHECK(max_abs_diff(back.comp[0], w.comp[0]) < 1e-13);
}

TEST_CASE("divergence-free fields are purely solenoidal") {
  const GridSpec g{16, 2.0 * kPi, 3};
  // (sin x2, 0, 0): depends only on the second coordinate, so div = 0.
  RealField f = RealField::zeros(g);
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    f.v[flat] = std::sin(idx[1] * g.dx());
  });
  SpectralVecField w = SpectralVecField::zeros(g);
  w.comp[0] = fft_forward(f);
  const HodgeParts parts = hodge_decompose(w);
  CHECK(bept::max_abs(parts.v) < 1e-14);
  CHECK(max_abs_diff(parts.d.comp[0], w.comp[0]) < 1e-14);
}

TEST_CASE("decompose after reconstruct is the identity on parts") {
  const GridSpec g{16, 2.0 * kPi, 3};
  const SpectralVecField w = noise_vec(g, 53);
  const HodgeParts parts = hodge_decompose(w);
  const ZeroModePolicy zm = ZeroModePolicy::of(w);
  const HodgeParts again = hodge_decompose(hodge_reconstruct(parts, zm));
  CHECK(max_abs_diff(again.v, parts.v) < 1e-12);
  for (int d = 0; d < g.dim; ++d)
    CHECK(max_abs_diff(again.d.comp[d], parts.d.comp[d]) < 1e-12);
}

TEST_CASE("reconstruct validates the sidecar dimension") {
  const GridSpec g{8, 1.0, 3};
  const HodgeParts parts = hodge_decompose(noise_vec(g, 43));
  ZeroModePolicy bad;
  bad.dim = 1;
  CHECK_THROWS_AS((void)hodge_reconstruct(parts, bad), GridMismatchError);
}
