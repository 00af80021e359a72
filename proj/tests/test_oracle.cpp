// Independent references: the dense ODE integrator, the finite-difference
// nonlinearity check, and the fine-grid reference simulator.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "bep/fft.hpp"
#include "bep/norms.hpp"
#include "bep/oracle.hpp"
#include "bep/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace bep;

namespace {

constexpr double kPi = std::numbers::pi;

using Mat2 = std::array<std::array<double, 2>, 2>;

double mat_gap(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

/// Zero every mode outside |k| <= kmax (clears transform roundoff so the
/// state is exactly band-limited and safe to zero-pad).
void band_clean(SpectralField& f, int kmax) {
  for (int i = 0; i < f.grid.n; ++i)
    if (std::abs(f.grid.freq_of(i)) > kmax) f.c[i] = cplx(0.0, 0.0);
}

/// Band-limited 1-D test state with a handful of active modes.
SumDiffSpectral smooth_state_1d(int n) {
  const GridSpec g{n, 2.0 * kPi, 1};
  SumDiffSpectral s = SumDiffSpectral::zeros(g);
  RealField n1 = RealField::zeros(g), n2 = RealField::zeros(g);
  RealField w1 = RealField::zeros(g), w2 = RealField::zeros(g);
  for (int i = 0; i < n; ++i) {
    const double x = i * g.dx();
    n1.v[i] = 0.10 * std::cos(x) - 0.04 * std::sin(2.0 * x);
    n2.v[i] = 0.06 * std::sin(x) + 0.03 * std::cos(2.0 * x);
    w1.v[i] = 0.08 * std::sin(x) + 0.05 * std::cos(2.0 * x);
    w2.v[i] = -0.07 * std::cos(x) + 0.02 * std::sin(2.0 * x);
  }
  s.n1 = fft_forward(n1);
  s.n2 = fft_forward(n2);
  s.w1.comp[0] = fft_forward(w1);
  s.w2.comp[0] = fft_forward(w2);
  band_clean(s.n1, 2);
  band_clean(s.n2, 2);
  band_clean(s.w1.comp[0], 2);
  band_clean(s.w2.comp[0], 2);
  s.n2.c[0] = cplx(0.0, 0.0);
  return s;
}

/// Spectral nonlinear terms evaluated on the zero-padded fine grid, as
/// physical fields: the reference the FD oracle converges to.
struct FineRhs {
  RealField f1, f3, f2, f4;
};

FineRhs spectral_rhs_on_fine(const SumDiffSpectral& s, const PressureLaw& law,
                             int fine_n) {
  SumDiffSpectral fine = SumDiffSpectral::zeros(GridSpec{
      fine_n, s.n1.grid.L, s.n1.grid.dim});
  fine.n1 = zero_pad(s.n1, fine_n);
  fine.n2 = zero_pad(s.n2, fine_n);
  for (int d = 0; d < s.n1.grid.dim; ++d) {
    fine.w1.comp[d] = zero_pad(s.w1.comp[d], fine_n);
    fine.w2.comp[d] = zero_pad(s.w2.comp[d], fine_n);
  }
  const Rhs4 r = nonlinear_rhs(fine, law, false, AdmissibleBox{}, 0.0);
  return FineRhs{fft_inverse(r.f1), fft_inverse(r.f3),
                 fft_inverse(r.f2.comp[0]), fft_inverse(r.f4.comp[0])};
}

double fd_rel_err(const SumDiffSpectral& s, const PressureLaw& law,
                  int fine_n) {
  const FdRhs fd = fd_check_rhs(s, law, fine_n);
  const FineRhs sp = spectral_rhs_on_fine(s, law, fine_n);
  double gap = 0.0, scale = 0.0;
  const auto acc = [&](const RealField& a, const RealField& b) {
    for (std::size_t i = 0; i < a.v.size(); ++i) {
      gap = std::max(gap, std::abs(a.v[i] - b.v[i]));
      scale = std::max(scale, std::abs(b.v[i]));
    }
  };
  acc(fd.f1, sp.f1);
  acc(fd.f3, sp.f3);
  acc(fd.f2.comp[0], sp.f2);
  acc(fd.f4.comp[0], sp.f4);
  return gap / scale;
}

}  // namespace

TEST_CASE("dense ODE integration of the mode systems") {
  SUBCASE("zero time gives the identity") {
    const Mat2 m = ode_propagator(SymbolKind::EulerPoissonDamped, 0.7, 0.0);
    CHECK(mat_gap(m, Mat2{{{1.0, 0.0}, {0.0, 1.0}}}) == 0.0);
  }

  SUBCASE("volume contraction at trace -1") {
    const Mat2 m = ode_propagator(SymbolKind::EulerPoissonDamped, 1.0, 1.0);
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    CHECK(std::abs(det - std::exp(-1.0)) < 1e-9);
  }

  SUBCASE("agrees with the closed form away from the oracle's own error") {
    const Mat2 m = ode_propagator(SymbolKind::EulerDamped, 0.3, 2.0);
    const Mat2 want = propagator(SymbolKind::EulerDamped, 0.3, 2.0).g;
    CHECK(mat_gap(m, want) < 1e-8);
  }

  SUBCASE("halving the oracle step barely moves the result") {
    for (SymbolKind kind :
         {SymbolKind::EulerDamped, SymbolKind::EulerPoissonDamped}) {
      const Mat2 a = ode_propagator(kind, 0.8, 1.5, 1e-4);
      const Mat2 b = ode_propagator(kind, 0.8, 1.5, 5e-5);
      CHECK(mat_gap(a, b) < 1e-10);
    }
  }

  SUBCASE("series evaluation equals individual integrations") {
    const std::vector<double> times{0.5, 2.0};
    const auto series =
        ode_propagator_series(SymbolKind::EulerDamped, 0.45, times);
    REQUIRE(series.size() == 2);
    CHECK(mat_gap(series[0],
                  ode_propagator(SymbolKind::EulerDamped, 0.45, 0.5)) <
          1e-12);
    CHECK(mat_gap(series[1],
                  ode_propagator(SymbolKind::EulerDamped, 0.45, 2.0)) <
          1e-12);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS((void)ode_propagator(SymbolKind::EulerDamped, -1.0, 1.0),
                    ValidationError);
    CHECK_THROWS_AS((void)ode_propagator(SymbolKind::EulerDamped, 1.0, -1.0),
                    ValidationError);
    CHECK_THROWS_AS(
        (void)ode_propagator(SymbolKind::EulerDamped, 1.0, 1.0, 0.0),
        ValidationError);
    const std::vector<double> bad{2.0, 1.0};
    CHECK_THROWS_AS(
        (void)ode_propagator_series(SymbolKind::EulerDamped, 1.0, bad),
        ValidationError);
  }
}

TEST_CASE("finite-difference evaluation of the nonlinear terms") {
  const PressureLaw law{5.0 / 3.0};

  SUBCASE("zero state gives zero") {
    const SumDiffSpectral z =
        SumDiffSpectral::zeros(GridSpec{16, 2.0 * kPi, 1});
    const FdRhs fd = fd_check_rhs(z, law, 64);
    CHECK(grid_norms(fd.f1).linf == 0.0);
    CHECK(grid_norms(fd.f3).linf == 0.0);
    CHECK(grid_norms(fd.f2.comp[0]).linf == 0.0);
    CHECK(grid_norms(fd.f4.comp[0]).linf == 0.0);
  }

  SUBCASE("converges to the spectral terms at second order") {
    const SumDiffSpectral s = smooth_state_1d(16);
    const double e512 = fd_rel_err(s, law, 512);
    const double e1024 = fd_rel_err(s, law, 1024);
    const double e8192 = fd_rel_err(s, law, 8192);
    INFO("rel err at 512: ", e512, ", 1024: ", e1024, ", 8192: ", e8192);
    CHECK(e8192 < 1e-6);
    CHECK(e512 / e1024 > 3.3);
    CHECK(e512 / e1024 < 4.7);
  }

  SUBCASE("the refined grid must refine") {
    const SumDiffSpectral s = smooth_state_1d(16);
    CHECK_THROWS_AS((void)fd_check_rhs(s, law, 8), ValidationError);
  }
}

TEST_CASE("fine-grid reference simulation") {
  // Default recipe (kmax = 2): quadratic interactions of the initial band
  // stay inside the dealias band of both the main and the refined grid, so
  // the two runs solve the same truncated dynamics and the gap reflects
  // time-stepping error (plus a small cubic-interaction floor).
  SimConfig cfg;
  cfg.grid = GridSpec{16, 2.0 * kPi, 3};
  cfg.epsilon = 1e-3;
  cfg.init.kmax = 2;
  cfg.init.seed = 5;
  cfg.dt = 0.01;
  cfg.t_end = 0.2;
  cfg.snapshot_stride = 0.1;

  SUBCASE("background stays background") {
    SimConfig quiet = cfg;
    quiet.epsilon = 0.0;
    quiet.dt = 0.05;
    quiet.t_end = 0.2;
    const ReferenceReport rep = reference_simulate(quiet);
    CHECK(rep.max_rel_gap == 0.0);
  }

  SUBCASE("small run tracks its refined twin") {
    const ReferenceReport rep = reference_simulate(cfg);
    REQUIRE(rep.t.size() == rep.rel_gap.size());
    REQUIRE(!rep.t.empty());
    CHECK(rep.t.front() == 0.0);
    CHECK(rep.t.back() == doctest::Approx(cfg.t_end).epsilon(1e-12));
    double worst = 0.0;
    for (double gap : rep.rel_gap) worst = std::max(worst, gap);
    CHECK(rep.max_rel_gap == doctest::Approx(worst).epsilon(1e-14));
    std::printf("    reference twin: max rel gap %.3e\n", rep.max_rel_gap);
    CHECK(rep.max_rel_gap < 1e-7);
    CHECK(rep.rel_gap.front() == 0.0);  // identical initial data
  }

  SUBCASE("resource caps veto oversized references") {
    SimConfig big = cfg;
    big.grid = GridSpec{64, 2.0 * kPi, 3};  // refined run would need n = 128
    CHECK_THROWS_AS((void)reference_simulate(big), ResourceGuardError);

    SimConfig tiny_dt = cfg;
    tiny_dt.dt = 1e-6;  // refined run would need 5e6 steps
    CHECK_THROWS_AS((void)reference_simulate(tiny_dt), ResourceGuardError);
  }
}
