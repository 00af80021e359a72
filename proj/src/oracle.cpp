#include "bep/oracle.hpp"

#include <cmath>

#include "bep/fft.hpp"
#include "bep/spectral_ops.hpp"

namespace bep {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

void add_scaled(Mat2& a, const Mat2& b, double s) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] += s * b[i][j];
}

// One classical RK4 sweep of M' = S M over [0, span] starting from m.
void rk4_advance(const Mat2& S, Mat2& m, double span, double dt) {
  if (span <= 0.0) return;
  const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(span / dt)));
  const double h = span / static_cast<double>(nsteps);
  for (long s = 0; s < nsteps; ++s) {
    const Mat2 k1 = matmul(S, m);
    Mat2 m2 = m;
    add_scaled(m2, k1, 0.5 * h);
    const Mat2 k2 = matmul(S, m2);
    Mat2 m3 = m;
    add_scaled(m3, k2, 0.5 * h);
    const Mat2 k3 = matmul(S, m3);
    Mat2 m4 = m;
    add_scaled(m4, k3, h);
    const Mat2 k4 = matmul(S, m4);
    add_scaled(m, k1, h / 6.0);
    add_scaled(m, k2, h / 3.0);
    add_scaled(m, k3, h / 3.0);
    add_scaled(m, k4, h / 6.0);
  }
}

}  // namespace

Mat2 ode_propagator(SymbolKind kind, double r, double t, double dt) {
  if (!(t >= 0.0)) throw ValidationError("ode_propagator: negative time");
  if (!(dt > 0.0)) throw ValidationError("ode_propagator: need dt > 0");
  const Mat2 S = symbol_matrix(kind, r);
  Mat2 m{{{1.0, 0.0}, {0.0, 1.0}}};
  rk4_advance(S, m, t, dt);
  return m;
}

std::vector<Mat2> ode_propagator_series(SymbolKind kind, double r,
                                        std::span<const double> times,
                                        double dt) {
  if (!(dt > 0.0)) throw ValidationError("ode_propagator_series: need dt > 0");
  const Mat2 S = symbol_matrix(kind, r);
  Mat2 m{{{1.0, 0.0}, {0.0, 1.0}}};
  std::vector<Mat2> out;
  out.reserve(times.size());
  double t_prev = 0.0;
  for (double t : times) {
    if (t < t_prev)
      throw ValidationError("ode_propagator_series: times must be increasing");
    rk4_advance(S, m, t - t_prev, dt);
    out.push_back(m);
    t_prev = t;
  }
  return out;
}

namespace {

// Periodic second-order centered difference along one axis.
RealField fd_derive(const RealField& f, int axis) {
  const GridSpec& g = f.grid;
  const double inv2h = 1.0 / (2.0 * g.dx());
  RealField out = RealField::zeros(g);
  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    std::array<int, 3> up = idx, dn = idx;
    up[axis] = (idx[axis] + 1) % g.n;
    dn[axis] = (idx[axis] + g.n - 1) % g.n;
    out.v[flat] = (f.v[g.encode(up)] - f.v[g.encode(dn)]) * inv2h;
  });
  return out;
}

}  // namespace

FdRhs fd_check_rhs(const SumDiffSpectral& s, const PressureLaw& law,
                   int fine_n) {
  const GridSpec& g = s.n1.grid;
  g.validate();
  if (fine_n < g.n)
    throw ValidationError("fd_check_rhs: refinement must not coarsen");
  const GridSpec fine{fine_n, g.L, g.dim};
  const int dim = g.dim;
  const std::size_t N = fine.num_points();

  // Sample the state's trigonometric interpolant on the fine grid (exact
  // for band-limited data) ...
  const RealField N1 = fft_inverse(zero_pad(s.n1, fine_n));
  const RealField N2 = fft_inverse(zero_pad(s.n2, fine_n));
  RealVecField W1{fine, {}}, W2{fine, {}};
  for (int d = 0; d < dim; ++d) {
    W1.comp.push_back(fft_inverse(zero_pad(s.w1.comp[d], fine_n)));
    W2.comp.push_back(fft_inverse(zero_pad(s.w2.comp[d], fine_n)));
  }

  // ... then do every piece of calculus with centered differences only.
  RealVecField GN1{fine, {}}, GN2{fine, {}};
  for (int d = 0; d < dim; ++d) {
    GN1.comp.push_back(fd_derive(N1, d));
    GN2.comp.push_back(fd_derive(N2, d));
  }
  RealField DIVW1 = RealField::zeros(fine);
  RealField DIVW2 = RealField::zeros(fine);
  std::vector<RealField> JW1, JW2;  // [d * dim + j] = d/dx_d of comp j
  for (int d = 0; d < dim; ++d) {
    for (int j = 0; j < dim; ++j) {
      JW1.push_back(fd_derive(W1.comp[j], d));
      JW2.push_back(fd_derive(W2.comp[j], d));
      if (j == d) {
        for (std::size_t i = 0; i < N; ++i) {
          DIVW1.v[i] += JW1.back().v[i];
          DIVW2.v[i] += JW2.back().v[i];
        }
      }
    }
  }

  FdRhs out{RealField::zeros(fine), RealField::zeros(fine),
            RealVecField::zeros(fine), RealVecField::zeros(fine)};
  std::vector<double> h1(N), h2(N);
  for (std::size_t i = 0; i < N; ++i) {
    h1[i] = law.h(1.0 + 0.5 * (N1.v[i] + N2.v[i]));
    h2[i] = law.h(1.0 + 0.5 * (N1.v[i] - N2.v[i]));
  }
  for (std::size_t i = 0; i < N; ++i) {
    double div_pair = N1.v[i] * DIVW1.v[i] + N2.v[i] * DIVW2.v[i];
    double div_cross = N1.v[i] * DIVW2.v[i] + N2.v[i] * DIVW1.v[i];
    for (int d = 0; d < dim; ++d) {
      div_pair += W1.comp[d].v[i] * GN1.comp[d].v[i] +
                  W2.comp[d].v[i] * GN2.comp[d].v[i];
      div_cross += W2.comp[d].v[i] * GN1.comp[d].v[i] +
                   W1.comp[d].v[i] * GN2.comp[d].v[i];
    }
    out.f1.v[i] = -0.5 * div_pair;
    out.f3.v[i] = -0.5 * div_cross;
  }
  for (int j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < N; ++i) {
      double adv_pair = 0.0, adv_cross = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double dw1j = JW1[static_cast<std::size_t>(d) * dim + j].v[i];
        const double dw2j = JW2[static_cast<std::size_t>(d) * dim + j].v[i];
        adv_pair += W1.comp[d].v[i] * dw1j + W2.comp[d].v[i] * dw2j;
        adv_cross += W1.comp[d].v[i] * dw2j + W2.comp[d].v[i] * dw1j;
      }
      const double hp = h1[i] + h2[i];
      const double hm = h1[i] - h2[i];
      out.f2.comp[j].v[i] = -0.5 * (adv_pair + hp * GN1.comp[j].v[i] +
                                    hm * GN2.comp[j].v[i]);
      out.f4.comp[j].v[i] = -0.5 * (adv_cross + hm * GN1.comp[j].v[i] +
                                    hp * GN2.comp[j].v[i]);
    }
  }
  return out;
}

namespace {

SumDiffSpectral zero_pad_state(const SumDiffSpectral& s, int fine_n) {
  SumDiffSpectral out{zero_pad(s.n1, fine_n), zero_pad(s.n2, fine_n),
                      SpectralVecField{GridSpec{fine_n, s.n1.grid.L,
                                                s.n1.grid.dim},
                                       {}},
                      SpectralVecField{GridSpec{fine_n, s.n1.grid.L,
                                                s.n1.grid.dim},
                                       {}}};
  for (const auto& comp : s.w1.comp) out.w1.comp.push_back(zero_pad(comp, fine_n));
  for (const auto& comp : s.w2.comp) out.w2.comp.push_back(zero_pad(comp, fine_n));
  return out;
}

void accumulate_gap(const SpectralField& coarse, const SpectralField& fine,
                    double& diff2, double& ref2) {
  const SpectralField restricted = restrict_modes(fine, coarse.grid.n);
  const double V = coarse.grid.volume();
  for (std::size_t i = 0; i < coarse.c.size(); ++i) {
    diff2 += V * std::norm(coarse.c[i] - restricted.c[i]);
    ref2 += V * std::norm(restricted.c[i]);
  }
}

}  // namespace

ReferenceReport reference_simulate(const SimConfig& cfg) {
  cfg.validate();
  const int fine_n = 2 * cfg.grid.n;
  const double fine_steps = std::ceil(cfg.t_end / (cfg.dt / 10.0));
  if (fine_n > 64 || fine_steps > 200000.0)
    throw ResourceGuardError(
        "reference_simulate: refined run exceeds the resource caps "
        "(n_fine <= 64, steps_fine <= 200000)");

  SimConfig coarse_cfg = cfg;
  coarse_cfg.store_states = true;
  const SumDiffSpectral x0 = make_initial_state(cfg);
  const Trajectory coarse = simulate_from(x0, coarse_cfg);

  SimConfig fine_cfg = cfg;
  fine_cfg.grid.n = fine_n;
  fine_cfg.dt = cfg.dt / 10.0;
  fine_cfg.store_states = true;
  const Trajectory fine = simulate_from(zero_pad_state(x0, fine_n), fine_cfg);

  ReferenceReport report;
  const std::size_t count = std::min(coarse.snaps.size(), fine.snaps.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Snapshot& sc = coarse.snaps[i];
    const Snapshot& sf = fine.snaps[i];
    if (std::abs(sc.t - sf.t) > 1e-9)
      throw Error("reference_simulate: snapshot times diverged");
    double diff2 = 0.0, ref2 = 0.0;
    accumulate_gap(sc.state->n1, sf.state->n1, diff2, ref2);
    accumulate_gap(sc.state->n2, sf.state->n2, diff2, ref2);
    for (int d = 0; d < cfg.grid.dim; ++d) {
      accumulate_gap(sc.state->w1.comp[d], sf.state->w1.comp[d], diff2, ref2);
      accumulate_gap(sc.state->w2.comp[d], sf.state->w2.comp[d], diff2, ref2);
    }
    const double gap = (ref2 > 0.0) ? std::sqrt(diff2 / ref2)
                                    : std::sqrt(diff2);
    report.t.push_back(sc.t);
    report.rel_gap.push_back(gap);
    report.max_rel_gap = std::max(report.max_rel_gap, gap);
  }
  return report;
}

}  // namespace bep
