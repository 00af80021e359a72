#include "bep/propagators.hpp"

#include <cmath>
#include <vector>

namespace bep {

namespace {

void require_r(double r) {
  if (!(r > 0.0))
    throw ValidationError("propagator symbols are defined for r > 0 only");
}

}  // namespace

double coupling_entry(SymbolKind kind, double r) {
  require_r(r);
  return (kind == SymbolKind::EulerDamped) ? r : r + 2.0 / r;
}

std::array<std::array<double, 2>, 2> symbol_matrix(SymbolKind kind, double r) {
  return {{{0.0, -r}, {coupling_entry(kind, r), -1.0}}};
}

double symbol_det(SymbolKind kind, double r) {
  require_r(r);
  // r * coupling: r^2 for the plain block, r^2 + 2 with Poisson coupling.
  return (kind == SymbolKind::EulerDamped) ? r * r : r * r + 2.0;
}

EigenPair eigenvalues(SymbolKind kind, double r) {
  const double det = symbol_det(kind, r);
  const double disc = 1.0 - 4.0 * det;
  if (disc > 0.0) {
    // Slow/fast real pair.  The slow root is written without the
    // subtraction 1 - sqrt(1-4r^2), which would lose every significant
    // digit as r -> 0; this form is exact to a couple of ulp and the
    // product of the two roots reproduces det to the bit budget.
    const double s = std::sqrt(disc);
    return EigenPair{cplx(-2.0 * det / (1.0 + s), 0.0),
                     cplx(-0.5 * (1.0 + s), 0.0)};
  }
  const double q = std::sqrt(-disc);
  return EigenPair{cplx(-0.5, 0.5 * q), cplx(-0.5, -0.5 * q)};
}

GreensCoeffs greens_coeffs(SymbolKind kind, double r, double t) {
  if (!(t >= 0.0))
    throw ValidationError("greens_coeffs: negative time");
  const double det = symbol_det(kind, r);
  const double disc = 1.0 - 4.0 * det;

  // Three numerically disjoint evaluations of
  //   E1 = (e^{l+ t} - e^{l- t}) / (l+ - l-),   E0 = e^{l+ t} - l+ E1.
  // The root gap is |l+ - l-| = sqrt(|disc|); within 1e-5 of a double
  // root the quotient is evaluated as an even power series in
  // z = disc t^2 / 4 instead (|z| <= 2.5e-11 t^2, so two terms beyond the
  // constant leave a remainder below 1e-28 for every t used anywhere).
  if (std::abs(disc) < 1e-10) {
    const double z = 0.25 * disc * t * t;
    const double sinhc = 1.0 + z / 6.0 + z * z / 120.0;   // sinh(x)/x
    const double coshv = 1.0 + z / 2.0 + z * z / 24.0;    // cosh(x)
    const double decay = std::exp(-0.5 * t);
    const double e1 = t * decay * sinhc;
    const double e0 = decay * (coshv + 0.5 * t * sinhc);
    return GreensCoeffs{e0, e1};
  }
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double lp = -2.0 * det / (1.0 + s);
    const double lm = -0.5 * (1.0 + s);
    const double ep = std::exp(lp * t);
    const double em = std::exp(lm * t);
    const double e1 = (ep - em) / s;
    const double e0 = ep - lp * e1;
    return GreensCoeffs{e0, e1};
  }
  const double q = std::sqrt(-disc);
  const double x = 0.5 * q * t;
  const double decay = std::exp(-0.5 * t);
  const double e1 = decay * 2.0 * std::sin(x) / q;
  const double e0 = decay * (std::cos(x) + std::sin(x) / q);
  return GreensCoeffs{e0, e1};
}

PropagatorSample propagator(SymbolKind kind, double r, double t) {
  const GreensCoeffs gc = greens_coeffs(kind, r, t);
  const double a = coupling_entry(kind, r);
  PropagatorSample p;
  p.r = r;
  p.t = t;
  p.g = {{{gc.e0, -r * gc.e1}, {a * gc.e1, gc.e0 - gc.e1}}};
  return p;
}

double spectral_gap(SymbolKind kind, double eta) {
  if (!(eta > 0.0))
    throw ValidationError("spectral_gap: eta must be positive");
  if (kind == SymbolKind::EulerPoissonDamped) return 0.5;
  if (eta >= 0.5) return 0.5;
  // Slow-root rate at the cutoff frequency, in the same subtraction-free
  // form as the eigenvalue itself.
  return 2.0 * eta * eta / (1.0 + std::sqrt(1.0 - 4.0 * eta * eta));
}

namespace {

// Per-|m|^2 coefficient cache for one (grid, t): every mode with the same
// integer |m|^2 shares its propagator, which cuts the transcendental work
// per semigroup application from n^dim evaluations to a few hundred.
struct SemigroupTable {
  std::vector<char> ready;
  std::vector<GreensCoeffs> euler;
  std::vector<GreensCoeffs> poisson;
  double base;  // 2 pi / L
  double t;

  SemigroupTable(const GridSpec& g, double t_) : base(2.0 * std::numbers::pi / g.L), t(t_) {
    const int half = g.n / 2;
    const std::size_t maxm2 = static_cast<std::size_t>(g.dim) * half * half + 1;
    ready.assign(maxm2 + 1, 0);
    euler.resize(maxm2 + 1);
    poisson.resize(maxm2 + 1);
  }

  void fetch(long m2, GreensCoeffs& g1, GreensCoeffs& g2) {
    auto i = static_cast<std::size_t>(m2);
    if (!ready[i]) {
      const double r = base * std::sqrt(static_cast<double>(m2));
      euler[i] = greens_coeffs(SymbolKind::EulerDamped, r, t);
      poisson[i] = greens_coeffs(SymbolKind::EulerPoissonDamped, r, t);
      ready[i] = 1;
    }
    g1 = euler[i];
    g2 = poisson[i];
  }
};

// Advance one (density, velocity-vector) pair at one mode by e0 I + e1 S:
// Hodge-split the velocity inline, apply the 2x2 block to the compressible
// pair, damp the solenoidal remainder by e^{-t}.
inline void advance_block(cplx& nh, cplx* wh, int dim, const double* xi,
                          double r, double r2, double a,
                          const GreensCoeffs& gc, double damp) {
  cplx dot(0.0, 0.0);
  for (int d = 0; d < dim; ++d) dot += xi[d] * wh[d];
  const cplx v = cplx(0.0, 1.0) * dot / r;
  const cplx proj = dot / r2;

  const cplx n_new = gc.e0 * nh - r * gc.e1 * v;
  const cplx v_new = a * gc.e1 * nh + (gc.e0 - gc.e1) * v;
  const cplx minus_i_v = cplx(0.0, -1.0) * v_new;

  nh = n_new;
  for (int d = 0; d < dim; ++d) {
    const cplx dpart = wh[d] - xi[d] * proj;
    wh[d] = (xi[d] / r) * minus_i_v + damp * dpart;
  }
}

}  // namespace

SumDiffSpectral apply_linear_semigroup(const SumDiffSpectral& state, double t,
                                       double mean_tol) {
  const GridSpec& g = state.n1.grid;
  g.validate();
  require_same_grid(g, state.n2.grid, "apply_linear_semigroup");
  require_same_grid(g, state.w1.grid, "apply_linear_semigroup");
  require_same_grid(g, state.w2.grid, "apply_linear_semigroup");
  if (!(t >= 0.0)) throw ValidationError("apply_linear_semigroup: t < 0");

  const double n2_mean = std::abs(state.n2.c[0]);
  if (n2_mean > mean_tol)
    throw NonZeroMeanError(
        "apply_linear_semigroup: difference density carries a mean, which "
        "the electrostatic coupling cannot propagate",
        n2_mean);

  SumDiffSpectral out = state;
  SemigroupTable table(g, t);
  const double damp = std::exp(-t);
  const int dim = g.dim;

  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    // Effective frequencies: the unpaired Nyquist mode carries no
    // representable first derivative, so it cannot couple density and
    // velocity (same convention as derive/hodge; keeps real states real).
    long m2 = 0;
    double xi[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) {
      const int m = idx[d] == g.n / 2 ? 0 : g.freq_of(idx[d]);
      m2 += static_cast<long>(m) * m;
      xi[d] = g.wavenumber(m);
    }
    if (m2 == 0) {
      // Means and pure-Nyquist slots: densities decouple from velocities
      // (n1 mean conserved, n2 mean is below mean_tol), velocities are
      // purely solenoidal there and damp accordingly.
      for (int d = 0; d < dim; ++d) {
        out.w1.comp[d].c[flat] *= damp;
        out.w2.comp[d].c[flat] *= damp;
      }
      return;
    }
    GreensCoeffs g1, g2;
    table.fetch(m2, g1, g2);
    const double r2 = static_cast<double>(m2) * table.base * table.base;
    const double r = std::sqrt(r2);

    cplx w1h[3], w2h[3];
    for (int d = 0; d < dim; ++d) {
      w1h[d] = out.w1.comp[d].c[flat];
      w2h[d] = out.w2.comp[d].c[flat];
    }
    advance_block(out.n1.c[flat], w1h, dim, xi, r, r2, r, g1, damp);
    advance_block(out.n2.c[flat], w2h, dim, xi, r, r2, r + 2.0 / r, g2, damp);
    for (int d = 0; d < dim; ++d) {
      out.w1.comp[d].c[flat] = w1h[d];
      out.w2.comp[d].c[flat] = w2h[d];
    }
  });
  return out;
}

PrimitiveSpectral apply_linear_semigroup_primitive(const PrimitiveSpectral& state,
                                                   double t) {
  const GridSpec& g = state.sigma1.grid;
  g.validate();
  require_same_grid(g, state.sigma2.grid, "apply_linear_semigroup_primitive");
  require_same_grid(g, state.u1.grid, "apply_linear_semigroup_primitive");
  require_same_grid(g, state.u2.grid, "apply_linear_semigroup_primitive");
  if (!(t >= 0.0)) throw ValidationError("apply_linear_semigroup_primitive: t < 0");

  PrimitiveSpectral out = state;
  SemigroupTable table(g, t);
  const double damp = std::exp(-t);
  const int dim = g.dim;

  for_each_slot(g, [&](std::size_t flat, const std::array<int, 3>& idx) {
    long m2 = 0;
    double xi[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) {
      const int m = idx[d] == g.n / 2 ? 0 : g.freq_of(idx[d]);
      m2 += static_cast<long>(m) * m;
      xi[d] = g.wavenumber(m);
    }
    if (m2 == 0) {
      for (int d = 0; d < dim; ++d) {
        out.u1.comp[d].c[flat] *= damp;
        out.u2.comp[d].c[flat] *= damp;
      }
      return;
    }
    GreensCoeffs g1, g2;
    table.fetch(m2, g1, g2);
    (void)g2;  // the per-species linear stage has no Poisson coupling
    const double r2 = static_cast<double>(m2) * table.base * table.base;
    const double r = std::sqrt(r2);

    cplx u1h[3], u2h[3];
    for (int d = 0; d < dim; ++d) {
      u1h[d] = out.u1.comp[d].c[flat];
      u2h[d] = out.u2.comp[d].c[flat];
    }
    advance_block(out.sigma1.c[flat], u1h, dim, xi, r, r2, r, g1, damp);
    advance_block(out.sigma2.c[flat], u2h, dim, xi, r, r2, r, g1, damp);
    for (int d = 0; d < dim; ++d) {
      out.u1.comp[d].c[flat] = u1h[d];
      out.u2.comp[d].c[flat] = u2h[d];
    }
  });
  return out;
}

}  // namespace bep
