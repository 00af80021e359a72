#include "bep/state.hpp"

#include <cmath>
#include <cstdio>

#include "bep/fft.hpp"

namespace bep {

double PressureLaw::pressure(double rho) const {
  return std::pow(rho, gamma) / gamma;
}

double PressureLaw::h(double rho) const {
  if (!(rho > 0.0))
    throw NonPositiveDensityError("pressure slope evaluated at rho <= 0");
  // rho^(gamma-2) - 1 == expm1((gamma-2) log rho): exactly zero at rho = 1
  // and accurate for the small perturbations this solver lives on.
  return std::expm1((gamma - 2.0) * std::log(rho));
}

namespace {

RealField add(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "state change of variables");
  RealField out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}
RealField sub(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "state change of variables");
  RealField out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}
RealField halve(RealField f) {
  for (auto& x : f.v) x *= 0.5;
  return f;
}

SpectralField add(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "state change of variables");
  SpectralField out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}
SpectralField sub(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "state change of variables");
  SpectralField out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
  return out;
}
SpectralField halve(SpectralField f) {
  for (auto& c : f.c) c *= 0.5;
  return f;
}

template <class VecT>
VecT add_vec(const VecT& a, const VecT& b) {
  VecT out = a;
  for (std::size_t d = 0; d < out.comp.size(); ++d)
    out.comp[d] = add(a.comp[d], b.comp[d]);
  return out;
}
template <class VecT>
VecT sub_vec(const VecT& a, const VecT& b) {
  VecT out = a;
  for (std::size_t d = 0; d < out.comp.size(); ++d)
    out.comp[d] = sub(a.comp[d], b.comp[d]);
  return out;
}
template <class VecT>
VecT halve_vec(VecT w) {
  for (auto& comp : w.comp) comp = halve(comp);
  return w;
}

}  // namespace

SumDiffState to_sumdiff(const PrimitiveState& p) {
  return SumDiffState{add(p.sigma1, p.sigma2), sub(p.sigma1, p.sigma2),
                      add_vec(p.u1, p.u2), sub_vec(p.u1, p.u2)};
}

PrimitiveState to_primitive(const SumDiffState& s) {
  PrimitiveState p{halve(add(s.n1, s.n2)), halve(sub(s.n1, s.n2)),
                   halve_vec(add_vec(s.w1, s.w2)),
                   halve_vec(sub_vec(s.w1, s.w2))};
  for (std::size_t i = 0; i < p.sigma1.v.size(); ++i) {
    if (1.0 + p.sigma1.v[i] <= 0.0 || 1.0 + p.sigma2.v[i] <= 0.0) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "to_primitive: reconstructed density <= 0 (rho1 = %g, "
                    "rho2 = %g)",
                    1.0 + p.sigma1.v[i], 1.0 + p.sigma2.v[i]);
      throw NonPositiveDensityError(buf);
    }
  }
  return p;
}

SumDiffSpectral to_sumdiff(const PrimitiveSpectral& p) {
  return SumDiffSpectral{add(p.sigma1, p.sigma2), sub(p.sigma1, p.sigma2),
                         add_vec(p.u1, p.u2), sub_vec(p.u1, p.u2)};
}

PrimitiveSpectral to_primitive(const SumDiffSpectral& s) {
  return PrimitiveSpectral{halve(add(s.n1, s.n2)), halve(sub(s.n1, s.n2)),
                           halve_vec(add_vec(s.w1, s.w2)),
                           halve_vec(sub_vec(s.w1, s.w2))};
}

namespace {

RealVecField inverse_vec(const SpectralVecField& w) {
  RealVecField out{w.grid, {}};
  for (const auto& comp : w.comp) out.comp.push_back(fft_inverse(comp));
  return out;
}

SpectralVecField forward_vec(const RealVecField& w) {
  SpectralVecField out{w.grid, {}};
  for (const auto& comp : w.comp) out.comp.push_back(fft_forward(comp));
  return out;
}

}  // namespace

SumDiffState to_physical(const SumDiffSpectral& s) {
  return SumDiffState{fft_inverse(s.n1), fft_inverse(s.n2), inverse_vec(s.w1),
                      inverse_vec(s.w2)};
}

SumDiffSpectral to_spectral(const SumDiffState& s) {
  return SumDiffSpectral{fft_forward(s.n1), fft_forward(s.n2),
                         forward_vec(s.w1), forward_vec(s.w2)};
}

void check_admissible(const RealField& n1, const RealField& n2,
                      const AdmissibleBox& box, double t) {
  require_same_grid(n1.grid, n2.grid, "check_admissible");
  double lo = 1.0, hi = 1.0;
  for (std::size_t i = 0; i < n1.v.size(); ++i) {
    const double half_sum = 0.5 * (n1.v[i] + n2.v[i]);
    const double half_diff = 0.5 * (n1.v[i] - n2.v[i]);
    const double rho1 = 1.0 + half_sum;
    const double rho2 = 1.0 + half_diff;
    lo = std::min(lo, std::min(rho1, rho2));
    hi = std::max(hi, std::max(rho1, rho2));
  }
  if (lo < box.lo || hi > box.hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "density left the admissible box [%g, %g]: range [%g, %g] "
                  "at t = %g",
                  box.lo, box.hi, lo, hi, t);
    throw InadmissibleStateError(buf, t);
  }
}

}  // namespace bep
