#include "bep/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace bep {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// One out-of-place c2c plan pair per (n, dim), created with FFTW_ESTIMATE
// (heuristic planning only — no timing runs, so planning is reproducible)
// and FFTW_UNALIGNED (so the plans may execute on any caller buffer via
// the new-array interface).  Plans live for the process lifetime.
PlanPair& plans_for(const GridSpec& g) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(g.n, g.dim);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<cplx> in(g.num_points()), out(g.num_points());
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int n = g.n;
  PlanPair pp;
  switch (g.dim) {
    case 1:
      pp.fwd = fftw_plan_dft_1d(n, pin, pout, FFTW_FORWARD, flags);
      pp.bwd = fftw_plan_dft_1d(n, pin, pout, FFTW_BACKWARD, flags);
      break;
    case 2:
      pp.fwd = fftw_plan_dft_2d(n, n, pin, pout, FFTW_FORWARD, flags);
      pp.bwd = fftw_plan_dft_2d(n, n, pin, pout, FFTW_BACKWARD, flags);
      break;
    default:
      pp.fwd = fftw_plan_dft_3d(n, n, n, pin, pout, FFTW_FORWARD, flags);
      pp.bwd = fftw_plan_dft_3d(n, n, n, pin, pout, FFTW_BACKWARD, flags);
      break;
  }
  return cache.emplace(key, pp).first->second;
}

}  // namespace

SpectralField fft_forward(const RealField& f) {
  f.grid.validate();
  const std::size_t N = f.grid.num_points();
  if (f.v.size() != N)
    throw GridMismatchError("fft_forward: sample count does not match grid");

  std::vector<cplx> in(N);
  for (std::size_t i = 0; i < N; ++i) in[i] = cplx(f.v[i], 0.0);

  SpectralField out{f.grid, std::vector<cplx>(N)};
  auto& pp = plans_for(f.grid);
  fftw_execute_dft(pp.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.c.data()));
  const double scale = 1.0 / static_cast<double>(N);
  for (auto& c : out.c) c *= scale;
  return out;
}

RealField fft_inverse(const SpectralField& f) {
  f.grid.validate();
  const std::size_t N = f.grid.num_points();
  if (f.c.size() != N)
    throw GridMismatchError("fft_inverse: coefficient count does not match grid");

  // Out-of-place c2c transforms leave the input untouched, so handing the
  // field's own buffer to FFTW is safe.
  std::vector<cplx> out(N);
  auto& pp = plans_for(f.grid);
  fftw_execute_dft(pp.bwd,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<cplx*>(f.c.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));

  RealField r{f.grid, std::vector<double>(N)};
  for (std::size_t i = 0; i < N; ++i) r.v[i] = out[i].real();
  return r;
}

}  // namespace bep
