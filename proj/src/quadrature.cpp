#include "bep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace bep {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1] (QUADPACK dqk15
// constants).  xgk holds the positive abscissae in decreasing order; the
// odd indices are the embedded Gauss points.
constexpr double xgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double wgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double wg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Panel {
  double a, b;
  double value;
  double err;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = wgk[7] * fc;
  double resg = wg[3] * fc;
  for (int j = 0; j < 3; ++j) {  // shared Gauss/Kronrod abscissae
    const int jj = 2 * j + 1;
    const double x = h * xgk[jj];
    const double fsum = f(c - x) + f(c + x);
    resk += wgk[jj] * fsum;
    resg += wg[j] * fsum;
  }
  for (int j = 0; j < 4; ++j) {  // Kronrod-only abscissae
    const int jj = 2 * j;
    const double x = h * xgk[jj];
    const double fsum = f(c - x) + f(c + x);
    resk += wgk[jj] * fsum;
  }
  return Panel{a, b, resk * h, std::abs(resk - resg) * h};
}

}  // namespace

QuadResult adaptive_gk(const std::function<double(double)>& f, double a,
                       double b, double rel_tol, double abs_tol,
                       int max_panels, std::span<const double> breakpoints) {
  if (!(b >= a)) throw ValidationError("adaptive_gk: inverted interval");
  if (a == b) return QuadResult{0.0, 0.0, 0, true};
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0))
    throw ValidationError("adaptive_gk: need a positive tolerance");

  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) panels.push_back(eval_panel(f, pts[i], pts[i + 1]));

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
      v += p.value;
      e += p.err;
    }
    return std::pair<double, double>{v, e};
  };

  while (true) {
    auto [value, err] = totals();
    const double goal = std::max(rel_tol * std::abs(value), abs_tol);
    if (err <= goal)
      return QuadResult{value, err, static_cast<int>(panels.size()), true};
    if (static_cast<int>(panels.size()) >= max_panels) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "adaptive_gk: %d panels exhausted, error estimate %.3e "
                    "above goal %.3e",
                    max_panels, err, goal);
      throw QuadratureError(buf, err);
    }
    // Bisect the worst panel.
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const Panel& x, const Panel& y) { return x.err < y.err; });
    const Panel old = *worst;
    const double mid = 0.5 * (old.a + old.b);
    if (mid <= old.a || mid >= old.b) {
      // Interval collapsed to machine resolution; give up on refinement.
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "adaptive_gk: panel [%g, %g] no longer bisectable at "
                    "error %.3e",
                    old.a, old.b, err);
      throw QuadratureError(buf, err);
    }
    *worst = eval_panel(f, old.a, mid);
    panels.push_back(eval_panel(f, mid, old.b));
  }
}

}  // namespace bep
