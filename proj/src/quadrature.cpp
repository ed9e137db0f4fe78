#include "breakcast/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace breakcast {
namespace {

// (G7, K15) nodes and weights on [-1, 1], QUADPACK values.
constexpr int kPoints = 8;  // nonnegative abscissae; node 7 is the midpoint
constexpr double kNodes[kPoints] = {
    0.991455371120812639207, 0.949107912342758524526, 0.864864423359769072790,
    0.741531185599394439864, 0.586087235467691130294, 0.405845151377397166907,
    0.207784955007898467601, 0.0,
};
constexpr double kKronrodW[kPoints] = {
    0.022935322010529224964, 0.063092092629978553291, 0.104790010322250183840,
    0.140653259715525918745, 0.169004726639267902827, 0.190350578064785409913,
    0.204432940075298892414, 0.209482141084727828013,
};
// Gauss weights attach to the odd-index Kronrod nodes (k = 1, 3, 5) and the
// midpoint.
constexpr double kGaussW[4] = {
    0.129484966168869693271, 0.279705391489276667901, 0.381830050505118944950,
    0.417959183673469387755,
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  std::complex<double> value{};
  double error = 0.0;
};

Panel evaluate_panel(const std::function<std::complex<double>(double)>& f,
                     double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::complex<double> kronrod{};
  std::complex<double> gauss{};
  for (int i = 0; i < kPoints; ++i) {
    std::complex<double> fsum;
    if (i == kPoints - 1) {
      fsum = f(center);  // midpoint, sampled once
    } else {
      fsum = f(center + half * kNodes[i]) + f(center - half * kNodes[i]);
    }
    kronrod += kKronrodW[i] * fsum;
    // the odd-index Kronrod abscissae and the midpoint are the Gauss nodes
    if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
  }

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = kronrod * half;
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

}  // namespace

QuadratureResult integrate_gk15(const std::function<std::complex<double>(double)>& f,
                                double lo, double hi, double abs_tol,
                                int max_intervals) {
  if (!(abs_tol > 0.0)) throw DomainError("integrate_gk15: abs_tol must be > 0");
  if (max_intervals < 1) throw DomainError("integrate_gk15: max_intervals must be >= 1");

  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  panels.push(evaluate_panel(f, lo, hi));
  double total_error = panels.top().error;

  while (total_error > abs_tol && static_cast<int>(panels.size()) < max_intervals) {
    const Panel worst = panels.top();
    panels.pop();
    total_error -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval collapsed to machine resolution; keep its estimate as-is
      total_error += worst.error;
      panels.push(worst);
      break;
    }
    Panel left = evaluate_panel(f, worst.lo, mid);
    Panel right = evaluate_panel(f, mid, worst.hi);
    total_error += left.error + right.error;
    panels.push(std::move(left));
    panels.push(std::move(right));
  }

  if (total_error > abs_tol)
    throw ConvergenceError("integrate_gk15: subdivision budget exhausted before tolerance");

  // Drain and sum in position order for a reproducible, well-conditioned total.
  std::vector<Panel> final_panels;
  final_panels.reserve(panels.size());
  while (!panels.empty()) {
    final_panels.push_back(panels.top());
    panels.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });

  QuadratureResult result;
  result.intervals = static_cast<int>(final_panels.size());
  for (const Panel& p : final_panels) {
    result.value += p.value;
    result.abs_error += p.error;
  }
  return result;
}

}  // namespace breakcast
