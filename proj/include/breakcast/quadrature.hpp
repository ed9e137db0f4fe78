#pragma once

#include <complex>
#include <functional>

#include "breakcast/errors.hpp"

namespace breakcast {

struct QuadratureResult {
  std::complex<double> value{};
  double abs_error = 0.0;  ///< final error estimate (sum over panels)
  int intervals = 0;       ///< panels in the final partition
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of a complex-valued integrand
/// over [lo, hi]. Bisects the panel with the largest error estimate until the
/// summed estimate drops below abs_tol. Throws ConvergenceError once
/// max_intervals panels exist and the tolerance is still not met.
QuadratureResult integrate_gk15(const std::function<std::complex<double>(double)>& f,
                                double lo, double hi, double abs_tol,
                                int max_intervals = 100000);

}  // namespace breakcast
