#pragma once

#include <span>

#include "breakcast/kernel.hpp"
#include "breakcast/simulate.hpp"

namespace breakcast {

/// The four one-step-ahead forecasts of x(d) plus the realized target.
struct ForecastSet {
  double y_k = 0.0;      ///< predicting kernel K
  double y_kh = 0.0;     ///< smoothed predicting kernel K*F
  double y_ideal = 0.0;  ///< infeasible benchmark beta2 * x(d-1)
  double y_ar1 = 0.0;    ///< OLS AR(1) benchmark betahat * x(d-1)
  double target = 0.0;   ///< realized x(d)
};

enum class DegeneratePolicy {
  ZeroSlope,  ///< near-singular design yields betahat = 0 (forecast the mean)
  Error,      ///< raise DegenerateSequenceError instead
};

struct OlsOptions {
  bool demean = false;
  bool intercept = false;
  DegeneratePolicy degenerate_policy = DegeneratePolicy::ZeroSlope;
};

/// Kernel forecast y(d-1) = sum_{tau=0}^{d-1} h(d-1-tau) x(tau) from the
/// learning window x(0..d-1). Taps must cover 0..d-1 (first_index 0,
/// count >= d).
double predict_kernel(std::span<const double> x, const ImpulseResponse& taps);

/// AR(1) coefficient from the learning window.
/// Default: betahat = sum x(t)x(t-1) / sum x(t-1)^2 over t = 1..d-1.
/// demean centers the window by its sample mean first; intercept fits the
/// bivariate least-squares slope of x(t) on x(t-1) instead.
double estimate_ar1(std::span<const double> x, const OlsOptions& opts = {});

/// Ideal benchmark beta2 * x(d-1) using the true post-break coefficient.
double predict_ideal(const BreakModel& model, std::span<const double> x);

/// All four forecasts for one trial from x(0..d); target = x(d).
ForecastSet forecast_all(const Path& path, const ImpulseResponse& taps_k,
                         const ImpulseResponse& taps_kh, const OlsOptions& opts = {});
ForecastSet forecast_all(std::span<const double> x_full, const BreakModel& model,
                         const ImpulseResponse& taps_k, const ImpulseResponse& taps_kh,
                         const OlsOptions& opts = {});

}  // namespace breakcast
