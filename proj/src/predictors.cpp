#include "breakcast/predictors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace breakcast {
namespace {

constexpr double kDegenerateFloor = 1e-12;

double handle_degenerate(const OlsOptions& opts) {
  if (opts.degenerate_policy == DegeneratePolicy::Error)
    throw DegenerateSequenceError("estimate_ar1: degenerate design (denominator below 1e-12)");
  return 0.0;
}

}  // namespace

double predict_kernel(std::span<const double> x, const ImpulseResponse& taps) {
  const int d = static_cast<int>(x.size());
  if (d < 1) throw DomainError("predict_kernel: empty learning window");
  if (taps.first_index != 0 || taps.count() < d)
    throw DomainError("predict_kernel: taps must cover indices 0.." + std::to_string(d - 1));

  double acc = 0.0;
  for (int tau = 0; tau < d; ++tau)
    acc += taps.taps[static_cast<size_t>(d - 1 - tau)] * x[static_cast<size_t>(tau)];
  return acc;
}

double estimate_ar1(std::span<const double> x, const OlsOptions& opts) {
  const int d = static_cast<int>(x.size());
  if (d < 3) throw DomainError("estimate_ar1: needs at least 3 observations");

  std::vector<double> centered;
  std::span<const double> w = x;
  if (opts.demean) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= d;
    centered.reserve(static_cast<size_t>(d));
    for (double v : x) centered.push_back(v - mean);
    w = centered;
  }

  if (!opts.intercept) {
    double num = 0.0, den = 0.0;
    for (int t = 1; t < d; ++t) {
      num += w[static_cast<size_t>(t)] * w[static_cast<size_t>(t - 1)];
      den += w[static_cast<size_t>(t - 1)] * w[static_cast<size_t>(t - 1)];
    }
    if (den < kDegenerateFloor) return handle_degenerate(opts);
    return num / den;
  }

  // slope of the bivariate least-squares fit of w(t) on w(t-1), t = 1..d-1
  const int pairs = d - 1;
  double mean_lag = 0.0, mean_cur = 0.0;
  for (int t = 1; t < d; ++t) {
    mean_lag += w[static_cast<size_t>(t - 1)];
    mean_cur += w[static_cast<size_t>(t)];
  }
  mean_lag /= pairs;
  mean_cur /= pairs;
  double num = 0.0, den = 0.0;
  for (int t = 1; t < d; ++t) {
    const double lag = w[static_cast<size_t>(t - 1)] - mean_lag;
    num += lag * (w[static_cast<size_t>(t)] - mean_cur);
    den += lag * lag;
  }
  if (den < kDegenerateFloor) return handle_degenerate(opts);
  return num / den;
}

double predict_ideal(const BreakModel& model, std::span<const double> x) {
  model.validate();
  if (x.empty()) throw DomainError("predict_ideal: empty learning window");
  return model.beta2 * x[x.size() - 1];
}

ForecastSet forecast_all(std::span<const double> x_full, const BreakModel& model,
                         const ImpulseResponse& taps_k, const ImpulseResponse& taps_kh,
                         const OlsOptions& opts) {
  const auto d = static_cast<size_t>(model.d);
  if (x_full.size() != d + 1)
    throw DomainError("forecast_all: path must hold d+1 observations");
  const std::span<const double> window = x_full.first(d);

  ForecastSet out;
  out.y_k = predict_kernel(window, taps_k);
  out.y_kh = predict_kernel(window, taps_kh);
  out.y_ideal = predict_ideal(model, window);
  out.y_ar1 = estimate_ar1(window, opts) * window[d - 1];
  out.target = x_full[d];
  return out;
}

ForecastSet forecast_all(const Path& path, const ImpulseResponse& taps_k,
                         const ImpulseResponse& taps_kh, const OlsOptions& opts) {
  return forecast_all(path.x, path.model, taps_k, taps_kh, opts);
}

}  // namespace breakcast
