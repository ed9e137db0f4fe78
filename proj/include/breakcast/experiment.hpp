#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "breakcast/predictors.hpp"

namespace breakcast {

/// Everything that pins down one Monte Carlo cell.
struct ScenarioConfig {
  Interval beta1_range{0.0, 1.0};
  Interval beta2_range{0.0, 1.0};
  InnovationKind innovation = InnovationKind::IidGaussian;
  double r = 0.8;
  int d = 4;
  long n_sim = 300000;
  std::uint64_t seed = 42;
  double sigma = 0.3;
  double gamma = 1.1;
  double a = 0.6;
  double p = 0.7;
  int m = 2;
  int cap_n = 100;
  OlsOptions ols{};
  int theta_min = 2;
  int workers = 1;

  void validate() const;
  KernelSpec kernel_spec(KernelVariant variant) const;
};

/// RMSEs of the four predictors over one scenario cell, plus their ratios
/// against the OLS AR(1) benchmark.
struct RmseReport {
  double e_ideal = 0.0;
  double e_ar1 = 0.0;
  double e_k = 0.0;
  double e_kh = 0.0;
  double ratio_ideal = 0.0;  ///< e_ideal / e_ar1
  double ratio_k = 0.0;      ///< e_k / e_ar1
  double ratio_kh = 0.0;     ///< e_kh / e_ar1
  long n_sim = 0;
  ScenarioConfig config{};
};

/// Runs one cell: taps once per variant, then n_sim independent trials
/// (draw model -> draw innovations -> simulate -> forecast), accumulating
/// squared errors with compensated summation. Trials are scheduled over
/// fixed-size blocks so results are bit-identical for any worker count.
RmseReport run_scenario(const ScenarioConfig& config);

/// One report per (r, d), rows ordered r-major exactly like the preset study
/// tables. Each row derives its own seed from the base seed and its row index
/// (echoed in the report) so rows are independently reproducible.
std::vector<RmseReport> run_panel(const ScenarioConfig& base,
                                  std::span<const double> r_list,
                                  std::span<const int> d_list);

}  // namespace breakcast
