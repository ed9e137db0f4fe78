#pragma once

#include <span>
#include <vector>

#include "breakcast/errors.hpp"
#include "breakcast/rng.hpp"

namespace breakcast {

/// Interval (lo, hi) for uniform coefficient draws.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// One trial's AR(1)-with-break data generating process:
/// x(t) = beta(t) x(t-1) + sigma eta(t), x(-1) = 0, with beta(t) = beta1 for
/// t < theta and beta2 for t >= theta.
struct BreakModel {
  double beta1 = 0.0;
  double beta2 = 0.0;
  int theta = 2;
  double sigma = 0.3;
  int d = 4;

  void validate() const;
};

enum class InnovationKind {
  IidGaussian,          ///< eta(t) ~ N(0,1) iid
  ShiftedGamma,         ///< Gamma(2, 2^-1/2) - sqrt(2): mean 0, variance 1
  ScaledPseudoUniform,  ///< deterministic sqrt(12)(frac(exp(t + 3 atan s)) - 1/2)
  Ma1Gaussian,          ///< 2^-1/2 (eta0(t) + eta0(t-1)), lag-1 correlation 0.5
};

/// One simulated trial: observations x(0..d) (d+1 values).
struct Path {
  std::vector<double> x;
  BreakModel model{};
  long trial_index = 0;
};

/// Innovations eta(0..d) for one trial, written into out (size d+1).
/// trial_index is the pseudo-uniform setting's s; stochastic kinds draw from
/// the stream in a fixed order.
void draw_innovations(InnovationKind kind, int d, long trial_index,
                      RandomStream& stream, std::span<double> out);
std::vector<double> draw_innovations(InnovationKind kind, int d, long trial_index,
                                     RandomStream& stream);

/// Draws beta1, beta2 independently and uniformly from their open intervals
/// and theta uniformly from {theta_min, ..., d-2}.
BreakModel draw_model(Interval beta1_range, Interval beta2_range, int d,
                      double sigma, int theta_min, RandomStream& stream);

/// Applies the break recursion; x_out receives x(0..d) (size d+1).
void simulate_path(const BreakModel& model, std::span<const double> eta,
                   std::span<double> x_out);
Path simulate_path(const BreakModel& model, std::span<const double> eta,
                   long trial_index = 0);

}  // namespace breakcast
