#include "breakcast/simulate.hpp"

#include <cmath>

namespace breakcast {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt12 = 3.46410161513775458705;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

double pseudo_uniform(int t, long s) {
  const double e = std::exp(static_cast<double>(t) + 3.0 * std::atan(static_cast<double>(s)));
  return kSqrt12 * ((e - std::floor(e)) - 0.5);
}

}  // namespace

void BreakModel::validate() const {
  require(std::isfinite(beta1) && std::abs(beta1) < 1.0, "beta1 must satisfy |beta1| < 1");
  require(std::isfinite(beta2) && std::abs(beta2) < 1.0, "beta2 must satisfy |beta2| < 1");
  require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be >= 0");
  require(d >= 4, "d must be >= 4");
  require(theta >= 1 && theta <= d - 2, "theta must lie in {1, ..., d-2}");
}

void draw_innovations(InnovationKind kind, int d, long trial_index,
                      RandomStream& stream, std::span<double> out) {
  require(d >= 4, "draw_innovations: d must be >= 4");
  require(trial_index >= 1, "draw_innovations: trial_index must be >= 1");
  require(out.size() == static_cast<size_t>(d) + 1, "draw_innovations: out must hold d+1 values");

  switch (kind) {
    case InnovationKind::IidGaussian:
      for (int t = 0; t <= d; ++t) out[static_cast<size_t>(t)] = stream.gaussian();
      break;
    case InnovationKind::ShiftedGamma:
      for (int t = 0; t <= d; ++t)
        out[static_cast<size_t>(t)] = stream.gamma_shape2(kInvSqrt2) - kSqrt2;
      break;
    case InnovationKind::ScaledPseudoUniform:
      for (int t = 0; t <= d; ++t) out[static_cast<size_t>(t)] = pseudo_uniform(t, trial_index);
      break;
    case InnovationKind::Ma1Gaussian: {
      // eta0(-1) is one extra deviate so eta(0) already has the stationary law.
      double prev = stream.gaussian();
      for (int t = 0; t <= d; ++t) {
        const double cur = stream.gaussian();
        out[static_cast<size_t>(t)] = kInvSqrt2 * (cur + prev);
        prev = cur;
      }
      break;
    }
  }
}

std::vector<double> draw_innovations(InnovationKind kind, int d, long trial_index,
                                     RandomStream& stream) {
  std::vector<double> eta(static_cast<size_t>(d) + 1);
  draw_innovations(kind, d, trial_index, stream, eta);
  return eta;
}

BreakModel draw_model(Interval beta1_range, Interval beta2_range, int d,
                      double sigma, int theta_min, RandomStream& stream) {
  for (const Interval& range : {beta1_range, beta2_range}) {
    require(range.lo < range.hi, "beta range must satisfy lo < hi");
    require(range.lo >= -1.0 && range.hi <= 1.0, "beta ranges must lie within (-1, 1)");
  }
  require(d >= 4 && d <= 6, "draw_model: d must lie in {4, 5, 6}");
  require(std::isfinite(sigma) && sigma >= 0.0, "draw_model: sigma must be >= 0");
  require(theta_min == 1 || theta_min == 2, "theta_min must be 1 or 2");
  require(theta_min <= d - 2, "theta_min must not exceed d-2");

  BreakModel model;
  model.beta1 = stream.uniform(beta1_range.lo, beta1_range.hi);
  model.beta2 = stream.uniform(beta2_range.lo, beta2_range.hi);
  model.theta = static_cast<int>(stream.uniform_int(theta_min, d - 2));
  model.sigma = sigma;
  model.d = d;
  return model;
}

void simulate_path(const BreakModel& model, std::span<const double> eta,
                   std::span<double> x_out) {
  model.validate();
  const auto n = static_cast<size_t>(model.d) + 1;
  require(eta.size() == n, "simulate_path: eta must hold d+1 values");
  require(x_out.size() == n, "simulate_path: x_out must hold d+1 values");

  double prev = 0.0;  // x(-1) = 0
  for (int t = 0; t <= model.d; ++t) {
    const double beta = (t < model.theta) ? model.beta1 : model.beta2;
    prev = beta * prev + model.sigma * eta[static_cast<size_t>(t)];
    x_out[static_cast<size_t>(t)] = prev;
  }
}

Path simulate_path(const BreakModel& model, std::span<const double> eta, long trial_index) {
  Path path;
  path.model = model;
  path.trial_index = trial_index;
  path.x.resize(static_cast<size_t>(model.d) + 1);
  simulate_path(model, eta, path.x);
  return path;
}

}  // namespace breakcast
