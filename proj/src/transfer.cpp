#include "breakcast/transfer.hpp"

#include <cmath>

namespace breakcast {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

void check_smoother_domain(double a, double p) {
  require(std::isfinite(a) && a > 0.0 && a < 1.0, "smoother parameter a must lie in (0,1)");
  require(std::isfinite(p) && p > 0.5 && p < 1.0, "smoother parameter p must lie in (1/2,1)");
}

/// z^-n by binary exponentiation of 1/z. Integer-exponent semantics avoid the
/// branch ambiguity of exp(-n log z).
Complex reciprocal_int_pow(Complex z, int n) {
  Complex base = 1.0 / z;
  Complex acc{1.0, 0.0};
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) acc *= base;
    base *= base;
  }
  return acc;
}

}  // namespace

void PredictorParams::validate() const {
  require(std::isfinite(gamma) && gamma > 0.0, "predictor parameter gamma must be > 0");
  require(std::isfinite(r) && r > 0.0, "predictor parameter r must be > 0");
}

void SmootherParams::validate() const {
  check_smoother_domain(a, p);
  require(m >= 1, "smoother parameter m must be >= 1");
  require(cap_n >= 1, "smoother parameter N must be >= 1");
}

void KernelSpec::validate() const {
  predictor.validate();
  if (variant == KernelVariant::SmoothedPredict) {
    if (!smoother) throw DomainError("SmoothedPredict requires smoother parameters");
    smoother->validate();
  } else if (smoother) {
    throw DomainError("PredictOnly must not carry smoother parameters");
  }
}

KernelSpec KernelSpec::predict_only(PredictorParams params) {
  return KernelSpec{KernelVariant::PredictOnly, params, std::nullopt};
}

KernelSpec KernelSpec::smoothed(PredictorParams params, SmootherParams smoother) {
  return KernelSpec{KernelVariant::SmoothedPredict, params, smoother};
}

double eval_xi(double a, double p) {
  check_smoother_domain(a, p);
  return std::exp(-std::pow(1.0 - a, p - 1.0));
}

double eval_gamma_ap(double a, double p) {
  check_smoother_domain(a, p);
  return std::pow(std::abs(1.0 - a), p - 2.0) * eval_xi(a, p);
}

Complex eval_k(Complex z, const PredictorParams& params) {
  params.validate();
  const double pole = std::pow(params.gamma, -params.r) - 1.0;
  if (std::abs(z - pole) < kSingularityGuard)
    throw SingularityError("eval_k: z is inside the guard radius of the exponent pole");
  return z * (1.0 - std::exp(-params.gamma / (z + 1.0 - std::pow(params.gamma, -params.r))));
}

Complex eval_g(Complex z, const SmootherParams& params) {
  params.validate();
  if (std::abs(z) < kSingularityGuard)
    throw SingularityError("eval_g: z is inside the guard radius of z = 0");
  const double sign = (params.cap_n % 2 == 0) ? 1.0 : -1.0;
  const Complex z_pow = reciprocal_int_pow(z, params.cap_n);
  return -eval_xi(params.a, params.p) +
         (eval_gamma_ap(params.a, params.p) / params.cap_n) * (sign * z_pow - 1.0);
}

Complex eval_f(Complex z, const SmootherParams& params) {
  params.validate();
  if (std::abs(z + params.a) < kSingularityGuard)
    throw SingularityError("eval_f: z is inside the guard radius of z = -a");
  if (std::abs(z) < kSingularityGuard)
    throw SingularityError("eval_f: z is inside the guard radius of z = 0");
  const Complex base =
      std::exp(std::pow(1.0 - params.a, params.p) / (z + params.a)) + eval_g(z, params);
  Complex result{1.0, 0.0};
  for (int i = 0; i < params.m; ++i) result *= base;
  return result;
}

Complex eval_h(Complex z, const KernelSpec& spec) {
  spec.validate();
  if (spec.variant == KernelVariant::PredictOnly) return eval_k(z, spec.predictor);
  return eval_k(z, spec.predictor) * eval_f(z, *spec.smoother);
}

}  // namespace breakcast
