#pragma once

#include <complex>
#include <optional>

#include "breakcast/errors.hpp"

namespace breakcast {

using Complex = std::complex<double>;

/// Evaluation inside this radius of a pole raises SingularityError instead of
/// returning an unbounded value. All quadrature happens on the unit circle,
/// far from every pole for the supported parameter ranges.
inline constexpr double kSingularityGuard = 1e-9;

/// Parameters of the predicting kernel K(z) = z(1 - exp(-gamma/(z + 1 - gamma^-r))).
struct PredictorParams {
  double gamma = 1.1;
  double r = 0.8;

  void validate() const;
  friend bool operator==(const PredictorParams&, const PredictorParams&) = default;
};

/// Parameters of the causal smoother F(z) = (exp((1-a)^p/(z+a)) + G(z))^m with
/// G(z) = -xi(a,p) + (gamma(a,p)/N)((-1)^N z^-N - 1), N = cap_n.
struct SmootherParams {
  double a = 0.6;
  double p = 0.7;
  int m = 2;
  int cap_n = 100;

  void validate() const;
  friend bool operator==(const SmootherParams&, const SmootherParams&) = default;
};

enum class KernelVariant {
  PredictOnly,      ///< H(z) = K(z)
  SmoothedPredict,  ///< H(z) = K(z) F(z)
};

/// Which predictor transfer function to use, with all of its parameters.
struct KernelSpec {
  KernelVariant variant = KernelVariant::SmoothedPredict;
  PredictorParams predictor{};
  std::optional<SmootherParams> smoother = SmootherParams{};

  /// SmoothedPredict requires smoother params; PredictOnly forbids them.
  void validate() const;

  static KernelSpec predict_only(PredictorParams params);
  static KernelSpec smoothed(PredictorParams params, SmootherParams smoother);

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// xi(a,p) = exp(-(1-a)^(p-1)), strictly in (0,1) for a in (0,1), p in (1/2,1).
double eval_xi(double a, double p);

/// gamma(a,p) = |1-a|^(p-2) xi(a,p), strictly positive. Not to be confused
/// with the scalar kernel parameter PredictorParams::gamma.
double eval_gamma_ap(double a, double p);

/// Predicting-kernel transfer function K(z). Pole of the exponent at
/// z = gamma^-r - 1 (guarded).
Complex eval_k(Complex z, const PredictorParams& params);

/// Smoother component G(z). z^-N is computed by binary exponentiation of 1/z
/// (exact integer exponent, branch-free). Guarded at z = 0.
Complex eval_g(Complex z, const SmootherParams& params);

/// Smoother transfer function F(z). Guarded at z = -a and z = 0; the integer
/// power m is applied by repeated multiplication.
Complex eval_f(Complex z, const SmootherParams& params);

/// Full predictor transfer function: K for PredictOnly, K*F for SmoothedPredict.
Complex eval_h(Complex z, const KernelSpec& spec);

}  // namespace breakcast
