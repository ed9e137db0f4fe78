#include "breakcast/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "breakcast/quadrature.hpp"

namespace breakcast {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_window(int count) {
  if (count < 1) throw DomainError("impulse response window must contain at least one tap");
}

TransferFn transfer_of(const KernelSpec& spec) {
  spec.validate();
  return [spec](Complex z) { return eval_h(z, spec); };
}

ImpulseResponse quadrature_taps(const TransferFn& fn, int first_index, int count,
                                double abs_tol) {
  check_window(count);
  if (!(abs_tol > 0.0)) throw DomainError("impulse_response_quadrature: abs_tol must be > 0");

  ImpulseResponse out;
  out.first_index = first_index;
  out.method = TapMethod::Quadrature;
  out.method_param = abs_tol;
  out.taps.resize(static_cast<size_t>(count));

  for (int i = 0; i < count; ++i) {
    const int t = first_index + i;
    // Inversion integral folded onto [0, pi]: the two half-circle
    // contributions are summed pointwise, so the real part is the tap and the
    // imaginary part cancels up to the realness defect of the spectrum.
    auto integrand = [&fn, t](double w) {
      const Complex z = std::polar(1.0, w);
      return fn(z) * std::polar(1.0, w * t) + fn(std::conj(z)) * std::polar(1.0, -w * t);
    };
    const QuadratureResult q = integrate_gk15(integrand, 0.0, std::numbers::pi,
                                              abs_tol * kTwoPi);
    out.taps[static_cast<size_t>(i)] = q.value.real() / kTwoPi;
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(q.value.imag()) / kTwoPi);
  }
  return out;
}

ImpulseResponse dft_taps(const TransferFn& fn, int dft_size, int first_index, int count) {
  check_window(count);
  if (!is_power_of_two(dft_size) || dft_size < 1024)
    throw DomainError("impulse_response_fft: dft_size must be a power of two >= 1024");
  if (count > dft_size)
    throw DomainError("impulse_response_fft: count must not exceed dft_size");

  const int m = dft_size;
  // One table serves both the sample points z_k and every rotation
  // e^{2 pi i k t / M}: indices reduce exactly mod M, so no drift accumulates.
  std::vector<Complex> roots(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    roots[static_cast<size_t>(j)] = std::polar(1.0, kTwoPi * j / m);

  std::vector<Complex> samples(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) samples[static_cast<size_t>(k)] = fn(roots[static_cast<size_t>(k)]);

  ImpulseResponse out;
  out.first_index = first_index;
  out.method = TapMethod::DftSampling;
  out.method_param = static_cast<double>(dft_size);
  out.taps.resize(static_cast<size_t>(count));

  for (int i = 0; i < count; ++i) {
    const long long t = ((static_cast<long long>(first_index + i) % m) + m) % m;
    Complex acc{};
    for (int k = 0; k < m; ++k) {
      const auto idx = static_cast<size_t>((static_cast<long long>(k) * t) % m);
      acc += samples[static_cast<size_t>(k)] * roots[idx];
    }
    out.taps[static_cast<size_t>(i)] = acc.real() / m;
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(acc.imag()) / m);
  }
  return out;
}

using CacheKey = std::tuple<int, double, double, int, double, double, int, int>;

CacheKey key_of(const KernelSpec& spec) {
  const bool smoothed = spec.variant == KernelVariant::SmoothedPredict;
  const SmootherParams sm = smoothed ? *spec.smoother : SmootherParams{};
  return {static_cast<int>(spec.variant), spec.predictor.gamma, spec.predictor.r,
          smoothed ? 1 : 0, sm.a, sm.p, sm.m, sm.cap_n};
}

constexpr int kProductionDftSize = 1 << 16;
constexpr int kProductionWindow = 8;

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const ImpulseResponse>>& tap_cache() {
  static std::map<CacheKey, std::shared_ptr<const ImpulseResponse>> cache;
  return cache;
}

}  // namespace

double ImpulseResponse::tap(int t) const {
  const int i = t - first_index;
  if (i < 0 || i >= count())
    throw DomainError("ImpulseResponse::tap: index " + std::to_string(t) +
                      " outside the computed window");
  return taps[static_cast<size_t>(i)];
}

ImpulseResponse impulse_response_quadrature(const KernelSpec& spec, int first_index,
                                            int count, double abs_tol) {
  ImpulseResponse out = quadrature_taps(transfer_of(spec), first_index, count, abs_tol);
  out.spec = spec;
  return out;
}

ImpulseResponse impulse_response_quadrature(const TransferFn& fn, int first_index,
                                            int count, double abs_tol) {
  return quadrature_taps(fn, first_index, count, abs_tol);
}

ImpulseResponse impulse_response_fft(const KernelSpec& spec, int dft_size,
                                     int first_index, int count) {
  ImpulseResponse out = dft_taps(transfer_of(spec), dft_size, first_index, count);
  out.spec = spec;
  return out;
}

ImpulseResponse impulse_response_fft(const TransferFn& fn, int dft_size,
                                     int first_index, int count) {
  return dft_taps(fn, dft_size, first_index, count);
}

std::shared_ptr<const ImpulseResponse> cached_taps(const KernelSpec& spec) {
  spec.validate();
  const CacheKey key = key_of(spec);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& cache = tap_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto taps = std::make_shared<const ImpulseResponse>(
      impulse_response_fft(spec, kProductionDftSize, 0, kProductionWindow));
  cache.emplace(key, taps);
  return taps;
}

}  // namespace breakcast
