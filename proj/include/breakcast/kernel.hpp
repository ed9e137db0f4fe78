#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "breakcast/transfer.hpp"

namespace breakcast {

enum class TapMethod {
  Quadrature,   ///< adaptive Gauss-Kronrod on the folded inversion integral
  DftSampling,  ///< uniform unit-circle sampling (aliased inverse DFT)
};

/// Real impulse-response taps h(first_index .. first_index+count-1) of a
/// predictor, recovered from its transfer function on the unit circle.
struct ImpulseResponse {
  KernelSpec spec{};
  int first_index = 0;
  std::vector<double> taps;
  double max_imag_residual = 0.0;  ///< largest |Im| discarded across the window
  TapMethod method = TapMethod::DftSampling;
  double method_param = 0.0;  ///< quadrature tolerance or DFT size

  int count() const { return static_cast<int>(taps.size()); }

  /// Tap at absolute index t; throws if outside the computed window.
  double tap(int t) const;
};

/// An arbitrary transfer function. The production paths wrap eval_h; tests
/// inject synthetic spectra through the same machinery.
using TransferFn = std::function<Complex(Complex)>;

/// Taps by adaptive quadrature of the inversion integral, folded onto [0, pi]
/// by conjugate symmetry. Each tap is correct to ~abs_tol; the imaginary part
/// of the folded integral is recorded as the realness residual.
ImpulseResponse impulse_response_quadrature(const KernelSpec& spec, int first_index,
                                            int count, double abs_tol = 1e-10);
ImpulseResponse impulse_response_quadrature(const TransferFn& fn, int first_index,
                                            int count, double abs_tol = 1e-10);

/// Taps by uniform sampling of the spectrum at dft_size points:
/// h_M(t) = (1/M) sum_k H(e^{2 pi i k/M}) e^{2 pi i k t/M}, which equals the
/// exact taps plus the aliased tail sum_j h(t + jM). dft_size must be a power
/// of two >= 1024.
ImpulseResponse impulse_response_fft(const KernelSpec& spec, int dft_size,
                                     int first_index, int count);
ImpulseResponse impulse_response_fft(const TransferFn& fn, int dft_size,
                                     int first_index, int count);

/// Process-wide memoized production taps for a spec (DFT path, M = 2^16,
/// window 0..7). Initialize-once, read-many; safe for concurrent callers.
std::shared_ptr<const ImpulseResponse> cached_taps(const KernelSpec& spec);

}  // namespace breakcast
