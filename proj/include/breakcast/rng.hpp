#pragma once

#include <cmath>
#include <cstdint>

namespace breakcast {

/// SplitMix64 finalizer. Bijective on 64-bit words, strong avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

/// Derives an independent child seed from a master seed, used for panel rows.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + kGolden64 * (index + 1));
}

/// Counter-derived random stream: each (master seed, trial index) pair keys an
/// independent Weyl sequence with its own start and odd increment, finalized
/// through mix64. Streams are reproducible bit-for-bit regardless of how
/// trials are scheduled across workers.
class RandomStream {
 public:
  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    RandomStream s;
    s.state_ = mix64(master_seed + kGolden64 * (trial_index + 1));
    s.inc_ = mix64(s.state_ ^ (trial_index * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL)) | 1ULL;
    return s;
  }

  std::uint64_t next_u64() {
    state_ += inc_;
    return mix64(state_);
  }

  /// Uniform double strictly inside (0, 1): ((raw >> 11) + 0.5) * 2^-53.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  /// Uniform integer in {lo, ..., hi}, both ends inclusive.
  long uniform_int(long lo, long hi) {
    const long span = hi - lo + 1;
    long k = static_cast<long>(next_unit() * static_cast<double>(span));
    if (k >= span) k = span - 1;
    return lo + k;
  }

  /// Standard normal via Box-Muller; the spare deviate is cached per stream.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Gamma(shape 2, scale) via the exact sum-of-exponentials identity
  /// -scale*(ln u1 + ln u2); no rejection loop, reproducible everywhere.
  double gamma_shape2(double scale) {
    return -scale * (std::log(next_unit()) + std::log(next_unit()));
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = kGolden64 | 1ULL;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace breakcast
