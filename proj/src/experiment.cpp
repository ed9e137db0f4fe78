#include "breakcast/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "breakcast/kernel.hpp"

namespace breakcast {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

/// Neumaier-compensated accumulator; per-block use keeps summation order
/// independent of scheduling.
struct Accumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }

  double total() const { return sum + compensation; }
};

constexpr long kTrialBlock = 8192;

struct BlockSums {
  std::array<double, 4> sq{};  // ideal, ar1, k, kh
};

void run_block(const ScenarioConfig& config, const ImpulseResponse& taps_k,
               const ImpulseResponse& taps_kh, long first_trial, long last_trial,
               BlockSums& out) {
  std::array<Accumulator, 4> acc{};
  double eta[8];
  double x[8];
  const auto n = static_cast<size_t>(config.d) + 1;

  for (long s = first_trial; s <= last_trial; ++s) {
    RandomStream stream = RandomStream::for_trial(config.seed, static_cast<std::uint64_t>(s));
    const BreakModel model = draw_model(config.beta1_range, config.beta2_range, config.d,
                                        config.sigma, config.theta_min, stream);
    draw_innovations(config.innovation, config.d, s, stream, std::span<double>(eta, n));
    simulate_path(model, std::span<const double>(eta, n), std::span<double>(x, n));

    ForecastSet fc;
    try {
      fc = forecast_all(std::span<const double>(x, n), model, taps_k, taps_kh, config.ols);
    } catch (const DegenerateSequenceError& e) {
      throw DegenerateSequenceError("trial " + std::to_string(s) + ": " + e.what());
    }

    const double d_ideal = fc.target - fc.y_ideal;
    const double d_ar1 = fc.target - fc.y_ar1;
    const double d_k = fc.target - fc.y_k;
    const double d_kh = fc.target - fc.y_kh;
    acc[0].add(d_ideal * d_ideal);
    acc[1].add(d_ar1 * d_ar1);
    acc[2].add(d_k * d_k);
    acc[3].add(d_kh * d_kh);
  }
  for (int i = 0; i < 4; ++i) out.sq[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)].total();
}

}  // namespace

void ScenarioConfig::validate() const {
  kernel_spec(KernelVariant::SmoothedPredict).validate();
  for (const Interval& range : {beta1_range, beta2_range}) {
    require(range.lo < range.hi, "beta range must satisfy lo < hi");
    require(range.lo >= -1.0 && range.hi <= 1.0, "beta ranges must lie within (-1, 1)");
  }
  require(d >= 4 && d <= 6, "d must lie in {4, 5, 6}");
  require(n_sim >= 1, "n_sim must be >= 1");
  require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be >= 0");
  require(theta_min == 1 || theta_min == 2, "theta_min must be 1 or 2");
  require(theta_min <= d - 2, "theta_min must not exceed d-2");
  require(workers >= 1, "workers must be >= 1");
}

KernelSpec ScenarioConfig::kernel_spec(KernelVariant variant) const {
  PredictorParams predictor{gamma, r};
  if (variant == KernelVariant::PredictOnly) return KernelSpec::predict_only(predictor);
  return KernelSpec::smoothed(predictor, SmootherParams{a, p, m, cap_n});
}

RmseReport run_scenario(const ScenarioConfig& config) {
  config.validate();

  const auto taps_k = cached_taps(config.kernel_spec(KernelVariant::PredictOnly));
  const auto taps_kh = cached_taps(config.kernel_spec(KernelVariant::SmoothedPredict));

  const long n = config.n_sim;
  const long n_blocks = (n + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockSums> blocks(static_cast<size_t>(n_blocks));

  const int worker_count = static_cast<int>(
      std::min<long>(std::max(config.workers, 1), n_blocks));

  auto worker = [&](int w, std::exception_ptr& error) {
    try {
      for (long b = w; b < n_blocks; b += worker_count) {
        const long first = b * kTrialBlock + 1;
        const long last = std::min(n, (b + 1) * kTrialBlock);
        run_block(config, *taps_k, *taps_kh, first, last, blocks[static_cast<size_t>(b)]);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(static_cast<size_t>(worker_count));
  if (worker_count == 1) {
    worker(0, errors[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w)
      threads.emplace_back(worker, w, std::ref(errors[static_cast<size_t>(w)]));
    for (auto& t : threads) t.join();
  }
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);

  // Merge block sums in block-index order: bit-identical for any worker count.
  std::array<Accumulator, 4> totals{};
  for (const BlockSums& b : blocks)
    for (int i = 0; i < 4; ++i) totals[static_cast<size_t>(i)].add(b.sq[static_cast<size_t>(i)]);

  RmseReport report;
  report.e_ideal = std::sqrt(totals[0].total() / static_cast<double>(n));
  report.e_ar1 = std::sqrt(totals[1].total() / static_cast<double>(n));
  report.e_k = std::sqrt(totals[2].total() / static_cast<double>(n));
  report.e_kh = std::sqrt(totals[3].total() / static_cast<double>(n));
  const bool nonzero = report.e_ar1 > 0.0;
  report.ratio_ideal = nonzero ? report.e_ideal / report.e_ar1 : 0.0;
  report.ratio_k = nonzero ? report.e_k / report.e_ar1 : 0.0;
  report.ratio_kh = nonzero ? report.e_kh / report.e_ar1 : 0.0;
  report.n_sim = n;
  report.config = config;
  return report;
}

std::vector<RmseReport> run_panel(const ScenarioConfig& base,
                                  std::span<const double> r_list,
                                  std::span<const int> d_list) {
  require(!r_list.empty(), "run_panel: r_list must not be empty");
  require(!d_list.empty(), "run_panel: d_list must not be empty");

  std::vector<RmseReport> reports;
  reports.reserve(r_list.size() * d_list.size());
  std::uint64_t row = 0;
  for (double r : r_list) {
    for (int d : d_list) {
      ScenarioConfig cell = base;
      cell.r = r;
      cell.d = d;
      cell.seed = derive_seed(base.seed, row);
      reports.push_back(run_scenario(cell));
      ++row;
    }
  }
  return reports;
}

}  // namespace breakcast
