#include <cmath>
#include <string>
#include <vector>

#include "breakcast/experiment.hpp"
#include "breakcast/report.hpp"
#include "doctest.h"

using namespace breakcast;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig config;
  config.n_sim = 20000;
  config.seed = 20240601;
  return config;
}

}  // namespace

TEST_CASE("sigma = 0 collapses every RMSE to zero") {
  ScenarioConfig config = small_config();
  config.sigma = 0.0;
  config.n_sim = 200;
  const RmseReport report = run_scenario(config);
  CHECK(report.e_ideal == 0.0);
  CHECK(report.e_ar1 == 0.0);
  CHECK(report.e_k == 0.0);
  CHECK(report.e_kh == 0.0);
  CHECK(report.ratio_kh == 0.0);
}

TEST_CASE("n_sim = 1 reproduces the single trial bit for bit") {
  ScenarioConfig config = small_config();
  config.n_sim = 1;
  const RmseReport report = run_scenario(config);

  // recompute trial s = 1 by hand through the same modules
  RandomStream stream = RandomStream::for_trial(config.seed, 1);
  const BreakModel model = draw_model(config.beta1_range, config.beta2_range, config.d,
                                      config.sigma, config.theta_min, stream);
  const std::vector<double> eta = draw_innovations(config.innovation, config.d, 1, stream);
  const Path path = simulate_path(model, eta, 1);
  const auto taps_k = cached_taps(config.kernel_spec(KernelVariant::PredictOnly));
  const auto taps_kh = cached_taps(config.kernel_spec(KernelVariant::SmoothedPredict));
  const ForecastSet fc = forecast_all(path, *taps_k, *taps_kh, config.ols);

  CHECK(report.e_ideal == std::abs(fc.target - fc.y_ideal));
  CHECK(report.e_ar1 == std::abs(fc.target - fc.y_ar1));
  CHECK(report.e_k == std::abs(fc.target - fc.y_k));
  CHECK(report.e_kh == std::abs(fc.target - fc.y_kh));
}

TEST_CASE("worker count does not change a single bit of the report") {
  ScenarioConfig config = small_config();
  config.workers = 1;
  const RmseReport lone = run_scenario(config);
  config.workers = 8;
  const RmseReport crowd = run_scenario(config);
  CHECK(lone.e_ideal == crowd.e_ideal);
  CHECK(lone.e_ar1 == crowd.e_ar1);
  CHECK(lone.e_k == crowd.e_k);
  CHECK(lone.e_kh == crowd.e_kh);
}

TEST_CASE("ratio fields are consistent with their quotients") {
  const RmseReport report = run_scenario(small_config());
  CHECK(std::abs(report.ratio_ideal - report.e_ideal / report.e_ar1) <= 1e-12);
  CHECK(std::abs(report.ratio_k - report.e_k / report.e_ar1) <= 1e-12);
  CHECK(std::abs(report.ratio_kh - report.e_kh / report.e_ar1) <= 1e-12);
}

TEST_CASE("e_ideal sits on the analytic anchor sigma") {
  ScenarioConfig config = small_config();
  config.n_sim = 100000;
  const RmseReport report = run_scenario(config);
  CHECK(std::abs(report.e_ideal - config.sigma) <=
        4.0 * config.sigma / std::sqrt(static_cast<double>(config.n_sim)));
}

TEST_CASE("doubling n_sim moves each RMSE by at most 0.01") {
  ScenarioConfig config = small_config();
  config.d = 5;  // e_ar1 at d = 4 is heavy-tailed enough to flirt with the band
  config.n_sim = 100000;
  const RmseReport base = run_scenario(config);
  config.n_sim = 200000;
  const RmseReport doubled = run_scenario(config);
  CHECK(std::abs(base.e_ideal - doubled.e_ideal) <= 0.01);
  CHECK(std::abs(base.e_ar1 - doubled.e_ar1) <= 0.01);
  CHECK(std::abs(base.e_k - doubled.e_k) <= 0.01);
  CHECK(std::abs(base.e_kh - doubled.e_kh) <= 0.01);
}

TEST_CASE("smoothed-vs-OLS ratio grows with d in the baseline setting") {
  ScenarioConfig config = small_config();
  config.n_sim = 30000;
  std::vector<double> ratios;
  for (int d : {4, 5, 6}) {
    config.d = d;
    ratios.push_back(run_scenario(config).ratio_kh);
  }
  CHECK(ratios[0] < ratios[1]);
  CHECK(ratios[1] < ratios[2]);
}

TEST_CASE("run_panel lays rows out r-major and rows reproduce individually") {
  ScenarioConfig base = small_config();
  base.n_sim = 5000;
  const std::vector<double> r_list{0.8, 2.0};
  const std::vector<int> d_list{4, 5};
  const std::vector<RmseReport> panel = run_panel(base, r_list, d_list);
  REQUIRE(panel.size() == 4);
  CHECK(panel[0].config.r == 0.8);
  CHECK(panel[0].config.d == 4);
  CHECK(panel[1].config.r == 0.8);
  CHECK(panel[1].config.d == 5);
  CHECK(panel[2].config.r == 2.0);
  CHECK(panel[3].config.d == 5);

  // any row can be regenerated from its echoed seed
  const RmseReport row = run_scenario(panel[2].config);
  CHECK(row.e_kh == panel[2].e_kh);
  CHECK(row.e_ar1 == panel[2].e_ar1);

  CHECK_THROWS_AS(run_panel(base, std::vector<double>{}, d_list), DomainError);
  CHECK_THROWS_AS(run_panel(base, r_list, std::vector<int>{}), DomainError);
}

TEST_CASE("panel rows use distinct derived seeds") {
  ScenarioConfig base = small_config();
  base.n_sim = 1000;
  const std::vector<RmseReport> panel =
      run_panel(base, std::vector<double>{0.8}, std::vector<int>{4, 5, 6});
  CHECK(panel[0].config.seed != panel[1].config.seed);
  CHECK(panel[1].config.seed != panel[2].config.seed);
}

TEST_CASE("degenerate-error policy aborts with the trial index") {
  ScenarioConfig config = small_config();
  config.sigma = 0.0;  // all-zero paths make every design degenerate
  config.n_sim = 10;
  config.ols.degenerate_policy = DegeneratePolicy::Error;
  CHECK_THROWS_WITH_AS(run_scenario(config),
                       doctest::Contains("trial 1"), DegenerateSequenceError);
}

TEST_CASE("config validation rejects bad fields") {
  ScenarioConfig config;
  config.d = 7;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config = ScenarioConfig{};
  config.n_sim = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config = ScenarioConfig{};
  config.beta1_range = {0.5, 0.5};
  CHECK_THROWS_AS(config.validate(), DomainError);
  config = ScenarioConfig{};
  config.theta_min = 3;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config = ScenarioConfig{};
  config.a = 1.0;
  CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("CSV panels are deterministic and carry the documented header") {
  ScenarioConfig base = small_config();
  base.n_sim = 10000;
  const std::vector<double> r_list{0.8};
  const std::vector<int> d_list{4, 5};

  base.workers = 1;
  const std::string csv_single = panel_csv(run_panel(base, r_list, d_list));
  base.workers = 4;
  const std::string csv_multi = panel_csv(run_panel(base, r_list, d_list));
  CHECK(csv_single == csv_multi);
  CHECK(csv_single.rfind("r,d,e_ideal,e_ar1,e_k,e_kh,ratio_ideal,ratio_k,ratio_kh,n_sim,seed\n",
                         0) == 0);

  const std::string json_text = panel_json(run_panel(base, r_list, d_list));
  CHECK(json_text.find("\"e_kh\"") != std::string::npos);
  const std::string md = panel_markdown(run_panel(base, r_list, d_list));
  CHECK(md.find("| r = 0.8, d=4 |") != std::string::npos);
  CHECK(md.find("e_KH/e_AR(1)") != std::string::npos);
}

TEST_CASE("format_double round-trips exactly") {
  for (const double v : {0.1, 1.0 / 3.0, 0.30000000000000004, 123456.789, -2.5e-17, 0.0}) {
    const std::string text = format_double(v);
    CHECK(std::stod(text) == v);
  }
}
