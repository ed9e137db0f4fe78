// Acceptance gate: exercises every headline property of the toolkit end to
// end at full Monte Carlo size and prints one PASS/FAIL line per criterion.
// Exits nonzero if any criterion fails. The CLI determinism criterion needs
// the path to the built binary in BREAKCAST_CLI (or argv[1]).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "breakcast/experiment.hpp"
#include "breakcast/kernel.hpp"
#include "breakcast/report.hpp"

using namespace breakcast;

namespace {

int g_failures = 0;

void report_line(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5g", v);
  return buf;
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
}

struct ReferenceRow {
  double r;
  int d;
  double e_ideal, e_ar1, e_k, e_kh;
};

// Gaussian innovations, beta1, beta2 in (0,1), N_sim = 3e5 (study table 1c).
const ReferenceRow kReferenceTable1c[12] = {
    {0.8, 4, 0.30000, 0.44340, 0.39318, 0.34638},
    {0.8, 5, 0.29977, 0.38060, 0.39391, 0.34738},
    {0.8, 6, 0.30012, 0.35344, 0.39397, 0.34852},
    {1.1, 4, 0.30019, 0.44827, 0.39724, 0.34511},
    {1.1, 5, 0.30003, 0.37772, 0.39832, 0.34573},
    {1.1, 6, 0.30053, 0.35391, 0.39903, 0.34743},
    {1.5, 4, 0.30025, 0.44945, 0.40429, 0.34404},
    {1.5, 5, 0.29953, 0.37719, 0.40392, 0.34392},
    {1.5, 6, 0.29961, 0.35373, 0.40467, 0.34501},
    {2.0, 4, 0.30004, 0.44259, 0.41150, 0.34183},
    {2.0, 5, 0.29985, 0.37641, 0.41410, 0.34193},
    {2.0, 6, 0.29997, 0.35304, 0.41438, 0.34299},
};

// MA(1) innovations, beta1, beta2 in (0,1), N_sim = 3e5 (study table 5a).
const ReferenceRow kReferenceTable5a[6] = {
    {0.8, 4, 0.30035, 0.41511, 0.26556, 0.33784},
    {0.8, 5, 0.30030, 0.35935, 0.26788, 0.33906},
    {0.8, 6, 0.29979, 0.33688, 0.26966, 0.33870},
    {2.0, 4, 0.30093, 0.41192, 0.26972, 0.33210},
    {2.0, 5, 0.29996, 0.36100, 0.27102, 0.33213},
    {2.0, 6, 0.30007, 0.33697, 0.27332, 0.33336},
};

ScenarioConfig base_config() {
  ScenarioConfig config;
  config.seed = 42;
  config.n_sim = 300000;
  config.workers = worker_count();
  return config;
}

std::vector<RmseReport> g_table1c_panel;  // shared by criteria 1 and 3

void criterion_1_table1c_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig base = base_config();
  base.workers = 1;  // the stated single-threaded budget
  const std::vector<double> r_list{0.8, 1.1, 1.5, 2.0};
  const std::vector<int> d_list{4, 5, 6};
  g_table1c_panel = run_panel(base, r_list, d_list);

  double worst_ideal = 0.0, worst_ar1 = 0.0, worst_k = 0.0, worst_kh = 0.0;
  for (size_t i = 0; i < g_table1c_panel.size(); ++i) {
    const RmseReport& rep = g_table1c_panel[i];
    const ReferenceRow& ref = kReferenceTable1c[i];
    worst_ideal = std::max(worst_ideal, std::abs(rep.e_ideal - 0.300));
    worst_ar1 = std::max(worst_ar1, std::abs(rep.e_ar1 - ref.e_ar1));
    worst_k = std::max(worst_k, std::abs(rep.e_k - ref.e_k));
    worst_kh = std::max(worst_kh, std::abs(rep.e_kh - ref.e_kh));
  }
  const double secs = elapsed_seconds(start);
  const bool pass = worst_ideal <= 0.003 && worst_k <= 0.010 && worst_kh <= 0.010 &&
                    worst_ar1 <= 0.05 && secs <= 300.0;
  report_line(1, "baseline Gaussian panel matches the reference table", pass,
              "max dev: e_ideal " + fmt(worst_ideal) + ", e_K " + fmt(worst_k) + ", e_KH " +
                  fmt(worst_kh) + ", e_AR1 " + fmt(worst_ar1) + "; " + fmt(secs) +
                  " s single-threaded");
}

void criterion_2_headline_ordering() {
  struct Setting {
    InnovationKind kind;
    std::vector<double> r_list;
    const char* name;
  };
  const std::vector<Setting> settings{
      {InnovationKind::IidGaussian, {0.8, 1.1, 1.5, 2.0}, "gaussian"},
      {InnovationKind::ShiftedGamma, {0.8, 2.0}, "gamma"},
      {InnovationKind::ScaledPseudoUniform, {0.8, 2.0}, "pseudo-uniform"},
      {InnovationKind::Ma1Gaussian, {0.8, 2.0}, "ma1"},
  };
  const std::vector<int> d_list{4, 5, 6};

  bool pass = true;
  double worst_margin = 1e9;
  std::string worst_cell = "none";
  for (const Setting& setting : settings) {
    ScenarioConfig base = base_config();
    base.beta1_range = {-1.0, 0.0};
    base.beta2_range = {0.0, 1.0};
    base.innovation = setting.kind;
    for (const RmseReport& rep : run_panel(base, setting.r_list, d_list)) {
      const double margin = rep.e_ar1 - rep.e_kh;
      if (margin < worst_margin) {
        worst_margin = margin;
        worst_cell = std::string(setting.name) + " r=" + fmt(rep.config.r) +
                     " d=" + std::to_string(rep.config.d);
      }
      pass = pass && rep.e_kh < rep.e_ar1;
    }
  }
  report_line(2, "e_KH < e_AR1 for beta1<0<beta2 under every innovation law", pass,
              "smallest margin " + fmt(worst_margin) + " at " + worst_cell);
}

void criterion_3_shorter_is_better() {
  bool pass = true;
  std::string detail;
  for (int block = 0; block < 4; ++block) {
    const RmseReport& d4 = g_table1c_panel[static_cast<size_t>(block * 3)];
    const RmseReport& d5 = g_table1c_panel[static_cast<size_t>(block * 3 + 1)];
    const RmseReport& d6 = g_table1c_panel[static_cast<size_t>(block * 3 + 2)];
    pass = pass && d4.ratio_kh < d5.ratio_kh && d5.ratio_kh < d6.ratio_kh;
    if (block > 0) detail += "; ";
    detail += "r=" + fmt(d4.config.r) + ": " + fmt(d4.ratio_kh) + " < " + fmt(d5.ratio_kh) +
              " < " + fmt(d6.ratio_kh);
  }
  report_line(3, "e_KH/e_AR1 strictly increases in d for the baseline setting", pass, detail);
}

void criterion_4_sign_dependence() {
  ScenarioConfig base = base_config();
  base.beta1_range = {0.0, 1.0};
  base.beta2_range = {-1.0, 0.0};
  const std::vector<double> r_list{0.8, 1.1, 1.5, 2.0};
  const std::vector<int> d_list{5, 6};
  bool pass = true;
  double min_ratio = 1e9;
  for (const RmseReport& rep : run_panel(base, r_list, d_list)) {
    min_ratio = std::min(min_ratio, rep.ratio_kh);
    pass = pass && rep.ratio_kh > 1.0;
  }
  report_line(4, "negative beta2 flips the ordering for d = 5, 6", pass,
              "min e_KH/e_AR1 = " + fmt(min_ratio));
}

void criterion_5_correlated_noise_reversal() {
  ScenarioConfig base = base_config();
  base.innovation = InnovationKind::Ma1Gaussian;
  const std::vector<double> r_list{0.8, 2.0};
  const std::vector<int> d_list{4, 5, 6};
  const std::vector<RmseReport> panel = run_panel(base, r_list, d_list);

  bool pass = true;
  double worst_dev = 0.0;
  for (size_t i = 0; i < panel.size(); ++i) {
    const RmseReport& rep = panel[i];
    const ReferenceRow& ref = kReferenceTable5a[i];
    pass = pass && rep.e_k < rep.e_kh;
    worst_dev = std::max({worst_dev, std::abs(rep.e_k - ref.e_k),
                          std::abs(rep.e_kh - ref.e_kh)});
  }
  pass = pass && worst_dev <= 0.01;
  report_line(5, "MA(1) noise makes the bare kernel beat the smoothed one", pass,
              "e_K < e_KH in all cells, max |dev from reference| = " + fmt(worst_dev));
}

void criterion_6_kernel_correctness() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  double worst_gap = 0.0, worst_resid = 0.0, worst_alias = 0.0;
  for (const double r : {0.8, 1.1, 1.5, 2.0}) {
    const PredictorParams predictor{1.1, r};
    for (const bool smoothed : {false, true}) {
      const KernelSpec spec =
          smoothed ? KernelSpec::smoothed(predictor, SmootherParams{0.6, 0.7, 2, 100})
                   : KernelSpec::predict_only(predictor);
      const ImpulseResponse quad = impulse_response_quadrature(spec, 0, 6, 1e-10);
      const ImpulseResponse coarse = impulse_response_fft(spec, 1 << 16, 0, 6);
      const ImpulseResponse fine = impulse_response_fft(spec, 1 << 17, 0, 6);
      for (int t = 0; t < 6; ++t) {
        worst_gap = std::max(worst_gap, std::abs(quad.tap(t) - coarse.tap(t)));
        worst_alias = std::max(worst_alias, std::abs(fine.tap(t) - coarse.tap(t)));
      }
      worst_resid = std::max({worst_resid, quad.max_imag_residual, coarse.max_imag_residual});
    }
  }
  const double secs = elapsed_seconds(start);
  pass = worst_gap <= 1e-8 && worst_resid <= 1e-8 && worst_alias <= 1e-9 && secs <= 30.0;
  report_line(6, "quadrature and DFT tap routes agree on the full grid", pass,
              "max method gap " + fmt(worst_gap) + ", imag residual " + fmt(worst_resid) +
                  ", aliasing step " + fmt(worst_alias) + "; " + fmt(secs) + " s");
}

void criterion_7_analytic_anchor() {
  const std::vector<std::pair<Interval, Interval>> beta_settings{
      {{0.0, 1.0}, {0.0, 1.0}},
      {{-1.0, 1.0}, {-1.0, 1.0}},
      {{-1.0, 0.0}, {0.0, 1.0}},
      {{0.0, 1.0}, {-1.0, 0.0}},
  };
  const std::vector<InnovationKind> kinds{
      InnovationKind::IidGaussian, InnovationKind::ShiftedGamma, InnovationKind::Ma1Gaussian};

  bool pass = true;
  double worst = 0.0;
  const long n = 100000;
  const double bound = 4.0 * 0.3 / std::sqrt(static_cast<double>(n));
  for (const InnovationKind kind : kinds) {
    for (const auto& [b1, b2] : beta_settings) {
      ScenarioConfig config = base_config();
      config.n_sim = n;
      config.innovation = kind;
      config.beta1_range = b1;
      config.beta2_range = b2;
      const RmseReport rep = run_scenario(config);
      worst = std::max(worst, std::abs(rep.e_ideal - config.sigma));
      pass = pass && std::abs(rep.e_ideal - config.sigma) <= bound;
    }
  }

  // per-trial identity: target - y_ideal == sigma * eta(d) to 1e-12
  double worst_identity = 0.0;
  for (const InnovationKind kind : kinds) {
    for (long s = 1; s <= 1000; ++s) {
      RandomStream stream = RandomStream::for_trial(42, static_cast<std::uint64_t>(s));
      const BreakModel model = draw_model({-1.0, 1.0}, {-1.0, 1.0}, 5, 0.3, 2, stream);
      const std::vector<double> eta = draw_innovations(kind, 5, s, stream);
      const Path path = simulate_path(model, eta, s);
      const double y = predict_ideal(model, std::span<const double>(path.x).first(5));
      worst_identity = std::max(worst_identity, std::abs((path.x[5] - y) - 0.3 * eta[5]));
    }
  }
  pass = pass && worst_identity <= 1e-12;
  report_line(7, "e_ideal equals sigma within the CLT band and per-trial identity holds", pass,
              "max |e_ideal - sigma| = " + fmt(worst) + " (bound " + fmt(bound) +
                  "), max identity defect = " + fmt(worst_identity));
}

void criterion_8_hand_oracles() {
  const std::vector<double> series{1.0, 2.0, 4.0, 8.0};
  const bool ar1_exact = estimate_ar1(series) == 2.0;

  const BreakModel model{0.5, -0.5, 2, 0.3, 4};
  const std::vector<double> ones{1.0, 1.0, 1.0, 1.0, 1.0};
  const Path path = simulate_path(model, ones, 1);
  const double expected[5] = {0.3, 0.45, 0.075, 0.2625, 0.16875};
  double worst_path = 0.0;
  for (int t = 0; t <= 4; ++t)
    worst_path = std::max(worst_path, std::abs(path.x[static_cast<size_t>(t)] - expected[t]));

  RandomStream stream = RandomStream::for_trial(1, 1);
  const std::vector<double> eta =
      draw_innovations(InnovationKind::ScaledPseudoUniform, 4, 1, stream);
  const double eta0_defect = std::abs(eta[0] - 0.17571334735483529792);

  const bool pass = ar1_exact && worst_path <= 1e-15 && eta0_defect <= 1e-12;
  report_line(8, "hand oracles: OLS ratio, break recursion, pseudo-uniform eta(0)", pass,
              std::string("AR(1) exact: ") + (ar1_exact ? "yes" : "no") +
                  ", recursion defect " + fmt(worst_path) + ", eta(0) defect " +
                  fmt(eta0_defect));
}

void criterion_9_cli_determinism(const char* cli_path) {
  if (cli_path == nullptr || std::string(cli_path).empty()) {
    report_line(9, "CSV panels are byte-identical across worker counts", false,
                "CLI path not provided; set BREAKCAST_CLI");
    return;
  }
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string out1 = (tmp / "breakcast_acceptance_w1.csv").string();
  const std::string out8 = (tmp / "breakcast_acceptance_w8.csv").string();
  const std::string common = std::string("\"") + cli_path +
                             "\" run-panel --table 1 --panel c --n-sim 20000 --seed 42 "
                             "--format csv";
  const int rc1 = std::system((common + " --workers 1 --output \"" + out1 + "\"").c_str());
  const int rc8 = std::system((common + " --workers 8 --output \"" + out8 + "\"").c_str());

  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string text1 = slurp(out1);
  const std::string text8 = slurp(out8);
  std::filesystem::remove(out1);
  std::filesystem::remove(out8);

  const bool pass = rc1 == 0 && rc8 == 0 && !text1.empty() && text1 == text8;
  report_line(9, "CSV panels are byte-identical across worker counts", pass,
              "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc8) + ", " +
                  std::to_string(text1.size()) + " bytes each");
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli_path = std::getenv("BREAKCAST_CLI");
  if ((cli_path == nullptr || cli_path[0] == '\0') && argc > 1) cli_path = argv[1];

  criterion_1_table1c_reproduction();
  criterion_2_headline_ordering();
  criterion_3_shorter_is_better();
  criterion_4_sign_dependence();
  criterion_5_correlated_noise_reversal();
  criterion_6_kernel_correctness();
  criterion_7_analytic_anchor();
  criterion_8_hand_oracles();
  criterion_9_cli_determinism(cli_path);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
