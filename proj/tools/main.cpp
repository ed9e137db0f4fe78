#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "breakcast/experiment.hpp"
#include "breakcast/kernel.hpp"
#include "breakcast/report.hpp"

namespace {

using namespace breakcast;

const std::map<std::string, InnovationKind> kInnovationNames{
    {"gaussian", InnovationKind::IidGaussian},
    {"gamma", InnovationKind::ShiftedGamma},
    {"pseudo-uniform", InnovationKind::ScaledPseudoUniform},
    {"ma1", InnovationKind::Ma1Gaussian},
};

const std::map<std::string, std::string> kFormatNames{
    {"csv", "csv"}, {"json", "json"}, {"markdown", "markdown"}};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("--output: cannot open '" + path + "' for writing");
  out << text;
}

void check_flag(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

/// Scenario-level flags shared by `simulate` and `run-panel`.
struct ScenarioFlags {
  double beta1_min = 0.0, beta1_max = 1.0;
  double beta2_min = 0.0, beta2_max = 1.0;
  InnovationKind innovation = InnovationKind::IidGaussian;
  double sigma = 0.3;
  double gamma = 1.1;
  double a = 0.6;
  double p = 0.7;
  int m = 2;
  int cap_n = 100;
  int theta_min = 2;
  std::uint64_t seed = 42;
  bool ols_demean = false;
  bool ols_intercept = false;
  std::string ols_degenerate = "zero";

  CLI::Option* opt_b1min = nullptr;
  CLI::Option* opt_b1max = nullptr;
  CLI::Option* opt_b2min = nullptr;
  CLI::Option* opt_b2max = nullptr;
  CLI::Option* opt_innovation = nullptr;
  CLI::Option* opt_seed = nullptr;

  void add_model_flags(CLI::App* sub) {
    opt_b1min = sub->add_option("--beta1-min", beta1_min, "Lower end of the beta1 interval")
                    ->capture_default_str();
    opt_b1max = sub->add_option("--beta1-max", beta1_max, "Upper end of the beta1 interval")
                    ->capture_default_str();
    opt_b2min = sub->add_option("--beta2-min", beta2_min, "Lower end of the beta2 interval")
                    ->capture_default_str();
    opt_b2max = sub->add_option("--beta2-max", beta2_max, "Upper end of the beta2 interval")
                    ->capture_default_str();
    opt_innovation =
        sub->add_option("--innovation", innovation,
                        "Innovation law: gaussian, gamma, pseudo-uniform, ma1")
            ->transform(CLI::CheckedTransformer(kInnovationNames, CLI::ignore_case))
            ->capture_default_str();
    sub->add_option("--sigma", sigma, "Noise scale sigma")->capture_default_str();
    sub->add_option("--theta-min", theta_min, "Smallest admissible break time (1 or 2)")
        ->capture_default_str();
    opt_seed = sub->add_option("--seed", seed, "Master seed (BREAKCAST_SEED is the fallback)")
                   ->capture_default_str();
  }

  void add_kernel_flags(CLI::App* sub) {
    sub->add_option("--gamma", gamma, "Predicting-kernel parameter gamma")->capture_default_str();
    sub->add_option("--a", a, "Smoother parameter a, in (0,1)")->capture_default_str();
    sub->add_option("--p", p, "Smoother parameter p, in (1/2,1)")->capture_default_str();
    sub->add_option("--m", m, "Smoother power m, >= 1")->capture_default_str();
    sub->add_option("--cap-n", cap_n, "Smoother length parameter N, >= 1")->capture_default_str();
  }

  void add_ols_flags(CLI::App* sub) {
    sub->add_flag("--ols-demean", ols_demean, "Center the learning window before the AR(1) fit");
    sub->add_flag("--ols-intercept", ols_intercept,
                  "Fit the AR(1) coefficient as a bivariate LS slope with intercept");
    sub->add_option("--ols-degenerate", ols_degenerate,
                    "Degenerate-design policy: zero or error")
        ->check(CLI::IsMember({"zero", "error"}))
        ->capture_default_str();
  }

  void apply_env_seed() {
    if (opt_seed != nullptr && opt_seed->count() > 0) return;
    const char* env = std::getenv("BREAKCAST_SEED");
    if (env == nullptr) return;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    check_flag(end != env && *end == '\0',
               "BREAKCAST_SEED: not a valid unsigned 64-bit integer");
    seed = parsed;
  }

  OlsOptions ols_options() const {
    OlsOptions opts;
    opts.demean = ols_demean;
    opts.intercept = ols_intercept;
    opts.degenerate_policy = ols_degenerate == "error" ? DegeneratePolicy::Error
                                                       : DegeneratePolicy::ZeroSlope;
    return opts;
  }

  void validate_intervals() const {
    check_flag(beta1_min < beta1_max, "--beta1-min must be strictly below --beta1-max");
    check_flag(beta2_min < beta2_max, "--beta2-min must be strictly below --beta2-max");
    check_flag(beta1_min >= -1.0 && beta1_max <= 1.0,
               "--beta1-min/--beta1-max must lie within [-1, 1]");
    check_flag(beta2_min >= -1.0 && beta2_max <= 1.0,
               "--beta2-min/--beta2-max must lie within [-1, 1]");
  }

  void validate_kernel() const {
    check_flag(gamma > 0.0, "--gamma must be > 0");
    check_flag(a > 0.0 && a < 1.0, "--a must lie in (0,1)");
    check_flag(p > 0.5 && p < 1.0, "--p must lie in (1/2,1)");
    check_flag(m >= 1, "--m must be >= 1");
    check_flag(cap_n >= 1, "--cap-n must be >= 1");
    check_flag(sigma >= 0.0, "--sigma must be >= 0");
    check_flag(theta_min == 1 || theta_min == 2, "--theta-min must be 1 or 2");
  }
};

/// The preset study tables: (beta ranges, innovation, N_sim, r and d rows).
struct PanelPreset {
  Interval b1;
  Interval b2;
  InnovationKind kind = InnovationKind::IidGaussian;
  long n_sim = 300000;
  std::vector<double> r_list;
  std::vector<int> d_list;
};

PanelPreset preset_for(int table, const std::string& panel) {
  check_flag(table >= 1 && table <= 5, "--table must lie in 1..5");
  check_flag(panel.size() == 1 && panel[0] >= 'a' && panel[0] <= 'd',
             "--panel must be one of a, b, c, d");
  const char p = panel[0];

  PanelPreset preset;
  preset.d_list = {4, 5, 6};
  const Interval unit{0.0, 1.0};
  const Interval wide{-1.0, 1.0};
  const Interval neg{-1.0, 0.0};

  if (table == 1) {
    check_flag(p <= 'c', "--panel: table 1 has panels a..c");
    preset.b1 = unit;
    preset.b2 = unit;
    preset.kind = InnovationKind::IidGaussian;
    preset.r_list = {0.8, 1.1, 1.5, 2.0};
    preset.n_sim = (p == 'a') ? 100000 : (p == 'b') ? 200000 : 300000;
    return preset;
  }
  if (table == 2) {
    check_flag(p <= 'c', "--panel: table 2 has panels a..c");
    preset.kind = InnovationKind::IidGaussian;
    preset.r_list = {0.8, 1.1, 1.5, 2.0};
    if (p == 'a') {
      preset.b1 = wide;
      preset.b2 = wide;
    } else if (p == 'b') {
      preset.b1 = neg;
      preset.b2 = unit;
    } else {
      preset.b1 = unit;
      preset.b2 = neg;
    }
    return preset;
  }

  preset.kind = (table == 3)   ? InnovationKind::ShiftedGamma
                : (table == 4) ? InnovationKind::ScaledPseudoUniform
                               : InnovationKind::Ma1Gaussian;
  preset.r_list = {0.8, 2.0};
  switch (p) {
    case 'a':
      preset.b1 = unit;
      preset.b2 = unit;
      break;
    case 'b':
      preset.b1 = wide;
      preset.b2 = wide;
      break;
    case 'c':
      preset.b1 = neg;
      preset.b2 = unit;
      break;
    default:
      preset.b1 = unit;
      preset.b2 = neg;
      break;
  }
  return preset;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "breakcast: one-step-ahead forecasting of ultra-short AR(1) sequences with a "
      "structural break"};
  app.require_subcommand(1);

  // ---- transfer ----------------------------------------------------------
  auto* transfer_cmd =
      app.add_subcommand("transfer", "Evaluate the predictor transfer functions at a point");
  ScenarioFlags transfer_flags;
  double z_re = 1.0, z_im = 0.0, transfer_r = 0.8;
  std::string transfer_variant = "kh";
  std::string transfer_format = "csv", transfer_output;
  transfer_cmd->add_option("--re", z_re, "Real part of z")->required();
  transfer_cmd->add_option("--im", z_im, "Imaginary part of z")->capture_default_str();
  transfer_cmd->add_option("--variant", transfer_variant, "Predictor variant: k or kh")
      ->check(CLI::IsMember({"k", "kh"}))
      ->capture_default_str();
  transfer_cmd->add_option("--r", transfer_r, "Predicting-kernel parameter r")
      ->capture_default_str();
  transfer_flags.add_kernel_flags(transfer_cmd);
  transfer_cmd->add_option("--format", transfer_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  transfer_cmd->add_option("--output", transfer_output, "Write results to this path");

  transfer_cmd->callback([&] {
    transfer_flags.validate_kernel();
    check_flag(transfer_r > 0.0, "--r must be > 0");
    const Complex z{z_re, z_im};
    const PredictorParams predictor{transfer_flags.gamma, transfer_r};
    const SmootherParams smoother{transfer_flags.a, transfer_flags.p, transfer_flags.m,
                                  transfer_flags.cap_n};
    const bool smoothed = transfer_variant == "kh";
    const KernelSpec spec = smoothed ? KernelSpec::smoothed(predictor, smoother)
                                     : KernelSpec::predict_only(predictor);

    std::vector<std::pair<std::string, Complex>> values;
    values.emplace_back("K", eval_k(z, predictor));
    if (smoothed) {
      values.emplace_back("G", eval_g(z, smoother));
      values.emplace_back("F", eval_f(z, smoother));
    }
    values.emplace_back("H", eval_h(z, spec));

    std::string text;
    if (transfer_format == "csv") {
      text = "function,re,im\n";
      for (const auto& [name, value] : values)
        text += name + ',' + format_double(value.real()) + ',' + format_double(value.imag()) +
                '\n';
    } else {
      text = "{\n";
      for (size_t i = 0; i < values.size(); ++i) {
        text += "  \"" + values[i].first + "\": {\"re\": " + format_double(values[i].second.real()) +
                ", \"im\": " + format_double(values[i].second.imag()) + "}";
        text += (i + 1 < values.size()) ? ",\n" : "\n";
      }
      text += "}\n";
    }
    write_output(text, transfer_output);
  });

  // ---- kernel ------------------------------------------------------------
  auto* kernel_cmd =
      app.add_subcommand("kernel", "Compute impulse-response taps of a predictor");
  ScenarioFlags kernel_flags;
  double kernel_r = 0.8, kernel_abs_tol = 1e-10;
  int kernel_count = 6, kernel_first = 0, kernel_dft_size = 1 << 16;
  std::string kernel_variant = "kh", kernel_method = "dft";
  std::string kernel_format = "csv", kernel_output;
  kernel_cmd->add_option("--variant", kernel_variant, "Predictor variant: k or kh")
      ->check(CLI::IsMember({"k", "kh"}))
      ->capture_default_str();
  kernel_cmd->add_option("--r", kernel_r, "Predicting-kernel parameter r")->capture_default_str();
  kernel_cmd->add_option("--method", kernel_method, "Inversion method: dft or quadrature")
      ->check(CLI::IsMember({"dft", "quadrature"}))
      ->capture_default_str();
  kernel_cmd->add_option("--count", kernel_count, "Number of taps")->capture_default_str();
  kernel_cmd->add_option("--first-index", kernel_first, "First tap index")->capture_default_str();
  kernel_cmd->add_option("--dft-size", kernel_dft_size, "DFT size (power of two >= 1024)")
      ->capture_default_str();
  kernel_cmd->add_option("--abs-tol", kernel_abs_tol, "Quadrature tolerance per tap")
      ->capture_default_str();
  kernel_flags.add_kernel_flags(kernel_cmd);
  kernel_cmd->add_option("--format", kernel_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  kernel_cmd->add_option("--output", kernel_output, "Write results to this path");

  kernel_cmd->callback([&] {
    kernel_flags.validate_kernel();
    check_flag(kernel_r > 0.0, "--r must be > 0");
    check_flag(kernel_count >= 1, "--count must be >= 1");
    check_flag(kernel_abs_tol > 0.0, "--abs-tol must be > 0");
    const PredictorParams predictor{kernel_flags.gamma, kernel_r};
    const SmootherParams smoother{kernel_flags.a, kernel_flags.p, kernel_flags.m,
                                  kernel_flags.cap_n};
    const KernelSpec spec = kernel_variant == "kh"
                                ? KernelSpec::smoothed(predictor, smoother)
                                : KernelSpec::predict_only(predictor);
    const ImpulseResponse taps =
        kernel_method == "dft"
            ? impulse_response_fft(spec, kernel_dft_size, kernel_first, kernel_count)
            : impulse_response_quadrature(spec, kernel_first, kernel_count, kernel_abs_tol);
    write_output(kernel_format == "csv" ? taps_csv(taps) : taps_json(taps), kernel_output);
  });

  // ---- simulate ----------------------------------------------------------
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Simulate trial paths from the break model");
  ScenarioFlags sim_flags;
  int sim_d = 4;
  long sim_n = 1;
  std::string sim_format = "csv", sim_output;
  simulate_cmd->add_option("--d", sim_d, "Learning-sequence length d (4..6)")
      ->capture_default_str();
  simulate_cmd->add_option("--n", sim_n, "Number of trials")->capture_default_str();
  sim_flags.add_model_flags(simulate_cmd);
  simulate_cmd->add_option("--format", sim_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  simulate_cmd->add_option("--output", sim_output, "Write results to this path");

  simulate_cmd->callback([&] {
    sim_flags.apply_env_seed();
    sim_flags.validate_intervals();
    check_flag(sim_flags.sigma >= 0.0, "--sigma must be >= 0");
    check_flag(sim_d >= 4 && sim_d <= 6, "--d must lie in {4, 5, 6}");
    check_flag(sim_n >= 1, "--n must be >= 1");
    check_flag(sim_flags.theta_min == 1 || sim_flags.theta_min == 2,
               "--theta-min must be 1 or 2");

    std::vector<Path> paths;
    paths.reserve(static_cast<size_t>(sim_n));
    for (long s = 1; s <= sim_n; ++s) {
      RandomStream stream = RandomStream::for_trial(sim_flags.seed, static_cast<std::uint64_t>(s));
      const BreakModel model =
          draw_model(Interval{sim_flags.beta1_min, sim_flags.beta1_max},
                     Interval{sim_flags.beta2_min, sim_flags.beta2_max}, sim_d, sim_flags.sigma,
                     sim_flags.theta_min, stream);
      const std::vector<double> eta = draw_innovations(sim_flags.innovation, sim_d, s, stream);
      paths.push_back(simulate_path(model, eta, s));
    }
    write_output(sim_format == "csv" ? paths_csv(paths) : paths_json(paths), sim_output);
  });

  // ---- run-panel ---------------------------------------------------------
  auto* panel_cmd = app.add_subcommand(
      "run-panel", "Run a Monte Carlo panel: one RMSE report per (r, d) row");
  ScenarioFlags panel_flags;
  int panel_table = 0;
  std::string panel_panel;
  std::vector<double> panel_r_list{0.8, 1.1, 1.5, 2.0};
  std::vector<int> panel_d_list{4, 5, 6};
  long panel_n_sim = 300000;
  int panel_workers = 1;
  std::string panel_format = "csv", panel_output;
  auto* table_opt =
      panel_cmd->add_option("--table", panel_table, "Preset study table (1..5)");
  auto* panel_opt =
      panel_cmd->add_option("--panel", panel_panel, "Preset panel within the table (a..d)");
  table_opt->needs(panel_opt);
  panel_opt->needs(table_opt);
  auto* rlist_opt = panel_cmd->add_option("--r-list", panel_r_list, "Comma-separated r values")
                        ->delimiter(',')
                        ->capture_default_str();
  auto* dlist_opt = panel_cmd->add_option("--d-list", panel_d_list, "Comma-separated d values")
                        ->delimiter(',')
                        ->capture_default_str();
  auto* nsim_opt =
      panel_cmd->add_option("--n-sim", panel_n_sim, "Trials per cell")->capture_default_str();
  panel_cmd->add_option("--workers", panel_workers, "Worker threads per cell")
      ->capture_default_str();
  panel_flags.add_model_flags(panel_cmd);
  panel_flags.add_kernel_flags(panel_cmd);
  panel_flags.add_ols_flags(panel_cmd);
  panel_cmd->add_option("--format", panel_format, "Output format: csv, json or markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}))
      ->capture_default_str();
  panel_cmd->add_option("--output", panel_output, "Write results to this path");

  panel_cmd->callback([&] {
    panel_flags.apply_env_seed();

    if (table_opt->count() > 0) {
      const PanelPreset preset = preset_for(panel_table, panel_panel);
      if (panel_flags.opt_b1min->count() == 0) panel_flags.beta1_min = preset.b1.lo;
      if (panel_flags.opt_b1max->count() == 0) panel_flags.beta1_max = preset.b1.hi;
      if (panel_flags.opt_b2min->count() == 0) panel_flags.beta2_min = preset.b2.lo;
      if (panel_flags.opt_b2max->count() == 0) panel_flags.beta2_max = preset.b2.hi;
      if (panel_flags.opt_innovation->count() == 0) panel_flags.innovation = preset.kind;
      if (nsim_opt->count() == 0) panel_n_sim = preset.n_sim;
      if (rlist_opt->count() == 0) panel_r_list = preset.r_list;
      if (dlist_opt->count() == 0) panel_d_list = preset.d_list;
    }

    panel_flags.validate_intervals();
    panel_flags.validate_kernel();
    check_flag(panel_n_sim >= 1, "--n-sim must be >= 1");
    check_flag(panel_workers >= 1, "--workers must be >= 1");
    check_flag(!panel_r_list.empty(), "--r-list must not be empty");
    check_flag(!panel_d_list.empty(), "--d-list must not be empty");
    for (double r : panel_r_list) check_flag(r > 0.0, "--r-list entries must be > 0");
    for (int d : panel_d_list)
      check_flag(d >= 4 && d <= 6, "--d-list entries must lie in {4, 5, 6}");

    ScenarioConfig base;
    base.beta1_range = {panel_flags.beta1_min, panel_flags.beta1_max};
    base.beta2_range = {panel_flags.beta2_min, panel_flags.beta2_max};
    base.innovation = panel_flags.innovation;
    base.n_sim = panel_n_sim;
    base.seed = panel_flags.seed;
    base.sigma = panel_flags.sigma;
    base.gamma = panel_flags.gamma;
    base.a = panel_flags.a;
    base.p = panel_flags.p;
    base.m = panel_flags.m;
    base.cap_n = panel_flags.cap_n;
    base.ols = panel_flags.ols_options();
    base.theta_min = panel_flags.theta_min;
    base.workers = panel_workers;

    const std::vector<RmseReport> reports = run_panel(base, panel_r_list, panel_d_list);
    std::string text;
    if (panel_format == "csv")
      text = panel_csv(reports);
    else if (panel_format == "json")
      text = panel_json(reports);
    else
      text = panel_markdown(reports);
    write_output(text, panel_output);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SingularityError& e) {
    std::cerr << "numerical failure in transfer: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure in kernel: " << e.what() << "\n";
    return 1;
  } catch (const DegenerateSequenceError& e) {
    std::cerr << "numerical failure in predictors: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure in experiment: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
