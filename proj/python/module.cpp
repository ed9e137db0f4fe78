#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "breakcast/experiment.hpp"
#include "breakcast/kernel.hpp"
#include "breakcast/report.hpp"

namespace py = pybind11;
using namespace breakcast;

namespace {

InnovationKind innovation_from_name(const std::string& name) {
  if (name == "gaussian") return InnovationKind::IidGaussian;
  if (name == "gamma") return InnovationKind::ShiftedGamma;
  if (name == "pseudo-uniform") return InnovationKind::ScaledPseudoUniform;
  if (name == "ma1") return InnovationKind::Ma1Gaussian;
  throw DomainError("innovation must be one of gaussian, gamma, pseudo-uniform, ma1");
}

KernelSpec spec_from(const std::string& variant, double gamma, double r, double a, double p,
                     int m, int cap_n) {
  const PredictorParams predictor{gamma, r};
  if (variant == "k") return KernelSpec::predict_only(predictor);
  if (variant == "kh") return KernelSpec::smoothed(predictor, SmootherParams{a, p, m, cap_n});
  throw DomainError("variant must be 'k' or 'kh'");
}

py::dict taps_to_dict(const ImpulseResponse& taps) {
  py::dict out;
  out["first_index"] = taps.first_index;
  out["taps"] = taps.taps;
  out["max_imag_residual"] = taps.max_imag_residual;
  out["method"] = taps.method == TapMethod::Quadrature ? "quadrature" : "dft";
  out["method_param"] = taps.method_param;
  return out;
}

py::dict report_to_dict(const RmseReport& rep) {
  py::dict out;
  out["r"] = rep.config.r;
  out["d"] = rep.config.d;
  out["e_ideal"] = rep.e_ideal;
  out["e_ar1"] = rep.e_ar1;
  out["e_k"] = rep.e_k;
  out["e_kh"] = rep.e_kh;
  out["ratio_ideal"] = rep.ratio_ideal;
  out["ratio_k"] = rep.ratio_k;
  out["ratio_kh"] = rep.ratio_kh;
  out["n_sim"] = rep.n_sim;
  out["seed"] = rep.config.seed;
  return out;
}

ScenarioConfig config_from(double beta1_min, double beta1_max, double beta2_min,
                           double beta2_max, const std::string& innovation, double r, int d,
                           long n_sim, std::uint64_t seed, double sigma, double gamma, double a,
                           double p, int m, int cap_n, bool ols_demean, bool ols_intercept,
                           int theta_min, int workers) {
  ScenarioConfig config;
  config.beta1_range = {beta1_min, beta1_max};
  config.beta2_range = {beta2_min, beta2_max};
  config.innovation = innovation_from_name(innovation);
  config.r = r;
  config.d = d;
  config.n_sim = n_sim;
  config.seed = seed;
  config.sigma = sigma;
  config.gamma = gamma;
  config.a = a;
  config.p = p;
  config.m = m;
  config.cap_n = cap_n;
  config.ols.demean = ols_demean;
  config.ols.intercept = ols_intercept;
  config.theta_min = theta_min;
  config.workers = workers;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Frequency-domain one-step-ahead predictors for ultra-short AR(1) sequences "
      "with a structural break, plus the Monte Carlo study harness.";

  mod.def("eval_xi", &eval_xi, py::arg("a"), py::arg("p"),
          "xi(a,p) = exp(-(1-a)^(p-1))");
  mod.def("eval_gamma_ap", &eval_gamma_ap, py::arg("a"), py::arg("p"),
          "gamma(a,p) = |1-a|^(p-2) xi(a,p)");

  mod.def(
      "eval_k",
      [](Complex z, double gamma, double r) { return eval_k(z, PredictorParams{gamma, r}); },
      py::arg("z"), py::arg("gamma") = 1.1, py::arg("r") = 0.8,
      "Predicting-kernel transfer function K(z).");
  mod.def(
      "eval_g",
      [](Complex z, double a, double p, int m, int cap_n) {
        return eval_g(z, SmootherParams{a, p, m, cap_n});
      },
      py::arg("z"), py::arg("a") = 0.6, py::arg("p") = 0.7, py::arg("m") = 2,
      py::arg("cap_n") = 100, "Smoother component G(z).");
  mod.def(
      "eval_f",
      [](Complex z, double a, double p, int m, int cap_n) {
        return eval_f(z, SmootherParams{a, p, m, cap_n});
      },
      py::arg("z"), py::arg("a") = 0.6, py::arg("p") = 0.7, py::arg("m") = 2,
      py::arg("cap_n") = 100, "Smoother transfer function F(z).");
  mod.def(
      "eval_h",
      [](Complex z, const std::string& variant, double gamma, double r, double a, double p,
         int m, int cap_n) { return eval_h(z, spec_from(variant, gamma, r, a, p, m, cap_n)); },
      py::arg("z"), py::arg("variant") = "kh", py::arg("gamma") = 1.1, py::arg("r") = 0.8,
      py::arg("a") = 0.6, py::arg("p") = 0.7, py::arg("m") = 2, py::arg("cap_n") = 100,
      "Predictor transfer function: K for variant 'k', K*F for 'kh'.");

  mod.def(
      "impulse_response",
      [](const std::string& variant, double gamma, double r, double a, double p, int m,
         int cap_n, const std::string& method, int count, int first_index, int dft_size,
         double abs_tol) {
        const KernelSpec spec = spec_from(variant, gamma, r, a, p, m, cap_n);
        if (method == "dft")
          return taps_to_dict(impulse_response_fft(spec, dft_size, first_index, count));
        if (method == "quadrature")
          return taps_to_dict(impulse_response_quadrature(spec, first_index, count, abs_tol));
        throw DomainError("method must be 'dft' or 'quadrature'");
      },
      py::arg("variant") = "kh", py::arg("gamma") = 1.1, py::arg("r") = 0.8,
      py::arg("a") = 0.6, py::arg("p") = 0.7, py::arg("m") = 2, py::arg("cap_n") = 100,
      py::arg("method") = "dft", py::arg("count") = 6, py::arg("first_index") = 0,
      py::arg("dft_size") = 1 << 16, py::arg("abs_tol") = 1e-10,
      "Impulse-response taps of a predictor via DFT sampling or adaptive quadrature.");

  mod.def(
      "estimate_ar1",
      [](const std::vector<double>& x, bool demean, bool intercept, bool error_on_degenerate) {
        OlsOptions opts;
        opts.demean = demean;
        opts.intercept = intercept;
        opts.degenerate_policy =
            error_on_degenerate ? DegeneratePolicy::Error : DegeneratePolicy::ZeroSlope;
        return estimate_ar1(x, opts);
      },
      py::arg("x"), py::arg("demean") = false, py::arg("intercept") = false,
      py::arg("error_on_degenerate") = false, "OLS AR(1) coefficient of a learning window.");

  mod.def(
      "simulate_paths",
      [](long n, int d, std::uint64_t seed, const std::string& innovation, double beta1_min,
         double beta1_max, double beta2_min, double beta2_max, double sigma, int theta_min) {
        const InnovationKind kind = innovation_from_name(innovation);
        py::list out;
        for (long s = 1; s <= n; ++s) {
          RandomStream stream = RandomStream::for_trial(seed, static_cast<std::uint64_t>(s));
          const BreakModel model = draw_model(Interval{beta1_min, beta1_max},
                                              Interval{beta2_min, beta2_max}, d, sigma,
                                              theta_min, stream);
          const std::vector<double> eta = draw_innovations(kind, d, s, stream);
          const Path path = simulate_path(model, eta, s);
          py::dict row;
          row["trial"] = path.trial_index;
          row["x"] = path.x;
          row["beta1"] = path.model.beta1;
          row["beta2"] = path.model.beta2;
          row["theta"] = path.model.theta;
          out.append(row);
        }
        return out;
      },
      py::arg("n") = 1, py::arg("d") = 4, py::arg("seed") = 42,
      py::arg("innovation") = "gaussian", py::arg("beta1_min") = 0.0,
      py::arg("beta1_max") = 1.0, py::arg("beta2_min") = 0.0, py::arg("beta2_max") = 1.0,
      py::arg("sigma") = 0.3, py::arg("theta_min") = 2,
      "Simulate trial paths from the structural-break AR(1) model.");

  mod.def(
      "run_scenario",
      [](double r, int d, long n_sim, std::uint64_t seed, const std::string& innovation,
         double beta1_min, double beta1_max, double beta2_min, double beta2_max, double sigma,
         double gamma, double a, double p, int m, int cap_n, bool ols_demean,
         bool ols_intercept, int theta_min, int workers) {
        return report_to_dict(run_scenario(config_from(
            beta1_min, beta1_max, beta2_min, beta2_max, innovation, r, d, n_sim, seed, sigma,
            gamma, a, p, m, cap_n, ols_demean, ols_intercept, theta_min, workers)));
      },
      py::arg("r") = 0.8, py::arg("d") = 4, py::arg("n_sim") = 300000, py::arg("seed") = 42,
      py::arg("innovation") = "gaussian", py::arg("beta1_min") = 0.0,
      py::arg("beta1_max") = 1.0, py::arg("beta2_min") = 0.0, py::arg("beta2_max") = 1.0,
      py::arg("sigma") = 0.3, py::arg("gamma") = 1.1, py::arg("a") = 0.6, py::arg("p") = 0.7,
      py::arg("m") = 2, py::arg("cap_n") = 100, py::arg("ols_demean") = false,
      py::arg("ols_intercept") = false, py::arg("theta_min") = 2, py::arg("workers") = 1,
      "Run one Monte Carlo cell and return its RMSE report.");

  mod.def(
      "run_panel",
      [](const std::vector<double>& r_list, const std::vector<int>& d_list, long n_sim,
         std::uint64_t seed, const std::string& innovation, double beta1_min, double beta1_max,
         double beta2_min, double beta2_max, double sigma, double gamma, double a, double p,
         int m, int cap_n, bool ols_demean, bool ols_intercept, int theta_min, int workers) {
        const ScenarioConfig base = config_from(
            beta1_min, beta1_max, beta2_min, beta2_max, innovation, 0.8, 4, n_sim, seed, sigma,
            gamma, a, p, m, cap_n, ols_demean, ols_intercept, theta_min, workers);
        py::list out;
        for (const RmseReport& rep : run_panel(base, r_list, d_list))
          out.append(report_to_dict(rep));
        return out;
      },
      py::arg("r_list") = std::vector<double>{0.8, 1.1, 1.5, 2.0},
      py::arg("d_list") = std::vector<int>{4, 5, 6}, py::arg("n_sim") = 300000,
      py::arg("seed") = 42, py::arg("innovation") = "gaussian", py::arg("beta1_min") = 0.0,
      py::arg("beta1_max") = 1.0, py::arg("beta2_min") = 0.0, py::arg("beta2_max") = 1.0,
      py::arg("sigma") = 0.3, py::arg("gamma") = 1.1, py::arg("a") = 0.6, py::arg("p") = 0.7,
      py::arg("m") = 2, py::arg("cap_n") = 100, py::arg("ols_demean") = false,
      py::arg("ols_intercept") = false, py::arg("theta_min") = 2, py::arg("workers") = 1,
      "Run a panel of cells, one report per (r, d) row.");

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);
}
