#include "breakcast/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace breakcast {
namespace {

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

const char* method_name(TapMethod method) {
  return method == TapMethod::Quadrature ? "quadrature" : "dft";
}

nlohmann::json report_json(const RmseReport& rep) {
  return {
      {"r", rep.config.r},
      {"d", rep.config.d},
      {"e_ideal", rep.e_ideal},
      {"e_ar1", rep.e_ar1},
      {"e_k", rep.e_k},
      {"e_kh", rep.e_kh},
      {"ratio_ideal", rep.ratio_ideal},
      {"ratio_k", rep.ratio_k},
      {"ratio_kh", rep.ratio_kh},
      {"n_sim", rep.n_sim},
      {"seed", rep.config.seed},
  };
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // round-trip exact; trim to the shortest representation that still parses back
  for (int precision = 1; precision < 17; ++precision) {
    char attempt[64];
    std::snprintf(attempt, sizeof attempt, "%.*g", precision, v);
    double parsed = 0.0;
    std::sscanf(attempt, "%lf", &parsed);
    if (parsed == v) return attempt;
  }
  return buf;
}

std::string panel_csv(std::span<const RmseReport> reports) {
  std::string out = "r,d,e_ideal,e_ar1,e_k,e_kh,ratio_ideal,ratio_k,ratio_kh,n_sim,seed\n";
  for (const RmseReport& rep : reports) {
    out += format_double(rep.config.r) + ',' + std::to_string(rep.config.d) + ',';
    out += format_double(rep.e_ideal) + ',' + format_double(rep.e_ar1) + ',';
    out += format_double(rep.e_k) + ',' + format_double(rep.e_kh) + ',';
    out += format_double(rep.ratio_ideal) + ',' + format_double(rep.ratio_k) + ',';
    out += format_double(rep.ratio_kh) + ',' + std::to_string(rep.n_sim) + ',';
    out += std::to_string(rep.config.seed) + '\n';
  }
  return out;
}

std::string panel_json(std::span<const RmseReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RmseReport& rep : reports) arr.push_back(report_json(rep));
  return arr.dump(2) + "\n";
}

std::string panel_markdown(std::span<const RmseReport> reports) {
  std::string out =
      "| | e_ideal | e_AR(1) | e_K | e_KH | e_ideal/e_AR(1) | e_K/e_AR(1) | e_KH/e_AR(1) |\n"
      "|---|---|---|---|---|---|---|---|\n";
  for (const RmseReport& rep : reports) {
    char label[48];
    std::snprintf(label, sizeof label, "r = %g, d=%d", rep.config.r, rep.config.d);
    out += std::string("| ") + label + " | " + format_fixed(rep.e_ideal, 5) + " | " +
           format_fixed(rep.e_ar1, 5) + " | " + format_fixed(rep.e_k, 5) + " | " +
           format_fixed(rep.e_kh, 5) + " | " + format_fixed(rep.ratio_ideal, 5) + " | " +
           format_fixed(rep.ratio_k, 5) + " | " + format_fixed(rep.ratio_kh, 5) + " |\n";
  }
  return out;
}

std::string taps_csv(const ImpulseResponse& taps) {
  std::string out = "t,h,method,residual\n";
  for (int i = 0; i < taps.count(); ++i) {
    out += std::to_string(taps.first_index + i) + ',' +
           format_double(taps.taps[static_cast<size_t>(i)]) + ',' + method_name(taps.method) +
           ',' + format_double(taps.max_imag_residual) + '\n';
  }
  return out;
}

std::string taps_json(const ImpulseResponse& taps) {
  nlohmann::json obj = {
      {"first_index", taps.first_index},
      {"taps", taps.taps},
      {"max_imag_residual", taps.max_imag_residual},
      {"method", method_name(taps.method)},
      {"method_param", taps.method_param},
  };
  return obj.dump(2) + "\n";
}

std::string paths_csv(std::span<const Path> paths) {
  std::string out = "trial,t,x,beta1,beta2,theta\n";
  for (const Path& path : paths) {
    for (size_t t = 0; t < path.x.size(); ++t) {
      out += std::to_string(path.trial_index) + ',' + std::to_string(t) + ',' +
             format_double(path.x[t]) + ',' + format_double(path.model.beta1) + ',' +
             format_double(path.model.beta2) + ',' + std::to_string(path.model.theta) + '\n';
    }
  }
  return out;
}

std::string paths_json(std::span<const Path> paths) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Path& path : paths) {
    arr.push_back({
        {"trial", path.trial_index},
        {"x", path.x},
        {"beta1", path.model.beta1},
        {"beta2", path.model.beta2},
        {"theta", path.model.theta},
        {"sigma", path.model.sigma},
        {"d", path.model.d},
    });
  }
  return arr.dump(2) + "\n";
}

}  // namespace breakcast
