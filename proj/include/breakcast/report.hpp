#pragma once

#include <span>
#include <string>

#include "breakcast/experiment.hpp"

namespace breakcast {

enum class OutputFormat { Csv, Json, Markdown };

/// Shortest round-trip-exact decimal rendering of a double ("%.17g" trimmed).
std::string format_double(double v);

/// Panel rows as CSV with columns
/// r,d,e_ideal,e_ar1,e_k,e_kh,ratio_ideal,ratio_k,ratio_kh,n_sim,seed.
std::string panel_csv(std::span<const RmseReport> reports);

/// Same fields as the CSV, as a JSON array of objects.
std::string panel_json(std::span<const RmseReport> reports);

/// Aligned table mirroring the study-table layout (5 decimals).
std::string panel_markdown(std::span<const RmseReport> reports);

/// Taps as CSV with columns t,h,method,residual.
std::string taps_csv(const ImpulseResponse& taps);
std::string taps_json(const ImpulseResponse& taps);

/// Simulated paths as CSV with columns trial,t,x,beta1,beta2,theta.
std::string paths_csv(std::span<const Path> paths);
std::string paths_json(std::span<const Path> paths);

}  // namespace breakcast
