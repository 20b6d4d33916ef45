#pragma once

// Configuration-driven grid runner for the spin models: one QFI/bound
// evaluation per (t, beta) point, CSV or JSON output.
//
// Config document (JSON):
//   {
//     "model": "linear" | "oat" | "lmg",
//     "axis": "x" | "y" | "z",            // linear only, default "x"
//     "twice_j": 10,
//     "lambda": 1.0,                       // lmg only, required there
//     "beta_grid": [...]  or  "p_grid": [...],
//     "t_grid": [...],
//     "outputs": ["qfi_general", "qfi_thermal", "qfi_sld", "variance_bound",
//                 "seminorm_bound", "product_bound", "gap_bounds", "closed_forms"],
//     "output_path": "out.csv",            // optional
//     "parallelism": 1,                    // optional, default 1
//     "metadata": {...}                    // optional, copied into JSON output
//   }

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thermoqfi/bound_suite.hpp"
#include "thermoqfi/closed_form_models.hpp"

namespace thermoqfi {

enum class ModelKind { linear, oat, lmg };

enum class OutputKind {
  qfi_general,
  qfi_thermal,
  qfi_sld,
  variance_bound,
  seminorm_bound,
  product_bound,
  gap_bounds,
  closed_forms,
};

enum class TemperatureAxis { beta, polarization };

struct SweepConfig {
  ModelKind model = ModelKind::linear;
  SpinAxis axis = SpinAxis::x;
  SpinQuantumNumber j{1};
  std::optional<double> lambda;
  TemperatureAxis temperature_axis = TemperatureAxis::beta;
  /// beta values or P values depending on temperature_axis.
  std::vector<double> temperature_grid;
  std::vector<double> t_grid;
  std::vector<OutputKind> outputs;
  std::optional<std::string> output_path;
  int parallelism = 1;
  nlohmann::json metadata = nlohmann::json::object();

  bool wants(OutputKind kind) const;
  std::size_t point_count() const { return temperature_grid.size() * t_grid.size(); }
};

std::string_view to_string(ModelKind model);
std::string_view to_string(OutputKind output);
std::string_view to_string(SpinAxis axis);

/// Validates the schema and throws ConfigError naming the offending field.
SweepConfig parse_config(const nlohmann::json& document);
SweepConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const SweepConfig& config);

struct SweepRow {
  ModelKind model = ModelKind::linear;
  double j = 0.0;
  double beta = 0.0;
  double p = 0.0;
  double t = 0.0;
  std::optional<double> lambda;
  std::optional<double> f_general;
  std::optional<double> f_thermal;
  std::optional<double> f_sld;
  std::optional<double> variance_bound;
  std::optional<double> seminorm_bound;
  std::optional<double> product_bound;
  std::optional<double> convexity_bound;
  std::optional<double> gap_variance_bound;
  std::optional<double> gap_seminorm_bound;
  std::optional<double> closed_qfi;
  std::optional<double> closed_variance;
  bool ordering_ok = false;
};

/// Probe state and encoding of one grid point.
Scenario make_scenario(const SweepConfig& config, const SpinOperators& ops, double beta, double t);

/// One row per grid point ordered by (t, beta); the result does not depend
/// on config.parallelism.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr std::string_view kCsvHeader =
    "model,J,beta,P,t,lambda,f_general,f_thermal,f_sld,variance_bound,seminorm_bound,"
    "product_bound,convexity_bound,gap_variance_bound,gap_seminorm_bound,closed_qfi,"
    "closed_variance,ordering_ok";

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::string format_csv_row(const SweepRow& row);
/// Throws std::runtime_error naming the path on I/O failure and
/// PreconditionError on an empty row set.
void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

struct NamedConfig {
  std::string name;
  SweepConfig config;
};

/// Default configs for the figure data: fig2a (OAT QFI and bounds versus P),
/// fig2b (linear QFI versus P on the same grid), fig3a (LMG versus t at
/// beta = 1.1) and fig3b (LMG versus beta at t = 3.14). J = 5, t = 1 and
/// lambda = 1 are artifact defaults recorded in each config's metadata.
std::vector<NamedConfig> figure_configs();

nlohmann::json rows_to_json(const std::vector<SweepRow>& rows, const nlohmann::json& metadata);
void emit_json(const std::vector<SweepRow>& rows, const nlohmann::json& metadata,
               const std::filesystem::path& path);

}  // namespace thermoqfi
