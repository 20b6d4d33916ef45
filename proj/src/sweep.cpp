#include "thermoqfi/sweep.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

using nlohmann::json;

constexpr int kMaxTwiceJ = 200;

constexpr std::array kAllOutputs = {
    OutputKind::qfi_general,    OutputKind::qfi_thermal,   OutputKind::qfi_sld,
    OutputKind::variance_bound, OutputKind::seminorm_bound, OutputKind::product_bound,
    OutputKind::gap_bounds,     OutputKind::closed_forms,
};

const std::array<std::string_view, 11> kKnownKeys = {
    "model",  "axis",   "twice_j", "lambda",      "beta_grid", "p_grid",
    "t_grid", "outputs", "output_path", "parallelism", "metadata",
};

std::string field(std::string_view name) { return fmt::format("config.{}", name); }

std::string element(std::string_view name, std::size_t index) {
  return fmt::format("config.{}[{}]", name, index);
}

ModelKind parse_model(const json& value) {
  if (!value.is_string()) throw ConfigError(field("model"), "expected a string");
  const auto name = value.get<std::string>();
  if (name == "linear") return ModelKind::linear;
  if (name == "oat") return ModelKind::oat;
  if (name == "lmg") return ModelKind::lmg;
  throw ConfigError(field("model"), fmt::format("unknown model '{}' (linear, oat, lmg)", name));
}

SpinAxis parse_axis(const json& value) {
  if (!value.is_string()) throw ConfigError(field("axis"), "expected a string");
  const auto name = value.get<std::string>();
  if (name == "x") return SpinAxis::x;
  if (name == "y") return SpinAxis::y;
  if (name == "z") return SpinAxis::z;
  throw ConfigError(field("axis"), fmt::format("unknown axis '{}' (x, y, z)", name));
}

OutputKind parse_output(const json& value, std::size_t index) {
  if (!value.is_string()) throw ConfigError(element("outputs", index), "expected a string");
  const auto name = value.get<std::string>();
  for (OutputKind kind : kAllOutputs) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError(element("outputs", index), fmt::format("unknown output '{}'", name));
}

double parse_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::vector<double> parse_grid(const json& value, std::string_view name, double lower,
                               double upper, bool upper_inclusive) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError(field(name), "expected a non-empty list of numbers");
  }
  std::vector<double> grid;
  grid.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const double x = parse_number(value[i], element(name, i));
    const bool above = upper_inclusive ? x > upper : x >= upper;
    if (x < lower || above) {
      throw ConfigError(element(name, i),
                        fmt::format("value {} outside [{}, {}{}", x, lower, upper,
                                    upper_inclusive ? "]" : ")"));
    }
    if (!grid.empty() && x <= grid.back()) {
      throw ConfigError(element(name, i), "grid must be strictly increasing");
    }
    grid.push_back(x);
  }
  return grid;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string{};
}

json optional_json(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

SweepRow evaluate_point(const SweepConfig& config, const SpinOperators& ops, double beta,
                        double t) {
  const Scenario scenario = make_scenario(config, ops, beta, t);
  const BoundReport report = bound_report(scenario);

  SweepRow row;
  row.model = config.model;
  row.j = config.j.j();
  row.beta = beta;
  row.p = polarization(beta);
  row.t = t;
  row.lambda = config.lambda;
  row.ordering_ok = report.ordering_ok;

  if (config.wants(OutputKind::qfi_general)) row.f_general = report.qfi.f_general;
  if (config.wants(OutputKind::qfi_thermal)) row.f_thermal = report.qfi.f_thermal;
  if (config.wants(OutputKind::qfi_sld)) row.f_sld = report.qfi.f_sld;
  if (config.wants(OutputKind::variance_bound)) row.variance_bound = report.variance_bound;
  if (config.wants(OutputKind::seminorm_bound)) row.seminorm_bound = report.seminorm_bound;
  if (config.wants(OutputKind::product_bound)) row.product_bound = report.product_bound;
  if (config.wants(OutputKind::gap_bounds)) {
    row.convexity_bound = report.convexity_bound;
    row.gap_variance_bound = report.gap_variance_bound;
    row.gap_seminorm_bound = report.gap_seminorm_bound;
  }
  if (config.wants(OutputKind::closed_forms)) {
    if (config.model == ModelKind::linear) {
      const LinearModelParams params{config.j, beta, t, config.axis};
      row.closed_qfi = linear_qfi_closed(params);
      row.closed_variance = linear_variance_closed(params);
    } else if (config.model == ModelKind::oat) {
      const OatModelParams params{config.j, beta, t};
      row.closed_qfi = oat_qfi_closed(params);
      row.closed_variance = oat_variance_closed(params);
    }
  }
  return row;
}

}  // namespace

bool SweepConfig::wants(OutputKind kind) const {
  return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

std::string_view to_string(ModelKind model) {
  switch (model) {
    case ModelKind::linear: return "linear";
    case ModelKind::oat: return "oat";
    case ModelKind::lmg: return "lmg";
  }
  return "?";
}

std::string_view to_string(OutputKind output) {
  switch (output) {
    case OutputKind::qfi_general: return "qfi_general";
    case OutputKind::qfi_thermal: return "qfi_thermal";
    case OutputKind::qfi_sld: return "qfi_sld";
    case OutputKind::variance_bound: return "variance_bound";
    case OutputKind::seminorm_bound: return "seminorm_bound";
    case OutputKind::product_bound: return "product_bound";
    case OutputKind::gap_bounds: return "gap_bounds";
    case OutputKind::closed_forms: return "closed_forms";
  }
  return "?";
}

std::string_view to_string(SpinAxis axis) {
  switch (axis) {
    case SpinAxis::x: return "x";
    case SpinAxis::y: return "y";
    case SpinAxis::z: return "z";
  }
  return "?";
}

SweepConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "metadata") continue;
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ConfigError(field(key), "unknown field");
    }
  }

  SweepConfig config;
  if (!doc.contains("model")) throw ConfigError(field("model"), "required field missing");
  config.model = parse_model(doc["model"]);

  if (doc.contains("axis")) {
    if (config.model != ModelKind::linear) {
      throw ConfigError(field("axis"), "only valid for model linear");
    }
    config.axis = parse_axis(doc["axis"]);
  }

  if (!doc.contains("twice_j")) throw ConfigError(field("twice_j"), "required field missing");
  const json& twice_j = doc["twice_j"];
  if (!twice_j.is_number_integer()) throw ConfigError(field("twice_j"), "expected an integer");
  const auto tj = twice_j.get<long long>();
  if (tj < 1 || tj > kMaxTwiceJ) {
    throw ConfigError(field("twice_j"), fmt::format("must lie in [1, {}], got {}", kMaxTwiceJ, tj));
  }
  config.j = SpinQuantumNumber(static_cast<int>(tj));

  if (config.model == ModelKind::lmg) {
    if (!doc.contains("lambda")) throw ConfigError(field("lambda"), "required for model lmg");
    config.lambda = parse_number(doc["lambda"], field("lambda"));
  } else if (doc.contains("lambda")) {
    throw ConfigError(field("lambda"), "only valid for model lmg");
  }

  const bool has_beta = doc.contains("beta_grid");
  const bool has_p = doc.contains("p_grid");
  if (has_beta == has_p) {
    throw ConfigError(field(has_beta ? "p_grid" : "beta_grid"),
                      "exactly one of beta_grid and p_grid is required");
  }
  if (has_beta) {
    config.temperature_axis = TemperatureAxis::beta;
    config.temperature_grid =
        parse_grid(doc["beta_grid"], "beta_grid", 0.0, std::numeric_limits<double>::max(), true);
  } else {
    config.temperature_axis = TemperatureAxis::polarization;
    config.temperature_grid = parse_grid(doc["p_grid"], "p_grid", 0.0, 1.0, false);
  }

  if (!doc.contains("t_grid")) throw ConfigError(field("t_grid"), "required field missing");
  config.t_grid =
      parse_grid(doc["t_grid"], "t_grid", 0.0, std::numeric_limits<double>::max(), true);

  if (doc.contains("outputs")) {
    const json& outputs = doc["outputs"];
    if (!outputs.is_array() || outputs.empty()) {
      throw ConfigError(field("outputs"), "expected a non-empty list");
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      const OutputKind kind = parse_output(outputs[i], i);
      if (kind == OutputKind::closed_forms && config.model == ModelKind::lmg) {
        throw ConfigError(element("outputs", i), "closed_forms is not available for model lmg");
      }
      if (!config.wants(kind)) config.outputs.push_back(kind);
    }
  } else {
    for (OutputKind kind : kAllOutputs) {
      if (kind == OutputKind::closed_forms && config.model == ModelKind::lmg) continue;
      config.outputs.push_back(kind);
    }
  }

  if (doc.contains("output_path")) {
    if (!doc["output_path"].is_string()) {
      throw ConfigError(field("output_path"), "expected a string");
    }
    config.output_path = doc["output_path"].get<std::string>();
  }
  if (doc.contains("parallelism")) {
    const json& par = doc["parallelism"];
    if (!par.is_number_integer() || par.get<long long>() < 1 || par.get<long long>() > 1024) {
      throw ConfigError(field("parallelism"), "expected an integer in [1, 1024]");
    }
    config.parallelism = par.get<int>();
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) throw ConfigError(field("metadata"), "expected an object");
    config.metadata = doc["metadata"];
  }
  return config;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", fmt::format("cannot open '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_config(doc);
}

json to_json(const SweepConfig& config) {
  json doc;
  doc["model"] = to_string(config.model);
  if (config.model == ModelKind::linear) doc["axis"] = to_string(config.axis);
  doc["twice_j"] = config.j.twice_j();
  if (config.lambda) doc["lambda"] = *config.lambda;
  doc[config.temperature_axis == TemperatureAxis::beta ? "beta_grid" : "p_grid"] =
      config.temperature_grid;
  doc["t_grid"] = config.t_grid;
  json outputs = json::array();
  for (OutputKind kind : config.outputs) outputs.push_back(to_string(kind));
  doc["outputs"] = outputs;
  if (config.output_path) doc["output_path"] = *config.output_path;
  doc["parallelism"] = config.parallelism;
  if (!config.metadata.empty()) doc["metadata"] = config.metadata;
  return doc;
}

Scenario make_scenario(const SweepConfig& config, const SpinOperators& ops, double beta,
                       double t) {
  GibbsState probe = gibbs_state(ops.jz, beta);
  switch (config.model) {
    case ModelKind::linear: {
      const HermitianOperator& axis = config.axis == SpinAxis::x   ? ops.jx
                                      : config.axis == SpinAxis::y ? ops.jy
                                                                   : ops.jz;
      return Scenario{std::move(probe), ExplicitGenerator{axis, t}};
    }
    case ModelKind::oat:
      return Scenario{std::move(probe), ExplicitGenerator{ops.jx.squared(), t}};
    case ModelKind::lmg: {
      if (!config.lambda) throw ConfigError(field("lambda"), "required for model lmg");
      auto hamiltonian = [jx2 = ops.jx.squared(), jz = ops.jz](double lambda) {
        return jx2 + lambda * jz;
      };
      return Scenario{std::move(probe),
                      HamiltonianFamily{std::move(hamiltonian), ops.jz, *config.lambda, t}};
    }
  }
  throw PreconditionError("make_scenario: unknown model");
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  struct Point {
    double beta;
    double t;
  };
  std::vector<Point> points;
  points.reserve(config.point_count());
  for (double t : config.t_grid) {
    for (double x : config.temperature_grid) {
      const double beta =
          config.temperature_axis == TemperatureAxis::beta ? x : beta_from_polarization(x);
      points.push_back({beta, t});
    }
  }
  if (points.empty()) throw ConfigError("config", "empty grid");

  const SpinOperators ops = spin_operators(config.j);
  std::vector<SweepRow> rows(points.size());
  std::vector<std::exception_ptr> failures(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
      try {
        rows[i] = evaluate_point(config, ops, points[i].beta, points[i].t);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const auto workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.parallelism)), points.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return rows;
}

std::string format_csv_row(const SweepRow& row) {
  return fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", to_string(row.model),
      format_number(row.j), format_number(row.beta), format_number(row.p), format_number(row.t),
      format_optional(row.lambda), format_optional(row.f_general), format_optional(row.f_thermal),
      format_optional(row.f_sld), format_optional(row.variance_bound),
      format_optional(row.seminorm_bound), format_optional(row.product_bound),
      format_optional(row.convexity_bound), format_optional(row.gap_variance_bound),
      format_optional(row.gap_seminorm_bound), format_optional(row.closed_qfi),
      format_optional(row.closed_variance), row.ordering_ok ? "true" : "false");
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) out << format_csv_row(row) << '\n';
}

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw PreconditionError("emit_csv: no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("emit_csv: cannot open '{}'", path.string()));
  write_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("emit_csv: write to '{}' failed", path.string()));
}

std::vector<NamedConfig> figure_configs() {
  const SpinQuantumNumber j(10);
  const std::string defaults =
      "twice_j=10 (J=5), t=1 for the P sweeps and lambda=1 for LMG are artifact defaults; "
      "the figure parameters were not published";

  std::vector<double> p_grid;
  for (int k = 1; k <= 39; ++k) p_grid.push_back(k / 40.0);
  std::vector<double> t_grid;
  for (int k = 0; k <= 60; ++k) t_grid.push_back(k / 10.0);
  std::vector<double> beta_grid;
  for (int k = 1; k <= 50; ++k) beta_grid.push_back(k / 10.0);

  SweepConfig fig2a;
  fig2a.model = ModelKind::oat;
  fig2a.j = j;
  fig2a.temperature_axis = TemperatureAxis::polarization;
  fig2a.temperature_grid = p_grid;
  fig2a.t_grid = {1.0};
  fig2a.outputs.assign(kAllOutputs.begin(), kAllOutputs.end());
  fig2a.output_path = "fig2a.csv";
  fig2a.metadata = {{"figure", "2a"},
                    {"description", "one-axis twisting: QFI and upper bounds versus P"},
                    {"defaults", defaults}};

  SweepConfig fig2b = fig2a;
  fig2b.model = ModelKind::linear;
  fig2b.axis = SpinAxis::x;
  fig2b.outputs = {OutputKind::qfi_general,    OutputKind::qfi_thermal,
                   OutputKind::qfi_sld,        OutputKind::variance_bound,
                   OutputKind::seminorm_bound, OutputKind::closed_forms};
  fig2b.output_path = "fig2b.csv";
  fig2b.metadata = {{"figure", "2b"},
                    {"description", "linear encoding QFI versus P; compare with fig2a f_general"},
                    {"defaults", defaults}};

  SweepConfig fig3a;
  fig3a.model = ModelKind::lmg;
  fig3a.j = j;
  fig3a.lambda = 1.0;
  fig3a.temperature_axis = TemperatureAxis::beta;
  fig3a.temperature_grid = {1.1};
  fig3a.t_grid = t_grid;
  for (OutputKind kind : kAllOutputs) {
    if (kind != OutputKind::closed_forms) fig3a.outputs.push_back(kind);
  }
  fig3a.output_path = "fig3a.csv";
  fig3a.metadata = {{"figure", "3a"},
                    {"description", "LMG encoding: QFI and bounds versus t at beta = 1.1"},
                    {"defaults", defaults}};

  SweepConfig fig3b = fig3a;
  fig3b.temperature_grid = beta_grid;
  fig3b.t_grid = {3.14};
  fig3b.output_path = "fig3b.csv";
  fig3b.metadata = {{"figure", "3b"},
                    {"description", "LMG encoding: QFI and bounds versus beta at t = 3.14"},
                    {"defaults", defaults}};

  return {{"fig2a", std::move(fig2a)},
          {"fig2b", std::move(fig2b)},
          {"fig3a", std::move(fig3a)},
          {"fig3b", std::move(fig3b)}};
}

json rows_to_json(const std::vector<SweepRow>& rows, const json& metadata) {
  json out;
  out["metadata"] = metadata;
  json list = json::array();
  for (const SweepRow& row : rows) {
    list.push_back({
        {"model", to_string(row.model)},
        {"J", row.j},
        {"beta", row.beta},
        {"P", row.p},
        {"t", row.t},
        {"lambda", optional_json(row.lambda)},
        {"f_general", optional_json(row.f_general)},
        {"f_thermal", optional_json(row.f_thermal)},
        {"f_sld", optional_json(row.f_sld)},
        {"variance_bound", optional_json(row.variance_bound)},
        {"seminorm_bound", optional_json(row.seminorm_bound)},
        {"product_bound", optional_json(row.product_bound)},
        {"convexity_bound", optional_json(row.convexity_bound)},
        {"gap_variance_bound", optional_json(row.gap_variance_bound)},
        {"gap_seminorm_bound", optional_json(row.gap_seminorm_bound)},
        {"closed_qfi", optional_json(row.closed_qfi)},
        {"closed_variance", optional_json(row.closed_variance)},
        {"ordering_ok", row.ordering_ok},
    });
  }
  out["rows"] = std::move(list);
  return out;
}

void emit_json(const std::vector<SweepRow>& rows, const json& metadata,
               const std::filesystem::path& path) {
  if (rows.empty()) throw PreconditionError("emit_json: no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("emit_json: cannot open '{}'", path.string()));
  out << rows_to_json(rows, metadata).dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("emit_json: write to '{}' failed", path.string()));
}

}  // namespace thermoqfi
