// thermoqfi: compute, sweep, verify and figures verbs over the library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermoqfi/acceptance.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/sweep.hpp"

namespace {

using nlohmann::json;
using namespace thermoqfi;

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kConfigFailure = 2,
  kNumericalFailure = 3,
};

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  int parallelism = 0;
  std::string format = "csv";
  bool verbose = false;
};

struct PointOptions {
  std::string model = "linear";
  std::string axis;
  int twice_j = 1;
  std::optional<double> beta;
  std::optional<double> p;
  double t = 1.0;
  std::optional<double> lambda;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_config) {
  if (with_config) cmd->add_option("--config", opts.config_path, "JSON sweep config");
  cmd->add_option("--out", opts.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--parallelism", opts.parallelism, "Worker threads")->check(CLI::Range(1, 1024));
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("-v,--verbose", opts.verbose, "Debug logging on stderr");
}

std::string join_rows(const std::vector<SweepRow>& rows, const json& metadata,
                      const std::string& format) {
  if (format == "json") return rows_to_json(rows, metadata).dump(2) + "\n";
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

void emit_rows(const std::vector<SweepRow>& rows, const SweepConfig& config,
               const std::string& path, const std::string& format) {
  if (path.empty()) {
    std::cout << join_rows(rows, config.metadata, format);
  } else if (format == "json") {
    emit_json(rows, config.metadata, path);
  } else {
    emit_csv(rows, path);
  }
}

// Returns nonzero and reports the first row whose bound ordering failed.
int check_ordering(const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) {
    if (row.ordering_ok) continue;
    std::cerr << "bound ordering violated at row:\n" << kCsvHeader << '\n'
              << format_csv_row(row) << '\n';
    return kVerificationFailure;
  }
  return kSuccess;
}

json point_document(const PointOptions& p) {
  json doc = {{"model", p.model}, {"twice_j", p.twice_j}, {"t_grid", {p.t}}};
  if (!p.axis.empty()) doc["axis"] = p.axis;
  if (p.lambda) doc["lambda"] = *p.lambda;
  if (p.beta && p.p) throw ConfigError("config", "give either --beta or --p, not both");
  if (p.p) {
    doc["p_grid"] = {*p.p};
  } else {
    doc["beta_grid"] = {p.beta.value_or(1.0)};
  }
  return doc;
}

int run_compute(const CommonOptions& common, const PointOptions& point) {
  SweepConfig config =
      common.config_path.empty() ? parse_config(point_document(point)) : load_config(common.config_path);
  if (config.point_count() != 1) {
    throw ConfigError("config", fmt::format("compute evaluates a single point, config has {}",
                                            config.point_count()));
  }
  const auto rows = run_sweep(config);
  const SweepRow& row = rows.front();

  if (common.format == "json") {
    write_text(common.out_path, rows_to_json(rows, config.metadata).dump(2) + "\n");
  } else {
    std::string text = fmt::format("model {}  J = {}  beta = {:.17g}  P = {:.17g}  t = {:.17g}\n",
                                   to_string(row.model), row.j, row.beta, row.p, row.t);
    if (row.lambda) text += fmt::format("lambda = {:.17g}\n", *row.lambda);
    auto line = [&text](std::string_view name, const std::optional<double>& value) {
      if (value) text += fmt::format("  {:<20} {:.17g}\n", name, *value);
    };
    line("f_general", row.f_general);
    line("f_thermal", row.f_thermal);
    line("f_sld", row.f_sld);
    line("variance_bound", row.variance_bound);
    line("seminorm_bound", row.seminorm_bound);
    line("product_bound", row.product_bound);
    line("convexity_bound", row.convexity_bound);
    line("gap_variance_bound", row.gap_variance_bound);
    line("gap_seminorm_bound", row.gap_seminorm_bound);
    line("closed_qfi", row.closed_qfi);
    line("closed_variance", row.closed_variance);
    text += fmt::format("  {:<20} {}\n", "ordering_ok", row.ordering_ok ? "true" : "false");
    write_text(common.out_path, text);
  }
  return check_ordering(rows);
}

int run_sweep_verb(const CommonOptions& common) {
  if (common.config_path.empty()) throw ConfigError("config", "sweep requires --config");
  SweepConfig config = load_config(common.config_path);
  if (common.parallelism > 0) config.parallelism = common.parallelism;
  const auto rows = run_sweep(config);
  const std::string path = !common.out_path.empty() ? common.out_path : config.output_path.value_or("");
  emit_rows(rows, config, path, common.format);
  if (!path.empty()) spdlog::info("wrote {} rows to {}", rows.size(), path);
  return check_ordering(rows);
}

int run_verify(const CommonOptions& common, std::uint64_t seed, int scenarios,
               const std::string& scratch_dir) {
  acceptance::Options options;
  options.seed = seed;
  options.random_scenarios = scenarios;
  if (!scratch_dir.empty()) options.scratch_dir = scratch_dir;
  const auto results = acceptance::run_all(options);
  const json summary = acceptance::summary(results);

  if (common.format == "json") {
    write_text(common.out_path, summary.dump(2) + "\n");
  } else {
    acceptance::print_table(std::cout, results);
    if (common.out_path.empty()) {
      std::cout << "\n" << summary.dump(2) << "\n";
    } else {
      write_text(common.out_path, summary.dump(2) + "\n");
    }
  }
  if (acceptance::all_passed(results)) return kSuccess;
  for (const auto& r : results) {
    if (r.passed) continue;
    std::cerr << fmt::format("first failing criterion: C{} {}\n", r.number, r.title);
    if (r.reproducer) std::cerr << "reproducer config:\n" << r.reproducer->dump(2) << '\n';
    break;
  }
  return kVerificationFailure;
}

int run_figures(const CommonOptions& common, bool run) {
  const std::filesystem::path dir = common.out_path.empty() ? "." : common.out_path;
  std::filesystem::create_directories(dir);
  int status = kSuccess;
  for (auto& [name, config] : figure_configs()) {
    const auto config_path = dir / (name + ".config.json");
    SweepConfig written = config;
    written.output_path = (dir / (name + "." + common.format)).string();
    write_text(config_path.string(), to_json(written).dump(2) + "\n");
    std::cout << config_path.string() << '\n';
    if (!run) continue;
    if (common.parallelism > 0) written.parallelism = common.parallelism;
    const auto rows = run_sweep(written);
    emit_rows(rows, written, *written.output_path, common.format);
    std::cout << *written.output_path << '\n';
    if (check_ordering(rows) != kSuccess) status = kVerificationFailure;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("thermoqfi"));
  spdlog::set_level(spdlog::level::warn);

  CLI::App app{"Dynamic quantum Fisher information of thermal spin probes"};
  app.require_subcommand(1);

  CommonOptions common;
  PointOptions point;
  std::uint64_t seed = acceptance::Options{}.seed;
  int scenarios = acceptance::Options{}.random_scenarios;
  std::string scratch_dir;
  bool run_figure_sweeps = false;

  auto* compute = app.add_subcommand("compute", "Evaluate QFI and bounds at a single point");
  add_common(compute, common, true);
  compute->add_option("--model", point.model)->check(CLI::IsMember({"linear", "oat", "lmg"}));
  compute->add_option("--axis", point.axis)->check(CLI::IsMember({"x", "y", "z"}));
  compute->add_option("--twice-j", point.twice_j, "2J");
  compute->add_option("--beta", point.beta);
  compute->add_option("--p", point.p, "Polarization tanh(beta/2)");
  compute->add_option("--t", point.t);
  compute->add_option("--lambda", point.lambda);

  auto* sweep = app.add_subcommand("sweep", "Run a configured grid");
  add_common(sweep, common, true);

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  add_common(verify, common, false);
  verify->add_option("--seed", seed, "Seed of the randomized bound-chain run");
  verify->add_option("--scenarios", scenarios, "Randomized scenario count")
      ->check(CLI::PositiveNumber);
  verify->add_option("--scratch", scratch_dir, "Directory for intermediate CSVs");

  auto* figures = app.add_subcommand("figures", "Write the four figure configs");
  add_common(figures, common, false);
  figures->add_flag("--run", run_figure_sweeps, "Also run them and write the data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigFailure;
  }
  if (common.verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (compute->parsed()) return run_compute(common, point);
    if (sweep->parsed()) return run_sweep_verb(common);
    if (verify->parsed()) return run_verify(common, seed, scenarios, scratch_dir);
    if (figures->parsed()) return run_figures(common, run_figure_sweeps);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << fmt::format(" (residual {:.3e})", e.residual())
              << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  }
  return kConfigFailure;
}
