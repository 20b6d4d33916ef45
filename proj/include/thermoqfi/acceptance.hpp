#pragma once

// End-to-end verification suite: closed forms against the matrix pipeline,
// three-way QFI agreement, bound orderings on fixed grids and randomized
// scenarios, figure-shape properties and sweep determinism.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "thermoqfi/qfi_engine.hpp"

namespace thermoqfi::acceptance {

using QfiEvaluator = std::function<double(const GibbsState&, const HermitianOperator&)>;

/// The three QFI routes checked against each other. Replaceable so the
/// suite itself can be mutation-tested.
struct QfiEvaluators {
  QfiEvaluator general = [](const GibbsState& s, const HermitianOperator& h) {
    return qfi_general(s, h);
  };
  QfiEvaluator thermal = [](const GibbsState& s, const HermitianOperator& h) {
    return qfi_thermal(s, h);
  };
  QfiEvaluator sld = [](const GibbsState& s, const HermitianOperator& h) {
    return qfi_sld(s, h);
  };
};

struct Options {
  std::uint64_t seed = 20251018;
  int random_scenarios = 1000;
  /// Where sweep CSVs are written; defaults to a directory under the
  /// system temp path.
  std::optional<std::filesystem::path> scratch_dir;
  QfiEvaluators evaluators;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> notes;
  /// First failing case as a standalone sweep config, where one exists.
  std::optional<nlohmann::json> reproducer;
};

CriterionResult three_way_agreement(const Options& options);
CriterionResult linear_closed_form(const Options& options);
CriterionResult variance_and_oat_closed_forms(const Options& options);
CriterionResult bound_chain(const Options& options);
CriterionResult high_temperature_vanishing(const Options& options);
CriterionResult standard_quantum_limit(const Options& options);
CriterionResult figure2_shapes(const Options& options);
CriterionResult semiclassical_seminorm(const Options& options);
CriterionResult lmg_generator_cross_check(const Options& options);
CriterionResult figure3_sweeps(const Options& options);
CriterionResult sweep_determinism(const Options& options);

std::vector<CriterionResult> run_all(const Options& options);

void print_table(std::ostream& out, const std::vector<CriterionResult>& results);
nlohmann::json summary(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace thermoqfi::acceptance
