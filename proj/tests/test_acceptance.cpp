#include "doctest.h"
#include "thermoqfi/acceptance.hpp"

#include <cmath>
#include <vector>

using namespace thermoqfi;

namespace {

// Thermal QFI with tanh in place of tanhc, evaluated in the energy basis.
double corrupted_thermal(const GibbsState& state, const HermitianOperator& h) {
  const auto c = state.decomposition.to_eigenbasis(commutator_i(state.hamiltonian, h).matrix());
  const auto& e = state.decomposition.eigenvalues;
  const auto& p = state.probabilities;
  const double beta = state.beta;
  double var = state.variance(commutator_i(state.hamiltonian, h));
  double off = 0.0;
  for (Index i = 0; i < state.dim(); ++i) {
    for (Index j = 0; j < state.dim(); ++j) {
      if (i == j) continue;
      const double x = std::tanh(beta * (e(i) - e(j)) / 2);
      off += p(i) * (1 - x * x) * std::norm(c(i, j));
    }
  }
  return beta * beta * (var - off);
}

}  // namespace

TEST_CASE("three-way agreement passes with the library evaluators") {
  const auto result = acceptance::three_way_agreement({});
  CHECK(result.passed);
  CHECK_FALSE(result.reproducer.has_value());
}

TEST_CASE("corrupting tanhc is caught with a reproducer") {
  acceptance::Options options;
  options.evaluators.thermal = corrupted_thermal;
  const auto result = acceptance::three_way_agreement(options);
  CHECK_FALSE(result.passed);
  REQUIRE(result.reproducer.has_value());
  CHECK(result.reproducer->contains("model"));
  CHECK(result.notes.front().find("first mismatch") == 0);
}

TEST_CASE("summary shape") {
  std::vector<acceptance::CriterionResult> results(2);
  results[0] = {1, "a", true, {"n"}, std::nullopt};
  results[1] = {2, "b", false, {}, nlohmann::json{{"model", "oat"}}};
  const auto s = acceptance::summary(results);
  CHECK(s["passed"] == false);
  CHECK(s["criteria"].size() == 2);
  CHECK(s["criteria"][1]["reproducer"]["model"] == "oat");
  CHECK_FALSE(acceptance::all_passed(results));
}
