#pragma once

#include <string>

#include "qrf/report.hpp"
#include "qrf/serialize.hpp"

namespace qrf {

/// Version of the scenario document layout this build reads.
inline constexpr int kScenarioSchemaVersion = 1;

struct ScenarioConfig {
  std::string kind;  // translation_two_body | translation_three_body |
                     // spacetime_superposition | property_suite
  std::uint64_t seed = 0;
  Json parameters;
};

/// Validate a scenario document: schema version, kind, and the kind's
/// parameter schema. Throws ValidationError with the offending key.
ScenarioConfig parse_scenario(const Json& doc);

/// A run's verdicts plus any scenario-specific document worth keeping
/// (three-body runs produce their frame-by-frame description; null
/// otherwise).
struct ScenarioOutcome {
  RunReport report;
  Json artifact;
};

/// Execute the scenario end-to-end. Deterministic given (config, seed):
/// all drawn randomness flows from the seed. Checks that hit a library
/// error are reported with error status instead of unwinding the run.
ScenarioOutcome run_scenario_full(const ScenarioConfig& config);

inline RunReport run_scenario(const ScenarioConfig& config) {
  return run_scenario_full(config).report;
}

}  // namespace qrf
