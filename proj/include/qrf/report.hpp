#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrf {

enum class CheckStatus { kPass, kFail, kError };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

/// One verdict with whatever numbers back it up.
struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::map<std::string, double> measured;
  std::optional<double> tolerance;
  std::string detail;  // witness or error text, empty when uneventful
};

/// Everything one run produced. Checks are kept sorted by name so the
/// emitted documents never depend on execution order.
struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  double wall_ms = 0;  // kept out of the canonical documents

  void add(CheckRecord r);
  bool passed() const;
  bool errored() const;
};

/// Canonical JSON document. Timings only appear on request, so two runs
/// with one (scenario, seed) pair serialize byte-identically.
nlohmann::json report_to_json(const RunReport& r, bool include_timings = false);
RunReport report_from_json(const nlohmann::json& j);

/// Flat rows for plotting: check,status,tolerance,detail plus one column
/// per measured key (union over all checks, sorted). An empty report keeps
/// the fixed header.
std::string report_to_csv(const RunReport& r);

}  // namespace qrf
