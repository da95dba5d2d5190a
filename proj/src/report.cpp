#include "qrf/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qrf/error.hpp"

namespace qrf {

using Json = nlohmann::json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kError: return "error";
  }
  return "error";
}

CheckStatus check_status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::kPass;
  if (s == "fail") return CheckStatus::kFail;
  if (s == "error") return CheckStatus::kError;
  throw ValidationError("unknown check status '" + s + "'");
}

void RunReport::add(CheckRecord r) {
  const auto at = std::lower_bound(
      checks.begin(), checks.end(), r,
      [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  checks.insert(at, std::move(r));
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.status == CheckStatus::kPass; });
}

bool RunReport::errored() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.status == CheckStatus::kError; });
}

Json report_to_json(const RunReport& r, bool include_timings) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json doc{{"name", c.name}, {"status", to_string(c.status)}};
    if (!c.measured.empty()) doc["measured"] = c.measured;
    if (c.tolerance) doc["tolerance"] = *c.tolerance;
    if (!c.detail.empty()) doc["detail"] = c.detail;
    checks.push_back(std::move(doc));
  }
  Json out{{"schema_version", 1},
           {"scenario", r.scenario},
           {"seed", r.seed},
           {"status", r.errored() ? "error" : (r.passed() ? "pass" : "fail")},
           {"checks", checks}};
  if (include_timings) out["wall_ms"] = r.wall_ms;
  return out;
}

RunReport report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("checks")) {
    throw ValidationError("a report document needs 'scenario' and 'checks'");
  }
  RunReport r;
  r.scenario = j.at("scenario").get<std::string>();
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
  for (const auto& doc : j.at("checks")) {
    CheckRecord c;
    c.name = doc.at("name").get<std::string>();
    c.status = check_status_from_string(doc.at("status").get<std::string>());
    if (doc.contains("measured")) {
      c.measured = doc.at("measured").get<std::map<std::string, double>>();
    }
    if (doc.contains("tolerance")) c.tolerance = doc.at("tolerance").get<double>();
    if (doc.contains("detail")) c.detail = doc.at("detail").get<std::string>();
    r.add(std::move(c));
  }
  return r;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_number(double v) { return Json(v).dump(); }

}  // namespace

std::string report_to_csv(const RunReport& r) {
  std::set<std::string> keys;
  for (const auto& c : r.checks) {
    for (const auto& [key, value] : c.measured) {
      (void)value;
      keys.insert(key);
    }
  }
  std::ostringstream out;
  out << "check,status,tolerance,detail";
  for (const auto& key : keys) out << "," << csv_quote(key);
  out << "\n";
  for (const auto& c : r.checks) {
    out << csv_quote(c.name) << "," << to_string(c.status) << ","
        << (c.tolerance ? csv_number(*c.tolerance) : "") << "," << csv_quote(c.detail);
    for (const auto& key : keys) {
      const auto it = c.measured.find(key);
      out << "," << (it == c.measured.end() ? "" : csv_number(it->second));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qrf
