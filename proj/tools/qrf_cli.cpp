#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qrf/properties.hpp"
#include "qrf/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

void emit_error(const char* type, const std::string& message) {
  std::cout << qrf::Json{{"error", {{"type", type}, {"message", message}}}}.dump(2) << "\n";
}

qrf::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qrf::ValidationError("cannot read '" + path + "'");
  try {
    return qrf::Json::parse(in);
  } catch (const qrf::Json::exception& e) {
    throw qrf::ValidationError(path + ": " + e.what());
  }
}

// Relative output paths land in QRF_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("QRF_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  return path;
}

void emit_document(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = resolve_output(out);
  std::ofstream file(path);
  if (!file) throw qrf::ValidationError("cannot write '" + path.string() + "'");
  file << text;
}

void emit_report(const qrf::RunReport& report, const std::string& format,
                 const std::string& out, bool timings) {
  if (format == "csv") {
    emit_document(qrf::report_to_csv(report), out);
  } else {
    emit_document(qrf::report_to_json(report, timings).dump(2) + "\n", out);
  }
}

std::optional<std::uint64_t> seed_from_env() {
  const char* text = std::getenv("QRF_SEED");
  if (!text) return std::nullopt;
  char* end = nullptr;
  const auto value = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0') {
    throw qrf::ValidationError("QRF_SEED must be an unsigned integer");
  }
  return value;
}

int exit_code_for(const qrf::RunReport& report) {
  if (report.errored()) return kExitInternal;
  return report.passed() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model quantum reference frame laboratory"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::string out;
  std::string format = "json";
  std::string artifact_out;
  bool timings = false;
  std::optional<std::uint64_t> seed_flag;
  int cases = 100;

  auto* run_cmd = app.add_subcommand("run", "Execute a scenario document");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON document")->required();
  run_cmd->add_option("--seed", seed_flag, "Override the document's seed");
  run_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_option("--out", out, "Write the report here instead of stdout");
  run_cmd->add_option("--artifact", artifact_out,
                      "Write the scenario's own document (when it produces one) here");
  run_cmd->add_flag("--timings", timings, "Include wall-clock time in the JSON report");

  auto* verify_cmd = app.add_subcommand("verify", "Run every property campaign");
  verify_cmd->add_option("--seed", seed_flag, "Master seed (default 0 or QRF_SEED)");
  verify_cmd->add_option("--cases", cases, "Cases per property");
  verify_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", out, "Write the report here instead of stdout");
  verify_cmd->add_flag("--timings", timings, "Include wall-clock time in the JSON report");

  auto* report_cmd = app.add_subcommand("report", "Re-emit a stored report document");
  report_cmd->add_option("report", report_path, "Report JSON produced by run or verify")
      ->required();
  report_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  report_cmd->add_option("--out", out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("validation", e.what());
    return kExitValidation;
  }

  try {
    if (app.got_subcommand(run_cmd)) {
      auto config = qrf::parse_scenario(load_json(scenario_path));
      if (const auto env = seed_from_env()) config.seed = *env;
      if (seed_flag) config.seed = *seed_flag;

      const auto start = std::chrono::steady_clock::now();
      auto outcome = qrf::run_scenario_full(config);
      outcome.report.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();

      if (!artifact_out.empty() && !outcome.artifact.is_null()) {
        emit_document(outcome.artifact.dump(2) + "\n", artifact_out);
      }
      emit_report(outcome.report, format, out, timings);
      return exit_code_for(outcome.report);
    }

    if (app.got_subcommand(verify_cmd)) {
      std::uint64_t seed = 0;
      if (const auto env = seed_from_env()) seed = *env;
      if (seed_flag) seed = *seed_flag;

      const auto start = std::chrono::steady_clock::now();
      auto report = qrf::verify_suite(seed, cases);
      report.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();

      emit_report(report, format, out, timings);
      return exit_code_for(report);
    }

    const auto report = qrf::report_from_json(load_json(report_path));
    emit_report(report, format, out, false);
    return kExitPass;
  } catch (const qrf::ValidationError& e) {
    emit_error("validation", e.what());
    return kExitValidation;
  } catch (const qrf::Json::exception& e) {
    emit_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitInternal;
  }
}
