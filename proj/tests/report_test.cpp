#include "qrf/report.hpp"

#include <doctest.h>

#include "qrf/error.hpp"

using namespace qrf;

namespace {

RunReport sample() {
  RunReport r;
  r.scenario = "demo";
  r.seed = 42;
  r.add({"zeta", CheckStatus::kPass, {{"cases", 10}}, 1e-9, ""});
  r.add({"alpha", CheckStatus::kFail, {{"cases", 10}, {"failures", 2}}, {}, "case 3: off by one"});
  return r;
}

}  // namespace

TEST_CASE("reports keep their checks sorted by name") {
  const auto r = sample();
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].name == "alpha");
  CHECK(r.checks[1].name == "zeta");
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.errored());
}

TEST_CASE("report documents round-trip and stay canonical") {
  const auto r = sample();
  const auto doc = report_to_json(r);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["status"] == "fail");
  CHECK(doc["checks"][0]["name"] == "alpha");
  CHECK_FALSE(doc.contains("wall_ms"));
  CHECK(report_to_json(r, true).contains("wall_ms"));

  const auto back = report_from_json(doc);
  CHECK(back.scenario == "demo");
  CHECK(back.seed == 42);
  CHECK(back.checks[0].detail == "case 3: off by one");
  CHECK(back.checks[1].tolerance.value() == 1e-9);
  CHECK(report_to_json(back).dump() == doc.dump());

  CHECK_THROWS_AS(report_from_json(nlohmann::json{{"seed", 1}}), ValidationError);
  auto bad = doc;
  bad["checks"][0]["status"] = "maybe";
  CHECK_THROWS_AS(report_from_json(bad), ValidationError);
}

TEST_CASE("csv flattens checks with a union of measured columns") {
  const auto text = report_to_csv(sample());
  CHECK(text ==
        "check,status,tolerance,detail,cases,failures\n"
        "alpha,fail,,case 3: off by one,10.0,2.0\n"
        "zeta,pass,1e-09,,10.0,\n");

  CHECK(report_to_csv(RunReport{}) == "check,status,tolerance,detail\n");

  RunReport quoting;
  quoting.add({"odd, name", CheckStatus::kPass, {}, {}, "said \"hi\"\nthere"});
  const auto quoted = report_to_csv(quoting);
  CHECK(quoted.find("\"odd, name\"") != std::string::npos);
  CHECK(quoted.find("\"said \"\"hi\"\"\nthere\"") != std::string::npos);
}
