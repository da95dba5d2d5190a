#include "qrf/properties.hpp"

#include <doctest.h>

#include "qrf/model_space.hpp"
#include "qrf/rng.hpp"
#include "qrf/serialize.hpp"

using namespace qrf;

TEST_CASE("the full suite passes on a quick run") {
  const auto report = verify_suite(1, 25);
  CHECK(report.scenario == "property_suite");
  CHECK(report.checks.size() == all_properties().size());
  for (const auto& c : report.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.status == CheckStatus::kPass);
    CHECK(c.measured.at("cases") == 25);
    CHECK(c.measured.at("failures") == 0);
  }
}

TEST_CASE("two runs with one seed serialize identically") {
  const auto a = report_to_json(verify_suite(7, 10)).dump(2);
  const auto b = report_to_json(verify_suite(7, 10)).dump(2);
  CHECK(a == b);
  const auto c = report_to_json(verify_suite(8, 10)).dump(2);
  CHECK(a != c);
}

TEST_CASE("a broken law is caught with a replayable witness") {
  // Deliberately wrong counterpart: the second lowering element is not
  // inverted, so comparing a model with itself stops giving the identity.
  const Property mutant{
      "mutant/counter-without-inverse", [](std::uint64_t cs) -> std::optional<std::string> {
        SplitMix64 r(cs);
        const int n = static_cast<int>(r.uniform(3, 16));
        const auto space = ModelSpace::power(ConfigSpace::dial(Group::cyclic(n), n), 2);
        const auto s = Section::subsystem_at_origin(space, 0);
        const auto m = space.make({static_cast<int>(r.uniform(1, n - 1)),
                                   static_cast<int>(r.uniform(0, n - 1))});
        const auto wrong = compose(lowering_element(s, m), lowering_element(s, m));
        if (wrong != space.group().identity()) {
          return "counter without the inverse maps a model against itself to " +
                 std::to_string(wrong.index());
        }
        return std::nullopt;
      }};

  const auto report = run_property_suite(std::span<const Property>(&mutant, 1), 42, 50);
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].status == CheckStatus::kFail);
  CHECK(report.checks[0].measured.at("failures") > 0);
  CHECK(report.checks[0].detail.find("seed") != std::string::npos);
  CHECK_FALSE(report.passed());

  CHECK_THROWS_AS(verify_suite(1, 0), ValidationError);
}

TEST_CASE("a throwing law is reported as an error, not a crash") {
  const Property broken{"mutant/throws",
                        [](std::uint64_t) -> std::optional<std::string> {
                          throw DomainError("boom");
                        }};
  const auto report = run_property_suite(std::span<const Property>(&broken, 1), 1, 5);
  CHECK(report.checks[0].status == CheckStatus::kError);
  CHECK(report.checks[0].detail.find("boom") != std::string::npos);
  CHECK(report.errored());
}
