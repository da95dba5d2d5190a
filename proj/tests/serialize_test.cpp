#include "qrf/serialize.hpp"

#include <doctest.h>

#include <cmath>

using namespace qrf;

namespace {

const double kInvRoot2 = 1.0 / std::sqrt(2.0);

ModelSpace pair_space(int n = 16) {
  const auto g = Group::cyclic(n);
  return ModelSpace::power(ConfigSpace::dial(g, n), 2);
}

}  // namespace

TEST_CASE("groups round-trip through documents") {
  const auto z16 = group_from_json(group_to_json(Group::cyclic(16)));
  CHECK(z16.same(Group::cyclic(16)));

  const auto s4 = group_from_json(group_to_json(Group::symmetric(4)));
  CHECK(s4.same(Group::symmetric(4)));
  CHECK(s4.order() == 24);

  const Json doc{{"kind", "permutation"},
                 {"degree", 3},
                 {"generators", Json::array({Json::array({1, 2, 0})})}};
  CHECK(group_from_json(doc).order() == 3);

  CHECK_THROWS_AS(group_from_json(Json{{"kind", "frieze"}}), ValidationError);
  CHECK_THROWS_AS(group_from_json(Json{{"kind", "cyclic"}}), ValidationError);
  const Json bad{{"kind", "permutation"},
                 {"degree", 4},
                 {"generators", Json::array({Json::array({1, 2, 0})})}};
  CHECK_THROWS_AS(group_from_json(bad), ValidationError);
}

TEST_CASE("sections round-trip through documents") {
  const auto space = pair_space();

  const auto rule = section_from_json(space, section_to_json(Section::subsystem_at_origin(space, 1)));
  CHECK(rule.name() == "subsystem1_at_0");

  const auto seeded = section_from_json(space, Json{{"rule", "seeded"}, {"seed", 7}});
  CHECK(seeded.name() == "seeded_7");
  CHECK(section_to_json(seeded)["seed"] == 7);

  const auto table = Section::from_table(space, {space.make({2, 5})}, "pinned");
  const auto back = section_from_json(space, section_to_json(table));
  const auto orbit = orbit_label(space.make({2, 5}));
  CHECK(back.representative(orbit) == table.representative(orbit));

  CHECK_THROWS_AS(section_from_json(space, Json{{"rule", "whim"}}), ValidationError);
}

TEST_CASE("states serialize as amplitude-configuration triples") {
  const auto space = pair_space();
  const auto st = superpose({{{kInvRoot2, 0}, space.make({0, 3})},
                             {{0, kInvRoot2}, space.make({0, 13})}});
  const auto doc = state_to_json(st);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0].size() == 3);

  const auto back = state_from_json(space, doc);
  CHECK(approx_equal(back, st));

  CHECK_THROWS_AS(state_from_json(space, Json::array()), ValidationError);
  CHECK_THROWS_AS(state_from_json(space, Json::array({Json::array({1.0, 0.0})})),
                  ValidationError);
}

TEST_CASE("amplitudes accept bare reals and re-im pairs") {
  CHECK(amplitude_from_json(Json(0.5)) == Amplitude{0.5, 0.0});
  CHECK(amplitude_from_json(Json::array({0.5, -0.25})) == Amplitude{0.5, -0.25});
  CHECK_THROWS_AS(amplitude_from_json(Json("half")), ValidationError);
  CHECK_THROWS_AS(amplitude_from_json(Json::array({1.0})), ValidationError);
}

TEST_CASE("geometries and superpositions round-trip through documents") {
  BranchGeometry g;
  g.point_count = 3;
  g.observables["curv"] = {1.5, 2.5, 3.5};
  g.fields["chi"] = {{{1, 0, 0, 0}, {2, 0, 0, 0}, {3, 0, 0, 0}}, 10};
  g.worldlines["w"] = {0, 2};

  const auto back = geometry_from_json(geometry_to_json(g));
  CHECK(back.point_count == 3);
  CHECK(back.observable("curv") == g.observables["curv"]);
  CHECK(back.field("chi").values == g.fields["chi"].values);
  CHECK(back.field("chi").scale == 10);
  CHECK(back.worldline("w") == g.worldlines["w"]);

  const auto s = GeometrySuperposition::of({{{kInvRoot2, 0}, g}, {{0, kInvRoot2}, g}});
  const auto s_back = superposition_from_json(superposition_to_json(s));
  REQUIRE(s_back.branch_count() == 2);
  CHECK(s_back.geometry(1).field("chi").values == g.fields["chi"].values);
  CHECK(std::abs(s_back.amplitude(1) - s.amplitude(1)) < 1e-15);

  auto bad = geometry_to_json(g);
  bad["worldlines"]["w"] = Json::array({0, 9});
  CHECK_THROWS_AS(geometry_from_json(bad), ValidationError);
  bad = geometry_to_json(g);
  bad["fields"]["chi"]["values"][0] = Json::array({1, 0, 0});
  CHECK_THROWS_AS(geometry_from_json(bad), ValidationError);
}

TEST_CASE("translation scenarios read from documents with defaults") {
  const auto sc = translation_scenario_from_json(
      Json{{"lattice_size", 12}, {"separation", 2}, {"alpha", 0.6}, {"beta", 0.8}});
  CHECK(sc.lattice_size == 12);
  CHECK(sc.separation == 2);
  CHECK(sc.alpha == Amplitude{0.6, 0.0});

  CHECK(translation_scenario_from_json(Json::object()).lattice_size == 16);
  CHECK_THROWS_AS(translation_scenario_from_json(Json{{"separation", 0}}), ValidationError);
}

TEST_CASE("three-particle reports emit named fields") {
  const auto report =
      three_particle_report(16, {{{0, 3, 9}, {0, 5, 9}}}, {kInvRoot2, 0}, {kInvRoot2, 0});
  const auto doc = three_particle_report_to_json(report);
  CHECK(doc["lattice_size"] == 16);
  REQUIRE(doc["frames"].size() == 2);
  CHECK(doc["frames"][0]["frame"] == 0);
  CHECK(doc["frames"][0]["branches"][0].contains("positions"));
  CHECK(doc["frames"][1]["entropy_bits"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}
