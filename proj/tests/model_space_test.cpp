#include "qrf/model_space.hpp"

#include <doctest.h>

#include <vector>

using namespace qrf;

namespace {

ModelSpace lattice_pair(int n = 16) {
  return ModelSpace::power(ConfigSpace::regular(Group::cyclic(n)), 2);
}

std::vector<int> cfg(const Model& m) { return {m.configs().begin(), m.configs().end()}; }

}  // namespace

TEST_CASE("model spaces validate their coordinates") {
  const auto space = lattice_pair();
  CHECK(space.subsystem_count() == 2);
  CHECK(space.group().order() == 16);
  CHECK_THROWS_AS(space.make({0}), DomainError);
  CHECK_THROWS_AS(space.make({0, 16}), DomainError);
  CHECK_THROWS_AS(space.make({-1, 3}), DomainError);
  CHECK_THROWS_AS(ModelSpace::product({}), DomainError);

  const auto other_group = ConfigSpace::regular(Group::cyclic(8));
  CHECK_THROWS_AS(ModelSpace::product({space.factor(0), other_group}), DomainError);

  // Cross-space comparisons are category errors.
  const auto triple = ModelSpace::power(ConfigSpace::regular(Group::cyclic(16)), 3);
  CHECK_THROWS_AS((void)(space.make({0, 3}) == triple.make({0, 3, 0})), DomainError);
}

TEST_CASE("the group moves the whole model at once") {
  const auto space = lattice_pair();
  const auto g5 = space.group().element(5);
  CHECK(cfg(apply(g5, space.make({0, 3}))) == std::vector<int>{5, 8});
  CHECK(cfg(apply(g5, space.make({13, 14}))) == std::vector<int>{2, 3});

  const auto tagged = space.make({0, 3}, {{"role", "probe"}});
  const auto moved = apply(g5, tagged);
  CHECK(moved.tags().at("role") == "probe");
  CHECK(moved == space.make({5, 8}));  // tags stay out of comparisons
}

TEST_CASE("orbit labels are the least member and are constant on the orbit") {
  const auto space = lattice_pair();
  const auto m = space.make({13, 0});
  CHECK(cfg(orbit_label(m).canonical()) == std::vector<int>{0, 3});
  CHECK(orbit_label(space.make({0, 3})) == orbit_label(m));

  for (int i = 0; i < 16; ++i) {
    CHECK(orbit_label(apply(space.group().element(i), m)) == orbit_label(m));
  }
  CHECK(orbit_label(space.make({0, 4})) != orbit_label(m));

  const auto tagged = space.make({13, 0}, {{"role", "probe"}});
  CHECK(orbit_label(tagged).canonical().tags().empty());
}

TEST_CASE("relating_element finds the unique connector or reports why not") {
  const auto space = lattice_pair();
  const auto found = relating_element(space.make({0, 3}), space.make({5, 8}));
  REQUIRE(found.has_value());
  CHECK(found->index() == 5);

  CHECK_FALSE(relating_element(space.make({0, 3}), space.make({0, 4})).has_value());

  // Every element fixes a trivially-acted model, so the connector is
  // maximally ambiguous.
  const auto still = ModelSpace::power(ConfigSpace::trivial(Group::cyclic(4), 3), 1);
  try {
    (void)relating_element(still.make({2}), still.make({2}));
    FAIL("expected AmbiguityError");
  } catch (const AmbiguityError& e) {
    CHECK(e.candidates == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("subsystem sections pick the representative with that subsystem at the origin") {
  const auto space = lattice_pair();
  const auto sec = Section::subsystem_at_origin(space, 0);
  CHECK(sec.name() == "subsystem0_at_0");

  const auto rep = sec.representative(orbit_label(space.make({5, 8})));
  CHECK(cfg(rep) == std::vector<int>{0, 3});
  CHECK(sec.contains(space.make({0, 3})));
  CHECK_FALSE(sec.contains(space.make({5, 8})));

  const auto sec1 = Section::subsystem_at_origin(space, 1);
  CHECK(cfg(sec1.representative(orbit_label(space.make({5, 8})))) == std::vector<int>{13, 0});

  CHECK_THROWS_AS(Section::subsystem_at_origin(space, 2), DomainError);
  CHECK_THROWS_AS(Section::subsystem_at_origin(space, 0, 16), DomainError);
}

TEST_CASE("sections from explicit tables reject gaps and duplicates") {
  const auto space = lattice_pair();
  const auto sec = Section::from_table(space, {space.make({1, 4}), space.make({2, 6})}, "listed");
  CHECK(cfg(sec.representative(orbit_label(space.make({0, 3})))) == std::vector<int>{1, 4});
  CHECK(cfg(sec.representative(orbit_label(space.make({10, 14})))) == std::vector<int>{2, 6});
  CHECK_THROWS_AS(sec.representative(orbit_label(space.make({0, 5}))), DomainError);

  // (1, 4) and (0, 3) name the same orbit.
  CHECK_THROWS_AS(
      Section::from_table(space, {space.make({1, 4}), space.make({0, 3})}, "doubled"),
      DomainError);
}

TEST_CASE("seeded sections are deterministic and stay in the orbit") {
  const auto space = lattice_pair();
  const auto sec_a = Section::seeded(space, 7);
  const auto sec_b = Section::seeded(space, 7);
  for (int x = 0; x < 16; ++x) {
    const auto label = orbit_label(space.make({3, x}));
    const auto rep = sec_a.representative(label);
    CHECK(orbit_label(rep) == label);
    CHECK(rep == sec_b.representative(label));
  }
}

TEST_CASE("lowering elements drop a model onto its section representative") {
  const auto space = lattice_pair();
  const auto sec = Section::subsystem_at_origin(space, 0);
  const auto m = space.make({5, 8});
  const auto g = lowering_element(sec, m);
  CHECK(g.index() == 11);
  CHECK(apply(g, m) == sec.representative(orbit_label(m)));
  CHECK(lowering_element(sec, space.make({0, 3})).index() == 0);
}

TEST_CASE("counter compares two models through the section") {
  const auto space = lattice_pair();
  const auto sec = Section::subsystem_at_origin(space, 0);
  const auto m1 = space.make({5, 8});
  const auto m2 = space.make({2, 9});

  // Independent recomputation: find each drop by direct search, then chain.
  const auto drop = [&](const Model& m) {
    const auto target = sec.representative(orbit_label(m));
    for (int i = 0; i < 16; ++i) {
      if (apply(space.group().element(i), m) == target) return space.group().element(i);
    }
    FAIL("no drop found");
    return space.group().identity();
  };
  const auto expected = compose(inverse(drop(m2)), drop(m1));
  CHECK(expected.index() == 13);
  CHECK(counter(sec, m1, m2) == expected);

  // Both on the section: nothing to undo.
  CHECK(counter(sec, space.make({0, 3}), space.make({0, 9})).index() == 0);

  // Same orbit: the connector itself, whatever the section says.
  const auto g = space.group().element(6);
  const auto m3 = apply(g, m1);
  for (const auto& s : {sec, Section::subsystem_at_origin(space, 1), Section::seeded(space, 3),
                        Section::seeded(space, 99)}) {
    CHECK(counter(s, m1, m3) == g);
  }
}

TEST_CASE("counter chains across a third model") {
  const auto space = lattice_pair();
  const auto sec = Section::seeded(space, 11);
  const auto m1 = space.make({5, 8});
  const auto m2 = space.make({2, 9});
  const auto m3 = space.make({7, 1});
  CHECK(counter(sec, m1, m3) == compose(counter(sec, m2, m3), counter(sec, m1, m2)));
}

TEST_CASE("convention changes depend on the orbit") {
  const auto space = lattice_pair();
  const auto sec0 = Section::subsystem_at_origin(space, 0);
  const auto sec1 = Section::subsystem_at_origin(space, 1);
  CHECK(convention_change(sec0, sec1, orbit_label(space.make({0, 3}))).index() == 13);
  CHECK(convention_change(sec0, sec1, orbit_label(space.make({0, 5}))).index() == 11);
  CHECK(convention_change(sec0, sec0, orbit_label(space.make({0, 5}))).index() == 0);

  // The change element really carries one representative to the other.
  const auto orbit = orbit_label(space.make({4, 9}));
  const auto h = convention_change(sec0, sec1, orbit);
  CHECK(apply(h, sec0.representative(orbit)) == sec1.representative(orbit));
}

TEST_CASE("non-free tuple actions make lowering ambiguous") {
  const auto z24 = Group::cyclic(24);
  const auto dial = ConfigSpace::dial(z24, 12);
  const auto clocks = ModelSpace::power(dial, 2);
  const auto sec = Section::subsystem_at_origin(clocks, 0);
  try {
    (void)lowering_element(sec, clocks.make({3, 7}));
    FAIL("expected AmbiguityError");
  } catch (const AmbiguityError& e) {
    CHECK(e.candidates.size() == 2);  // the stabiliser step and its double
  }

  // Two distinct orbit members can share the origin coordinate when the
  // factors mix coarse and fine spaces.
  const auto mixed = ModelSpace::product({dial, ConfigSpace::regular(z24)});
  const auto sec_mixed = Section::subsystem_at_origin(mixed, 0);
  CHECK_THROWS_AS(sec_mixed.representative(orbit_label(mixed.make({0, 0}))), AmbiguityError);
}
