#include "qrf/serialize.hpp"

#include <string>
#include <vector>

namespace qrf {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

int need_int(const Json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string("key '") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ValidationError(what + " must hold only integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

// ── Groups ──────────────────────────────────────────────────────────────────

Json group_to_json(const Group& g) {
  if (g.is_cyclic()) return Json{{"kind", "cyclic"}, {"modulus", g.modulus()}};
  Json generators = Json::array();
  for (std::size_t i = 1; i < g.order(); ++i) {
    const auto& p = g.permutation_of(g.element(static_cast<int>(i)));
    Json images = Json::array();
    for (int x = 0; x < p.degree(); ++x) images.push_back(p.apply(x));
    generators.push_back(std::move(images));
  }
  const int degree = g.permutation_of(g.identity()).degree();
  return Json{{"kind", "permutation"}, {"degree", degree}, {"generators", generators}};
}

Group group_from_json(const Json& j) {
  const auto& kind = need(j, "kind");
  if (kind == "cyclic") return Group::cyclic(need_int(j, "modulus"));
  if (kind == "symmetric") return Group::symmetric(need_int(j, "degree"));
  if (kind == "permutation") {
    const int degree = need_int(j, "degree");
    std::vector<Permutation> generators;
    for (const auto& images : need(j, "generators")) {
      generators.emplace_back(int_list(images, "a generator"));
      if (generators.back().degree() != degree) {
        throw ValidationError("generator degree disagrees with 'degree'");
      }
    }
    return Group::permutation(degree, generators);
  }
  throw ValidationError("unknown group kind '" + kind.dump() + "'");
}

// ── Sections ────────────────────────────────────────────────────────────────

Json section_to_json(const Section& s) {
  const auto rule = SectionRule::of(s);
  if (rule.rule == "subsystem_at_origin") {
    return Json{{"rule", rule.rule}, {"subsystem", rule.subsystem}, {"origin", rule.origin}};
  }
  if (rule.rule == "table") {
    Json reps = Json::array();
    for (const auto& rep : rule.representatives) {
      reps.push_back(std::vector<int>(rep.configs().begin(), rep.configs().end()));
    }
    return Json{{"rule", rule.rule}, {"name", rule.table_name}, {"representatives", reps}};
  }
  return Json{{"rule", rule.rule}, {"seed", rule.seed}};
}

Section section_from_json(const ModelSpace& space, const Json& j) {
  SectionRule rule;
  rule.rule = need(j, "rule").get<std::string>();
  if (rule.rule == "subsystem_at_origin") {
    rule.subsystem = need_int(j, "subsystem");
    rule.origin = j.contains("origin") ? need_int(j, "origin") : 0;
  } else if (rule.rule == "table") {
    rule.table_name = j.contains("name") ? need(j, "name").get<std::string>() : "table";
    for (const auto& rep : need(j, "representatives")) {
      rule.representatives.push_back(space.make(int_list(rep, "a representative")));
    }
  } else if (rule.rule == "seeded") {
    rule.seed = need(j, "seed").get<std::uint64_t>();
  } else {
    throw ValidationError("unknown section rule '" + rule.rule + "'");
  }
  return rule.build(space);
}

// ── States ──────────────────────────────────────────────────────────────────

Json amplitude_to_json(const Amplitude& a) { return Json::array({a.real(), a.imag()}); }

Amplitude amplitude_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("an amplitude must be a number or an [re, im] pair");
}

Json state_to_json(const BranchState& st) {
  Json out = Json::array();
  for (const auto& b : st.branches()) {
    out.push_back(Json::array(
        {b.amplitude.real(), b.amplitude.imag(),
         std::vector<int>(b.model.configs().begin(), b.model.configs().end())}));
  }
  return out;
}

BranchState state_from_json(const ModelSpace& space, const Json& j, OrbitPolicy policy) {
  if (!j.is_array() || j.empty()) throw ValidationError("a state must be a non-empty array");
  std::vector<Branch> branches;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw ValidationError("each branch must be an [re, im, [configs]] triple");
    }
    branches.push_back(Branch{{entry[0].get<double>(), entry[1].get<double>()},
                              space.make(int_list(entry[2], "a configuration"))});
  }
  return superpose(std::move(branches), policy);
}

// ── Geometries ──────────────────────────────────────────────────────────────

Json geometry_to_json(const BranchGeometry& g) {
  Json fields = Json::object();
  for (const auto& [name, f] : g.fields) {
    Json values = Json::array();
    for (const auto& tuple : f.values) {
      values.push_back(Json::array({tuple[0], tuple[1], tuple[2], tuple[3]}));
    }
    fields[name] = Json{{"scale", f.scale}, {"values", values}};
  }
  Json observables = Json::object();
  for (const auto& [name, values] : g.observables) observables[name] = values;
  Json worldlines = Json::object();
  for (const auto& [name, line] : g.worldlines) worldlines[name] = line;
  return Json{{"points", g.point_count},
              {"observables", observables},
              {"fields", fields},
              {"worldlines", worldlines}};
}

BranchGeometry geometry_from_json(const Json& j) {
  BranchGeometry g;
  g.point_count = need_int(j, "points");
  if (j.contains("observables")) {
    for (const auto& [name, values] : j.at("observables").items()) {
      if (!values.is_array()) throw ValidationError("observable '" + name + "' must be an array");
      g.observables[name] = values.get<std::vector<double>>();
    }
  }
  if (j.contains("fields")) {
    for (const auto& [name, doc] : j.at("fields").items()) {
      ReferenceFields f;
      if (doc.contains("scale")) f.scale = need(doc, "scale").get<std::int64_t>();
      for (const auto& row : need(doc, "values")) {
        if (!row.is_array() || row.size() != 4) {
          throw ValidationError("field '" + name + "' rows must be 4-tuples");
        }
        f.values.push_back({row[0].get<std::int64_t>(), row[1].get<std::int64_t>(),
                            row[2].get<std::int64_t>(), row[3].get<std::int64_t>()});
      }
      g.fields[name] = std::move(f);
    }
  }
  if (j.contains("worldlines")) {
    for (const auto& [name, line] : j.at("worldlines").items()) {
      g.worldlines[name] = int_list(line, "worldline '" + name + "'");
    }
  }
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  return g;
}

Json superposition_to_json(const GeometrySuperposition& s) {
  Json branches = Json::array();
  for (std::size_t i = 0; i < s.branch_count(); ++i) {
    branches.push_back(Json{{"amplitude", amplitude_to_json(s.amplitude(i))},
                            {"geometry", geometry_to_json(s.geometry(i))}});
  }
  return Json{{"branches", branches}};
}

GeometrySuperposition superposition_from_json(const Json& j) {
  std::vector<std::pair<Amplitude, BranchGeometry>> branches;
  for (const auto& b : need(j, "branches")) {
    branches.emplace_back(amplitude_from_json(need(b, "amplitude")),
                          geometry_from_json(need(b, "geometry")));
  }
  try {
    return GeometrySuperposition::of(std::move(branches));
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

Json comparison_to_json(const ComparisonMap& c) {
  return Json{{"forward", c.forward}, {"provenance", c.provenance}};
}

// ── Translation scenarios ───────────────────────────────────────────────────

TranslationScenario translation_scenario_from_json(const Json& j) {
  TranslationScenario sc;
  if (j.contains("lattice_size")) sc.lattice_size = need_int(j, "lattice_size");
  if (j.contains("particle_count")) sc.particle_count = need_int(j, "particle_count");
  if (j.contains("separation")) sc.separation = need_int(j, "separation");
  if (j.contains("alpha")) sc.alpha = amplitude_from_json(j.at("alpha"));
  if (j.contains("beta")) sc.beta = amplitude_from_json(j.at("beta"));
  try {
    sc.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  return sc;
}

Json three_particle_report_to_json(const ThreeParticleReport& r) {
  Json frames = Json::array();
  for (const auto& view : r.frames) {
    Json branches = Json::array();
    for (std::size_t b = 0; b < view.branch_positions.size(); ++b) {
      branches.push_back(Json{{"branch", b},
                              {"positions", view.branch_positions[b]},
                              {"amplitude", amplitude_to_json(view.amplitudes[b])}});
    }
    frames.push_back(Json{{"frame", view.frame_subsystem},
                          {"pair", view.pair},
                          {"branches", branches},
                          {"factorizes", view.factorizes},
                          {"entropy_bits", view.pair_entropy_bits}});
  }
  return Json{{"lattice_size", r.lattice_size},
              {"alpha", amplitude_to_json(r.alpha)},
              {"beta", amplitude_to_json(r.beta)},
              {"frames", frames}};
}

}  // namespace qrf
