#pragma once

#include <json.hpp>

#include "qrf/qstate.hpp"
#include "qrf/spacetime.hpp"
#include "qrf/translation.hpp"

namespace qrf {

using Json = nlohmann::json;

// All readers throw ValidationError on malformed documents, naming the
// offending key. All writers produce documents the readers accept.

/// {"kind": "cyclic", "modulus": n} or
/// {"kind": "permutation", "degree": d, "generators": [[images], ...]} or
/// {"kind": "symmetric", "degree": d}. Writing a permutation group lists all
/// of its non-identity elements as generators; the closure is unchanged.
Json group_to_json(const Group& g);
Group group_from_json(const Json& j);

/// {"rule": "subsystem_at_origin", "subsystem": i, "origin": k} or
/// {"rule": "table", "name": ..., "representatives": [[configs], ...]} or
/// {"rule": "seeded", "seed": n}.
Json section_to_json(const Section& s);
Section section_from_json(const ModelSpace& space, const Json& j);

/// Amplitudes travel as [re, im]; a bare number is read as a real.
Json amplitude_to_json(const Amplitude& a);
Amplitude amplitude_from_json(const Json& j);

/// A state is a list of [re, im, [configs]] triples.
Json state_to_json(const BranchState& st);
BranchState state_from_json(const ModelSpace& space, const Json& j,
                            OrbitPolicy policy = OrbitPolicy::kDistinctOrbits);

/// {"points": n, "observables": {name: [reals]}, "fields": {name: {"scale":
/// s, "values": [[4 ints], ...]}}, "worldlines": {name: [points]}}.
Json geometry_to_json(const BranchGeometry& g);
BranchGeometry geometry_from_json(const Json& j);

/// {"branches": [{"amplitude": [re, im], "geometry": {...}}, ...]}.
Json superposition_to_json(const GeometrySuperposition& s);
GeometrySuperposition superposition_from_json(const Json& j);

/// {"forward": [targets], "provenance": ...}.
Json comparison_to_json(const ComparisonMap& c);

/// {"lattice_size": n, "particle_count": k, "separation": a,
///  "alpha": [re, im], "beta": [re, im]}; missing keys keep defaults.
TranslationScenario translation_scenario_from_json(const Json& j);

/// Named-field document: lattice size, amplitudes, and per-frame blocks
/// with branch positions and entropies.
Json three_particle_report_to_json(const ThreeParticleReport& r);

}  // namespace qrf
