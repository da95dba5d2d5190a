#include "qrf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrf/properties.hpp"
#include "qrf/rng.hpp"
#include "qrf/spacetime.hpp"
#include "qrf/translation.hpp"

namespace qrf {

namespace {

const char* const kKinds[] = {"translation_two_body", "translation_three_body",
                              "spacetime_superposition", "property_suite"};

// Run one check body, folding library errors into the record instead of
// unwinding the whole scenario.
template <typename Body>
void checked(RunReport& report, std::string name, Body&& body) {
  CheckRecord record;
  record.name = std::move(name);
  try {
    body(record);
  } catch (const Error& e) {
    record.status = CheckStatus::kError;
    record.detail = e.what();
  }
  report.add(std::move(record));
}

void expect(CheckRecord& record, bool ok, const std::string& why) {
  if (!ok && record.status == CheckStatus::kPass) {
    record.status = CheckStatus::kFail;
    record.detail = why;
  }
}

double weight_of(const BranchState& st) {
  double w = 0;
  for (const auto& b : st.branches()) w += std::norm(b.amplitude);
  return w;
}

double binary_entropy_bits(double w) {
  double h = 0;
  if (w > 0) h -= w * std::log2(w);
  if (w < 1) h -= (1 - w) * std::log2(1 - w);
  return h;
}

std::string padded(int value, int width) {
  std::string digits = std::to_string(value);
  while (static_cast<int>(digits.size()) < width) digits.insert(digits.begin(), '0');
  return digits;
}

// ── translation_two_body ────────────────────────────────────────────────────

RunReport run_two_body(const ScenarioConfig& config) {
  RunReport report;
  const auto sc = translation_scenario_from_json(config.parameters);
  const auto space = sc.space();
  const auto anchored = build_earth_particle(sc);

  checked(report, "state/norm-unit", [&](CheckRecord& r) {
    const double w = weight_of(anchored);
    r.measured["weight"] = w;
    r.tolerance = kNormTolerance;
    expect(r, std::abs(w - 1.0) <= kNormTolerance, "total weight drifted from one");
  });

  checked(report, "frame/anchor-definite", [&](CheckRecord& r) {
    r.measured["anchor_factorizes"] = frame_factorizes(anchored, 0);
    r.measured["partner_factorizes"] = frame_factorizes(anchored, 1);
    expect(r, frame_factorizes(anchored, 0), "the anchor varies in its own frame");
    expect(r, !frame_factorizes(anchored, 1), "the partner shows no superposition");
  });

  const auto moved = to_mass_frame(anchored, sc);

  checked(report, "mass-frame/matches-direct", [&](CheckRecord& r) {
    const auto direct = superpose({{sc.alpha, space.make({sc.separation, 0})},
                                   {sc.beta, space.make({sc.lattice_size - sc.separation, 0})}});
    double worst = 0;
    if (moved.branch_count() == direct.branch_count()) {
      for (std::size_t i = 0; i < moved.branch_count(); ++i) {
        worst = std::max(worst, std::abs(moved.branches()[i].amplitude -
                                         direct.branches()[i].amplitude));
      }
    }
    r.measured["max_amplitude_error"] = worst;
    r.tolerance = kAmplitudeTolerance;
    expect(r, approx_equal(moved, direct),
           "the mass-frame state differs from the direct construction");
  });

  checked(report, "frame/partner-definite-after-change", [&](CheckRecord& r) {
    expect(r, frame_factorizes(moved, 1), "the partner varies in its own frame");
    expect(r, !frame_factorizes(moved, 0), "the anchor shows no superposition");
  });

  checked(report, "round-trip/identity", [&](CheckRecord& r) {
    const auto a = Section::subsystem_at_origin(space, 0);
    const auto b = Section::subsystem_at_origin(space, 1);
    const auto back = qrf_change(qrf_change(anchored, a, b), b, a);
    expect(r, approx_equal(back, anchored), "changing frames there and back lost the state");
  });

  checked(report, "relative-distance/invariant", [&](CheckRecord& r) {
    for (std::size_t i = 0; i < anchored.branch_count(); ++i) {
      const int before = std::abs(relative_distance(anchored.branches()[i].model, 0, 1));
      const int after = std::abs(relative_distance(moved.branches()[i].model, 0, 1));
      r.measured["branch" + std::to_string(i) + "_distance"] = before;
      expect(r, before == after,
             "branch " + std::to_string(i) + " changed its anchor-partner distance");
    }
  });

  return report;
}

// ── translation_three_body ──────────────────────────────────────────────────

ThreeParticleReport three_body_from_params(const Json& params) {
  if (!params.contains("positions")) throw ValidationError("missing key 'positions'");
  const auto& rows = params.at("positions");
  if (!rows.is_array() || rows.size() != 2) {
    throw ValidationError("'positions' must hold two branches");
  }
  std::array<std::array<int, 3>, 2> positions{};
  for (std::size_t b = 0; b < 2; ++b) {
    if (!rows[b].is_array() || rows[b].size() != 3) {
      throw ValidationError("each 'positions' row must list three sites");
    }
    for (std::size_t i = 0; i < 3; ++i) positions[b][i] = rows[b][i].get<int>();
  }
  const int n = params.contains("lattice_size") ? params.at("lattice_size").get<int>() : 16;
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  const Amplitude alpha =
      params.contains("alpha") ? amplitude_from_json(params.at("alpha")) : Amplitude{inv_root2, 0};
  const Amplitude beta =
      params.contains("beta") ? amplitude_from_json(params.at("beta")) : Amplitude{inv_root2, 0};
  try {
    return three_particle_report(n, positions, alpha, beta);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

ScenarioOutcome run_three_body(const ScenarioConfig& config) {
  ScenarioOutcome outcome;
  auto& report = outcome.report;
  const auto rep = three_body_from_params(config.parameters);
  outcome.artifact = three_particle_report_to_json(rep);

  const double wa = std::norm(rep.alpha);
  const double w = wa / (wa + std::norm(rep.beta));
  const double oracle = binary_entropy_bits(w);

  checked(report, "entropy/frame0-zero", [&](CheckRecord& r) {
    r.tolerance = kNormTolerance;
    for (int k = 0; k < 2; ++k) {
      const double bits = rep.frames[0].pair_entropy_bits[static_cast<std::size_t>(k)];
      r.measured["particle" + std::to_string(rep.frames[0].pair[static_cast<std::size_t>(k)]) +
                 "_bits"] = bits;
      expect(r, bits <= kNormTolerance, "a pair member is entangled in the first frame");
    }
  });

  checked(report, "entropy/frame1-matches-oracle", [&](CheckRecord& r) {
    r.tolerance = kNormTolerance;
    r.measured["oracle_bits"] = oracle;
    for (int k = 0; k < 2; ++k) {
      const double bits = rep.frames[1].pair_entropy_bits[static_cast<std::size_t>(k)];
      r.measured["particle" + std::to_string(rep.frames[1].pair[static_cast<std::size_t>(k)]) +
                 "_bits"] = bits;
      expect(r, std::abs(bits - oracle) <= kNormTolerance,
             "an entropy differs from the closed-form value");
    }
  });

  checked(report, "frame/own-subsystem-definite", [&](CheckRecord& r) {
    for (const auto& view : rep.frames) {
      expect(r, view.factorizes[static_cast<std::size_t>(view.frame_subsystem)],
             "subsystem " + std::to_string(view.frame_subsystem) + " varies in its own frame");
    }
  });

  checked(report, "state/norm-unit", [&](CheckRecord& r) {
    r.tolerance = kNormTolerance;
    for (std::size_t f = 0; f < rep.frames.size(); ++f) {
      double w_total = 0;
      for (const auto& a : rep.frames[f].amplitudes) w_total += std::norm(a);
      r.measured["frame" + std::to_string(f) + "_weight"] = w_total;
      expect(r, std::abs(w_total - 1.0) <= kNormTolerance, "total weight drifted from one");
    }
  });

  return outcome;
}

// ── spacetime_superposition ─────────────────────────────────────────────────

QuantumDiffeo seeded_diffeo(std::uint64_t seed, int points, std::size_t branches) {
  QuantumDiffeo d;
  SplitMix64 r(seed);
  for (std::size_t b = 0; b < branches; ++b) {
    std::vector<int> images(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) images[static_cast<std::size_t>(i)] = i;
    for (int i = points - 1; i > 0; --i) {
      std::swap(images[static_cast<std::size_t>(i)],
                images[static_cast<std::size_t>(r.uniform(0, i))]);
    }
    d.per_branch.emplace_back(std::move(images));
  }
  return d;
}

RunReport run_spacetime(const ScenarioConfig& config) {
  RunReport report;
  const auto& params = config.parameters;
  if (!params.contains("superposition")) throw ValidationError("missing key 'superposition'");
  if (!params.contains("match_field") || !params.at("match_field").is_string()) {
    throw ValidationError("missing key 'match_field'");
  }
  const auto s = superposition_from_json(params.at("superposition"));
  const std::string match = params.at("match_field").get<std::string>();
  const std::string alt =
      params.contains("alt_field") ? params.at("alt_field").get<std::string>() : "";
  const int diffeo_cases =
      params.contains("diffeo_cases") ? params.at("diffeo_cases").get<int>() : 50;
  if (diffeo_cases < 1) throw ValidationError("'diffeo_cases' must be positive");

  const auto& base = s.geometry(0);
  const int points = s.point_count();
  const int width = static_cast<int>(std::to_string(points - 1).size());

  checked(report, "state/norm-unit", [&](CheckRecord& r) {
    double w = 0;
    for (std::size_t i = 0; i < s.branch_count(); ++i) w += std::norm(s.amplitude(i));
    r.measured["weight"] = w;
    r.tolerance = kNormTolerance;
    expect(r, std::abs(w - 1.0) <= kNormTolerance, "total weight drifted from one");
  });

  for (std::size_t i = 1; i < s.branch_count(); ++i) {
    const auto& other = s.geometry(i);
    const std::string prefix = "b0-b" + std::to_string(i) + "/";

    std::optional<ComparisonMap> match_map;
    checked(report, prefix + "comparison-built", [&](CheckRecord& r) {
      match_map = build_comparison(base, other, match);
      r.measured["points"] = points;
      r.measured["identity"] = match_map->is_identity();
      r.detail = match_map->provenance;
    });
    if (!match_map) continue;

    std::optional<ComparisonMap> alt_map;
    if (!alt.empty()) {
      checked(report, prefix + "alt-comparison-built", [&](CheckRecord& r) {
        alt_map = build_comparison(base, other, alt);
        r.measured["identity"] = alt_map->is_identity();
        r.detail = alt_map->provenance;
      });
    }

    checked(report, prefix + "transform-coherence", [&](CheckRecord& r) {
      int failures = 0;
      for (int k = 0; k < diffeo_cases; ++k) {
        const auto d = seeded_diffeo(case_seed(config.seed, "scenario-diffeo", k), points, 2);
        const auto transformed = transform_comparison(*match_map, d);
        const auto rebuilt = build_comparison(relabel(base, d.per_branch[0]),
                                              relabel(other, d.per_branch[1]), match);
        if (transformed.forward != rebuilt.forward) ++failures;
      }
      r.measured["cases"] = diffeo_cases;
      r.measured["failures"] = failures;
      expect(r, failures == 0, "a conjugated comparison map differed from the rebuilt one");
    });

    for (int p = 0; p < points; ++p) {
      checked(report, prefix + "point_" + padded(p, width), [&](CheckRecord& r) {
        const int q = match_map->apply(p);
        r.measured["point"] = p;
        r.measured["partner"] = q;
        r.measured["localised_" + match] = is_localised(p, q, *match_map);
        if (alt_map) {
          r.measured["alt_partner"] = alt_map->apply(p);
          r.measured["localised_" + alt] = is_localised(p, q, *alt_map);
        }
        for (const auto& [name, values] : base.observables) {
          r.measured["first_" + name] = values[static_cast<std::size_t>(p)];
          r.measured["second_" + name] =
              other.observable(name)[static_cast<std::size_t>(q)];
          r.measured["definite_" + name] =
              definite_at(name, p, q, *match_map, base, other);
          if (alt_map) {
            r.measured["definite_" + name + "_alt"] = definite_at(
                name, p, alt_map->apply(p), *alt_map, base, other);
          }
        }
      });
    }

    if (params.contains("events")) {
      checked(report, prefix + "events", [&](CheckRecord& r) {
        const auto& ev = params.at("events");
        const auto events = find_events(base, other, ev.at("first").get<std::string>(),
                                        ev.at("second").get<std::string>());
        r.measured["count"] = static_cast<double>(events.size());
        std::ostringstream out;
        for (std::size_t k = 0; k < events.size(); ++k) {
          const auto& e = events[k];
          r.measured["event" + std::to_string(k) + "_localised_" + match] =
              is_localised(e.in_first, e.in_second, *match_map);
          if (alt_map) {
            r.measured["event" + std::to_string(k) + "_localised_" + alt] =
                is_localised(e.in_first, e.in_second, *alt_map);
          }
          out << (k ? "; " : "") << "(" << e.in_first << ", " << e.in_second << ")";
        }
        r.detail = out.str();
      });
    }
  }

  checked(report, "alignment/identity", [&](CheckRecord& r) {
    const auto aligned = qrf_change_to(s, match, base.field(match));
    r.measured["branches"] = static_cast<double>(aligned.superposition.branch_count());
    for (const auto& c : aligned.comparisons) {
      expect(r, c.is_identity(), "a post-alignment comparison map is not the identity");
    }
    for (std::size_t i = 0; i < aligned.superposition.branch_count(); ++i) {
      expect(r, aligned.superposition.geometry(i).field(match).values ==
                    base.field(match).values,
             "branch " + std::to_string(i) + " missed the target configuration");
    }
  });

  return report;
}

}  // namespace

ScenarioConfig parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("a scenario document must be an object");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer()) {
    throw ValidationError("missing key 'schema_version'");
  }
  if (doc.at("schema_version").get<int>() != kScenarioSchemaVersion) {
    throw ValidationError("unsupported schema_version " + doc.at("schema_version").dump());
  }
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ValidationError("missing key 'kind'");
  }
  ScenarioConfig config;
  config.kind = doc.at("kind").get<std::string>();
  if (std::find(std::begin(kKinds), std::end(kKinds), config.kind) == std::end(kKinds)) {
    throw ValidationError("unknown scenario kind '" + config.kind + "'");
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) throw ValidationError("'seed' must be an integer");
    config.seed = doc.at("seed").get<std::uint64_t>();
  }
  config.parameters = doc.contains("parameters") ? doc.at("parameters") : Json::object();
  if (!config.parameters.is_object()) throw ValidationError("'parameters' must be an object");

  // Validate the kind-specific schema up front so a bad document never
  // reaches the run stage.
  if (config.kind == "translation_two_body") {
    (void)translation_scenario_from_json(config.parameters);
  } else if (config.kind == "translation_three_body") {
    (void)three_body_from_params(config.parameters);
  } else if (config.kind == "spacetime_superposition") {
    if (!config.parameters.contains("superposition")) {
      throw ValidationError("missing key 'superposition'");
    }
    (void)superposition_from_json(config.parameters.at("superposition"));
    if (!config.parameters.contains("match_field") ||
        !config.parameters.at("match_field").is_string()) {
      throw ValidationError("missing key 'match_field'");
    }
    if (config.parameters.contains("events")) {
      const auto& ev = config.parameters.at("events");
      if (!ev.is_object() || !ev.contains("first") || !ev.at("first").is_string() ||
          !ev.contains("second") || !ev.at("second").is_string()) {
        throw ValidationError("'events' must name a 'first' and 'second' worldline");
      }
    }
  } else {  // property_suite
    if (!config.parameters.contains("cases") ||
        !config.parameters.at("cases").is_number_integer() ||
        config.parameters.at("cases").get<int>() < 1) {
      throw ValidationError("'cases' must be a positive integer");
    }
  }
  return config;
}

ScenarioOutcome run_scenario_full(const ScenarioConfig& config) {
  ScenarioOutcome outcome;
  if (config.kind == "translation_two_body") {
    outcome.report = run_two_body(config);
  } else if (config.kind == "translation_three_body") {
    outcome = run_three_body(config);
  } else if (config.kind == "spacetime_superposition") {
    outcome.report = run_spacetime(config);
  } else if (config.kind == "property_suite") {
    outcome.report = verify_suite(config.seed, config.parameters.at("cases").get<int>());
  } else {
    throw ValidationError("unknown scenario kind '" + config.kind + "'");
  }
  outcome.report.scenario = config.kind;
  outcome.report.seed = config.seed;
  return outcome;
}

}  // namespace qrf
