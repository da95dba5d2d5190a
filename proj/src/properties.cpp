#include "qrf/properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qrf/rng.hpp"
#include "qrf/spacetime.hpp"
#include "qrf/translation.hpp"

namespace qrf {

namespace {

using Witness = std::optional<std::string>;

int pick(SplitMix64& r, int lo, int hi) { return static_cast<int>(r.uniform(lo, hi)); }

std::string ints(std::span<const int> xs) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  out << ")";
  return out.str();
}

std::vector<int> random_images(SplitMix64& r, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(v[i], v[pick(r, 0, i)]);
  return v;
}

Permutation random_permutation(SplitMix64& r, int n) { return Permutation(random_images(r, n)); }

Group random_any_group(SplitMix64& r) {
  switch (pick(r, 0, 3)) {
    case 0:
    case 1:
      return Group::cyclic(pick(r, 2, 64));
    case 2:
      return Group::symmetric(pick(r, 2, 4));
    default: {
      const int degree = pick(r, 3, 6);
      std::vector<Permutation> generators;
      const int count = pick(r, 1, 2);
      for (int i = 0; i < count; ++i) generators.push_back(random_permutation(r, degree));
      return Group::permutation(degree, generators);
    }
  }
}

ConfigSpace random_space(SplitMix64& r, const Group& g) {
  if (g.is_cyclic()) {
    switch (pick(r, 0, 2)) {
      case 0:
        return ConfigSpace::regular(g);
      case 1: {
        std::vector<int> divisors;
        for (int d = 1; d <= g.modulus(); ++d) {
          if (g.modulus() % d == 0) divisors.push_back(d);
        }
        return ConfigSpace::dial(g, divisors[static_cast<std::size_t>(
                                        pick(r, 0, static_cast<int>(divisors.size()) - 1))]);
      }
      default:
        return ConfigSpace::trivial(g, pick(r, 1, 5));
    }
  }
  switch (pick(r, 0, 2)) {
    case 0:
      return ConfigSpace::regular(g);
    case 1:
      return ConfigSpace::natural(g);
    default:
      return ConfigSpace::trivial(g, pick(r, 1, 5));
  }
}

GroupElement random_element(SplitMix64& r, const Group& g) {
  return g.element(pick(r, 0, static_cast<int>(g.order()) - 1));
}

// Lattice-shift model spaces: Z_n moving 1..4 dials of n points each.
ModelSpace random_lattice_space(SplitMix64& r, int min_subsystems = 1) {
  const int n = pick(r, 2, 64);
  const int subsystems = pick(r, min_subsystems, 4);
  return ModelSpace::power(ConfigSpace::dial(Group::cyclic(n), n), subsystems);
}

Model random_model(SplitMix64& r, const ModelSpace& space) {
  std::vector<int> cfg(static_cast<std::size_t>(space.subsystem_count()));
  for (int i = 0; i < space.subsystem_count(); ++i) {
    cfg[static_cast<std::size_t>(i)] = pick(r, 0, space.factor(i).point_count() - 1);
  }
  return space.make(std::move(cfg));
}

Section random_section(SplitMix64& r, const ModelSpace& space) {
  if (r.uniform(0, 1) == 0) {
    return Section::subsystem_at_origin(space, pick(r, 0, space.subsystem_count() - 1),
                                        pick(r, 0, space.factor(0).point_count() - 1));
  }
  return Section::seeded(space, r.next());
}

Amplitude random_amplitude(SplitMix64& r) {
  const double magnitude = 0.3 + 0.7 * r.real01();
  const double phase = 2.0 * 3.14159265358979323846 * r.real01();
  return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

// Up to `want` branches on distinct orbits; small spaces may offer fewer.
BranchState random_state(SplitMix64& r, const ModelSpace& space, const Section* on_section,
                         int want) {
  std::vector<Branch> branches;
  std::set<std::vector<int>> orbits_taken;
  for (int attempts = 0; static_cast<int>(branches.size()) < want && attempts < 20 * want;
       ++attempts) {
    Model m = random_model(r, space);
    const auto label = orbit_label(m);
    std::vector<int> key(label.canonical().configs().begin(),
                         label.canonical().configs().end());
    if (!orbits_taken.insert(std::move(key)).second) continue;
    if (on_section) m = on_section->representative(label);
    branches.push_back(Branch{random_amplitude(r), std::move(m)});
  }
  return superpose(std::move(branches));
}

double total_weight(const BranchState& st) {
  double w = 0;
  for (const auto& b : st.branches()) w += std::norm(b.amplitude);
  return w;
}

BranchSelector random_selector(SplitMix64& r, const BranchState& st,
                               std::vector<int>* chosen = nullptr) {
  auto table = std::make_shared<std::map<std::vector<int>, GroupElement>>();
  for (const auto& label : st.orbits()) {
    std::vector<int> key(label.canonical().configs().begin(),
                         label.canonical().configs().end());
    const auto g = random_element(r, st.space().group());
    if (chosen) chosen->push_back(g.index());
    table->emplace(std::move(key), g);
  }
  return [table](const OrbitLabel& label) -> std::optional<GroupElement> {
    std::vector<int> key(label.canonical().configs().begin(),
                         label.canonical().configs().end());
    const auto it = table->find(key);
    if (it == table->end()) return std::nullopt;
    return it->second;
  };
}

// ── Geometry generators ─────────────────────────────────────────────────────

std::vector<FieldTuple> random_value_set(SplitMix64& r, int points) {
  const std::int64_t t1 = r.uniform(-4, 4);
  const std::int64_t t2 = r.uniform(-4, 4);
  const std::int64_t t3 = r.uniform(-4, 4);
  std::vector<FieldTuple> values;
  values.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) values.push_back({i, t1, t2, t3});
  return values;
}

BranchGeometry random_geometry(SplitMix64& r, const std::vector<FieldTuple>& chi,
                               const std::vector<FieldTuple>& chi_tilde) {
  const int points = static_cast<int>(chi.size());
  BranchGeometry g;
  g.point_count = points;
  const auto lay_chi = random_images(r, points);
  const auto lay_tilde = random_images(r, points);
  ReferenceFields f_chi, f_tilde;
  f_chi.values.resize(chi.size());
  f_tilde.values.resize(chi.size());
  for (int p = 0; p < points; ++p) {
    f_chi.values[static_cast<std::size_t>(p)] = chi[static_cast<std::size_t>(lay_chi[p])];
    f_tilde.values[static_cast<std::size_t>(p)] =
        chi_tilde[static_cast<std::size_t>(lay_tilde[p])];
  }
  g.fields["chi"] = std::move(f_chi);
  g.fields["chi_tilde"] = std::move(f_tilde);
  std::vector<double> obs(static_cast<std::size_t>(points));
  for (auto& v : obs) v = static_cast<double>(r.uniform(0, 2));
  g.observables["f"] = std::move(obs);
  return g;
}

GeometrySuperposition random_superposition(SplitMix64& r, int points, int branches) {
  const auto chi = random_value_set(r, points);
  auto chi_tilde = random_value_set(r, points);
  for (auto& t : chi_tilde) t[0] += 100;  // keep the two field sets distinguishable
  std::vector<std::pair<Amplitude, BranchGeometry>> parts;
  for (int i = 0; i < branches; ++i) {
    parts.emplace_back(random_amplitude(r), random_geometry(r, chi, chi_tilde));
  }
  return GeometrySuperposition::of(std::move(parts));
}

QuantumDiffeo random_diffeo(SplitMix64& r, int points, std::size_t branches) {
  QuantumDiffeo d;
  for (std::size_t i = 0; i < branches; ++i) d.per_branch.push_back(random_permutation(r, points));
  return d;
}

// ── Group laws ──────────────────────────────────────────────────────────────

Witness group_associativity(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto g = random_any_group(r);
  for (int t = 0; t < 8; ++t) {
    const auto a = random_element(r, g);
    const auto b = random_element(r, g);
    const auto c = random_element(r, g);
    if (compose(compose(a, b), c) != compose(a, compose(b, c))) {
      std::ostringstream out;
      out << g.description() << ": (a b) c != a (b c) at indices " << a.index() << ", "
          << b.index() << ", " << c.index();
      return out.str();
    }
  }
  return std::nullopt;
}

Witness act_inverse_roundtrip(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto g = random_any_group(r);
  const auto space = random_space(r, g);
  for (int t = 0; t < 8; ++t) {
    const auto a = random_element(r, g);
    const int x = pick(r, 0, space.point_count() - 1);
    if (space.act(inverse(a), space.act(a, x)) != x) {
      std::ostringstream out;
      out << space.description() << ": inverse(g) g x != x for g index " << a.index() << ", x "
          << x;
      return out.str();
    }
  }
  return std::nullopt;
}

Witness stabiliser_conjugation(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto g = random_any_group(r);
  if (g.order() > 256) return std::nullopt;  // keep the exhaustive scan cheap
  const auto space = random_space(r, g);
  const auto a = random_element(r, g);
  const int x = pick(r, 0, space.point_count() - 1);

  std::set<int> expected;
  for (const auto& h : space.stabiliser(x)) {
    expected.insert(compose(a, compose(h, inverse(a))).index());
  }
  std::set<int> actual;
  for (const auto& h : space.stabiliser(space.act(a, x))) actual.insert(h.index());
  if (expected != actual) {
    std::ostringstream out;
    out << space.description() << ": stabiliser of g x is not the conjugated stabiliser of x "
        << "for g index " << a.index() << ", x " << x;
    return out.str();
  }
  return std::nullopt;
}

Witness regular_unique_transporter(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto g = r.uniform(0, 1) ? Group::cyclic(pick(r, 2, 48)) : Group::symmetric(pick(r, 2, 4));
  const auto space = ConfigSpace::regular(g);
  if (!space.is_regular()) return "regular space does not report itself regular";
  const int x = pick(r, 0, space.point_count() - 1);
  const int y = pick(r, 0, space.point_count() - 1);
  int transporters = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (space.act(g.element(static_cast<int>(i)), x) == y) ++transporters;
  }
  if (transporters != 1) {
    std::ostringstream out;
    out << space.description() << ": " << transporters << " transporters from " << x << " to "
        << y;
    return out.str();
  }
  return std::nullopt;
}

// ── Section laws ────────────────────────────────────────────────────────────

Witness counter_self_identity(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto s = random_section(r, space);
  const auto m = random_model(r, space);
  if (counter(s, m, m) != space.group().identity()) {
    return s.name() + ": counter(m, m) != identity at m = " + ints(m.configs());
  }
  return std::nullopt;
}

Witness counter_on_section_identity(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto s = random_section(r, space);
  const auto m1 = s.representative(orbit_label(random_model(r, space)));
  const auto m2 = s.representative(orbit_label(random_model(r, space)));
  if (counter(s, m1, m2) != space.group().identity()) {
    return s.name() + ": counter != identity on the section pair " + ints(m1.configs()) + ", " +
           ints(m2.configs());
  }
  return std::nullopt;
}

Witness counter_matches_action(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto m = random_model(r, space);
  const auto g = random_element(r, space.group());
  const auto moved = apply(g, m);
  const int sections = pick(r, 1, 4);
  for (int i = 0; i < sections; ++i) {
    const auto s = random_section(r, space);
    const auto got = counter(s, m, moved);
    if (got != g) {
      std::ostringstream out;
      out << s.name() << ": counter(m, g m) = " << got.index() << " instead of " << g.index()
          << " at m = " << ints(m.configs());
      return out.str();
    }
  }
  return std::nullopt;
}

Witness counter_cocycle(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto s = random_section(r, space);
  const auto m1 = random_model(r, space);
  const auto m2 = random_model(r, space);
  const auto m3 = random_model(r, space);
  const auto direct = counter(s, m1, m3);
  const auto chained = compose(counter(s, m2, m3), counter(s, m1, m2));
  if (direct != chained) {
    return s.name() + ": counter chain through " + ints(m2.configs()) +
           " disagrees with the direct counter from " + ints(m1.configs()) + " to " +
           ints(m3.configs());
  }
  return std::nullopt;
}

Witness convention_change_conjugation(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto s = random_section(r, space);
  const auto s_tilde = random_section(r, space);
  const auto m1 = random_model(r, space);
  const auto m2 = random_model(r, space);

  const auto h1 = convention_change(s, s_tilde, orbit_label(m1));
  const auto h2 = convention_change(s, s_tilde, orbit_label(m2));
  const auto rebuilt = compose(
      inverse(lowering_element(s, m2)),
      compose(inverse(h2), compose(h1, lowering_element(s, m1))));
  if (counter(s_tilde, m1, m2) != rebuilt) {
    return s.name() + " -> " + s_tilde.name() + ": conjugated counter disagrees at " +
           ints(m1.configs()) + ", " + ints(m2.configs());
  }
  return std::nullopt;
}

Witness orbit_label_constant(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto m = random_model(r, space);
  const auto g = random_element(r, space.group());
  if (orbit_label(apply(g, m)) != orbit_label(m)) {
    return "orbit label moved under element " + std::to_string(g.index()) + " at m = " +
           ints(m.configs());
  }
  return std::nullopt;
}

// ── State laws ──────────────────────────────────────────────────────────────

Witness state_norm_preserved(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto a = random_section(r, space);
  const auto b = random_section(r, space);
  const auto st = random_state(r, space, &a, pick(r, 1, 3));

  const auto shifted = controlled_transform(st, random_selector(r, st));
  if (std::abs(total_weight(shifted) - 1.0) > kNormTolerance) {
    return "controlled transform drifted the weight to " + std::to_string(total_weight(shifted));
  }
  const auto changed = qrf_change(st, a, b);
  if (std::abs(total_weight(changed) - 1.0) > kNormTolerance) {
    return a.name() + " -> " + b.name() + " drifted the weight to " +
           std::to_string(total_weight(changed));
  }
  return std::nullopt;
}

Witness controlled_transform_keeps_orbits(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto st = random_state(r, space, nullptr, pick(r, 1, 3));
  const auto shifted = controlled_transform(st, random_selector(r, st));
  if (shifted.branch_count() != st.branch_count()) return "branch count changed";
  for (std::size_t i = 0; i < st.branch_count(); ++i) {
    if (st.orbits()[i] != shifted.orbits()[i]) {
      return "branch " + std::to_string(i) + " left its orbit";
    }
  }
  return std::nullopt;
}

Witness qrf_change_invertible(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto a = random_section(r, space);
  const auto b = random_section(r, space);
  const auto st = random_state(r, space, &a, pick(r, 1, 3));
  const auto there_and_back = qrf_change(qrf_change(st, a, b), b, a);
  if (!approx_equal(there_and_back, st)) {
    return a.name() + " -> " + b.name() + " -> back lost the state";
  }
  return std::nullopt;
}

Witness invariant_observables_stable(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r, 2);
  const auto a = random_section(r, space);
  const auto b = random_section(r, space);
  const auto st = random_state(r, space, &a, pick(r, 1, 3));
  const int i = pick(r, 0, space.subsystem_count() - 1);
  int j = pick(r, 0, space.subsystem_count() - 1);
  if (i == j) j = (j + 1) % space.subsystem_count();

  const auto shifted = controlled_transform(st, random_selector(r, st));
  const auto changed = qrf_change(st, a, b);
  for (std::size_t k = 0; k < st.branch_count(); ++k) {
    const int before = relative_distance(st.branches()[k].model, i, j);
    if (relative_distance(shifted.branches()[k].model, i, j) != before) {
      return "relative distance moved under a controlled transform in branch " +
             std::to_string(k);
    }
    if (relative_distance(changed.branches()[k].model, i, j) != before) {
      return "relative distance moved under " + a.name() + " -> " + b.name() + " in branch " +
             std::to_string(k);
    }
  }
  return std::nullopt;
}

Witness target_frame_factorizes(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto space = random_lattice_space(r);
  const auto a = random_section(r, space);
  const int subsystem = pick(r, 0, space.subsystem_count() - 1);
  const int origin = pick(r, 0, space.factor(subsystem).point_count() - 1);
  const auto b = Section::subsystem_at_origin(space, subsystem, origin);
  const auto st = random_state(r, space, &a, pick(r, 1, 3));
  const auto changed = qrf_change(st, a, b);
  if (!frame_factorizes(changed, subsystem)) {
    return a.name() + " -> " + b.name() + ": target subsystem still varies across branches";
  }
  for (const auto& branch : changed.branches()) {
    if (branch.model.config(subsystem) != origin) {
      return b.name() + ": target subsystem off its origin at " + ints(branch.model.configs());
    }
  }
  return std::nullopt;
}

// ── Translation laws ────────────────────────────────────────────────────────

TranslationScenario random_two_body(SplitMix64& r) {
  TranslationScenario sc;
  sc.lattice_size = pick(r, 5, 64);
  sc.separation = pick(r, 1, (sc.lattice_size - 1) / 2);
  const double split = 0.1 + 0.8 * r.real01();
  const double phase = 2.0 * 3.14159265358979323846 * r.real01();
  sc.alpha = {std::sqrt(split) * std::cos(phase), std::sqrt(split) * std::sin(phase)};
  sc.beta = {std::sqrt(1.0 - split), 0.0};
  return sc;
}

Witness mass_frame_matches_direct(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto sc = random_two_body(r);
  const auto space = sc.space();
  const auto moved = to_mass_frame(build_earth_particle(sc), sc);
  const auto direct = superpose({{sc.alpha, space.make({sc.separation, 0})},
                                 {sc.beta, space.make({sc.lattice_size - sc.separation, 0})}});
  if (!approx_equal(moved, direct)) {
    std::ostringstream out;
    out << "n=" << sc.lattice_size << " a=" << sc.separation
        << ": mass-frame state differs from the direct construction";
    return out.str();
  }
  return std::nullopt;
}

Witness relative_distance_invariant(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto sc = random_two_body(r);
  const auto st = build_earth_particle(sc);
  const auto moved = to_mass_frame(st, sc);
  for (std::size_t k = 0; k < st.branch_count(); ++k) {
    const int before = std::abs(relative_distance(st.branches()[k].model, 0, 1));
    const int after = std::abs(relative_distance(moved.branches()[k].model, 0, 1));
    if (before != after) {
      std::ostringstream out;
      out << "n=" << sc.lattice_size << " a=" << sc.separation << " branch " << k << ": |d| "
          << before << " -> " << after;
      return out.str();
    }
  }
  return std::nullopt;
}

Witness frame_dependence_flips(std::uint64_t cs) {
  SplitMix64 r(cs);
  const auto sc = random_two_body(r);
  const auto anchored = build_earth_particle(sc);
  const auto moved = to_mass_frame(anchored, sc);
  if (!frame_factorizes(anchored, 0)) return "anchor varies in its own frame";
  if (frame_factorizes(anchored, 1)) return "partner already definite in the anchor frame";
  if (!frame_factorizes(moved, 1)) return "partner varies in its own frame";
  if (frame_factorizes(moved, 0)) return "anchor definite in the partner frame";
  return std::nullopt;
}

// ── Geometry laws ───────────────────────────────────────────────────────────

Witness comparison_transform_coherence(std::uint64_t cs) {
  SplitMix64 r(cs);
  const int points = pick(r, 2, 64);
  const auto s = random_superposition(r, points, 2);
  const auto c = build_comparison(s.geometry(0), s.geometry(1), "chi");
  const auto d = random_diffeo(r, points, 2);

  const auto transformed = transform_comparison(c, d);
  const auto rebuilt = build_comparison(relabel(s.geometry(0), d.per_branch[0]),
                                        relabel(s.geometry(1), d.per_branch[1]), "chi");
  if (transformed.forward != rebuilt.forward) {
    return "on " + std::to_string(points) +
           " points the conjugated map differs from the rebuilt map";
  }
  return std::nullopt;
}

Witness localisation_diffeo_invariant(std::uint64_t cs) {
  SplitMix64 r(cs);
  const int points = pick(r, 2, 16);
  const auto s = random_superposition(r, points, 2);
  const auto c = build_comparison(s.geometry(0), s.geometry(1), "chi");
  const auto d = random_diffeo(r, points, 2);
  const auto transformed = transform_comparison(c, d);
  for (int p = 0; p < points; ++p) {
    for (int q = 0; q < points; ++q) {
      const bool before = is_localised(p, q, c);
      const bool after =
          is_localised(d.per_branch[0].apply(p), d.per_branch[1].apply(q), transformed);
      if (before != after) {
        std::ostringstream out;
        out << "pair (" << p << ", " << q << ") flipped from " << before << " to " << after;
        return out.str();
      }
    }
  }
  return std::nullopt;
}

Witness alignment_identity(std::uint64_t cs) {
  SplitMix64 r(cs);
  const int points = pick(r, 2, 24);
  const auto s = random_superposition(r, points, pick(r, 2, 4));
  ReferenceFields target = s.geometry(0).field("chi");
  const auto shuffle = random_images(r, points);
  ReferenceFields shuffled;
  shuffled.scale = target.scale;
  shuffled.values.resize(target.values.size());
  for (int p = 0; p < points; ++p) {
    shuffled.values[static_cast<std::size_t>(shuffle[p])] =
        target.values[static_cast<std::size_t>(p)];
  }

  const auto aligned = qrf_change_to(s, "chi", shuffled);
  for (const auto& c : aligned.comparisons) {
    if (!c.is_identity()) return "a post-alignment comparison map is not the identity";
  }
  for (std::size_t i = 0; i < aligned.superposition.branch_count(); ++i) {
    if (aligned.superposition.geometry(i).field("chi").values != shuffled.values) {
      return "branch " + std::to_string(i) + " missed the target configuration";
    }
    if (std::abs(aligned.superposition.amplitude(i) - s.amplitude(i)) > kAmplitudeTolerance) {
      return "branch " + std::to_string(i) + " amplitude moved during alignment";
    }
  }
  return std::nullopt;
}

Witness definiteness_diffeo_invariant(std::uint64_t cs) {
  SplitMix64 r(cs);
  const int points = pick(r, 2, 24);
  const auto s = random_superposition(r, points, 2);
  const auto c = build_comparison(s.geometry(0), s.geometry(1), "chi");
  const auto d = random_diffeo(r, points, 2);
  const auto moved_a = relabel(s.geometry(0), d.per_branch[0]);
  const auto moved_b = relabel(s.geometry(1), d.per_branch[1]);
  const auto transformed = transform_comparison(c, d);
  for (int p = 0; p < points; ++p) {
    const int q = c.apply(p);
    const bool before = definite_at("f", p, q, c, s.geometry(0), s.geometry(1));
    const bool after =
        definite_at("f", d.per_branch[0].apply(p), d.per_branch[1].apply(q), transformed,
                    moved_a, moved_b);
    if (before != after) {
      std::ostringstream out;
      out << "definiteness at pair (" << p << ", " << q << ") flipped from " << before << " to "
          << after;
      return out.str();
    }
  }
  return std::nullopt;
}

Witness relabel_preserves_values(std::uint64_t cs) {
  SplitMix64 r(cs);
  const int points = pick(r, 2, 24);
  const auto chi = random_value_set(r, points);
  const auto chi_tilde = random_value_set(r, points);
  auto g = random_geometry(r, chi, chi_tilde);
  std::vector<int> line;
  const int visits = pick(r, 0, points);
  for (int i = 0; i < visits; ++i) line.push_back(pick(r, 0, points - 1));
  g.worldlines["w"] = line;

  const auto d = random_permutation(r, points);
  const auto moved = relabel(g, d);
  for (int p = 0; p < points; ++p) {
    if (moved.observable("f")[static_cast<std::size_t>(d.apply(p))] !=
        g.observable("f")[static_cast<std::size_t>(p)]) {
      return "observable value changed while moving point " + std::to_string(p);
    }
    if (moved.field("chi").values[static_cast<std::size_t>(d.apply(p))] !=
        g.field("chi").values[static_cast<std::size_t>(p)]) {
      return "field tuple changed while moving point " + std::to_string(p);
    }
  }
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (moved.worldline("w")[k] != d.apply(line[k])) {
      return "worldline visit " + std::to_string(k) + " not dragged to its image";
    }
  }
  return std::nullopt;
}

}  // namespace

const std::vector<Property>& all_properties() {
  static const std::vector<Property> registry = {
      {"group/associativity", group_associativity},
      {"group/act-inverse-roundtrip", act_inverse_roundtrip},
      {"group/stabiliser-conjugation", stabiliser_conjugation},
      {"group/regular-unique-transporter", regular_unique_transporter},
      {"section/counter-self-identity", counter_self_identity},
      {"section/counter-on-section-identity", counter_on_section_identity},
      {"section/counter-matches-action", counter_matches_action},
      {"section/counter-cocycle", counter_cocycle},
      {"section/convention-change-conjugation", convention_change_conjugation},
      {"section/orbit-label-constant", orbit_label_constant},
      {"state/norm-preserved", state_norm_preserved},
      {"state/controlled-transform-keeps-orbits", controlled_transform_keeps_orbits},
      {"state/qrf-change-invertible", qrf_change_invertible},
      {"state/invariant-observables-stable", invariant_observables_stable},
      {"state/target-frame-factorizes", target_frame_factorizes},
      {"translation/mass-frame-matches-direct", mass_frame_matches_direct},
      {"translation/relative-distance-invariant", relative_distance_invariant},
      {"translation/frame-dependence-flips", frame_dependence_flips},
      {"spacetime/comparison-transform-coherence", comparison_transform_coherence},
      {"spacetime/localisation-diffeo-invariant", localisation_diffeo_invariant},
      {"spacetime/alignment-identity", alignment_identity},
      {"spacetime/definiteness-diffeo-invariant", definiteness_diffeo_invariant},
      {"spacetime/relabel-preserves-values", relabel_preserves_values},
  };
  return registry;
}

RunReport run_property_suite(std::span<const Property> properties, std::uint64_t seed,
                             int cases) {
  if (cases < 1) throw ValidationError("the suite needs at least one case per property");
  RunReport report;
  report.scenario = "property_suite";
  report.seed = seed;
  for (const auto& property : properties) {
    CheckRecord record;
    record.name = property.name;
    int failures = 0;
    int executed = 0;
    for (int index = 0; index < cases; ++index) {
      const auto cs = case_seed(seed, property.name, static_cast<std::uint64_t>(index));
      ++executed;
      try {
        const auto witness = property.check(cs);
        if (witness) {
          ++failures;
          if (record.detail.empty()) {
            std::ostringstream out;
            out << "case " << index << " (seed " << cs << "): " << *witness;
            record.detail = out.str();
          }
        }
      } catch (const std::exception& e) {
        record.status = CheckStatus::kError;
        std::ostringstream out;
        out << "case " << index << " (seed " << cs << ") threw: " << e.what();
        record.detail = out.str();
        break;
      }
    }
    if (record.status != CheckStatus::kError && failures > 0) {
      record.status = CheckStatus::kFail;
    }
    record.measured["cases"] = executed;
    record.measured["failures"] = failures;
    report.add(std::move(record));
  }
  return report;
}

RunReport verify_suite(std::uint64_t seed, int cases) {
  const auto& properties = all_properties();
  return run_property_suite(std::span<const Property>(properties.data(), properties.size()),
                            seed, cases);
}

}  // namespace qrf
