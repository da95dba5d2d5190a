#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrf/group.hpp"

namespace qrf {

/// Free-form metadata carried by a model. Tags ride along unchanged through
/// every transformation and never take part in comparisons.
using Tags = std::map<std::string, std::string>;

namespace detail {
struct ModelSpaceImpl;
struct SectionImpl;
}  // namespace detail

class Model;

/// Product of config spaces over one shared group; the group acts on all
/// subsystems at once. Handles are immutable and cheap to copy.
class ModelSpace {
 public:
  static ModelSpace product(std::vector<ConfigSpace> factors);
  /// N copies of one factor.
  static ModelSpace power(const ConfigSpace& factor, int count);

  Group group() const;
  int subsystem_count() const;
  const ConfigSpace& factor(int i) const;

  /// Build a model, validating each coordinate against its factor.
  Model make(std::vector<int> configs, Tags tags = {}) const;

  std::uint64_t fingerprint() const;
  bool same(const ModelSpace& other) const noexcept {
    return fingerprint() == other.fingerprint();
  }
  std::string description() const;

 private:
  explicit ModelSpace(std::shared_ptr<const detail::ModelSpaceImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::ModelSpaceImpl> impl_;
};

/// One complete configuration: a point in every subsystem's space.
class Model {
 public:
  const ModelSpace& space() const { return space_; }
  std::span<const int> configs() const { return configs_; }
  int config(int subsystem) const;
  const Tags& tags() const { return tags_; }
  Model with_tags(Tags tags) const;

  /// Configuration equality within one space; cross-space throws DomainError.
  friend bool operator==(const Model& a, const Model& b);
  friend bool operator!=(const Model& a, const Model& b) { return !(a == b); }
  /// Lexicographic order on configurations (same space required).
  friend bool operator<(const Model& a, const Model& b);

 private:
  friend class ModelSpace;
  Model(ModelSpace space, std::vector<int> configs, Tags tags)
      : space_(std::move(space)), configs_(std::move(configs)), tags_(std::move(tags)) {}

  ModelSpace space_;
  std::vector<int> configs_;
  Tags tags_;
};

/// The whole group moving the whole model.
Model apply(const GroupElement& g, const Model& m);

/// Canonical name for an orbit: its lexicographically least member. Two
/// models name the same orbit exactly when some group element links them.
class OrbitLabel {
 public:
  const Model& canonical() const { return canonical_; }

  friend bool operator==(const OrbitLabel& a, const OrbitLabel& b) {
    return a.canonical_ == b.canonical_;
  }
  friend bool operator!=(const OrbitLabel& a, const OrbitLabel& b) { return !(a == b); }
  friend bool operator<(const OrbitLabel& a, const OrbitLabel& b) {
    return a.canonical_ < b.canonical_;
  }

 private:
  friend OrbitLabel orbit_label(const Model& m);
  explicit OrbitLabel(Model m) : canonical_(std::move(m)) {}
  Model canonical_;
};

OrbitLabel orbit_label(const Model& m);

/// The unique g with apply(g, from) == to, if any. Several candidates (a
/// non-free tuple action) raise AmbiguityError listing all of them.
std::optional<GroupElement> relating_element(const Model& from, const Model& to);

/// A representational convention: one distinguished representative per
/// orbit, the "zero point" each orbit is described from. Deterministic: the
/// same orbit always yields the same representative.
class Section {
 public:
  /// The orbit member whose subsystem `subsystem` sits at `origin`. Needs
  /// exactly one such member per orbit (the factor action must be regular on
  /// the orbit); zero or several raise DomainError / AmbiguityError.
  static Section subsystem_at_origin(const ModelSpace& space, int subsystem, int origin = 0);

  /// Explicit representative list, keyed by the orbits they name. Orbits
  /// without an entry are rejected when looked up.
  static Section from_table(const ModelSpace& space, const std::vector<Model>& representatives,
                            std::string name);

  /// Representative picked by a seeded draw over each orbit, stable per
  /// (seed, orbit). Used to exercise convention-independence broadly.
  static Section seeded(const ModelSpace& space, std::uint64_t seed);

  const std::string& name() const;
  const ModelSpace& space() const;
  Model representative(const OrbitLabel& orbit) const;
  /// True when m is its own orbit's representative.
  bool contains(const Model& m) const;

 private:
  friend struct SectionRule;
  explicit Section(std::shared_ptr<const detail::SectionImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::SectionImpl> impl_;
};

/// The defining rule of a section, in plain data for storage and transport.
struct SectionRule {
  std::string rule;  // "subsystem_at_origin" | "table" | "seeded"
  int subsystem = 0;
  int origin = 0;
  std::vector<Model> representatives;  // table rows
  std::uint64_t seed = 0;
  std::string table_name;

  static SectionRule of(const Section& s);
  Section build(const ModelSpace& space) const;
};

/// The group element that drops m onto its section representative:
/// apply(lowering_element(s, m), m) == s.representative(orbit_label(m)).
GroupElement lowering_element(const Section& s, const Model& m);

/// How the convention s compares two models: the element carrying m1's
/// deviation from the section into m2's frame,
/// compose(inverse(lowering_element(s, m2)), lowering_element(s, m1)).
GroupElement counter(const Section& s, const Model& m1, const Model& m2);

/// Per-orbit element translating one convention into another:
/// apply(g, s.representative(o)) == s_tilde.representative(o).
GroupElement convention_change(const Section& s, const Section& s_tilde, const OrbitLabel& orbit);

}  // namespace qrf
