#include "qrf/model_space.hpp"

#include <algorithm>
#include <sstream>

#include "qrf/rng.hpp"

namespace qrf {

namespace detail {

struct ModelSpaceImpl {
  ModelSpaceImpl(Group g, std::vector<ConfigSpace> f) : group(std::move(g)), factors(std::move(f)) {}
  Group group;
  std::vector<ConfigSpace> factors;
  std::uint64_t fingerprint = 0;
  std::string description;
};

struct SectionImpl {
  enum class Kind { kSubsystemAtOrigin, kTable, kSeeded };
  SectionImpl(Kind k, ModelSpace s) : kind(k), space(std::move(s)) {}
  Kind kind;
  ModelSpace space;
  int subsystem = 0;  // kSubsystemAtOrigin
  int origin = 0;
  std::map<std::vector<int>, Model> table;  // kTable, keyed by canonical configs
  std::uint64_t seed = 0;                   // kSeeded
  std::string name;
};

}  // namespace detail

namespace {

std::uint64_t fold_int(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

void require_enumerable(const Group& g, const char* what) {
  if (g.order() > Group::kMaxEnumeratedOrder) {
    throw CapacityError(std::string(what) + " needs to scan all of " + g.description() +
                        ", which exceeds the enumeration cap");
  }
}

void require_same_space(const ModelSpace& a, const ModelSpace& b, const char* what) {
  if (!a.same(b)) {
    throw DomainError(std::string(what) + ": models live in " + a.description() + " and " +
                      b.description());
  }
}

std::uint64_t config_hash(std::span<const int> configs) {
  std::uint64_t h = fnv1a64("orbit");
  for (const int c : configs) h = fold_int(h, static_cast<std::uint64_t>(c) + 1);
  return h;
}

std::string config_text(std::span<const int> configs) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < configs.size(); ++i) out << (i ? ", " : "") << configs[i];
  out << ")";
  return out.str();
}

}  // namespace

// ── ModelSpace ──────────────────────────────────────────────────────────────

ModelSpace ModelSpace::product(std::vector<ConfigSpace> factors) {
  if (factors.empty()) throw DomainError("a model space needs at least one subsystem");
  const Group shared = factors.front().group();
  for (const auto& f : factors) {
    if (!f.group().same(shared)) {
      throw DomainError("all subsystems must share one group; found " + shared.description() +
                        " and " + f.group().description());
    }
  }
  auto impl = std::make_shared<detail::ModelSpaceImpl>(shared, std::move(factors));
  std::uint64_t h = fnv1a64("model-space");
  for (const auto& f : impl->factors) h = fold_int(h, f.fingerprint());
  impl->fingerprint = h;
  std::ostringstream name;
  name << "ModelSpace(" << shared.description() << ": ";
  for (std::size_t i = 0; i < impl->factors.size(); ++i) {
    name << (i ? " x " : "") << impl->factors[i].point_count();
  }
  name << ")";
  impl->description = name.str();
  return ModelSpace(std::move(impl));
}

ModelSpace ModelSpace::power(const ConfigSpace& factor, int count) {
  if (count < 1) throw DomainError("a model space needs at least one subsystem");
  return product(std::vector<ConfigSpace>(static_cast<std::size_t>(count), factor));
}

Group ModelSpace::group() const { return impl_->group; }

int ModelSpace::subsystem_count() const { return static_cast<int>(impl_->factors.size()); }

const ConfigSpace& ModelSpace::factor(int i) const {
  if (i < 0 || i >= subsystem_count()) {
    throw DomainError("subsystem " + std::to_string(i) + " outside " + description());
  }
  return impl_->factors[static_cast<std::size_t>(i)];
}

Model ModelSpace::make(std::vector<int> configs, Tags tags) const {
  if (static_cast<int>(configs.size()) != subsystem_count()) {
    throw DomainError("expected " + std::to_string(subsystem_count()) +
                      " coordinates for " + description() + ", got " +
                      std::to_string(configs.size()));
  }
  for (int i = 0; i < subsystem_count(); ++i) {
    const int c = configs[static_cast<std::size_t>(i)];
    if (c < 0 || c >= factor(i).point_count()) {
      throw DomainError("coordinate " + std::to_string(c) + " outside subsystem " +
                        std::to_string(i) + " of " + description());
    }
  }
  return Model(*this, std::move(configs), std::move(tags));
}

std::uint64_t ModelSpace::fingerprint() const { return impl_->fingerprint; }

std::string ModelSpace::description() const { return impl_->description; }

// ── Model ───────────────────────────────────────────────────────────────────

int Model::config(int subsystem) const {
  if (subsystem < 0 || subsystem >= static_cast<int>(configs_.size())) {
    throw DomainError("subsystem " + std::to_string(subsystem) + " outside " +
                      space_.description());
  }
  return configs_[static_cast<std::size_t>(subsystem)];
}

Model Model::with_tags(Tags tags) const { return Model(space_, configs_, std::move(tags)); }

bool operator==(const Model& a, const Model& b) {
  require_same_space(a.space_, b.space_, "comparing models");
  return a.configs_ == b.configs_;
}

bool operator<(const Model& a, const Model& b) {
  require_same_space(a.space_, b.space_, "ordering models");
  return a.configs_ < b.configs_;
}

Model apply(const GroupElement& g, const Model& m) {
  const auto& space = m.space();
  std::vector<int> moved(static_cast<std::size_t>(space.subsystem_count()));
  for (int i = 0; i < space.subsystem_count(); ++i) {
    moved[static_cast<std::size_t>(i)] = space.factor(i).act(g, m.config(i));
  }
  return space.make(std::move(moved), m.tags());
}

// ── Orbits ──────────────────────────────────────────────────────────────────

OrbitLabel orbit_label(const Model& m) {
  const Group g = m.space().group();
  require_enumerable(g, "an orbit label");
  // Tags name a member, not the orbit, so the label drops them.
  const Model bare = m.space().make(std::vector<int>(m.configs().begin(), m.configs().end()));
  Model best = bare;
  for (std::size_t i = 1; i < g.order(); ++i) {
    Model moved = apply(g.element(static_cast<int>(i)), bare);
    if (moved < best) best = std::move(moved);
  }
  return OrbitLabel(std::move(best));
}

std::optional<GroupElement> relating_element(const Model& from, const Model& to) {
  require_same_space(from.space(), to.space(), "relating models");
  const Group g = from.space().group();
  require_enumerable(g, "a relating-element search");
  std::vector<int> candidates;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (apply(g.element(static_cast<int>(i)), from) == to) {
      candidates.push_back(static_cast<int>(i));
    }
  }
  if (candidates.empty()) return std::nullopt;
  if (candidates.size() > 1) {
    throw AmbiguityError("several elements relate " + config_text(from.configs()) + " to " +
                             config_text(to.configs()) + "; the tuple action is not free here",
                         std::move(candidates));
  }
  return g.element(candidates.front());
}

// ── Section ─────────────────────────────────────────────────────────────────

Section Section::subsystem_at_origin(const ModelSpace& space, int subsystem, int origin) {
  if (subsystem < 0 || subsystem >= space.subsystem_count()) {
    throw DomainError("subsystem " + std::to_string(subsystem) + " outside " +
                      space.description());
  }
  if (origin < 0 || origin >= space.factor(subsystem).point_count()) {
    throw DomainError("origin " + std::to_string(origin) + " outside subsystem " +
                      std::to_string(subsystem));
  }
  auto impl = std::make_shared<detail::SectionImpl>(detail::SectionImpl::Kind::kSubsystemAtOrigin,
                                                    space);
  impl->subsystem = subsystem;
  impl->origin = origin;
  impl->name = "subsystem" + std::to_string(subsystem) + "_at_" + std::to_string(origin);
  return Section(std::move(impl));
}

Section Section::from_table(const ModelSpace& space, const std::vector<Model>& representatives,
                            std::string name) {
  auto impl = std::make_shared<detail::SectionImpl>(detail::SectionImpl::Kind::kTable, space);
  impl->name = std::move(name);
  for (const auto& rep : representatives) {
    require_same_space(space, rep.space(), "building a section table");
    const auto label = orbit_label(rep);
    std::vector<int> key(label.canonical().configs().begin(), label.canonical().configs().end());
    if (!impl->table.emplace(std::move(key), rep).second) {
      throw DomainError("section '" + impl->name + "' lists two representatives for orbit " +
                        config_text(label.canonical().configs()));
    }
  }
  return Section(std::move(impl));
}

Section Section::seeded(const ModelSpace& space, std::uint64_t seed) {
  auto impl = std::make_shared<detail::SectionImpl>(detail::SectionImpl::Kind::kSeeded, space);
  impl->seed = seed;
  impl->name = "seeded_" + std::to_string(seed);
  return Section(std::move(impl));
}

const std::string& Section::name() const { return impl_->name; }

const ModelSpace& Section::space() const { return impl_->space; }

Model Section::representative(const OrbitLabel& orbit) const {
  const auto& canonical = orbit.canonical();
  require_same_space(impl_->space, canonical.space(), "looking up a section representative");
  switch (impl_->kind) {
    case detail::SectionImpl::Kind::kSubsystemAtOrigin: {
      const Group g = impl_->space.group();
      require_enumerable(g, "a section lookup");
      std::vector<Model> found;
      std::vector<int> witnesses;
      for (std::size_t i = 0; i < g.order(); ++i) {
        Model moved = apply(g.element(static_cast<int>(i)), canonical);
        if (moved.config(impl_->subsystem) != impl_->origin) continue;
        if (std::find(found.begin(), found.end(), moved) == found.end()) {
          found.push_back(std::move(moved));
          witnesses.push_back(static_cast<int>(i));
        }
      }
      if (found.empty()) {
        throw DomainError("section '" + impl_->name + "': orbit " +
                          config_text(canonical.configs()) + " never puts subsystem " +
                          std::to_string(impl_->subsystem) + " at " +
                          std::to_string(impl_->origin));
      }
      if (found.size() > 1) {
        throw AmbiguityError("section '" + impl_->name + "': orbit " +
                                 config_text(canonical.configs()) +
                                 " has several members with subsystem " +
                                 std::to_string(impl_->subsystem) + " at " +
                                 std::to_string(impl_->origin),
                             std::move(witnesses));
      }
      return found.front();
    }
    case detail::SectionImpl::Kind::kTable: {
      const std::vector<int> key(canonical.configs().begin(), canonical.configs().end());
      const auto it = impl_->table.find(key);
      if (it == impl_->table.end()) {
        throw DomainError("section '" + impl_->name + "' has no representative for orbit " +
                          config_text(canonical.configs()));
      }
      return it->second;
    }
    case detail::SectionImpl::Kind::kSeeded: {
      const Group g = impl_->space.group();
      const auto draw = case_seed(impl_->seed, "section-draw", config_hash(canonical.configs()));
      return apply(g.element(static_cast<int>(draw % g.order())), canonical);
    }
  }
  throw Error("internal: unknown section kind");
}

bool Section::contains(const Model& m) const { return representative(orbit_label(m)) == m; }

SectionRule SectionRule::of(const Section& s) {
  SectionRule r;
  switch (s.impl_->kind) {
    case detail::SectionImpl::Kind::kSubsystemAtOrigin:
      r.rule = "subsystem_at_origin";
      r.subsystem = s.impl_->subsystem;
      r.origin = s.impl_->origin;
      break;
    case detail::SectionImpl::Kind::kTable:
      r.rule = "table";
      r.table_name = s.impl_->name;
      for (const auto& [key, rep] : s.impl_->table) r.representatives.push_back(rep);
      break;
    case detail::SectionImpl::Kind::kSeeded:
      r.rule = "seeded";
      r.seed = s.impl_->seed;
      break;
  }
  return r;
}

Section SectionRule::build(const ModelSpace& space) const {
  if (rule == "subsystem_at_origin") return Section::subsystem_at_origin(space, subsystem, origin);
  if (rule == "table") return Section::from_table(space, representatives, table_name);
  if (rule == "seeded") return Section::seeded(space, seed);
  throw DomainError("unknown section rule '" + rule + "'");
}

// ── Counterpart machinery ───────────────────────────────────────────────────

GroupElement lowering_element(const Section& s, const Model& m) {
  require_same_space(s.space(), m.space(), "lowering a model onto a section");
  const Model target = s.representative(orbit_label(m));
  const Group g = m.space().group();
  require_enumerable(g, "a lowering search");
  std::vector<int> candidates;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (apply(g.element(static_cast<int>(i)), m) == target) {
      candidates.push_back(static_cast<int>(i));
    }
  }
  if (candidates.empty()) {
    throw Error("internal: section representative not reachable from its own orbit");
  }
  if (candidates.size() > 1) {
    throw AmbiguityError("lowering " + config_text(m.configs()) + " onto section '" + s.name() +
                             "' is ambiguous; the orbit has a non-trivial stabiliser",
                         std::move(candidates));
  }
  return g.element(candidates.front());
}

GroupElement counter(const Section& s, const Model& m1, const Model& m2) {
  return compose(inverse(lowering_element(s, m2)), lowering_element(s, m1));
}

GroupElement convention_change(const Section& s, const Section& s_tilde,
                               const OrbitLabel& orbit) {
  require_same_space(s.space(), s_tilde.space(), "changing conventions");
  const Model from = s.representative(orbit);
  const Model to = s_tilde.representative(orbit);
  const auto g = relating_element(from, to);
  if (!g) throw Error("internal: section representatives of one orbit are unrelated");
  return *g;
}

}  // namespace qrf
