#include "qrf/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qrf/rng.hpp"

namespace qrf {

// ── Permutation ─────────────────────────────────────────────────────────────

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (const int v : images_) {
    if (v < 0 || v >= degree() || seen[v] != 0) {
      throw DomainError("permutation images must be a bijection of the domain");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  if (degree < 0) throw DomainError("permutation degree must be non-negative");
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

int Permutation::apply(int x) const {
  if (x < 0 || x >= degree()) throw DomainError("point outside permutation domain");
  return images_[static_cast<std::size_t>(x)];
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw DomainError("composing permutations of different degree");
  }
  std::vector<int> im(static_cast<std::size_t>(a.degree()));
  for (int x = 0; x < a.degree(); ++x) {
    im[static_cast<std::size_t>(x)] = a.images()[static_cast<std::size_t>(b.images()[static_cast<std::size_t>(x)])];
  }
  return Permutation(std::move(im));
}

// ── GroupImpl ───────────────────────────────────────────────────────────────

namespace detail {

struct GroupImpl {
  enum class Kind { kCyclic, kPerm };

  Kind kind = Kind::kCyclic;
  int modulus = 0;  // cyclic only
  int degree = 0;   // permutation only
  std::vector<Permutation> elements;         // permutation only, closure order
  std::map<std::vector<int>, int> index_of;  // permutation images -> index
  std::uint64_t fingerprint = 0;
  std::string description;

  std::size_t order() const {
    return kind == Kind::kCyclic ? static_cast<std::size_t>(modulus) : elements.size();
  }

  int compose_idx(int a, int b) const {
    if (kind == Kind::kCyclic) {
      return static_cast<int>((static_cast<long long>(a) + b) % modulus);
    }
    const auto& pa = elements[static_cast<std::size_t>(a)].images();
    const auto& pb = elements[static_cast<std::size_t>(b)].images();
    std::vector<int> im(static_cast<std::size_t>(degree));
    for (int x = 0; x < degree; ++x) {
      im[static_cast<std::size_t>(x)] = pa[static_cast<std::size_t>(pb[static_cast<std::size_t>(x)])];
    }
    const auto it = index_of.find(im);
    if (it == index_of.end()) throw Error("internal: group closure is not closed");
    return it->second;
  }

  int inverse_idx(int a) const {
    if (kind == Kind::kCyclic) return a == 0 ? 0 : modulus - a;
    const auto inv = elements[static_cast<std::size_t>(a)].inverse();
    return index_of.at(inv.images());
  }
};

}  // namespace detail

namespace {

std::uint64_t fold_int(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

void require_same_group(const detail::GroupImpl& a, const detail::GroupImpl& b,
                        const char* what) {
  if (a.fingerprint != b.fingerprint) {
    throw DomainError(std::string(what) + ": elements belong to " + a.description + " and " +
                      b.description);
  }
}

}  // namespace

// ── GroupElement ────────────────────────────────────────────────────────────

Group GroupElement::group() const { return Group(impl_); }

bool operator==(const GroupElement& a, const GroupElement& b) {
  require_same_group(*a.impl_, *b.impl_, "comparing group elements");
  return a.index_ == b.index_;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  require_same_group(*a.impl_, *b.impl_, "composing group elements");
  return GroupElement(a.impl_, a.impl_->compose_idx(a.index_, b.index_));
}

GroupElement inverse(const GroupElement& a) {
  return GroupElement(a.impl_, a.impl_->inverse_idx(a.index_));
}

// ── Group ───────────────────────────────────────────────────────────────────

Group Group::cyclic(int modulus) {
  if (modulus < 1) throw DomainError("cyclic group needs modulus >= 1");
  auto impl = std::make_shared<detail::GroupImpl>();
  impl->kind = detail::GroupImpl::Kind::kCyclic;
  impl->modulus = modulus;
  impl->description = "Z" + std::to_string(modulus);
  impl->fingerprint = fold_int(fnv1a64("cyclic"), static_cast<std::uint64_t>(modulus));
  return Group(std::move(impl));
}

Group Group::permutation(int degree, const std::vector<Permutation>& generators,
                         std::size_t max_order) {
  if (degree < 1) throw DomainError("permutation group needs degree >= 1");
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DomainError("generator degree does not match the group");
  }
  auto impl = std::make_shared<detail::GroupImpl>();
  impl->kind = detail::GroupImpl::Kind::kPerm;
  impl->degree = degree;
  impl->elements.push_back(Permutation::identity(degree));
  impl->index_of.emplace(impl->elements.front().images(), 0);
  for (std::size_t head = 0; head < impl->elements.size(); ++head) {
    for (const auto& g : generators) {
      auto next = compose(impl->elements[head], g);
      if (impl->index_of.emplace(next.images(), static_cast<int>(impl->elements.size())).second) {
        impl->elements.push_back(std::move(next));
        if (impl->elements.size() > max_order) {
          throw CapacityError("permutation closure exceeds " + std::to_string(max_order) +
                              " elements");
        }
      }
    }
  }
  // Fingerprint over the sorted element set, so the same subgroup built from
  // different generator lists is the same group.
  std::uint64_t h = fold_int(fnv1a64("perm"), static_cast<std::uint64_t>(degree));
  for (const auto& [images, idx] : impl->index_of) {
    (void)idx;
    for (const int v : images) h = fold_int(h, static_cast<std::uint64_t>(v) + 1);
  }
  impl->fingerprint = h;
  std::ostringstream name;
  name << "Perm(degree=" << degree << ", order=" << impl->elements.size() << ")";
  impl->description = name.str();
  return Group(std::move(impl));
}

Group Group::symmetric(int degree) {
  if (degree < 1) throw DomainError("symmetric group needs degree >= 1");
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> swap01(static_cast<std::size_t>(degree));
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    gens.emplace_back(std::move(swap01));
    std::vector<int> cycle(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % degree;
    gens.emplace_back(std::move(cycle));
  }
  return permutation(degree, gens);
}

std::size_t Group::order() const { return impl_->order(); }

GroupElement Group::identity() const { return GroupElement(impl_, 0); }

GroupElement Group::element(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= order()) {
    throw DomainError("element index " + std::to_string(index) + " outside " + description());
  }
  return GroupElement(impl_, index);
}

bool Group::is_cyclic() const { return impl_->kind == detail::GroupImpl::Kind::kCyclic; }

int Group::modulus() const {
  if (!is_cyclic()) throw DomainError(description() + " is not cyclic");
  return impl_->modulus;
}

const Permutation& Group::permutation_of(const GroupElement& g) const {
  if (is_cyclic()) throw DomainError(description() + " has no permutation representation");
  require_same_group(*impl_, *g.impl_, "reading a permutation");
  return impl_->elements[static_cast<std::size_t>(g.index_)];
}

GroupElement Group::element_of(const Permutation& p) const {
  if (is_cyclic()) throw DomainError(description() + " has no permutation representation");
  const auto it = impl_->index_of.find(p.images());
  if (it == impl_->index_of.end()) {
    throw DomainError("permutation is not an element of " + description());
  }
  return GroupElement(impl_, it->second);
}

std::uint64_t Group::fingerprint() const { return impl_->fingerprint; }

std::string Group::description() const { return impl_->description; }

bool Group::associativity_holds(std::size_t exhaustive_limit) const {
  const auto n = order();
  const auto check = [&](int a, int b, int c) {
    const int left = impl_->compose_idx(impl_->compose_idx(a, b), c);
    const int right = impl_->compose_idx(a, impl_->compose_idx(b, c));
    return left == right;
  };
  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!check(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c))) return false;
        }
      }
    }
    return true;
  }
  SplitMix64 rng(fingerprint());
  for (int trial = 0; trial < 4096; ++trial) {
    const int a = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const int b = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const int c = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    if (!check(a, b, c)) return false;
  }
  return true;
}

// ── SpaceImpl ───────────────────────────────────────────────────────────────

namespace detail {

struct SpaceImpl {
  enum class Kind { kDial, kRegularPerm, kNatural, kTrivial, kTable };

  SpaceImpl(Kind k, Group g, int pts) : kind(k), group(std::move(g)), points(pts) {}

  Kind kind;
  Group group;
  int points;
  std::vector<Permutation> action;  // kTable only
  std::uint64_t fingerprint = 0;
  std::string description;

  int act_idx(int element, int x) const {
    switch (kind) {
      case Kind::kDial:
        return static_cast<int>((static_cast<long long>(x) + element) % points);
      case Kind::kRegularPerm:
        return group.impl_->compose_idx(element, x);
      case Kind::kNatural:
        return group.impl_->elements[static_cast<std::size_t>(element)].images()[static_cast<std::size_t>(x)];
      case Kind::kTrivial:
        return x;
      case Kind::kTable:
        return action[static_cast<std::size_t>(element)].images()[static_cast<std::size_t>(x)];
    }
    throw Error("internal: unknown action kind");
  }
};

}  // namespace detail

namespace {

constexpr std::size_t kMaxActionScan = Group::kMaxEnumeratedOrder;

void require_enumerable(const Group& g, const char* what) {
  if (g.order() > kMaxActionScan) {
    throw CapacityError(std::string(what) + " needs to scan all of " + g.description() +
                        ", which exceeds the enumeration cap");
  }
}

std::shared_ptr<detail::SpaceImpl> finish_space(std::shared_ptr<detail::SpaceImpl> impl,
                                                const char* kind_name) {
  std::uint64_t h = fnv1a64(kind_name);
  h = fold_int(h, impl->group.fingerprint());
  h = fold_int(h, static_cast<std::uint64_t>(impl->points));
  for (const auto& p : impl->action) {
    for (const int v : p.images()) h = fold_int(h, static_cast<std::uint64_t>(v) + 1);
  }
  impl->fingerprint = h;
  std::ostringstream name;
  name << kind_name << "(" << impl->group.description() << " on " << impl->points << " points)";
  impl->description = name.str();
  return impl;
}

}  // namespace

// ── ConfigSpace ─────────────────────────────────────────────────────────────

ConfigSpace ConfigSpace::regular(const Group& g) {
  if (g.is_cyclic()) return dial(g, g.modulus());
  auto impl = std::make_shared<detail::SpaceImpl>(detail::SpaceImpl::Kind::kRegularPerm, g,
                                                  static_cast<int>(g.order()));
  return ConfigSpace(finish_space(std::move(impl), "regular"));
}

ConfigSpace ConfigSpace::dial(const Group& cyclic_group, int points) {
  if (!cyclic_group.is_cyclic()) {
    throw DomainError("dial spaces need a cyclic group, got " + cyclic_group.description());
  }
  if (points < 1) throw DomainError("config space needs at least one point");
  if (cyclic_group.modulus() % points != 0) {
    throw DomainError("dial size " + std::to_string(points) + " must divide the modulus of " +
                      cyclic_group.description());
  }
  auto impl =
      std::make_shared<detail::SpaceImpl>(detail::SpaceImpl::Kind::kDial, cyclic_group, points);
  return ConfigSpace(finish_space(std::move(impl), "dial"));
}

ConfigSpace ConfigSpace::natural(const Group& perm_group) {
  if (perm_group.is_cyclic()) {
    throw DomainError("natural actions need a permutation group, got " +
                      perm_group.description());
  }
  auto impl = std::make_shared<detail::SpaceImpl>(detail::SpaceImpl::Kind::kNatural, perm_group,
                                                  perm_group.impl_->degree);
  return ConfigSpace(finish_space(std::move(impl), "natural"));
}

ConfigSpace ConfigSpace::trivial(const Group& g, int points) {
  if (points < 1) throw DomainError("config space needs at least one point");
  auto impl = std::make_shared<detail::SpaceImpl>(detail::SpaceImpl::Kind::kTrivial, g, points);
  return ConfigSpace(finish_space(std::move(impl), "trivial"));
}

ConfigSpace ConfigSpace::table(const Group& g, std::vector<Permutation> images) {
  require_enumerable(g, "an action table");
  if (images.size() != g.order()) {
    throw DomainError("action table needs one permutation per group element");
  }
  if (images.empty()) throw DomainError("config space needs at least one point");
  const int points = images.front().degree();
  if (points < 1) throw DomainError("config space needs at least one point");
  for (const auto& p : images) {
    if (p.degree() != points) throw DomainError("action table permutations differ in degree");
  }
  if (images.front() != Permutation::identity(points) ||
      images[static_cast<std::size_t>(g.identity().index())] != Permutation::identity(points)) {
    throw DomainError("action table must send the identity to the identity map");
  }
  auto impl = std::make_shared<detail::SpaceImpl>(detail::SpaceImpl::Kind::kTable, g, points);
  impl->action = std::move(images);
  // Homomorphism check: exhaustive for small groups, seeded sample otherwise.
  const auto n = g.order();
  const auto verify_pair = [&](int a, int b) {
    const int ab = g.impl_->compose_idx(a, b);
    const auto& pa = impl->action[static_cast<std::size_t>(a)];
    const auto& pb = impl->action[static_cast<std::size_t>(b)];
    if (compose(pa, pb) != impl->action[static_cast<std::size_t>(ab)]) {
      throw DomainError("action table is not a homomorphism at element pair (" +
                        std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  };
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) verify_pair(static_cast<int>(a), static_cast<int>(b));
    }
  } else {
    SplitMix64 rng(g.fingerprint());
    for (int trial = 0; trial < 4096; ++trial) {
      verify_pair(static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n) - 1)),
                  static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(n) - 1)));
    }
  }
  return ConfigSpace(finish_space(std::move(impl), "table"));
}

Group ConfigSpace::group() const { return impl_->group; }

int ConfigSpace::point_count() const { return impl_->points; }

int ConfigSpace::act(const GroupElement& g, int x) const {
  require_same_group(*impl_->group.impl_, *g.impl_, "acting on a config space");
  if (x < 0 || x >= impl_->points) {
    throw DomainError("point " + std::to_string(x) + " outside " + description());
  }
  return impl_->act_idx(g.index_, x);
}

std::vector<GroupElement> ConfigSpace::stabiliser(int x) const {
  if (x < 0 || x >= impl_->points) {
    throw DomainError("point " + std::to_string(x) + " outside " + description());
  }
  require_enumerable(impl_->group, "a stabiliser");
  std::vector<GroupElement> fixing;
  for (std::size_t i = 0; i < impl_->group.order(); ++i) {
    if (impl_->act_idx(static_cast<int>(i), x) == x) {
      fixing.push_back(GroupElement(impl_->group.impl_, static_cast<int>(i)));
    }
  }
  return fixing;
}

std::vector<int> ConfigSpace::orbit_of(int x) const {
  if (x < 0 || x >= impl_->points) {
    throw DomainError("point " + std::to_string(x) + " outside " + description());
  }
  require_enumerable(impl_->group, "an orbit scan");
  std::vector<char> hit(static_cast<std::size_t>(impl_->points), 0);
  for (std::size_t i = 0; i < impl_->group.order(); ++i) {
    hit[static_cast<std::size_t>(impl_->act_idx(static_cast<int>(i), x))] = 1;
  }
  std::vector<int> orbit;
  for (int p = 0; p < impl_->points; ++p) {
    if (hit[static_cast<std::size_t>(p)] != 0) orbit.push_back(p);
  }
  return orbit;
}

bool ConfigSpace::is_transitive() const {
  return static_cast<int>(orbit_of(0).size()) == impl_->points;
}

bool ConfigSpace::is_free() const {
  for (int x = 0; x < impl_->points; ++x) {
    if (stabiliser(x).size() != 1) return false;
  }
  return true;
}

bool ConfigSpace::is_regular() const { return is_transitive() && is_free(); }

std::uint64_t ConfigSpace::fingerprint() const { return impl_->fingerprint; }

std::string ConfigSpace::description() const { return impl_->description; }

}  // namespace qrf
