#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qrf/error.hpp"

namespace qrf {

/// Bijection of {0, ..., degree-1}; images()[x] is where x is sent.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int x) const;
  Permutation inverse() const;
  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Right-to-left composition: compose(a, b) applies b first, then a.
Permutation compose(const Permutation& a, const Permutation& b);

namespace detail {
struct GroupImpl;
struct SpaceImpl;
}  // namespace detail

class Group;

/// One element of a finite group, tagged with its owning group. Elements of
/// structurally different groups never compose or compare; attempts throw
/// DomainError so category mistakes surface immediately.
class GroupElement {
 public:
  int index() const { return index_; }
  Group group() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

 private:
  friend class Group;
  friend class ConfigSpace;
  friend GroupElement compose(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);

  GroupElement(std::shared_ptr<const detail::GroupImpl> impl, int index)
      : impl_(std::move(impl)), index_(index) {}

  std::shared_ptr<const detail::GroupImpl> impl_;
  int index_;
};

/// Handle to an immutable finite group. Copies share state and every
/// operation is pure, so handles may cross threads freely.
///
/// Cyclic groups compose by modular arithmetic at any order. Permutation
/// groups enumerate their elements once at construction (breadth-first
/// closure of the generators, capped) and compose lazily through the stored
/// permutations; no order-squared table is ever materialised.
class Group {
 public:
  static constexpr std::size_t kMaxEnumeratedOrder = 4096;

  /// Z_n under addition mod n; element index doubles as the residue.
  static Group cyclic(int modulus);

  /// Subgroup of Sym(degree) generated by `generators`. Enumeration walks
  /// products breadth-first from the identity, so element order is stable
  /// for a given generator list. Throws CapacityError past `max_order`.
  static Group permutation(int degree, const std::vector<Permutation>& generators,
                           std::size_t max_order = kMaxEnumeratedOrder);

  /// Full symmetric group on `degree` points.
  static Group symmetric(int degree);

  std::size_t order() const;
  GroupElement identity() const;
  GroupElement element(int index) const;

  bool is_cyclic() const;
  /// Modulus of a cyclic group; DomainError otherwise.
  int modulus() const;
  /// Underlying permutation of an element; DomainError for cyclic groups.
  const Permutation& permutation_of(const GroupElement& g) const;
  /// Index lookup by permutation; DomainError if absent or cyclic.
  GroupElement element_of(const Permutation& p) const;

  /// Structural identity: two independently built handles to the same group
  /// compare equal. Used for all cross-group guards.
  std::uint64_t fingerprint() const;
  bool same(const Group& other) const noexcept { return fingerprint() == other.fingerprint(); }
  std::string description() const;

  /// Exhaustive associativity scan when order <= limit, else a seeded sample
  /// of triples. Always true for the built-in constructions; exposed so the
  /// property suite can say so.
  bool associativity_holds(std::size_t exhaustive_limit = 64) const;

 private:
  friend class GroupElement;
  friend class ConfigSpace;
  friend struct detail::SpaceImpl;
  explicit Group(std::shared_ptr<const detail::GroupImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::GroupImpl> impl_;
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

/// Finite G-space: points {0, ..., point_count-1} carrying a left action,
/// act(g, act(h, x)) = act(compose(g, h), x).
class ConfigSpace {
 public:
  /// G acting on its own element indices by left translation. Always regular.
  static ConfigSpace regular(const Group& g);

  /// Cyclic group acting on a smaller dial by addition mod `points`;
  /// requires points | modulus, otherwise the action would not respect
  /// composition. This is how a fine symmetry moves a coarse pointer.
  static ConfigSpace dial(const Group& cyclic_group, int points);

  /// Permutation group acting on the points it permutes.
  static ConfigSpace natural(const Group& perm_group);

  /// Every element fixes every point.
  static ConfigSpace trivial(const Group& g, int points);

  /// Explicit action: one permutation of the points per group element, in
  /// element order. The homomorphism property is verified on construction.
  static ConfigSpace table(const Group& g, std::vector<Permutation> images);

  Group group() const;
  int point_count() const;

  /// Where g sends x. Throws DomainError for foreign elements or points
  /// outside the space.
  int act(const GroupElement& g, int x) const;

  /// All elements fixing x, sorted by index. Always a subgroup.
  std::vector<GroupElement> stabiliser(int x) const;

  /// Points reachable from x, sorted.
  std::vector<int> orbit_of(int x) const;

  bool is_transitive() const;
  bool is_free() const;
  /// Transitive and free: the space is a perfect copy of the group.
  bool is_regular() const;

  std::uint64_t fingerprint() const;
  bool same(const ConfigSpace& other) const noexcept {
    return fingerprint() == other.fingerprint();
  }
  std::string description() const;

 private:
  explicit ConfigSpace(std::shared_ptr<const detail::SpaceImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::SpaceImpl> impl_;
};

}  // namespace qrf
