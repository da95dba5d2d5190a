#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrf {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Category errors: mixing elements of different groups, points outside a
/// space, malformed arguments.
struct DomainError : Error {
  using Error::Error;
};

/// A search that needs a unique answer found several. Carries the indices of
/// all candidates so callers can inspect the degeneracy.
struct AmbiguityError : Error {
  AmbiguityError(const std::string& what, std::vector<int> found)
      : Error(what), candidates(std::move(found)) {}
  std::vector<int> candidates;
};

/// An operation was invoked on a value that violates its entry contract.
struct PreconditionError : Error {
  using Error::Error;
};

/// Two superposition branches landed on one orbit under the default policy.
struct OrbitCollisionError : Error {
  OrbitCollisionError(const std::string& what, std::size_t a, std::size_t b)
      : Error(what), branch_a(a), branch_b(b) {}
  std::size_t branch_a;
  std::size_t branch_b;
};

/// A reference field repeats a value, so it cannot pin points down uniquely.
/// Carries the groups of points sharing a value.
struct DegenerateFrameError : Error {
  DegenerateFrameError(const std::string& what, std::vector<std::vector<int>> colliding)
      : Error(what), groups(std::move(colliding)) {}
  std::vector<std::vector<int>> groups;
};

/// Field value sets differ across branches; lists the points whose values
/// found no partner.
struct FieldMismatchError : Error {
  FieldMismatchError(const std::string& what, std::vector<int> unmatched_points)
      : Error(what), unmatched(std::move(unmatched_points)) {}
  std::vector<int> unmatched;
};

/// Malformed scenario files, report documents, or command lines.
struct ValidationError : Error {
  using Error::Error;
};

/// Guard against runaway allocation (tensor basis or group enumeration too
/// large for a desk-scale run).
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace qrf
