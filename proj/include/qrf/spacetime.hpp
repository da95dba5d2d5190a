#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrf/qstate.hpp"

namespace qrf {

/// Four scalar reference values read at one point. Stored as scaled
/// integers so matching across branches is exact.
using FieldTuple = std::array<std::int64_t, 4>;

/// Observables evaluated at matched points count as equal within this.
inline constexpr double kObservableTolerance = 1e-12;

struct ReferenceFields {
  std::vector<FieldTuple> values;  // one tuple per point
  std::int64_t scale = 1;          // declared denominator of the encoding
};

/// Points that share a reference value, grouped. An empty report means the
/// fields separate every point and can serve as a frame.
struct DegeneracyReport {
  std::vector<std::vector<int>> groups;
  bool perfect() const { return groups.empty(); }
};

DegeneracyReport detect_degenerate_frame(const ReferenceFields& f);

/// One branch of a spacetime superposition: a finite set of labelled points
/// carrying scalar observables, reference-field tuples, and worldlines.
/// Point labels are bookkeeping only; all physics lives in the values.
struct BranchGeometry {
  int point_count = 0;
  std::map<std::string, std::vector<double>> observables;
  std::map<std::string, ReferenceFields> fields;
  std::map<std::string, std::vector<int>> worldlines;  // ordered point visits

  void validate() const;
  const ReferenceFields& field(const std::string& name) const;
  const std::vector<double>& observable(const std::string& name) const;
  const std::vector<int>& worldline(const std::string& name) const;
};

/// Normalised superposition of branch geometries over one shared point-set
/// cardinality.
class GeometrySuperposition {
 public:
  static GeometrySuperposition of(std::vector<std::pair<Amplitude, BranchGeometry>> branches);

  std::size_t branch_count() const { return geometries_.size(); }
  const BranchGeometry& geometry(std::size_t i) const;
  Amplitude amplitude(std::size_t i) const;
  int point_count() const { return geometries_.front().point_count; }

 private:
  GeometrySuperposition() = default;
  std::vector<Amplitude> amplitudes_;
  std::vector<BranchGeometry> geometries_;
};

/// Point-by-point identification of one branch with another, built by
/// matching reference values. forward[p] is the partner of p.
struct ComparisonMap {
  std::vector<int> forward;
  std::string provenance;

  int apply(int p) const;
  bool is_identity() const;
};

/// Read the same reference values in both branches and identify the points
/// that carry them. Fields must use one scale, separate points within each
/// branch (else DegenerateFrameError), and cover the same value set across
/// branches (else FieldMismatchError).
ComparisonMap build_comparison(const BranchGeometry& a, const BranchGeometry& b,
                               const std::string& field_name);

/// One relabelling permutation per branch.
struct QuantumDiffeo {
  std::vector<Permutation> per_branch;
};

/// Move a geometry's content to relabelled points: whatever was read at p is
/// read at d(p) afterwards. Worldlines are dragged along pointwise.
BranchGeometry relabel(const BranchGeometry& g, const Permutation& d);

/// Relabel every branch with its own permutation.
GeometrySuperposition apply_quantum_diffeo(const GeometrySuperposition& s,
                                           const QuantumDiffeo& d);

/// How a comparison map reacts to branchwise relabelling: conjugation by the
/// two permutations, new = d2 o old o d1^{-1}.
ComparisonMap transform_comparison(const ComparisonMap& c, const QuantumDiffeo& d);

struct AlignmentResult {
  GeometrySuperposition superposition;
  /// Comparison maps from branch 0 to every later branch; all identity.
  std::vector<ComparisonMap> comparisons;
  /// The per-branch relabellings that were applied.
  QuantumDiffeo applied;
};

/// Change to the frame of the named fields: relabel each branch so its
/// fields take the target configuration, making the comparison trivial.
AlignmentResult qrf_change_to(const GeometrySuperposition& s, const std::string& field_name,
                              const ReferenceFields& target);

/// Does the comparison map pair p with q?
bool is_localised(int p, int q, const ComparisonMap& c);

/// A crossing seen branch by branch.
struct EventCandidate {
  int in_first = 0;
  int in_second = 0;
};

/// Points visited by both named worldlines, paired k-th against k-th in
/// visit order across the two branches. Branches must agree on the number
/// of crossings.
std::vector<EventCandidate> find_events(const BranchGeometry& a, const BranchGeometry& b,
                                        const std::string& line_a, const std::string& line_b);

/// An observable re-indexed by reference values instead of point labels:
/// per branch, what the observable reads where the fields read x.
struct RelationalObservable {
  std::int64_t scale = 1;
  std::vector<std::map<FieldTuple, double>> per_branch;

  double value_at(std::size_t branch, const FieldTuple& x) const;
};

RelationalObservable dress(const GeometrySuperposition& s, const std::string& observable_name,
                           const std::string& field_name);

/// Whether the observable takes one value across the matched pair (p, q).
/// The pair must be matched by the comparison map.
bool definite_at(const std::string& observable_name, int p, int q, const ComparisonMap& c,
                 const BranchGeometry& a, const BranchGeometry& b);

}  // namespace qrf
