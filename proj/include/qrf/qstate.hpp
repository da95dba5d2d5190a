#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "qrf/model_space.hpp"

namespace qrf {

using Amplitude = std::complex<double>;

/// How far a state's total weight may drift from one.
inline constexpr double kNormTolerance = 1e-9;
/// Amplitudes at or below this magnitude are treated as exact zeros.
inline constexpr double kPruneThreshold = 1e-12;
/// Slack when comparing two amplitudes that should agree.
inline constexpr double kAmplitudeTolerance = 1e-12;
/// Hard ceiling on materialised tensor bases.
inline constexpr std::uint64_t kMaxBasisStates = std::uint64_t{1} << 24;
/// Hard ceiling on materialised density matrices (entries scale as the
/// square of this).
inline constexpr std::size_t kMaxDensityDimension = 1024;

/// Whether a superposition may hold several branches on one orbit. Branches
/// on one orbit differ only by a symmetry move, so the default treats them
/// as a modelling mistake and rejects them.
enum class OrbitPolicy { kDistinctOrbits, kAllowSharedOrbit };

struct Branch {
  Amplitude amplitude;
  Model model;
};

/// Normalised superposition of classical configurations. Branches are kept
/// sorted by orbit label then configuration, so states built along different
/// routes compare componentwise. Immutable after construction.
class BranchState {
 public:
  const ModelSpace& space() const { return space_; }
  OrbitPolicy policy() const { return policy_; }
  std::span<const Branch> branches() const { return branches_; }
  std::size_t branch_count() const { return branches_.size(); }
  /// Orbit labels aligned with branches(), computed once.
  const std::vector<OrbitLabel>& orbits() const { return orbits_; }

 private:
  friend BranchState superpose(std::vector<Branch>, OrbitPolicy);
  BranchState(ModelSpace space, std::vector<Branch> branches, std::vector<OrbitLabel> orbits,
              OrbitPolicy policy)
      : space_(std::move(space)),
        branches_(std::move(branches)),
        orbits_(std::move(orbits)),
        policy_(policy) {}

  ModelSpace space_;
  std::vector<Branch> branches_;
  std::vector<OrbitLabel> orbits_;
  OrbitPolicy policy_;
};

/// Normalise, prune null amplitudes, order branches canonically. Throws
/// OrbitCollisionError when two surviving branches share an orbit under the
/// default policy, DomainError for empty input or zero total weight.
BranchState superpose(std::vector<Branch> entries,
                      OrbitPolicy policy = OrbitPolicy::kDistinctOrbits);

/// Per-orbit choice of group element; nullopt marks an orbit the selector
/// does not cover (an error when encountered).
using BranchSelector = std::function<std::optional<GroupElement>(const OrbitLabel&)>;

/// Move every branch by its orbit's selected element. Amplitudes and orbit
/// labels are untouched; only the representatives move.
BranchState controlled_transform(const BranchState& state, const BranchSelector& select);
/// Same element for every branch: an ordinary global symmetry move.
BranchState controlled_transform(const BranchState& state, const GroupElement& g);

/// Re-express a state given relative to `from` in the convention of `to`:
/// branchwise application of the convention-change elements. Every branch
/// must lie on `from`'s section.
BranchState qrf_change(const BranchState& state, const Section& from, const Section& to);

/// Dense amplitude vector over the full tensor basis, subsystem 0 slowest.
/// Capped at kMaxBasisStates entries.
std::vector<Amplitude> embed_vector(const BranchState& state);

struct DensityMatrix {
  std::size_t dimension = 0;
  std::vector<Amplitude> entries;  // row-major, dimension x dimension

  const Amplitude& at(std::size_t row, std::size_t col) const {
    return entries[row * dimension + col];
  }
  double trace_real() const;
};

/// Reduced state of the listed subsystems (the rest traced out), in the
/// tensor basis of the kept subsystems.
DensityMatrix reduced_density_matrix(const BranchState& state, std::vector<int> keep);

/// Von Neumann entropy, in bits, of the reduced state of `subsystems`.
/// Works on the branch structure directly, so it stays cheap even when the
/// full tensor basis would not fit. Requires a proper non-empty subset.
double entanglement_entropy(const BranchState& state, std::vector<int> subsystems);

/// True when the subsystem holds one fixed configuration across all
/// branches, i.e. it has factored out of the superposition.
bool frame_factorizes(const BranchState& state, int subsystem);

/// Componentwise comparison: identical branch configurations and amplitudes
/// within `tol`.
bool approx_equal(const BranchState& a, const BranchState& b,
                  double tol = kAmplitudeTolerance);

}  // namespace qrf
