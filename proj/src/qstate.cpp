#include "qrf/qstate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qrf {

namespace {

std::string config_text(std::span<const int> configs) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < configs.size(); ++i) out << (i ? ", " : "") << configs[i];
  out << ")";
  return out.str();
}

double norm_squared(const std::vector<Branch>& branches) {
  double total = 0;
  for (const auto& b : branches) total += std::norm(b.amplitude);
  return total;
}

}  // namespace

BranchState superpose(std::vector<Branch> entries, OrbitPolicy policy) {
  if (entries.empty()) throw DomainError("a state needs at least one branch");
  const ModelSpace space = entries.front().model.space();
  for (const auto& b : entries) {
    if (!b.model.space().same(space)) {
      throw DomainError("all branches must live in one model space");
    }
  }

  if (policy == OrbitPolicy::kAllowSharedOrbit) {
    // Identical configurations are the same basis state: merge them.
    std::vector<Branch> merged;
    for (auto& b : entries) {
      auto hit = std::find_if(merged.begin(), merged.end(),
                              [&](const Branch& m) { return m.model == b.model; });
      if (hit == merged.end()) {
        merged.push_back(std::move(b));
      } else {
        hit->amplitude += b.amplitude;
      }
    }
    entries = std::move(merged);
  }

  const double total = norm_squared(entries);
  if (total <= kPruneThreshold * kPruneThreshold) {
    throw DomainError("state has no weight after combining branches");
  }
  const double scale = 1.0 / std::sqrt(total);
  std::vector<Branch> kept;
  kept.reserve(entries.size());
  for (auto& b : entries) {
    b.amplitude *= scale;
    if (std::abs(b.amplitude) > kPruneThreshold) kept.push_back(std::move(b));
  }
  if (kept.empty()) throw DomainError("state has no weight after pruning");
  // Pruning removed at most a sliver; renormalise so the norm is exact.
  const double rescale = 1.0 / std::sqrt(norm_squared(kept));
  for (auto& b : kept) b.amplitude *= rescale;

  std::vector<OrbitLabel> orbits;
  orbits.reserve(kept.size());
  for (const auto& b : kept) orbits.push_back(orbit_label(b.model));

  std::vector<std::size_t> order(kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (orbits[a] != orbits[b]) return orbits[a] < orbits[b];
    return kept[a].model < kept[b].model;
  });

  std::vector<Branch> sorted;
  std::vector<OrbitLabel> sorted_orbits;
  sorted.reserve(kept.size());
  sorted_orbits.reserve(kept.size());
  for (const std::size_t i : order) {
    sorted.push_back(std::move(kept[i]));
    sorted_orbits.push_back(std::move(orbits[i]));
  }

  if (policy == OrbitPolicy::kDistinctOrbits) {
    for (std::size_t i = 1; i < sorted_orbits.size(); ++i) {
      if (sorted_orbits[i - 1] == sorted_orbits[i]) {
        throw OrbitCollisionError(
            "branches " + config_text(sorted[i - 1].model.configs()) + " and " +
                config_text(sorted[i].model.configs()) +
                " lie on one orbit; superposing symmetry copies is rejected by default",
            i - 1, i);
      }
    }
  }

  return BranchState(space, std::move(sorted), std::move(sorted_orbits), policy);
}

BranchState controlled_transform(const BranchState& state, const BranchSelector& select) {
  std::vector<Branch> moved;
  moved.reserve(state.branch_count());
  for (std::size_t i = 0; i < state.branch_count(); ++i) {
    const auto& branch = state.branches()[i];
    const auto g = select(state.orbits()[i]);
    if (!g) {
      throw DomainError("selector undefined for orbit " +
                        config_text(state.orbits()[i].canonical().configs()));
    }
    moved.push_back(Branch{branch.amplitude, apply(*g, branch.model)});
  }
  return superpose(std::move(moved), state.policy());
}

BranchState controlled_transform(const BranchState& state, const GroupElement& g) {
  return controlled_transform(state, [&](const OrbitLabel&) { return std::optional(g); });
}

BranchState qrf_change(const BranchState& state, const Section& from, const Section& to) {
  if (!from.space().same(state.space()) || !to.space().same(state.space())) {
    throw DomainError("sections and state must share one model space");
  }
  for (std::size_t i = 0; i < state.branch_count(); ++i) {
    const auto& branch = state.branches()[i];
    if (branch.model != from.representative(state.orbits()[i])) {
      throw PreconditionError("branch " + config_text(branch.model.configs()) +
                              " is not expressed in convention '" + from.name() + "'");
    }
  }
  const auto moved = controlled_transform(state, [&](const OrbitLabel& orbit) {
    return std::optional(convention_change(from, to, orbit));
  });
  for (std::size_t i = 0; i < moved.branch_count(); ++i) {
    if (moved.branches()[i].model != to.representative(moved.orbits()[i])) {
      throw Error("internal: convention change left a branch off the target section");
    }
  }
  return moved;
}

std::vector<Amplitude> embed_vector(const BranchState& state) {
  const auto& space = state.space();
  std::uint64_t dim = 1;
  for (int i = 0; i < space.subsystem_count(); ++i) {
    dim *= static_cast<std::uint64_t>(space.factor(i).point_count());
    if (dim > kMaxBasisStates) {
      throw CapacityError("tensor basis of " + space.description() + " exceeds " +
                          std::to_string(kMaxBasisStates) + " states");
    }
  }
  std::vector<Amplitude> vec(dim, Amplitude{0, 0});
  for (const auto& b : state.branches()) {
    std::uint64_t idx = 0;
    for (int i = 0; i < space.subsystem_count(); ++i) {
      idx = idx * static_cast<std::uint64_t>(space.factor(i).point_count()) +
            static_cast<std::uint64_t>(b.model.config(i));
    }
    vec[idx] += b.amplitude;
  }
  return vec;
}

double DensityMatrix::trace_real() const {
  double t = 0;
  for (std::size_t i = 0; i < dimension; ++i) t += at(i, i).real();
  return t;
}

namespace {

std::vector<int> checked_subset(const BranchState& state, std::vector<int> subsystems,
                                bool proper) {
  std::sort(subsystems.begin(), subsystems.end());
  subsystems.erase(std::unique(subsystems.begin(), subsystems.end()), subsystems.end());
  const int n = state.space().subsystem_count();
  if (subsystems.empty()) throw DomainError("subsystem set must be non-empty");
  if (proper && static_cast<int>(subsystems.size()) >= n) {
    throw DomainError("subsystem set must leave something to trace out");
  }
  for (const int s : subsystems) {
    if (s < 0 || s >= n) {
      throw DomainError("subsystem " + std::to_string(s) + " outside " +
                        state.space().description());
    }
  }
  return subsystems;
}

// Branch coordinates split into the kept block and the traced block.
struct SplitKeys {
  std::vector<std::vector<int>> kept;    // per branch
  std::vector<std::vector<int>> traced;  // per branch
};

SplitKeys split_configs(const BranchState& state, const std::vector<int>& keep) {
  SplitKeys out;
  out.kept.reserve(state.branch_count());
  out.traced.reserve(state.branch_count());
  const int n = state.space().subsystem_count();
  for (const auto& b : state.branches()) {
    std::vector<int> k, t;
    for (int i = 0; i < n; ++i) {
      const bool kept = std::binary_search(keep.begin(), keep.end(), i);
      (kept ? k : t).push_back(b.model.config(i));
    }
    out.kept.push_back(std::move(k));
    out.traced.push_back(std::move(t));
  }
  return out;
}

/// Support-basis reduced density matrix: rows/columns are the distinct kept
/// blocks that actually appear, which bounds the dimension by the branch
/// count regardless of how large the kept factors are.
Eigen::MatrixXcd support_reduced(const BranchState& state, const std::vector<int>& keep,
                                 std::vector<std::vector<int>>* basis_out) {
  const auto split = split_configs(state, keep);
  std::vector<std::vector<int>> basis;
  for (const auto& k : split.kept) {
    if (std::find(basis.begin(), basis.end(), k) == basis.end()) basis.push_back(k);
  }
  std::sort(basis.begin(), basis.end());
  const auto row_of = [&](const std::vector<int>& k) {
    return static_cast<Eigen::Index>(
        std::lower_bound(basis.begin(), basis.end(), k) - basis.begin());
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                                static_cast<Eigen::Index>(basis.size()));
  // Group branches by traced block; each group contributes an outer product,
  // so the result is positive semi-definite by construction.
  std::map<std::vector<int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < state.branch_count(); ++i) {
    groups[split.traced[i]].push_back(i);
  }
  for (const auto& [traced, members] : groups) {
    (void)traced;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (const std::size_t i : members) {
      v(row_of(split.kept[i])) += state.branches()[i].amplitude;
    }
    rho += v * v.adjoint();
  }
  if (basis_out != nullptr) *basis_out = std::move(basis);
  return rho;
}

}  // namespace

DensityMatrix reduced_density_matrix(const BranchState& state, std::vector<int> keep) {
  keep = checked_subset(state, std::move(keep), /*proper=*/false);
  std::uint64_t dim = 1;
  for (const int i : keep) {
    dim *= static_cast<std::uint64_t>(state.space().factor(i).point_count());
    if (dim > kMaxDensityDimension) {
      throw CapacityError("reduced density matrix dimension exceeds " +
                          std::to_string(kMaxDensityDimension));
    }
  }

  std::vector<std::vector<int>> basis;
  const Eigen::MatrixXcd rho = support_reduced(state, keep, &basis);

  const auto full_index = [&](const std::vector<int>& kept_block) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      idx = idx * static_cast<std::uint64_t>(state.space().factor(keep[j]).point_count()) +
            static_cast<std::uint64_t>(kept_block[j]);
    }
    return idx;
  };

  DensityMatrix out;
  out.dimension = dim;
  out.entries.assign(dim * dim, Amplitude{0, 0});
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      out.entries[full_index(basis[r]) * dim + full_index(basis[c])] =
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  if (std::abs(out.trace_real() - 1.0) > kNormTolerance) {
    throw Error("internal: reduced state trace drifted from one");
  }
  return out;
}

double entanglement_entropy(const BranchState& state, std::vector<int> subsystems) {
  subsystems = checked_subset(state, std::move(subsystems), /*proper=*/true);
  const Eigen::MatrixXcd rho = support_reduced(state, subsystems, nullptr);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("internal: eigenvalue decomposition failed");
  }
  double bits = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > kPruneThreshold) bits -= lambda * std::log2(lambda);
  }
  return bits;
}

bool frame_factorizes(const BranchState& state, int subsystem) {
  if (subsystem < 0 || subsystem >= state.space().subsystem_count()) {
    throw DomainError("subsystem " + std::to_string(subsystem) + " outside " +
                      state.space().description());
  }
  const int first = state.branches().front().model.config(subsystem);
  for (const auto& b : state.branches()) {
    if (b.model.config(subsystem) != first) return false;
  }
  return true;
}

bool approx_equal(const BranchState& a, const BranchState& b, double tol) {
  if (!a.space().same(b.space())) return false;
  if (a.branch_count() != b.branch_count()) return false;
  for (std::size_t i = 0; i < a.branch_count(); ++i) {
    if (a.branches()[i].model != b.branches()[i].model) return false;
    if (std::abs(a.branches()[i].amplitude - b.branches()[i].amplitude) > tol) return false;
  }
  return true;
}

}  // namespace qrf
