#pragma once

#include <array>

#include "qrf/qstate.hpp"

namespace qrf {

/// Bodies on a cyclic lattice of n sites: a heavy anchor (subsystem 0) and
/// light partners, all moved together by the lattice shifts.
struct TranslationScenario {
  int lattice_size = 16;
  int particle_count = 2;
  int separation = 3;
  Amplitude alpha{0.7071067811865475244, 0.0};
  Amplitude beta{0.7071067811865475244, 0.0};

  /// Lattice of at least four sites, 0 < separation < n/2, two or three
  /// particles, unit total weight. Throws DomainError otherwise.
  void validate() const;
  ModelSpace space() const;
};

/// The anchor pinned at its own origin, the partner split across the two
/// opposite displacements: alpha rides on -separation, beta on +separation.
BranchState build_earth_particle(const TranslationScenario& sc);

/// The same physics told from the light partner: its own position pinned,
/// the anchor now carrying the superposition with the amplitudes swapped
/// onto mirrored displacements.
BranchState to_mass_frame(const BranchState& state, const TranslationScenario& sc);

/// Signed lattice separation x_i - x_j folded into (-n/2, n/2]. A shift of
/// the whole model cannot change it.
int relative_distance(const Model& m, int i, int j);

/// One convention's view of the three-particle superposition.
struct FrameView {
  int frame_subsystem = 0;
  std::array<int, 2> pair{};  // the two non-frame subsystems
  std::vector<std::vector<int>> branch_positions;
  std::vector<Amplitude> amplitudes;
  std::array<bool, 3> factorizes{};
  /// Entropy of each pair member against the rest, in bits.
  std::array<double, 2> pair_entropy_bits{};
};

struct ThreeParticleReport {
  int lattice_size = 0;
  Amplitude alpha{};
  Amplitude beta{};
  std::array<FrameView, 2> frames;  // seen from particle 0, then particle 1
};

/// Describe a two-branch, three-particle superposition from particle 0 and
/// again from particle 1. Particle 0 must sit at one spot in both branches;
/// the branches must differ by more than a shift.
ThreeParticleReport three_particle_report(int lattice_size,
                                          const std::array<std::array<int, 3>, 2>& positions,
                                          Amplitude alpha, Amplitude beta);

}  // namespace qrf
