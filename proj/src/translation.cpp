#include "qrf/translation.hpp"

#include <cmath>

namespace qrf {

void TranslationScenario::validate() const {
  if (lattice_size < 4) throw DomainError("lattice needs at least four sites");
  if (particle_count != 2 && particle_count != 3) {
    throw DomainError("scenario supports two or three particles");
  }
  if (separation <= 0 || 2 * separation >= lattice_size) {
    throw DomainError("separation must satisfy 0 < a < n/2; a = " +
                      std::to_string(separation) + " on " + std::to_string(lattice_size) +
                      " sites degenerates");
  }
  const double weight = std::norm(alpha) + std::norm(beta);
  if (std::abs(weight - 1.0) > kNormTolerance) {
    throw DomainError("branch weights must sum to one");
  }
}

ModelSpace TranslationScenario::space() const {
  validate();
  return ModelSpace::power(ConfigSpace::regular(Group::cyclic(lattice_size)), particle_count);
}

BranchState build_earth_particle(const TranslationScenario& sc) {
  sc.validate();
  if (sc.particle_count != 2) {
    throw DomainError("the earth/particle pair needs exactly two bodies");
  }
  const auto space = sc.space();
  return superpose({{sc.alpha, space.make({0, sc.lattice_size - sc.separation})},
                    {sc.beta, space.make({0, sc.separation})}});
}

BranchState to_mass_frame(const BranchState& state, const TranslationScenario& sc) {
  sc.validate();
  const auto space = sc.space();
  if (!state.space().same(space) || sc.particle_count != 2) {
    throw DomainError("state does not describe the earth/particle pair");
  }
  return qrf_change(state, Section::subsystem_at_origin(space, 0),
                    Section::subsystem_at_origin(space, 1));
}

int relative_distance(const Model& m, int i, int j) {
  const int n = m.space().factor(i).point_count();
  if (m.space().factor(j).point_count() != n) {
    throw DomainError("subsystems " + std::to_string(i) + " and " + std::to_string(j) +
                      " live on different lattices");
  }
  int d = ((m.config(i) - m.config(j)) % n + n) % n;
  if (2 * d > n) d -= n;
  return d;
}

namespace {

FrameView view_of(const BranchState& state, int frame_subsystem) {
  FrameView view;
  view.frame_subsystem = frame_subsystem;
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != frame_subsystem) view.pair[slot++] = i;
  }
  for (const auto& b : state.branches()) {
    view.branch_positions.emplace_back(b.model.configs().begin(), b.model.configs().end());
    view.amplitudes.push_back(b.amplitude);
  }
  for (int i = 0; i < 3; ++i) view.factorizes[i] = frame_factorizes(state, i);
  for (int k = 0; k < 2; ++k) {
    view.pair_entropy_bits[k] = entanglement_entropy(state, {view.pair[k]});
  }
  return view;
}

}  // namespace

ThreeParticleReport three_particle_report(int lattice_size,
                                          const std::array<std::array<int, 3>, 2>& positions,
                                          Amplitude alpha, Amplitude beta) {
  TranslationScenario sc;
  sc.lattice_size = lattice_size;
  sc.particle_count = 3;
  sc.separation = 1;  // unused by the three-body layout
  sc.alpha = alpha;
  sc.beta = beta;
  sc.validate();
  if (positions[0][0] != positions[1][0]) {
    throw DomainError("particle 0 must sit at one spot in both branches");
  }

  const auto space = sc.space();
  const int n = lattice_size;
  const auto shifted = [&](const std::array<int, 3>& q) {
    std::vector<int> c(3);
    for (int i = 0; i < 3; ++i) c[i] = (((q[i] - q[0]) % n) + n) % n;
    return space.make(std::move(c));
  };

  const auto from_first =
      superpose({{alpha, shifted(positions[0])}, {beta, shifted(positions[1])}});
  const auto from_second = qrf_change(from_first, Section::subsystem_at_origin(space, 0),
                                      Section::subsystem_at_origin(space, 1));

  ThreeParticleReport report;
  report.lattice_size = lattice_size;
  report.alpha = alpha;
  report.beta = beta;
  report.frames = {view_of(from_first, 0), view_of(from_second, 1)};
  return report;
}

}  // namespace qrf
