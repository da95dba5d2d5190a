#include "qrf/qstate.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace qrf;
using std::complex;

namespace {

const double kInvRoot2 = 1.0 / std::sqrt(2.0);

ModelSpace lattice(int n, int particles) {
  return ModelSpace::power(ConfigSpace::regular(Group::cyclic(n)), particles);
}

std::vector<int> cfg(const Model& m) { return {m.configs().begin(), m.configs().end()}; }

/// Independent entropy oracle for two-branch states: embed the full tensor
/// vector, partial-trace by summation, then solve the rank-two spectrum from
/// trace and purity alone.
double entropy_via_embedding(const BranchState& state, const std::vector<int>& keep) {
  const auto& space = state.space();
  const auto psi = embed_vector(state);
  std::vector<int> dims;
  for (int i = 0; i < space.subsystem_count(); ++i) dims.push_back(space.factor(i).point_count());

  const auto coords_of = [&](std::size_t flat) {
    std::vector<int> c(dims.size());
    for (int i = space.subsystem_count() - 1; i >= 0; --i) {
      c[i] = static_cast<int>(flat % dims[i]);
      flat /= dims[i];
    }
    return c;
  };
  const auto split = [&](const std::vector<int>& c) {
    std::pair<std::vector<int>, std::vector<int>> parts;
    for (int i = 0; i < space.subsystem_count(); ++i) {
      const bool kept = std::find(keep.begin(), keep.end(), i) != keep.end();
      (kept ? parts.first : parts.second).push_back(c[i]);
    }
    return parts;
  };

  // rho[kept, kept'] accumulated over equal traced blocks.
  std::map<std::pair<std::vector<int>, std::vector<int>>, complex<double>> rho;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (std::abs(psi[i]) == 0.0) continue;
    const auto [ki, ti] = split(coords_of(i));
    for (std::size_t j = 0; j < psi.size(); ++j) {
      if (std::abs(psi[j]) == 0.0) continue;
      const auto [kj, tj] = split(coords_of(j));
      if (ti == tj) rho[{ki, kj}] += psi[i] * std::conj(psi[j]);
    }
  }
  double trace = 0;
  double purity = 0;
  for (const auto& [key, value] : rho) {
    if (key.first == key.second) trace += value.real();
    const auto transposed = rho.find({key.second, key.first});
    if (transposed != rho.end()) purity += (value * transposed->second).real();
  }
  REQUIRE(trace == doctest::Approx(1.0).epsilon(1e-9));
  // Two branches mean rank <= 2: eigenvalues from trace one and the purity.
  const double disc = std::sqrt(std::max(0.0, 2.0 * purity - 1.0));
  const double l1 = (1.0 + disc) / 2.0;
  const double l2 = (1.0 - disc) / 2.0;
  double bits = 0;
  for (const double l : {l1, l2}) {
    if (l > 1e-12) bits -= l * std::log2(l);
  }
  return bits;
}

}  // namespace

TEST_CASE("superpose normalises, prunes and orders branches") {
  const auto space = lattice(16, 2);
  const auto st = superpose({{complex<double>(1, 0), space.make({0, 5})},
                             {complex<double>(1, 0), space.make({0, 3})}});
  REQUIRE(st.branch_count() == 2);
  // Canonical order puts the orbit of (0, 3) first.
  CHECK(cfg(st.branches()[0].model) == std::vector<int>{0, 3});
  CHECK(cfg(st.branches()[1].model) == std::vector<int>{0, 5});
  CHECK(st.branches()[0].amplitude.real() == doctest::Approx(kInvRoot2).epsilon(1e-12));

  double total = 0;
  for (const auto& b : st.branches()) total += std::norm(b.amplitude);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto pruned = superpose({{complex<double>(1, 0), space.make({0, 5})},
                                 {complex<double>(1e-13, 0), space.make({0, 3})}});
  CHECK(pruned.branch_count() == 1);
  CHECK(pruned.branches()[0].amplitude.real() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(superpose({}), DomainError);
  CHECK_THROWS_AS(superpose({{complex<double>(0, 0), space.make({0, 5})}}), DomainError);
}

TEST_CASE("superpose rejects symmetry copies unless told otherwise") {
  const auto space = lattice(16, 2);
  // (5, 8) is (0, 3) shifted by five: one orbit, two branches.
  try {
    (void)superpose({{complex<double>(1, 0), space.make({0, 3})},
                     {complex<double>(1, 0), space.make({5, 8})}});
    FAIL("expected OrbitCollisionError");
  } catch (const OrbitCollisionError& e) {
    CHECK(e.branch_a == 0);
    CHECK(e.branch_b == 1);
  }

  const auto lenient = superpose({{complex<double>(1, 0), space.make({0, 3})},
                                  {complex<double>(1, 0), space.make({5, 8})}},
                                 OrbitPolicy::kAllowSharedOrbit);
  CHECK(lenient.branch_count() == 2);

  // Identical configurations merge amplitudes under the lenient policy.
  const auto merged = superpose({{complex<double>(0.6, 0), space.make({0, 3})},
                                 {complex<double>(0.4, 0), space.make({0, 3})}},
                                OrbitPolicy::kAllowSharedOrbit);
  CHECK(merged.branch_count() == 1);
  CHECK(merged.branches()[0].amplitude.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("controlled transforms move branches without touching weights") {
  const auto space = lattice(16, 2);
  const complex<double> alpha(0.6, 0.0);
  const complex<double> beta(0.0, 0.8);
  const auto st = superpose({{alpha, space.make({0, 3})}, {beta, space.make({0, 5})}});

  const auto orbit_a = orbit_label(space.make({0, 3}));
  const auto moved = controlled_transform(st, [&](const OrbitLabel& o) {
    return std::optional(space.group().element(o == orbit_a ? 2 : 0));
  });
  REQUIRE(moved.branch_count() == 2);
  CHECK(cfg(moved.branches()[0].model) == std::vector<int>{2, 5});
  CHECK(cfg(moved.branches()[1].model) == std::vector<int>{0, 5});
  CHECK(moved.branches()[0].amplitude == alpha);
  CHECK(moved.branches()[1].amplitude == beta);
  CHECK(moved.orbits()[0] == st.orbits()[0]);
  CHECK(moved.orbits()[1] == st.orbits()[1]);

  const auto shifted = controlled_transform(st, space.group().element(7));
  CHECK(cfg(shifted.branches()[0].model) == std::vector<int>{7, 10});
  CHECK(cfg(shifted.branches()[1].model) == std::vector<int>{7, 12});

  CHECK_THROWS_AS(controlled_transform(st, [&](const OrbitLabel& o) {
                    return o == orbit_a ? std::optional(space.group().identity()) : std::nullopt;
                  }),
                  DomainError);
}

TEST_CASE("qrf_change re-expresses a state in the target convention") {
  const auto space = lattice(16, 2);
  const auto sec0 = Section::subsystem_at_origin(space, 0);
  const auto sec1 = Section::subsystem_at_origin(space, 1);
  const complex<double> alpha(0.6, 0.0);
  const complex<double> beta(0.0, 0.8);

  const auto in_frame0 = superpose({{alpha, space.make({0, 13})}, {beta, space.make({0, 3})}});
  const auto in_frame1 = qrf_change(in_frame0, sec0, sec1);
  REQUIRE(in_frame1.branch_count() == 2);
  // The amplitude sitting on the partner at -3 rides to the old frame at +3.
  // Canonical order keeps the orbit of (0, 3) in front.
  CHECK(cfg(in_frame1.branches()[0].model) == std::vector<int>{13, 0});
  CHECK(std::abs(in_frame1.branches()[0].amplitude - beta) < kAmplitudeTolerance);
  CHECK(cfg(in_frame1.branches()[1].model) == std::vector<int>{3, 0});
  CHECK(std::abs(in_frame1.branches()[1].amplitude - alpha) < kAmplitudeTolerance);
  CHECK(frame_factorizes(in_frame1, 1));

  // Round trip restores the original exactly.
  CHECK(approx_equal(qrf_change(in_frame1, sec1, sec0), in_frame0));

  // Seeded conventions round-trip the same way.
  const auto wild = Section::seeded(space, 5);
  CHECK(approx_equal(qrf_change(qrf_change(in_frame0, sec0, wild), wild, sec0), in_frame0));

  CHECK_THROWS_AS(qrf_change(in_frame1, sec0, sec1), PreconditionError);
}

TEST_CASE("embed_vector lays branches out in the tensor basis") {
  const auto space = lattice(16, 2);
  const complex<double> alpha(0.6, 0.0);
  const complex<double> beta(0.0, 0.8);
  const auto st = superpose({{alpha, space.make({0, 13})}, {beta, space.make({0, 3})}});
  const auto vec = embed_vector(st);
  REQUIRE(vec.size() == 256);
  CHECK(vec[13] == st.branches()[1].amplitude);  // (0, 13) after canonical sort
  CHECK(vec[3] == st.branches()[0].amplitude);
  double total = 0;
  for (const auto& v : vec) total += std::norm(v);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto too_big = ModelSpace::power(ConfigSpace::regular(Group::cyclic(2)), 25);
  const auto tiny = superpose({{complex<double>(1, 0), too_big.make(std::vector<int>(25, 0))}});
  CHECK_THROWS_AS(embed_vector(tiny), CapacityError);
}

TEST_CASE("reduced density matrices keep coherences only where the rest agrees") {
  const auto space = lattice(16, 2);
  const complex<double> alpha(0.6, 0.0);
  const complex<double> beta(0.0, 0.8);
  const auto st = superpose({{alpha, space.make({0, 13})}, {beta, space.make({0, 3})}});

  const auto rho0 = reduced_density_matrix(st, {0});
  REQUIRE(rho0.dimension == 16);
  CHECK(std::abs(rho0.at(0, 0) - complex<double>(1, 0)) < 1e-12);
  CHECK(rho0.trace_real() == doctest::Approx(1.0).epsilon(1e-12));

  const auto rho1 = reduced_density_matrix(st, {1});
  REQUIRE(rho1.dimension == 16);
  CHECK(std::abs(rho1.at(13, 13) - complex<double>(std::norm(alpha), 0)) < 1e-12);
  CHECK(std::abs(rho1.at(3, 3) - complex<double>(std::norm(beta), 0)) < 1e-12);
  // Subsystem 0 agrees across branches, so the cross term survives.
  CHECK(std::abs(rho1.at(13, 3) - alpha * std::conj(beta)) < 1e-12);
  CHECK(std::abs(rho1.at(3, 13) - std::conj(rho1.at(13, 3))) < 1e-12);

  // Hermiticity across the board.
  for (std::size_t r = 0; r < rho1.dimension; ++r) {
    for (std::size_t c = 0; c < rho1.dimension; ++c) {
      CHECK(std::abs(rho1.at(r, c) - std::conj(rho1.at(c, r))) < 1e-12);
    }
  }

  const auto wide = lattice(64, 2);
  const auto wide_state = superpose({{complex<double>(1, 0), wide.make({0, 3})}});
  CHECK_THROWS_AS(reduced_density_matrix(wide_state, {0, 1}), CapacityError);
}

TEST_CASE("entanglement entropy distinguishes product from entangled cuts") {
  const auto space = lattice(16, 3);
  const complex<double> alpha(kInvRoot2, 0.0);
  const complex<double> beta(0.0, kInvRoot2);

  // Third coordinate rides along: the middle subsystem alone carries the
  // superposition, so every cut through it is a product cut.
  const auto product_like =
      superpose({{alpha, space.make({0, 3, 9})}, {beta, space.make({0, 5, 9})}});
  CHECK(entanglement_entropy(product_like, {1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entanglement_entropy(product_like, {0}) == doctest::Approx(0.0).epsilon(1e-12));

  // After moving the frame to the middle particle the other two swing
  // together: one full bit across either cut.
  const auto sec0 = Section::subsystem_at_origin(space, 0);
  const auto sec1 = Section::subsystem_at_origin(space, 1);
  const auto entangled = qrf_change(product_like, sec0, sec1);
  CHECK(entanglement_entropy(entangled, {0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(entanglement_entropy(entangled, {2}) == doctest::Approx(1.0).epsilon(1e-9));
  // Complementary cuts of a pure state agree.
  CHECK(entanglement_entropy(entangled, {0, 1}) ==
        doctest::Approx(entanglement_entropy(entangled, {2})).epsilon(1e-9));

  // Cross-check against the embedding-based oracle.
  CHECK(entanglement_entropy(entangled, {0}) ==
        doctest::Approx(entropy_via_embedding(entangled, {0})).epsilon(1e-9));

  CHECK_THROWS_AS(entanglement_entropy(product_like, {}), DomainError);
  CHECK_THROWS_AS(entanglement_entropy(product_like, {0, 1, 2}), DomainError);
  CHECK_THROWS_AS(entanglement_entropy(product_like, {3}), DomainError);
}

TEST_CASE("unbalanced weights give the expected fractional bit") {
  const auto space = lattice(16, 3);
  const complex<double> alpha(0.5, 0.0);                  // |alpha|^2 = 1/4
  const complex<double> beta(0.0, std::sqrt(3.0) / 2.0);  // |beta|^2 = 3/4
  const auto st = superpose({{alpha, space.make({0, 3, 9})}, {beta, space.make({0, 5, 9})}});
  const auto sec0 = Section::subsystem_at_origin(space, 0);
  const auto sec1 = Section::subsystem_at_origin(space, 1);
  const auto entangled = qrf_change(st, sec0, sec1);

  const double expected = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(expected == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK(entanglement_entropy(entangled, {0}) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(entanglement_entropy(entangled, {0}) ==
        doctest::Approx(entropy_via_embedding(entangled, {0})).epsilon(1e-9));
}

TEST_CASE("frame_factorizes spots coordinates pinned across branches") {
  const auto space = lattice(16, 3);
  const auto st = superpose({{complex<double>(kInvRoot2, 0), space.make({0, 3, 9})},
                             {complex<double>(0, kInvRoot2), space.make({0, 5, 9})}});
  CHECK(frame_factorizes(st, 0));
  CHECK_FALSE(frame_factorizes(st, 1));
  CHECK(frame_factorizes(st, 2));
  CHECK_THROWS_AS(frame_factorizes(st, 3), DomainError);
}

TEST_CASE("approx_equal compares canonical forms componentwise") {
  const auto space = lattice(16, 2);
  const complex<double> alpha(0.6, 0.0);
  const complex<double> beta(0.0, 0.8);
  const auto a = superpose({{alpha, space.make({0, 3})}, {beta, space.make({0, 5})}});
  const auto b = superpose({{beta, space.make({0, 5})}, {alpha, space.make({0, 3})}});
  CHECK(approx_equal(a, b));

  const auto nudged = superpose(
      {{alpha + complex<double>(1e-10, 0), space.make({0, 3})}, {beta, space.make({0, 5})}});
  CHECK_FALSE(approx_equal(a, nudged));
  CHECK(approx_equal(a, nudged, 1e-9));

  const auto other = superpose({{alpha, space.make({0, 4})}, {beta, space.make({0, 5})}});
  CHECK_FALSE(approx_equal(a, other));
}
