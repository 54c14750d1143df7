#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qent/density_matrix.hpp"
#include "qent/paradigm.hpp"
#include "qent/pauli.hpp"
#include "qent/partial_trace.hpp"
#include "test_util.hpp"

using namespace qent;
using Catch::Matchers::WithinAbs;

TEST_CASE("pauli decomposition of reference states") {
  // maximally mixed pair
  const CorrelatorTable mixed = pauli_decompose(DensityMatrix(0.25 * MatrixXcd::Identity(4, 4)));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CHECK_THAT(mixed.p[a][b], WithinAbs(a == 0 && b == 0 ? 1.0 : 0.0, 1e-12));
    }
  }

  // |Phi+>: p_xx = 1, p_yy = -1, p_zz = 1
  const auto bell = DensityMatrix::pure(build_state(ParadigmFamily(ParadigmTag::GHZ, 2)));
  const CorrelatorTable tb = pauli_decompose(bell);
  CHECK_THAT(tb.p[kPauliX][kPauliX], WithinAbs(1.0, 1e-12));
  CHECK_THAT(tb.p[kPauliY][kPauliY], WithinAbs(-1.0, 1e-12));
  CHECK_THAT(tb.p[kPauliZ][kPauliZ], WithinAbs(1.0, 1e-12));
  CHECK_THAT(tb.p[kPauliI][kPauliZ], WithinAbs(0.0, 1e-12));

  // |00><00|: p_00 = p_0z = p_z0 = p_zz = 1
  const auto zz = pauli_decompose(DensityMatrix::pure(StateVector::basis_state(2, 0)));
  CHECK_THAT(zz.p[kPauliI][kPauliZ], WithinAbs(1.0, 1e-12));
  CHECK_THAT(zz.p[kPauliZ][kPauliI], WithinAbs(1.0, 1e-12));
  CHECK_THAT(zz.p[kPauliZ][kPauliZ], WithinAbs(1.0, 1e-12));
  CHECK_THAT(zz.p[kPauliX][kPauliX], WithinAbs(0.0, 1e-12));
}

TEST_CASE("pauli table round trip") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rho = testutil::random_two_qubit_dm(500 + seed);
    const auto back = rho_from_pauli(pauli_decompose(rho));
    CHECK_THAT((back.entries() - rho.entries()).cwiseAbs().maxCoeff(),
               WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("rho_from_pauli on hand-built tables") {
  CorrelatorTable id;
  id.p[0][0] = 1.0;
  const auto mixed = rho_from_pauli(id);
  CHECK_THAT((mixed.entries() - 0.25 * MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(),
             WithinAbs(0.0, 1e-14));

  CorrelatorTable zz = id;
  zz.p[kPauliZ][kPauliZ] = 1.0;
  const auto classical = rho_from_pauli(zz);
  CHECK_THAT(classical.entries()(0, 0).real(), WithinAbs(0.5, 1e-14));
  CHECK_THAT(classical.entries()(1, 1).real(), WithinAbs(0.0, 1e-14));
  CHECK_THAT(classical.entries()(3, 3).real(), WithinAbs(0.5, 1e-14));

  CorrelatorTable unphysical = id;
  unphysical.p[kPauliX][kPauliX] = 1.0;
  unphysical.p[kPauliY][kPauliY] = 1.0;
  unphysical.p[kPauliZ][kPauliZ] = 1.0;
  CHECK_THROWS_AS(rho_from_pauli(unphysical), PsdError);

  CorrelatorTable unnormalized = id;
  unnormalized.p[0][0] = 0.5;
  CHECK_THROWS_AS(rho_from_pauli(unnormalized), std::invalid_argument);
}

TEST_CASE("pauli decomposition needs a pair state") {
  MatrixXcd single = MatrixXcd::Zero(2, 2);
  single(0, 0) = 1.0;
  CHECK_THROWS_AS(pauli_decompose(DensityMatrix(single)), std::invalid_argument);
}

TEST_CASE("purity from the table matches the matrix path") {
  CorrelatorTable id;
  id.p[0][0] = 1.0;
  CHECK_THAT(purity_from_pauli(id), WithinAbs(0.25, 1e-15));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rho = testutil::random_two_qubit_dm(600 + seed);
    CHECK_THAT(purity_from_pauli(pauli_decompose(rho)), WithinAbs(purity(rho), 1e-12));
  }
}

TEST_CASE("linear entropy lower-bounds von Neumann entropy for qubits") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = partial_trace(testutil::random_state(3, 700 + seed), {0});
    CHECK(linear_entropy(rho) <= von_neumann_entropy(rho, 2) + 1e-12);
  }
}

TEST_CASE("the d=4 entropy bound has counterexamples") {
  // The qubit inequality S_L <= S_V does not extend to dimension 4: a
  // rank-2-dominated spectrum violates it, so nothing in this library may
  // rely on it beyond d = 2.
  MatrixXcd diag = MatrixXcd::Zero(4, 4);
  diag(0, 0) = 0.45;
  diag(1, 1) = 0.45;
  diag(2, 2) = 0.05;
  diag(3, 3) = 0.05;
  const DensityMatrix rho(std::move(diag));
  CHECK(linear_entropy(rho) > von_neumann_entropy(rho, 4) + 0.04);
}
