#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qent/measures.hpp"
#include "qent/paradigm.hpp"

using namespace qent;
using Catch::Matchers::WithinAbs;

TEST_CASE("paradigm state construction") {
  const auto ghz2 = build_state(ParadigmFamily(ParadigmTag::GHZ, 2));
  CHECK_THAT(std::abs(ghz2.amp(0) - Complex{1.0 / std::sqrt(2.0), 0}), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(ghz2.amp(3) - Complex{1.0 / std::sqrt(2.0), 0}), WithinAbs(0, 1e-15));

  const auto w2 = build_state(ParadigmFamily(ParadigmTag::W, 2));
  CHECK_THAT(std::abs(w2.amp(1) - Complex{1.0 / std::sqrt(2.0), 0}), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(w2.amp(2) - Complex{1.0 / std::sqrt(2.0), 0}), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(w2.amp(0)), WithinAbs(0, 1e-15));

  // EPR_4 = |Phi+> x |Phi+>: amplitude 1/2 on 0000, 0011, 1100, 1111
  const auto epr4 = build_state(ParadigmFamily(ParadigmTag::EPR, 4));
  for (std::uint64_t idx : {0u, 3u, 12u, 15u}) {
    CHECK_THAT(std::abs(epr4.amp(idx) - Complex{0.5, 0}), WithinAbs(0, 1e-15));
  }
  CHECK_THAT(std::abs(epr4.amp(5)), WithinAbs(0, 1e-15));

  CHECK_THROWS_AS(ParadigmFamily(ParadigmTag::EPR, 5), std::invalid_argument);
  CHECK_THROWS_AS(ParadigmFamily(ParadigmTag::GHZ, 1), std::invalid_argument);
}

TEST_CASE("nonzero amplitude counts") {
  for (int n : {4, 6, 8}) {
    const auto count_nonzero = [](const StateVector& psi) {
      int count = 0;
      for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        if (std::abs(psi.amp(static_cast<std::uint64_t>(i))) > 1e-14) ++count;
      }
      return count;
    };
    CHECK(count_nonzero(build_state(ParadigmFamily(ParadigmTag::GHZ, n))) == 2);
    CHECK(count_nonzero(build_state(ParadigmFamily(ParadigmTag::W, n))) == n);
    CHECK(count_nonzero(build_state(ParadigmFamily(ParadigmTag::EPR, n))) == (1 << (n / 2)));
  }
}

TEST_CASE("closed forms at reference sizes") {
  const auto ghz = closed_form(ParadigmFamily(ParadigmTag::GHZ, 7));
  CHECK(ghz.eg1 == 1.0);
  CHECK_THAT(ghz.g21, WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(ghz.eg2, WithinAbs(2.0 / 3.0, 1e-15));

  const auto epr6 = closed_form(ParadigmFamily(ParadigmTag::EPR, 6));
  CHECK_THAT(epr6.eg1, WithinAbs(1.0, 1e-15));
  CHECK_THAT(epr6.g21, WithinAbs(0.4, 1e-15));
  CHECK_THAT(epr6.eg2, WithinAbs(0.88, 1e-15));

  const auto w4 = closed_form(ParadigmFamily(ParadigmTag::W, 4));
  CHECK_THAT(w4.eg1, WithinAbs(0.75, 1e-15));
  CHECK_THAT(w4.g21, WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(w4.eg2, WithinAbs(2.0 / 3.0, 1e-15));

  const auto w8 = closed_form(ParadigmFamily(ParadigmTag::W, 8));
  CHECK_THAT(w8.eg1, WithinAbs(4.0 * 7.0 / 64.0, 1e-15));
}

TEST_CASE("thermodynamic limits") {
  const auto ghz = thermodynamic_limits(ParadigmTag::GHZ);
  CHECK(ghz.eg1 == 1.0);
  CHECK_THAT(ghz.g21, WithinAbs(2.0 / 3.0, 1e-15));
  const auto epr = thermodynamic_limits(ParadigmTag::EPR);
  CHECK(epr.eg1 == 1.0);
  CHECK(epr.g21 == 0.5);
  CHECK(epr.eg2 == 1.0);
  const auto w = thermodynamic_limits(ParadigmTag::W);
  CHECK(w.eg1 == 0.0);
  CHECK(w.g21 == 0.0);
  CHECK(w.eg2 == 0.0);
}

TEST_CASE("brute force reproduces every closed form") {
  // The pair formulas assume at least one traced-out qubit, so the G(2,1)
  // and E_G^(2) comparisons start at N = 3 (at N = 2 the "pair" is the
  // whole pure state and G(2,1) = 0 regardless of family).
  for (int n : {2, 3, 4, 6, 8, 10}) {
    for (ParadigmTag tag : {ParadigmTag::GHZ, ParadigmTag::W, ParadigmTag::EPR}) {
      if (tag == ParadigmTag::EPR && n % 2 != 0) continue;
      const ParadigmFamily family(tag, n);
      const auto psi = build_state(family);
      const auto closed = closed_form(family);
      CHECK_THAT(meyer_wallach(psi), WithinAbs(closed.eg1, 1e-12));
      if (n >= 3) {
        CHECK_THAT(g2_of_state(psi, 1), WithinAbs(closed.g21, 1e-12));
        CHECK_THAT(eg2_of_state(psi), WithinAbs(closed.eg2, 1e-12));
      }
    }
  }
}

TEST_CASE("translational symmetry makes G(2,1) and E_G^(2) agree for GHZ and W") {
  for (int n : {4, 6, 9}) {
    for (ParadigmTag tag : {ParadigmTag::GHZ, ParadigmTag::W}) {
      const auto psi = build_state(ParadigmFamily(tag, n));
      CHECK_THAT(g2_of_state(psi, 1), WithinAbs(eg2_of_state(psi), 1e-12));
    }
  }
}

TEST_CASE("EPR pairs are maximally mixed beyond nearest separation") {
  for (int n : {4, 6, 8}) {
    const auto psi = build_state(ParadigmFamily(ParadigmTag::EPR, n));
    for (int l = 2; l <= n - 1; ++l) {
      CHECK_THAT(g2_of_state(psi, l), WithinAbs(1.0, 1e-12));
    }
  }
}
