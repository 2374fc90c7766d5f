// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#include <casimir/oracle.hpp>
#include <casimir/piston.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace {

using namespace casimir;
using namespace casimir::oracle;
constexpr double pi = std::numbers::pi;

TEST(RegularizedEnergy, IntervalPositiveAndMonotone) {
  const double one[1] = {1.0};
  double prev = 0.0;
  for (double lambda : {0.4, 0.2, 0.1, 0.05}) {
    const double e = regularized_energy(one, BoundaryCondition::Dirichlet, lambda);
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(RegularizedEnergy, IntervalClosedForm) {
  // (1/2) sum n pi e^{-lambda n pi} = (pi/2) q / (1-q)^2, q = e^{-lambda pi}
  const double one[1] = {1.0};
  const double q = std::exp(-0.1 * pi);
  EXPECT_NEAR(regularized_energy(one, BoundaryCondition::Dirichlet, 0.1), 0.5 * pi * q / ((1 - q) * (1 - q)), 1e-12);
}

TEST(RegularizedEnergy, PermutationAndScaling) {
  const double a[3] = {0.7, 1.0, 1.3};
  const double b[3] = {1.3, 0.7, 1.0};
  const double ea = regularized_energy(a, BoundaryCondition::Neumann, 0.2);
  EXPECT_NEAR(ea, regularized_energy(b, BoundaryCondition::Neumann, 0.2), 1e-12 * ea);
  const double a2[3] = {1.4, 2.0, 2.6};
  EXPECT_NEAR(regularized_energy(a2, BoundaryCondition::Neumann, 0.4), 0.5 * ea, 1e-12 * ea);
}

TEST(RegularizedEnergy, RejectsBadCutoff) {
  const double one[1] = {1.0};
  EXPECT_THROW(regularized_energy(one, BoundaryCondition::Dirichlet, 0.0), std::domain_error);
  const double two[2] = {1.0, 1.0};
  EXPECT_THROW(regularized_energy(two, BoundaryCondition::EM, 0.1), std::domain_error);
}

// The factorized heat-trace evaluation against direct mode enumeration at a
// finite cutoff.
TEST(SubtractedDamped, MatchesDirectEnumeration) {
  for (auto reg : {Regulator::Exponential, Regulator::Gaussian}) {
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::EM}) {
      const double d = 0.3, H = 1.0, lambda = 0.08;
      const std::vector<double> t{0.9, 1.1};
      auto direct = [&](double l1) {
        const double l[3] = {l1, t[0], t[1]};
        return regularized_energy(l, bc, lambda, reg);
      };
      const double ref = (direct(d) + direct(H - d)) - 2.0 * direct(0.5 * H);
      const DampedEnergy f = subtracted_damped_energy(d, H, t, bc, lambda, reg);
      EXPECT_NEAR(f.value, ref, 1e-9 * std::abs(direct(d))) << static_cast<int>(bc);
    }
  }
}

TEST(OraclePiston, MidpointIsZero) {
  const std::vector<double> t{1.0, 1.0};
  EXPECT_EQ(oracle_piston_energy(0.5, 1.0, t, BoundaryCondition::EM).value, 0.0);
  EXPECT_EQ(subtracted_damped_energy(0.5, 1.0, t, BoundaryCondition::Dirichlet, 0.1).value, 0.0);
}

TEST(OraclePiston, OneDimensionalClosedForm) {
  const std::vector<double> none;
  for (double d : {0.1, 0.25, 0.4}) {
    const double H = 1.0;
    const double exact = -(pi / 24.0) * (1.0 / d + 1.0 / (H - d) - 4.0 / H);
    const OracleResult r = oracle_piston_energy(d, H, none, BoundaryCondition::Dirichlet);
    EXPECT_NEAR(r.value, exact, 1e-8 * std::abs(exact));
    EXPECT_LE(std::abs(r.value - exact), r.error_bar + 1e-12);
  }
}

TEST(OraclePiston, AgreesWithPeriodicOrbits) {
  const std::vector<double> t{1.0, 1.0};
  PistonConfig c;
  c.geometry = Geometry::BoxFlatHead;
  c.H = 1.0;
  c.l2 = c.l3 = 1.0;
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::EM}) {
    for (double d : {0.05, 0.17, 0.33}) {
      c.d = d;
      const double orbit = piston::subtracted_energy(c, bc).value();
      EXPECT_NEAR(oracle_piston_energy(d, 1.0, t, bc).value, orbit, 1e-4 * std::abs(orbit));
    }
  }
}

TEST(OraclePiston, CutoffAndRegulatorIndependence) {
  const std::vector<double> t{1.0, 1.0};
  for (double d : {0.05, 0.3}) {
    const OracleResult base = oracle_piston_energy(d, 1.0, t, BoundaryCondition::EM);
    OracleControl small;
    small.lambda0_factor = base.lambdas.front() / std::min(d, 1.0) / 4.0;
    const OracleResult q = oracle_piston_energy(d, 1.0, t, BoundaryCondition::EM, small);
    EXPECT_LT(std::abs(q.value - base.value), base.error_bar);
    OracleControl gauss;
    gauss.regulator = Regulator::Gaussian;
    const OracleResult g = oracle_piston_energy(d, 1.0, t, BoundaryCondition::EM, gauss);
    EXPECT_LT(std::abs(g.value - base.value), 2.0 * std::max(base.error_bar, g.error_bar));
  }
}

TEST(OraclePiston, Preconditions) {
  const std::vector<double> t{1.0, 1.0};
  EXPECT_THROW(oracle_piston_energy(1.2, 1.0, t, BoundaryCondition::EM), std::domain_error);
  OracleControl one;
  one.levels = 1;
  EXPECT_THROW(oracle_piston_energy(0.2, 1.0, t, BoundaryCondition::EM, one), std::domain_error);
}

}  // namespace
