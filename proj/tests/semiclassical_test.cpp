// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#include <casimir/semiclassical.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace {

using namespace casimir;
using namespace casimir::semiclassical;
constexpr double pi = std::numbers::pi;

TEST(Density, HalfCylinderExamples) {
  EXPECT_NEAR(density_updown_halfcyl(pi, 1, 1.0, 1.0), -std::sqrt(2.0) / (4.0 * pi), 1e-14);
  for (double E : {0.3, 2.0, 7.5})
    EXPECT_NEAR(density_updown_halfcyl(E, 2, 1.0, 2.0), 2.0 * density_updown_halfcyl(E, 2, 1.0, 1.0), 1e-14);
  // cos root: E l - sigma pi/2 - pi/4 = pi/2 with l = 2, sigma = 1
  EXPECT_NEAR(density_updown_halfcyl(1.25 * pi / 2.0 * 1.0, 1, 1.0, 1.0), 0.0, 1e-15);
  EXPECT_THROW(density_updown_halfcyl(0.0, 1, 1.0, 1.0), std::domain_error);
}

TEST(Density, HemisphereExamples) {
  EXPECT_NEAR(density_updown_hemisphere(pi / 2.0, 1, 1.0), 1.0 / (2.0 * pi), 1e-15);
  // E l - pi = pi/2 with l = 2
  EXPECT_NEAR(density_updown_hemisphere(3.0 * pi / 4.0, 1, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(density_updown_hemisphere(pi / 4.0, 1, 2.0), 2.0 * density_updown_hemisphere(pi / 2.0, 1, 1.0), 1e-15);
  EXPECT_THROW(density_updown_hemisphere(-1.0, 1, 1.0), std::domain_error);
}

// (1/2) int_0^inf E rho(E) exp(-eps E) dE for the k = 1 hemisphere orbit,
// extrapolated to eps -> 0, against the first term 1/(16 pi R) of the series.
TEST(Density, HemisphereIntegralConsistency) {
  using boost::math::quadrature::gauss_kronrod;
  auto damped = [](double eps) {
    auto f = [eps](double E) { return 0.5 * E * density_updown_hemisphere(E, 1, 1.0) * std::exp(-eps * E); };
    // split at multiples of the period pi so each panel is smooth and short
    double total = 0.0;
    const double end = 45.0 / eps;
    for (double a = 1e-300; a < end; a += pi) total += gauss_kronrod<double, 31>::integrate(f, a, std::min(a + pi, end), 5, 1e-13);
    return total;
  };
  // damped(eps) = limit + c eps^2 + ...
  const double e1 = damped(0.4), e2 = damped(0.2);
  const double extrapolated = (4.0 * e2 - e1) / 3.0;
  EXPECT_NEAR(extrapolated, 1.0 / (16.0 * pi), 1e-2 / (16.0 * pi));
}

TEST(UpDownHalfCylinder, VanishesForEveryOrbit) {
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::EM}) {
    const EnergyResult e = energy_updown_halfcyl(1.0, 1.0, bc);
    EXPECT_EQ(e.coefficient, 0.0);
    EXPECT_EQ(e.provenance, Provenance::Exact);
  }
  EXPECT_EQ(energy_updown_halfcyl(2.5, 10.0, BoundaryCondition::Neumann).value(), 0.0);
}

TEST(UpDownHalfCylinder, CounterfactualMaslovWiresPrefactor) {
  SeriesControl one;
  one.k_max = 1;
  const EnergyResult e = energy_updown_halfcyl(1.0, 1.0, BoundaryCondition::Dirichlet, one, [](int) { return 2; });
  const double expected = 3.0 / (8.0 * pi * std::sqrt(2.0)) / 8.0;
  EXPECT_NEAR(e.value(), expected, 1e-15);
  EXPECT_GT(e.value(), 0.0);
}

// The inner sum has the closed form sum_{m=1}^{k} csc^2(m pi/(2k+1)) = 2k(k+1)/3,
// which reduces the double series to a single alternating one.
double halfcyl_reference() {
  double s = 0.0, prev = 0.0;
  const int K = 200000;
  for (int k = 1; k <= K; ++k) {
    prev = s;
    s += (k % 2 ? -1.0 : 1.0) * 2.0 * k * (k + 1) / (3.0 * std::pow(2.0 * k + 1, 4));
  }
  return 0.5 * (s + prev);  // average of consecutive partial sums
}

TEST(HalfCylinder, DoubleSumMatchesClosedFormInnerSum) {
  const SeriesValue s = halfcyl_double_sum();
  const double ref = halfcyl_reference();
  EXPECT_NEAR(ref, -0.012163159594, 1e-11);
  EXPECT_NEAR(s.value, ref, 5e-9);
  EXPECT_GE(s.error, 0.0);
}

TEST(HalfCylinder, GoldenValues) {
  const EnergyResult d = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet);
  const EnergyResult n = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Neumann);
  EXPECT_NEAR(d.value(), -1.209e-4, 5e-3 * 1.209e-4);
  EXPECT_NEAR(n.value(), 1.209e-4, 5e-3 * 1.209e-4);
  EXPECT_EQ(d.coefficient, -n.coefficient);
  EXPECT_EQ(d.scale, Scale::HbarCLOverR2);
  EXPECT_EQ(energy_halfcylinder(1.0, 1.0, BoundaryCondition::EM).coefficient, 0.0);
}

TEST(HalfCylinder, ShortSeriesIsFlaggedNotFatal) {
  SeriesControl tiny;
  tiny.k_max = 5;
  tiny.m_max = 2;
  const EnergyResult e = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, tiny);
  EXPECT_GT(e.truncation_error, tiny.tol * std::abs(e.coefficient));
  const double exact = halfcyl_reference() / (32.0 * pi);
  EXPECT_LE(std::abs(e.coefficient - exact), e.truncation_error);
}

TEST(Cylinder, TwiceHalfAndLinearInL) {
  EXPECT_NEAR(energy_cylinder(1.0, 1.0, BoundaryCondition::Dirichlet).value(), -2.418e-4, 5e-3 * 2.418e-4);
  EXPECT_NEAR(energy_cylinder(1.0, 2.0, BoundaryCondition::Neumann).value(), 4.836e-4, 5e-3 * 4.836e-4);
  EXPECT_EQ(energy_cylinder(1.0, 1.0, BoundaryCondition::EM).value(), 0.0);
}

TEST(UpDownHemisphere, ClosedFormAndSeries) {
  EXPECT_DOUBLE_EQ(energy_updown_hemisphere(1.0, BoundaryCondition::Dirichlet).value(), pi / 128.0);
  EXPECT_DOUBLE_EQ(energy_updown_hemisphere(1.0, BoundaryCondition::Neumann).value(), pi / 128.0);
  EXPECT_DOUBLE_EQ(energy_updown_hemisphere(1.0, BoundaryCondition::EM).value(), pi / 64.0);
  EXPECT_NEAR(updown_hemisphere_series(1.0, 1).value() - 1.0 / (64.0 * pi), 1.0 / (16.0 * pi), 1e-15);
  const EnergyResult s = updown_hemisphere_series(1.0, 10000);
  EXPECT_NEAR(s.value(), pi / 128.0, 1e-6 * pi / 128.0);
  EXPECT_LE(std::abs(s.value() - pi / 128.0), s.truncation_error + 1e-16);
}

TEST(Sphere, Values) {
  EXPECT_NEAR(zeta4_series().value / (32.0 * pi), pi * pi * pi / 2880.0, 1e-12);
  const EnergyResult d = energy_sphere(1.0, BoundaryCondition::Dirichlet);
  EXPECT_NEAR(d.value(), 0.02334, 5e-3 * 0.02334);
  EXPECT_NEAR(energy_sphere(1.0, BoundaryCondition::EM).value(), 0.04668, 5e-3 * 0.04668);
  EXPECT_EQ(d.coefficient, energy_sphere(1.0, BoundaryCondition::Neumann).coefficient);
}

TEST(Sphere, InnerSeriesMatchesNaiveLoop) {
  SeriesControl ctl;
  ctl.k_max = 300;
  const SeriesValue s = sphere_inner_series(ctl);
  double naive = 0.0;
  for (int k = 2; k <= 300; ++k) {
    double inner = 0.0;
    for (int m = 1; m < k; ++m) {
      const double x = m * pi / (2.0 * k);
      inner += std::cos(x) / (std::sin(x) * std::sin(x));
    }
    naive += inner / std::pow(k, 4);
  }
  // s.value includes the tail estimate, naive does not
  EXPECT_GT(s.value, naive);
  EXPECT_LE(s.value - naive, s.error * 1.000001);
}

TEST(Hemisphere, GoldenValuesAndRelations) {
  const EnergyResult d = energy_hemisphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult em = energy_hemisphere(1.0, BoundaryCondition::EM);
  EXPECT_NEAR(d.value(), 0.03621, 5e-3 * 0.03621);
  EXPECT_NEAR(em.value(), 0.07242, 5e-3 * 0.07242);
  EXPECT_EQ(d.coefficient, energy_hemisphere(1.0, BoundaryCondition::Neumann).coefficient);
  EXPECT_NEAR(pi / 128.0 * (1.0 + pi * pi / 45.0), 0.0299, 1e-4);

  const EnergyResult sp = energy_sphere(1.0, BoundaryCondition::Dirichlet);
  const double gap = std::abs(d.value() - (0.5 * sp.value() + pi / 128.0));
  EXPECT_LE(gap, d.truncation_error + 0.5 * sp.truncation_error + 1e-15);

  // up-down orbits carry about two thirds of the total
  EXPECT_NEAR((pi / 128.0) / d.value(), 2.0 / 3.0, 0.03 * 2.0 / 3.0);
}

TEST(Hemisphere, DilationLeavesCoefficient) {
  for (double R : {0.1, 3.0}) {
    const EnergyResult e = energy_hemisphere(R, BoundaryCondition::Dirichlet);
    EXPECT_EQ(e.coefficient, energy_hemisphere(1.0, BoundaryCondition::Dirichlet).coefficient);
    EXPECT_DOUBLE_EQ(e.value(), e.coefficient / R);
  }
}

TEST(EmEnergy, SumsAndRejectsMismatchedScales) {
  EnergyResult a, b;
  a.coefficient = -1.209e-4;
  b.coefficient = 1.209e-4;
  a.truncation_error = 1e-9;
  b.truncation_error = 2e-9;
  a.scale = b.scale = Scale::HbarCLOverR2;
  const EnergyResult s = em_energy(a, b);
  EXPECT_EQ(s.coefficient, 0.0);
  EXPECT_DOUBLE_EQ(s.truncation_error, 3e-9);
  b.scale = Scale::HbarCOverR;
  EXPECT_THROW(em_energy(a, b), std::domain_error);
}

TEST(Semiclassical, RejectsNonPositiveLengths) {
  EXPECT_THROW(energy_halfcylinder(0.0, 1.0, BoundaryCondition::Dirichlet), std::domain_error);
  EXPECT_THROW(energy_sphere(-1.0, BoundaryCondition::Dirichlet), std::domain_error);
  EXPECT_THROW(energy_updown_hemisphere(0.0, BoundaryCondition::EM), std::domain_error);
}

}  // namespace
