// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#include <casimir/model.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace {

using namespace casimir;

TEST(ForceToSI, ContactEstimate) {
  // 0.07 hbar c / (1 nm)^2 is about 2e3 pN
  EXPECT_NEAR(force_to_SI(0.07, 1.0), 2213.0684, 1e-3);
  EXPECT_EQ(force_to_SI(0.0, 5.0), 0.0);
  EXPECT_NEAR(force_to_SI(0.07, 37.5), 2213.0682 / (37.5 * 37.5), 1e-6);
  EXPECT_NEAR(force_to_SI(0.07, 37.5), 1.57, 5e-3);
}

TEST(ForceToSI, LinearAndInverseSquare) {
  for (double x : {-3.0, 0.01, 0.5, 7.0}) {
    for (double r : {0.5, 1.0, 3.0}) {
      EXPECT_DOUBLE_EQ(force_to_SI(2.5 * x, r), 2.5 * force_to_SI(x, r));
      EXPECT_DOUBLE_EQ(force_to_SI(x, 4.0 * r), force_to_SI(x, r) / 16.0);
    }
  }
}

TEST(ForceToSI, RejectsNonPositiveRadius) {
  EXPECT_THROW(force_to_SI(1.0, 0.0), std::domain_error);
  EXPECT_THROW(force_to_SI(1.0, -2.0), std::domain_error);
  EXPECT_THROW(force_to_SI(1.0, std::nan("")), std::domain_error);
}

TEST(PistonConfig, Validation) {
  PistonConfig box;
  box.geometry = Geometry::BoxFlatHead;
  box.d = 0.3;
  box.H = 1.0;
  box.l2 = box.l3 = 1.0;
  EXPECT_NO_THROW(box.validate());
  box.d = 1.0;
  EXPECT_THROW(box.validate(), std::domain_error);
  box.d = -0.1;
  EXPECT_THROW(box.validate(), std::domain_error);

  PistonConfig cyl;
  cyl.geometry = Geometry::HalfCylinderHead;
  cyl.R = 1.0;
  cyl.L = 2.0;
  cyl.d = 1.0;
  EXPECT_TRUE(cyl.infinite_casing());
  EXPECT_NO_THROW(cyl.validate());
  cyl.d = 0.99;
  EXPECT_THROW(cyl.validate(), std::domain_error);

  PistonConfig hemi;
  hemi.geometry = Geometry::HemisphereHead;
  hemi.R = 2.0;
  hemi.d = 1.0;
  EXPECT_THROW(hemi.validate(), std::domain_error);
}

TEST(SeriesControl, Defaults) {
  SeriesControl ctl;
  EXPECT_EQ(ctl.k_max, 20000);
  EXPECT_EQ(ctl.m_max, 2000);
  EXPECT_EQ(ctl.tol, 1e-8);
  ctl.tol = 0.0;
  EXPECT_THROW(ctl.validate(), std::domain_error);
}

TEST(EnergyResult, ValueCarriesScale) {
  EnergyResult e;
  e.coefficient = -2.0;
  e.truncation_error = 0.5;
  e.scale_factor = 4.0;
  EXPECT_EQ(e.value(), -8.0);
  EXPECT_EQ(e.value_error(), 2.0);
}

}  // namespace
