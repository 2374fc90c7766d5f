// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#include <casimir/lattice.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace {

using namespace casimir::lattice;

// Direct spherical partial sums with a continuum tail; slow but independent.
double brute_force(const std::vector<double>& l, int cutoff) {
  const int j = static_cast<int>(l.size());
  double s = 0.0;
  const int c1 = j > 1 ? cutoff : 0, c2 = j > 2 ? cutoff : 0;
  for (int a = -cutoff; a <= cutoff; ++a)
    for (int b = -c1; b <= c1; ++b)
      for (int c = -c2; c <= c2; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const double x0 = a * l[0], x1 = j > 1 ? b * l[1] : 0.0, x2 = j > 2 ? c * l[2] : 0.0;
        const double r = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
        if (r > cutoff * l[0]) continue;
        s += std::pow(r, -(j + 1.0));
      }
  // tail: (surface of S^{j-1}) / V * int_r^inf r^{j-1} r^{-(j+1)} dr
  double V = 1.0;
  for (double x : l) V *= x;
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(0.5 * j);
  return s + area / V / (cutoff * l[0]);
}

TEST(ImageSum, OneDimensionIsZeta2) {
  for (double l : {0.3, 1.0, 4.0}) {
    const double one[1] = {l};
    EXPECT_NEAR(image_sum(one).value, std::numbers::pi * std::numbers::pi / (3.0 * l * l), 1e-13 / (l * l));
  }
}

TEST(ImageSum, KnownEpsteinValues) {
  // sum' |m|^-3 over Z^2 = 4 zeta(3/2) beta(3/2); sum' |m|^-4 over Z^3.
  const double two[2] = {1.0, 1.0};
  const double three[3] = {1.0, 1.0, 1.0};
  EXPECT_NEAR(image_sum(two).value, 9.0336216831, 1e-9);
  EXPECT_NEAR(image_sum(three).value, 16.5323159598, 1e-9);
}

TEST(ImageSum, AgreesWithBruteForce) {
  const std::vector<double> l{0.7, 1.3};
  const double got = image_sum(l).value;
  EXPECT_NEAR(got, brute_force(l, 400), 1e-4 * got);
  // In 3D the sharp spherical cutoff fluctuates at O(cutoff^-2).
  const std::vector<double> m{1.0, 0.8, 1.5};
  const double got3 = image_sum(m).value;
  EXPECT_NEAR(got3, brute_force(m, 60), 5e-4 * got3);
}

TEST(ImageSum, DerivativeMatchesFiniteDifference) {
  for (const std::vector<double>& l : {std::vector<double>{0.4}, {0.4, 1.0}, {0.25, 1.0, 2.0}, {3.0, 1.0, 1.0}}) {
    const double h = 1e-5 * l[0];
    auto lp = l, lm = l;
    lp[0] += h;
    lm[0] -= h;
    const double fd = (image_sum(lp).value - image_sum(lm).value) / (2.0 * h);
    EXPECT_NEAR(image_sum(l).d_value_dl0, fd, 1e-6 * std::abs(fd));
  }
}

TEST(ImageSum, PermutationSymmetric) {
  const double a[3] = {0.3, 1.0, 2.0};
  const double b[3] = {2.0, 0.3, 1.0};
  EXPECT_NEAR(image_sum(a).value, image_sum(b).value, 1e-12 * image_sum(a).value);
}

TEST(TorusEnergy, IntervalIsCasimirOfCircle) {
  // e_1 = -pi / (12 l): a periodic interval of circumference 2 l.
  const double one[1] = {2.0};
  EXPECT_NEAR(torus_energy(one).energy, -std::numbers::pi / 24.0, 1e-14);
}

TEST(ImageSum, RejectsBadInput) {
  const double bad[1] = {0.0};
  EXPECT_THROW(image_sum(bad), std::domain_error);
  EXPECT_THROW(image_sum(std::span<const double>{}), std::domain_error);
}

}  // namespace
