// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

/// Sums over the image lattice of a rectangular cavity, i.e. over the
/// periodic orbits of a box. For lengths l_1..l_j the orbit with winding
/// vector m has half-length |x| = |(m_1 l_1, ..., m_j l_j)|, and the bulk
/// periodic-orbit energy of the j-torus built on those lengths is
///
///   e_j = -(l_1 ... l_j) Gamma((j+1)/2) / (4 pi^{(j+1)/2}) * sum'_m |x|^{-(j+1)}.
///
/// The lattice sum converges only like the inverse cutoff radius, so it is
/// split with an incomplete-gamma screen: sum' |x|^-p Q(a, alpha |x|^2) converges
/// like a Gaussian, and the smooth remainder contributes its lattice average
/// minus its value at the origin. The lattice average is exact up to terms
/// of order exp(-pi^2 / (alpha l_max^2)), which `screen_exponent` pins far
/// below double precision.
namespace casimir::lattice {

struct LatticeSum {
  double value = 0.0;       // sum'_m |x|^{-(j+1)}
  double d_value_dl0 = 0.0; // derivative with respect to lengths[0]
  double error = 0.0;
};

inline constexpr double screen_exponent = 40.0;  // pi^2 / (alpha l_max^2)
inline constexpr double cutoff_exponent = 42.0;  // alpha r_max^2

namespace detail {

/// Regularized upper incomplete gamma Q(a, y) for a = (j+1)/2, j = 1, 2, 3,
/// and the density y^{a-1} e^{-y} / Gamma(a).
inline double upper_gamma_q(int j, double y) {
  switch (j) {
    case 1: return std::exp(-y);
    case 2: return std::erfc(std::sqrt(y)) + 2.0 * std::sqrt(y / std::numbers::pi) * std::exp(-y);
    case 3: return (1.0 + y) * std::exp(-y);
  }
  throw std::domain_error("lattice: dimension must be 1, 2 or 3");
}

inline double gamma_density(int j, double y) {
  const double a = 0.5 * (j + 1);
  return std::pow(y, a - 1.0) * std::exp(-y) / std::tgamma(a);
}

}  // namespace detail

/// sum over m in Z^j \ {0} of |x|^{-(j+1)}, together with its derivative in
/// lengths[0]. Work is split across `threads` workers by the first index;
/// the reduction is fixed-shape so the result does not depend on `threads`.
inline LatticeSum image_sum(std::span<const double> lengths, unsigned threads = 0) {
  const int j = static_cast<int>(lengths.size());
  if (j < 1 || j > 3) throw std::domain_error("image_sum: 1 to 3 lengths required");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw std::domain_error("image_sum: lengths must be positive and finite");

  const double p = j + 1.0;
  const double a = 0.5 * p;
  const double l_max = *std::max_element(lengths.begin(), lengths.end());
  double volume = 1.0;
  for (double l : lengths) volume *= l;

  const double alpha = std::numbers::pi * std::numbers::pi / (screen_exponent * l_max * l_max);
  const double r_max = std::sqrt(cutoff_exponent / alpha);

  std::int64_t bound[3] = {0, 0, 0};
  for (int i = 0; i < j; ++i) bound[i] = static_cast<std::int64_t>(std::floor(r_max / lengths[i]));
  const double l0 = lengths[0];
  const double l1 = j > 1 ? lengths[1] : 1.0;
  const double l2 = j > 2 ? lengths[2] : 1.0;

  struct Slice {
    double value = 0.0;
    double deriv = 0.0;
  };
  // Octant m_i >= 0 with multiplicity 2^(number of nonzero indices).
  auto slice = [&](std::size_t idx) {
    const auto m0 = static_cast<std::int64_t>(idx);
    const double x0 = static_cast<double>(m0) * l0;
    CompensatedSum<> v, dv;
    const double w0 = m0 == 0 ? 1.0 : 2.0;
    for (std::int64_t m1 = 0; m1 <= bound[1]; ++m1) {
      const double x1 = static_cast<double>(m1) * l1;
      const double r01 = x0 * x0 + x1 * x1;
      if (r01 > r_max * r_max) break;
      const double w1 = w0 * (m1 == 0 ? 1.0 : 2.0);
      for (std::int64_t m2 = 0; m2 <= bound[2]; ++m2) {
        if (m0 == 0 && m1 == 0 && m2 == 0) continue;
        const double x2 = static_cast<double>(m2) * l2;
        const double r2 = r01 + x2 * x2;
        if (r2 > r_max * r_max) break;
        const double w = w1 * (m2 == 0 ? 1.0 : 2.0);
        const double r = std::sqrt(r2);
        const double y = alpha * r2;
        const double rp = std::pow(r, -p);
        const double q = detail::upper_gamma_q(j, y);
        v += w * rp * q;
        // d/dr [r^-p Q(a, alpha r^2)] times dr/dl0 = x0^2 / (r l0)
        const double dg = -p * rp / r * q - rp * 2.0 * alpha * r * detail::gamma_density(j, y);
        dv += w * dg * (x0 * x0) / (r * l0);
      }
    }
    return Slice{v.value(), dv.value()};
  };

  const auto slices = parallel_map(static_cast<std::size_t>(bound[0]) + 1, slice, thread_count(threads));
  std::vector<double> vals, ders;
  vals.reserve(slices.size());
  ders.reserve(slices.size());
  for (const auto& s : slices) {
    vals.push_back(s.value);
    ders.push_back(s.deriv);
  }

  // Lattice average of the smooth part, S_j sqrt(alpha) Gamma(a - 1/2) / Gamma(a),
  // and its value at the origin, alpha^a / Gamma(a + 1).
  const double sphere_area = 2.0 * std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(0.5 * j);
  const double mean = sphere_area * std::sqrt(alpha) * std::tgamma(a - 0.5) / std::tgamma(a);
  const double origin = std::pow(alpha, a) / std::tgamma(a + 1.0);

  LatticeSum out;
  out.value = pairwise_sum(vals) + mean / volume - origin;
  out.d_value_dl0 = pairwise_sum(ders) - mean / (volume * l0);
  const double screened = 2.0 * j * (1.0 + screen_exponent) * std::exp(-screen_exponent) * mean / volume;
  const double cut = std::exp(-cutoff_exponent) * (1.0 + cutoff_exponent) * mean / volume;
  out.error = screened + cut + 16.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
  return out;
}

/// Periodic-orbit energy of the j-torus with the given lengths (see above),
/// with its derivative in lengths[0].
struct TorusEnergy {
  double energy = 0.0;
  double d_energy_dl0 = 0.0;
  double error = 0.0;
};

inline TorusEnergy torus_energy(std::span<const double> lengths, unsigned threads = 0) {
  const int j = static_cast<int>(lengths.size());
  const LatticeSum s = image_sum(lengths, threads);
  double volume = 1.0;
  for (double l : lengths) volume *= l;
  const double c = std::tgamma(0.5 * (j + 1)) / (4.0 * std::pow(std::numbers::pi, 0.5 * (j + 1)));
  TorusEnergy e;
  e.energy = -c * volume * s.value;
  e.d_energy_dl0 = -c * (volume / lengths[0]) * s.value - c * volume * s.d_value_dl0;
  e.error = c * volume * s.error;
  return e;
}

}  // namespace casimir::lattice
