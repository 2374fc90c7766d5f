// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/model.hpp>
#include <casimir/numerics.hpp>
#include <casimir/orbits.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

/// Periodic-orbit (semiclassical) Casimir energies of the cylinder,
/// half-cylinder, sphere and hemisphere, and the trace-formula densities of
/// the isolated up-down orbits that distinguish a half-cavity from half of
/// the full cavity.
namespace casimir::semiclassical {

namespace detail {
inline void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}
inline double sqr(double x) { return x * x; }

/// sin^2 with the quadratic Taylor value below 1e-8, where the relative
/// rounding of sin(x) would otherwise dominate.
inline double sin_squared(double x) {
  if (std::abs(x) < 1e-8) return x * x * (1.0 - x * x / 3.0);
  return sqr(std::sin(x));
}
}  // namespace detail

/// Reference values quoted from field theory; stored only, never computed.
namespace reference {
/// Perfectly conducting cylinder, in units of hbar c L / R^2.
inline constexpr double em_cylinder_field_theory = -0.1356;
/// Field-theoretic energy of a perfectly conducting spherical shell, hbar c / R.
inline constexpr double em_sphere_field_theory = 0.04618;
}  // namespace reference

// ---------------------------------------------------------------------------
// Trace-formula densities of isolated up-down orbits

/// Oscillating density of the k-th up-down orbit of a long half-cylinder
/// (translation-reduced trace formula with V = L and J = l / E).
inline double density_updown_halfcyl(double E, int k, double R, double L) {
  if (!(E > 0.0)) throw std::domain_error("density_updown_halfcyl: E must be positive");
  detail::require_positive(R, "density_updown_halfcyl: R");
  detail::require_positive(L, "density_updown_halfcyl: L");
  const auto orbit = orbits::updown_orbit(k, R, orbits::UpDownGeometry::HalfDisc);
  const double l = orbit.length;
  const double phase = E * l - orbit.maslov * std::numbers::pi / 2.0 - std::numbers::pi / 4.0;
  return L * R / (std::numbers::pi * l) * std::sqrt(E * l / (2.0 * std::numbers::pi)) * std::cos(phase);
}

/// Isolated-orbit trace-formula density of the k-th up-down orbit of a hemisphere.
inline double density_updown_hemisphere(double E, int k, double R) {
  if (!(E > 0.0)) throw std::domain_error("density_updown_hemisphere: E must be positive");
  detail::require_positive(R, "density_updown_hemisphere: R");
  const auto orbit = orbits::updown_orbit(k, R, orbits::UpDownGeometry::HemiSphere);
  const double period = *orbit.primitive_period_factor * R;
  const double phase = E * orbit.length - orbit.maslov * std::numbers::pi / 2.0;
  return period * std::cos(phase) / (std::numbers::pi * *orbit.stability_amp);
}

// ---------------------------------------------------------------------------
// Combination rule

/// Perfect-conductor energy as the sum of a Dirichlet and a Neumann result.
inline EnergyResult em_energy(const EnergyResult& dirichlet, const EnergyResult& neumann) {
  if (dirichlet.scale != neumann.scale || dirichlet.scale_factor != neumann.scale_factor)
    throw std::domain_error("em_energy: scalar results carry different scales");
  EnergyResult r = dirichlet;
  r.coefficient = dirichlet.coefficient + neumann.coefficient;
  r.truncation_error = dirichlet.truncation_error + neumann.truncation_error;
  if (neumann.provenance != Provenance::Exact) r.provenance = neumann.provenance;
  return r;
}

// ---------------------------------------------------------------------------
// Series engines

struct SeriesValue {
  double value = 0.0;
  double error = 0.0;      // bound on |value - limit|
  std::int64_t terms = 0;  // outer terms actually summed
};

namespace detail {

/// Streams outer terms in fixed-size blocks (evaluated in parallel), asking
/// `done(terms)` after each block how many leading terms suffice. Block
/// boundaries never depend on the worker count.
template <typename Term, typename Done>
std::vector<double> stream_terms(std::int64_t first, std::int64_t last, Term&& term, Done&& done, unsigned threads) {
  constexpr std::int64_t block = 1024;
  std::vector<double> terms;
  const unsigned workers = thread_count(threads);
  for (std::int64_t lo = first; lo <= last; lo += block) {
    const std::int64_t hi = std::min(last, lo + block - 1);
    auto chunk = parallel_map(
        static_cast<std::size_t>(hi - lo + 1), [&](std::size_t i) { return term(lo + static_cast<std::int64_t>(i)); },
        workers);
    terms.insert(terms.end(), chunk.begin(), chunk.end());
    if (const std::size_t keep = done(terms); keep > 0) {
      terms.resize(keep);
      return terms;
    }
  }
  return terms;
}

inline double rounding_bound(const std::vector<double>& terms) {
  double abs_sum = 0.0;
  for (double t : terms) abs_sum += std::abs(t);
  return 8.0 * std::numeric_limits<double>::epsilon() * abs_sum;
}

}  // namespace detail

/// Half-cylinder double series
///   sum_{m>=1} sum_{k>=m} (-1)^k / ((2k+1)^4 sin^2(m pi/(2k+1))).
/// It converges absolutely, so it is summed with k outermost; for each k the
/// inner range is m = 1..min(k, m_max). The outer series alternates with |a_k| ~ 1/(24 k^2):
/// consecutive k are paired for the reduction, half of the first omitted term
/// is added back, and the other half bounds the error.
inline SeriesValue halfcyl_double_sum(const SeriesControl& ctl = {}) {
  ctl.validate();
  const std::int64_t m_cap = ctl.m_max;
  auto term = [m_cap](std::int64_t k) {
    const double n = 2.0 * static_cast<double>(k) + 1.0;
    const double n4 = n * n * n * n;
    CompensatedSum<> inner;
    for (std::int64_t m = std::min(k, m_cap); m >= 1; --m) inner += 1.0 / (n4 * detail::sin_squared(static_cast<double>(m) * std::numbers::pi / n));
    return (k % 2 == 0 ? 1.0 : -1.0) * inner.value();
  };
  // terms[i] holds a_{i+1}; we keep K terms plus a_{K+1} for the tail.
  auto done = [&](const std::vector<double>& terms) -> std::size_t {
    CompensatedSum<> running;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
      running += terms[i];
      if (0.5 * std::abs(terms[i + 1]) <= ctl.tol * std::abs(running.value())) return i + 2;
    }
    return 0;
  };
  std::vector<double> terms = detail::stream_terms(1, ctl.k_max + 1, term, done, ctl.threads);
  const double next = terms.back();
  terms.pop_back();

  std::vector<double> paired;
  paired.reserve(terms.size() / 2 + 1);
  for (std::size_t i = 0; i < terms.size(); i += 2) paired.push_back(i + 1 < terms.size() ? terms[i] + terms[i + 1] : terms[i]);

  // Inner terms beyond m_max: sin(m pi/n) >= 2m/n, so each dropped inner tail is
  // below 1/(4 M n^2), and over all k > M below 1/(8 M (2M+1)).
  const double M = static_cast<double>(m_cap);
  const double inner_cut = static_cast<std::int64_t>(terms.size()) > m_cap ? 1.0 / (8.0 * M * (2.0 * M + 1.0)) : 0.0;

  SeriesValue s;
  s.value = pairwise_sum(paired) + 0.5 * next;
  s.error = 0.5 * std::abs(next) + inner_cut + detail::rounding_bound(terms);
  s.terms = static_cast<std::int64_t>(terms.size());
  return s;
}

/// Inner sphere series sum_{k>=2} k^-4 sum_{m=1}^{k-1} cos(m pi/2k) / sin^2(m pi/2k).
/// Terms are positive with k^2 T_k rising towards 2/3; the tail beyond K is
/// estimated as K^2 T_K / (K + 1/2) and that estimate is also reported as the
/// error bound. Inner sums stop at m_max.
inline SeriesValue sphere_inner_series(const SeriesControl& ctl = {}) {
  ctl.validate();
  const std::int64_t m_cap = ctl.m_max;
  auto term = [m_cap](std::int64_t k) {
    const double x = std::numbers::pi / (2.0 * static_cast<double>(k));
    CompensatedSum<> inner;
    for (std::int64_t m = std::min(k - 1, m_cap); m >= 1; --m) {
      const double a = static_cast<double>(m) * x;
      inner += std::cos(a) / detail::sin_squared(a);
    }
    const double k2 = detail::sqr(static_cast<double>(k));
    return inner.value() / (k2 * k2);
  };
  auto tail_of = [](double last_term, std::int64_t K) {
    const double k = static_cast<double>(K);
    return last_term * k * k / (k + 0.5);
  };
  auto done = [&](const std::vector<double>& terms) -> std::size_t {
    CompensatedSum<> running;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      running += terms[i];
      if (tail_of(terms[i], static_cast<std::int64_t>(i) + 2) <= ctl.tol * std::abs(running.value())) return i + 1;
    }
    return 0;
  };
  const std::int64_t last = std::max<std::int64_t>(2, ctl.k_max);
  std::vector<double> terms = detail::stream_terms(2, last, term, done, ctl.threads);
  const std::int64_t K = static_cast<std::int64_t>(terms.size()) + 1;
  const double tail = tail_of(terms.back(), K);

  // Inner terms beyond m_max: cos/sin^2 <= k^2/m^2, so each dropped inner tail
  // is below 1/(M k^2), and over all k > M below 1/M^2.
  const double M = static_cast<double>(m_cap);
  const double inner_cut = K > m_cap + 1 ? 1.0 / (M * M) : 0.0;

  SeriesValue s;
  s.value = pairwise_sum(terms) + tail;
  s.error = tail + inner_cut + detail::rounding_bound(terms);
  s.terms = static_cast<std::int64_t>(terms.size());
  return s;
}

/// zeta(4) = sum k^-4 with the midpoint tail integral 1/(3 (K+1/2)^3).
inline SeriesValue zeta4_series(const SeriesControl& ctl = {}) {
  ctl.validate();
  std::vector<double> terms;
  const std::int64_t K = ctl.k_max;
  terms.reserve(static_cast<std::size_t>(K));
  for (std::int64_t k = K; k >= 1; --k) terms.push_back(std::pow(static_cast<double>(k), -4.0));
  const double kk = static_cast<double>(K) + 0.5;
  const double tail = 1.0 / (3.0 * kk * kk * kk);
  return {pairwise_sum(terms) + tail, tail + detail::rounding_bound(terms), K};
}

// ---------------------------------------------------------------------------
// Cylinder family

/// Up-down contribution to the half-cylinder energy,
///   (3 L R / (8 pi sqrt 2)) sum_k -cos(sigma_k pi/2) / l_k^3.
/// `maslov(k)` supplies sigma_k; the physical index is odd for every k, so
/// every summand vanishes identically.
template <typename MaslovFn>
EnergyResult energy_updown_halfcyl(double R, double L, BoundaryCondition bc, const SeriesControl& ctl, MaslovFn&& maslov) {
  detail::require_positive(R, "energy_updown_halfcyl: R");
  detail::require_positive(L, "energy_updown_halfcyl: L");
  ctl.validate();
  if (bc == BoundaryCondition::EM)
    return em_energy(energy_updown_halfcyl(R, L, BoundaryCondition::Dirichlet, ctl, maslov),
                     energy_updown_halfcyl(R, L, BoundaryCondition::Neumann, ctl, maslov));
  const double prefactor = 3.0 * L * R / (8.0 * std::numbers::pi * std::numbers::sqrt2);
  CompensatedSum<> sum;
  bool any_nonzero = false;
  for (std::int64_t k = 1; k <= ctl.k_max; ++k) {
    const int c = orbits::cos_quarter_turns(maslov(static_cast<int>(k)));
    if (c == 0) continue;
    any_nonzero = true;
    const double l = 2.0 * static_cast<double>(2 * k - 1) * R;
    sum += -static_cast<double>(c) / (l * l * l);
  }
  EnergyResult r;
  r.scale = Scale::HbarCLOverR2;
  r.scale_factor = L / (R * R);
  r.coefficient = prefactor * sum.value() / r.scale_factor;
  if (any_nonzero) {
    // sum_{k>K} (2(2k-1)R)^-3 <= 1 / (32 R^3 (2K-1)^2)
    const double K = static_cast<double>(ctl.k_max);
    r.truncation_error = prefactor / (32.0 * R * R * R * detail::sqr(2.0 * K - 1.0)) / r.scale_factor;
    r.provenance = Provenance::SeriesTruncated;
  } else {
    r.provenance = Provenance::Exact;
  }
  return r;
}

inline EnergyResult energy_updown_halfcyl(double R, double L, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  return energy_updown_halfcyl(R, L, bc, ctl,
                               [](int k) { return orbits::maslov_updown(k, orbits::UpDownGeometry::HalfDisc); });
}

/// Half-cylinder periodic-orbit energy, +-(L/(32 pi R^2)) x (double sum);
/// the upper sign is Dirichlet. Scale: hbar c L / R^2.
inline EnergyResult energy_halfcylinder(double R, double L, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  detail::require_positive(R, "energy_halfcylinder: R");
  detail::require_positive(L, "energy_halfcylinder: L");
  if (bc == BoundaryCondition::EM)
    return em_energy(energy_halfcylinder(R, L, BoundaryCondition::Dirichlet, ctl),
                     energy_halfcylinder(R, L, BoundaryCondition::Neumann, ctl));
  const SeriesValue s = halfcyl_double_sum(ctl);
  const double sign = bc == BoundaryCondition::Dirichlet ? 1.0 : -1.0;
  EnergyResult r;
  r.scale = Scale::HbarCLOverR2;
  r.scale_factor = L / (R * R);
  r.coefficient = sign * s.value / (32.0 * std::numbers::pi);
  r.truncation_error = s.error / (32.0 * std::numbers::pi);
  r.provenance = Provenance::SeriesTruncated;
  return r;
}

/// Full cylinder: twice the half-cylinder scalar energies. The EM energy is
/// zero because the Dirichlet and Neumann parts are exact negatives.
inline EnergyResult energy_cylinder(double R, double L, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  if (bc == BoundaryCondition::EM)
    return em_energy(energy_cylinder(R, L, BoundaryCondition::Dirichlet, ctl),
                     energy_cylinder(R, L, BoundaryCondition::Neumann, ctl));
  EnergyResult r = energy_halfcylinder(R, L, bc, ctl);
  r.coefficient *= 2.0;
  r.truncation_error *= 2.0;
  return r;
}

// ---------------------------------------------------------------------------
// Sphere family

/// Up-down contribution to the hemisphere energy, pi/(128 R) per scalar field
/// for either boundary condition (sigma = 2 for all k).
inline EnergyResult energy_updown_hemisphere(double R, BoundaryCondition bc) {
  detail::require_positive(R, "energy_updown_hemisphere: R");
  EnergyResult r;
  r.scale = Scale::HbarCOverR;
  r.scale_factor = 1.0 / R;
  r.coefficient = std::numbers::pi / 128.0;
  r.provenance = Provenance::Exact;
  if (bc == BoundaryCondition::EM) return em_energy(r, r);
  return r;
}

/// Series form of the same quantity: -(R/(4 pi)) sum_k cos(sigma pi/2) / l_k^2
/// over the first `n_terms` orbits, with the midpoint tail integral 1/(4N)
/// of sum (2k-1)^-2 added back.
inline EnergyResult updown_hemisphere_series(double R, std::int64_t n_terms) {
  detail::require_positive(R, "updown_hemisphere_series: R");
  if (n_terms < 1) throw std::domain_error("updown_hemisphere_series: need at least one term");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  for (std::int64_t k = n_terms; k >= 1; --k) {
    const auto o = orbits::updown_orbit(static_cast<int>(k), R, orbits::UpDownGeometry::HemiSphere);
    terms.push_back(-R / (4.0 * std::numbers::pi) * orbits::cos_quarter_turns(o.maslov) / (o.length * o.length));
  }
  const double N = static_cast<double>(n_terms);
  const double tail = 1.0 / (16.0 * std::numbers::pi * R) / (4.0 * N);
  EnergyResult r;
  r.scale = Scale::HbarCOverR;
  r.scale_factor = 1.0 / R;
  r.coefficient = (pairwise_sum(terms) + tail) * R;
  // midpoint-rule remainder of sum (2k-1)^-2 beyond N is below 1/(6 (2N)^3)
  r.truncation_error = 1.0 / (16.0 * std::numbers::pi) / (6.0 * 8.0 * N * N * N);
  r.provenance = Provenance::SeriesTruncated;
  return r;
}

/// Periodic-orbit energy of a spherical cavity per scalar field,
///   (1/(32 pi R)) [zeta(4) + sum_{k>=2} (15 pi sqrt2 / (16 k^4)) sum_m cos/sin^2].
inline EnergyResult energy_sphere(double R, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  detail::require_positive(R, "energy_sphere: R");
  const SeriesValue inner = sphere_inner_series(ctl);
  const SeriesValue z4 = zeta4_series(ctl);
  const double c = 15.0 * std::numbers::pi * std::numbers::sqrt2 / 16.0;
  EnergyResult r;
  r.scale = Scale::HbarCOverR;
  r.scale_factor = 1.0 / R;
  r.coefficient = (z4.value + c * inner.value) / (32.0 * std::numbers::pi);
  r.truncation_error = (z4.error + c * inner.error) / (32.0 * std::numbers::pi);
  r.provenance = Provenance::SeriesTruncated;
  if (bc == BoundaryCondition::EM) return em_energy(r, r);
  return r;
}

/// Hemisphere: half the sphere plus the up-down orbits,
///   (pi/(128 R)) [1 + pi^2/45 + sum_{k>=2} (15 sqrt2 / (8 pi k^4)) sum_m cos/sin^2].
inline EnergyResult energy_hemisphere(double R, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  detail::require_positive(R, "energy_hemisphere: R");
  const SeriesValue inner = sphere_inner_series(ctl);
  const double c = 15.0 * std::numbers::sqrt2 / (8.0 * std::numbers::pi);
  const double pre = std::numbers::pi / 128.0;
  EnergyResult r;
  r.scale = Scale::HbarCOverR;
  r.scale_factor = 1.0 / R;
  r.coefficient = pre * (1.0 + std::numbers::pi * std::numbers::pi / 45.0 + c * inner.value);
  r.truncation_error = pre * c * inner.error;
  r.provenance = Provenance::SeriesTruncated;
  if (bc == BoundaryCondition::EM) return em_energy(r, r);
  return r;
}

}  // namespace casimir::semiclassical
