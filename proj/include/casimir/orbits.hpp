// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <string>

/// Classical periodic orbits of the disc / half-disc (cylinder cross-section)
/// and of the sphere / hemisphere.
///
/// A family (n, m) of the disc reflects n times off the wall while winding m
/// times around the centre; it is a star polygon with perimeter
/// 2 n R sin(m pi / n). The half-disc additionally carries isolated up-down
/// orbits along the symmetry axis, labelled (2k-1, k-1/2).
namespace casimir::orbits {

enum class OrbitKind { DegenerateFamily, IsolatedUpDown };

/// Cavities with isolated up-down orbits between the piston and the head.
enum class UpDownGeometry { HalfDisc, HemiSphere };

struct OrbitClass {
  int n = 0;        // reflections off the curved wall
  int twice_m = 0;  // winding number times two (odd for up-down orbits)
  OrbitKind kind = OrbitKind::DegenerateFamily;
  double length = 0.0;
  int maslov = 0;  // generalized Maslov index, reduced mod 4
  std::optional<double> stability_amp;            // |det(M - 1)|^{1/2}, isolated orbits only
  std::optional<double> primitive_period_factor;  // T c / R, isolated orbits only

  double m() const { return 0.5 * twice_m; }

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

/// Perimeter of the (n, m) star polygon inscribed in a circle of radius R.
inline double polygon_orbit_length(int n, int m, double R) {
  if (n < 2 || m < 1 || 2 * m > n)
    throw std::domain_error("polygon_orbit_length: need n >= 2 and 1 <= m <= n/2, got (" + std::to_string(n) + ", " +
                            std::to_string(m) + ")");
  if (!(R > 0.0)) throw std::domain_error("polygon_orbit_length: R must be positive");
  return 2.0 * n * R * std::sin(m * std::numbers::pi / n);
}

/// Degenerate (n, m) family of the full disc.
inline OrbitClass disc_family(int n, int m, double R) {
  OrbitClass o;
  o.n = n;
  o.twice_m = 2 * m;
  o.kind = OrbitKind::DegenerateFamily;
  o.length = polygon_orbit_length(n, m, R);
  return o;
}

/// Integer-m family of the half-disc. It covers the disc family with the same
/// label exactly twice and has the same length.
inline OrbitClass halfdisc_family(int n, int m, double R) { return disc_family(n, m, R); }

/// First-order conjugate points along the (2k-1, k-1/2) orbit: paraxial rays
/// refocus once per traversal after the first.
inline int conjugate_point_count(int k) {
  if (k < 1) throw std::domain_error("conjugate_point_count: k must be >= 1");
  return 2 * k - 2;
}

/// sigma = mu + nu for up-down orbits. nu counts unstable transverse
/// directions, mu the conjugate points weighted by their order.
struct MaslovParts {
  int mu = 0;
  int nu = 0;
  int total() const { return mu + nu; }
};

inline MaslovParts maslov_parts(int k, UpDownGeometry g) {
  const int conj = conjugate_point_count(k);
  if (g == UpDownGeometry::HalfDisc) return {conj, 1};
  return {2 * conj, 2};  // second-order conjugate points, two unstable directions
}

inline int maslov_updown(int k, UpDownGeometry g) {
  if (k < 1) throw std::domain_error("maslov_updown: k must be >= 1");
  if (g == UpDownGeometry::HalfDisc) return (2 * k - 1) % 4;
  return 2;
}

/// cos(sigma * pi / 2) evaluated exactly on the integers.
inline int cos_quarter_turns(int sigma) {
  constexpr int table[4] = {1, 0, -1, 0};
  return table[((sigma % 4) + 4) % 4];
}

inline OrbitClass updown_orbit(int k, double R, UpDownGeometry g) {
  if (k < 1) throw std::domain_error("updown_orbit: k must be >= 1");
  if (!(R > 0.0)) throw std::domain_error("updown_orbit: R must be positive");
  OrbitClass o;
  o.n = 2 * k - 1;
  o.twice_m = 2 * k - 1;
  o.kind = OrbitKind::IsolatedUpDown;
  o.length = 2.0 * (2 * k - 1) * R;
  o.maslov = maslov_updown(k, g);
  // Reduced stability matrix: all eigenvalues -1 (2x2 for the half-disc,
  // 4x4 for the hemisphere), so |det(M - 1)|^{1/2} = 2 or 4.
  o.stability_amp = g == UpDownGeometry::HalfDisc ? 2.0 : 4.0;
  o.primitive_period_factor = 2.0;
  return o;
}

/// Lazily generated up-down orbits k = 1, 2, ...
inline auto updown_orbits(double R, UpDownGeometry g) {
  return std::views::iota(1) | std::views::transform([R, g](int k) { return updown_orbit(k, R, g); });
}

}  // namespace casimir::orbits
