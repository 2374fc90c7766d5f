// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

/// Shared domain types for semiclassical Casimir piston calculations.
///
/// Everything in the library works in natural units with hbar = c = 1. A
/// physical energy is reported as a dimensionless coefficient multiplying a
/// symbolic scale (hbar*c/R, hbar*c*L/R^2, ...). The numeric value of that
/// scale for the caller's lengths is carried alongside, so `value()` gives the
/// energy in units of hbar*c per caller length unit.
namespace casimir {

/// Scalar fields obey Dirichlet or Neumann conditions. The perfect-conductor
/// (EM) result is always assembled from the two scalar results.
enum class BoundaryCondition { Dirichlet, Neumann, EM };

enum class Scale {
  HbarCOverR,        // hbar c / R
  HbarCLOverR2,      // hbar c L / R^2
  HbarCOverLength,   // hbar c / (caller length unit)
  HbarCOverR2,       // forces: hbar c / R^2
  HbarCLOverR3,      // forces: hbar c L / R^3
  HbarCOverLength2,  // forces: hbar c / (caller length unit)^2
};

/// How a number was obtained. ScalingModel results are dimensional estimates,
/// never exact values.
enum class Provenance { Exact, SeriesTruncated, ScalingModel, Oracle };

struct EnergyResult {
  double coefficient = 0.0;
  Scale scale = Scale::HbarCOverLength;
  /// Upper bound on |coefficient - limit| from series truncation, in the same
  /// units as `coefficient`.
  double truncation_error = 0.0;
  /// Numeric value of `scale` for the lengths the result was computed with.
  double scale_factor = 1.0;
  Provenance provenance = Provenance::SeriesTruncated;

  double value() const { return coefficient * scale_factor; }
  double value_error() const { return truncation_error * std::abs(scale_factor); }

  friend bool operator==(const EnergyResult&, const EnergyResult&) = default;
};

/// Truncation bounds shared by every infinite sum. `threads == 0` defers to
/// CASIMIR_THREADS or the hardware count.
struct SeriesControl {
  std::int64_t k_max = 20000;
  std::int64_t m_max = 2000;
  double tol = 1e-8;
  unsigned threads = 0;

  void validate() const {
    if (k_max < 1 || m_max < 1) throw std::domain_error("SeriesControl: k_max and m_max must be positive");
    if (!(tol > 0.0)) throw std::domain_error("SeriesControl: tol must be positive");
  }
};

enum class Geometry { BoxFlatHead, HalfCylinderHead, HemisphereHead };

inline constexpr double infinite_length = std::numeric_limits<double>::infinity();

/// Piston cavity. `d` is the piston height above the head, `H` the casing
/// length (may be `infinite_length`). R is the head radius (geometries b, c),
/// L the transverse extent (geometries a/b), l2 x l3 the box cross-section.
struct PistonConfig {
  Geometry geometry = Geometry::BoxFlatHead;
  double d = 0.0;
  double H = infinite_length;
  double R = 0.0;
  double L = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  bool infinite_casing() const { return std::isinf(H); }

  void validate() const {
    auto positive = [](double x, const char* what) {
      if (!(x > 0.0) || std::isnan(x)) throw std::domain_error(std::string("PistonConfig: ") + what + " must be positive");
    };
    positive(d, "d");
    if (!(H > 0.0)) throw std::domain_error("PistonConfig: H must be positive or infinite");
    switch (geometry) {
      case Geometry::BoxFlatHead:
        positive(l2, "l2");
        positive(l3, "l3");
        if (!(d < H)) throw std::domain_error("PistonConfig: box piston requires 0 < d < H");
        break;
      case Geometry::HalfCylinderHead:
        positive(R, "R");
        positive(L, "L");
        if (d < R) throw std::domain_error("PistonConfig: curved head requires d >= R");
        break;
      case Geometry::HemisphereHead:
        positive(R, "R");
        if (d < R) throw std::domain_error("PistonConfig: curved head requires d >= R");
        break;
    }
  }
};

namespace units {
/// hbar*c in J*m, from hbar*c = 197.3269804 MeV*fm.
inline constexpr double hbar_c_joule_metre = 3.161526e-26;
}  // namespace units

/// Force in piconewtons for a coefficient of hbar*c/R^2 with R in nanometres.
inline double force_to_SI(double coefficient, double R_nm) {
  if (!(R_nm > 0.0)) throw std::domain_error("force_to_SI: radius must be positive");
  // hbar c / (1 nm)^2 = 3.161526e-8 N = 3.161526e4 pN
  constexpr double pn_per_unit = units::hbar_c_joule_metre / 1e-18 * 1e12;
  return coefficient * pn_per_unit / (R_nm * R_nm);
}

inline std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::EM: return "em";
  }
  return "?";
}

inline std::string_view to_string(Scale s) {
  switch (s) {
    case Scale::HbarCOverR: return "hbar*c/R";
    case Scale::HbarCLOverR2: return "hbar*c*L/R^2";
    case Scale::HbarCOverLength: return "hbar*c/length";
    case Scale::HbarCOverR2: return "hbar*c/R^2";
    case Scale::HbarCLOverR3: return "hbar*c*L/R^3";
    case Scale::HbarCOverLength2: return "hbar*c/length^2";
  }
  return "?";
}

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "Exact";
    case Provenance::SeriesTruncated: return "SeriesTruncated";
    case Provenance::ScalingModel: return "ScalingModel";
    case Provenance::Oracle: return "Oracle";
  }
  return "?";
}

inline std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::BoxFlatHead: return "box";
    case Geometry::HalfCylinderHead: return "half-cylinder-head";
    case Geometry::HemisphereHead: return "hemisphere-head";
  }
  return "?";
}

}  // namespace casimir
