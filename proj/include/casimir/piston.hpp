// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/lattice.hpp>
#include <casimir/model.hpp>
#include <casimir/numerics.hpp>
#include <casimir/semiclassical.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/// Piston bookkeeping: the subtracted energy
///   E~(d) = E(d) + E(H - d) - 2 E(H/2),
/// forces F = -dE~/dd, and the curved-head anchors.
///
/// Sign convention: F > 0 pushes the piston away from the head (towards
/// larger d). A force is "attractive" when it points at the nearer end wall.
namespace casimir::piston {

enum class Direction { Attractive, Repulsive, Zero };
enum class ForceMethod { Analytic, CentralDifference, ScalingModel };

struct ForceResult {
  double coefficient = 0.0;
  double error = 0.0;
  Direction direction = Direction::Zero;
  ForceMethod method = ForceMethod::Analytic;
  Scale scale = Scale::HbarCOverLength2;
  double scale_factor = 1.0;

  double value() const { return coefficient * scale_factor; }
};

inline std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Attractive: return "Attractive";
    case Direction::Repulsive: return "Repulsive";
    case Direction::Zero: return "Zero";
  }
  return "?";
}

inline std::string_view to_string(ForceMethod m) {
  switch (m) {
    case ForceMethod::Analytic: return "Analytic";
    case ForceMethod::CentralDifference: return "CentralDifference";
    case ForceMethod::ScalingModel: return "ScalingModel";
  }
  return "?";
}

/// Judges the direction of a force F at piston height d in a casing of
/// length H (possibly infinite).
inline Direction classify(double force, double error, double d, double H) {
  if (std::abs(force) <= error) return Direction::Zero;
  const bool head_is_nearer = std::isinf(H) || d < 0.5 * H;
  const bool towards_head = force < 0.0;
  return towards_head == head_is_nearer ? Direction::Attractive : Direction::Repulsive;
}

// ---------------------------------------------------------------------------
// Box with flat head

struct BoxEnergy {
  double energy = 0.0;
  double d_energy_dl1 = 0.0;
  double error = 0.0;
};

/// Periodic-orbit energy of a box l1 x transverse..., with its derivative in
/// l1. Each face, edge and bulk orbit family is a torus energy over a subset
/// of the edges; the boundary condition fixes the sign of each subset:
/// Dirichlet (-1)^(dim - |S|), Neumann +1, both with weight 2^-dim. The EM
/// box (three dimensions only) is 1/4 of the bulk minus 1/4 of the edge
/// orbits; face orbits cancel between the two polarizations.
inline BoxEnergy box_orbit_energy(double l1, std::span<const double> transverse, BoundaryCondition bc, unsigned threads = 0) {
  std::vector<double> lengths{l1};
  lengths.insert(lengths.end(), transverse.begin(), transverse.end());
  const int dims = static_cast<int>(lengths.size());
  if (dims > 3) throw std::domain_error("box energy: at most three edges");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw std::domain_error("box energy: lengths must be positive and finite");
  if (bc == BoundaryCondition::EM && dims != 3) throw std::domain_error("box energy: EM requires a three-dimensional box");

  BoxEnergy out;
  for (int mask = 1; mask < (1 << dims); ++mask) {
    std::vector<double> sub;
    for (int i = 0; i < dims; ++i)
      if (mask & (1 << i)) sub.push_back(lengths[i]);  // l1 stays first when present
    const int size = static_cast<int>(sub.size());
    double weight = 0.0;
    switch (bc) {
      case BoundaryCondition::Dirichlet: weight = ((dims - size) % 2 == 0 ? 1.0 : -1.0) / (1 << dims); break;
      case BoundaryCondition::Neumann: weight = 1.0 / (1 << dims); break;
      case BoundaryCondition::EM: weight = size == 3 ? 0.25 : (size == 1 ? -0.25 : 0.0); break;
    }
    if (weight == 0.0) continue;
    const lattice::TorusEnergy e = lattice::torus_energy(sub, threads);
    out.energy += weight * e.energy;
    if (mask & 1) out.d_energy_dl1 += weight * e.d_energy_dl0;
    out.error += std::abs(weight) * e.error;
  }
  return out;
}

/// Bulk periodic-orbit vacuum energy of an l1 x l2 x l3 box (or lower
/// dimensional box when fewer transverse edges are given).
inline EnergyResult box_energy_periodic_orbits(double l1, std::span<const double> transverse, BoundaryCondition bc,
                                               const SeriesControl& ctl = {}) {
  ctl.validate();
  const BoxEnergy e = box_orbit_energy(l1, transverse, bc, ctl.threads);
  EnergyResult r;
  r.coefficient = e.energy;
  r.truncation_error = e.error;
  r.scale = Scale::HbarCOverLength;
  r.scale_factor = 1.0;
  r.provenance = Provenance::SeriesTruncated;
  return r;
}

inline EnergyResult box_energy_periodic_orbits(double l1, double l2, double l3, BoundaryCondition bc,
                                               const SeriesControl& ctl = {}) {
  const double t[2] = {l2, l3};
  return box_energy_periodic_orbits(l1, t, bc, ctl);
}

/// Parallel-plate force, -pi^2 l2 l3 / (240 d^4) (EM).
inline double parallel_plate_force(double d, double l2, double l3) {
  return -std::numbers::pi * std::numbers::pi * l2 * l3 / (240.0 * d * d * d * d);
}

// ---------------------------------------------------------------------------
// Curved heads

namespace detail {

inline void require_infinite_casing(const PistonConfig& cfg) {
  if (!cfg.infinite_casing())
    throw std::domain_error("curved-head pistons are modelled for an infinitely long casing only (H = inf)");
}

inline bool at_contact(const PistonConfig& cfg) { return std::abs(cfg.d - cfg.R) <= 1e-12 * cfg.R; }

/// Periodic-orbit energy of the curved-head cavity with the piston at d = R,
/// i.e. of the half-cylinder or hemisphere.
inline EnergyResult contact_energy(const PistonConfig& cfg, BoundaryCondition bc, const SeriesControl& ctl) {
  if (cfg.geometry == Geometry::HalfCylinderHead) return semiclassical::energy_halfcylinder(cfg.R, cfg.L, bc, ctl);
  return semiclassical::energy_hemisphere(cfg.R, bc, ctl);
}

/// Exponent of the dimensional envelope E(d) = E(R) (R/d)^q: the shortest
/// orbit touching piston and head has length 2d; the half-cylinder energy
/// scales as L R / d^3, the hemisphere estimate inversely with orbit length.
inline double envelope_power(Geometry g) { return g == Geometry::HalfCylinderHead ? 3.0 : 1.0; }

}  // namespace detail

/// Subtracted piston energy. For the box this is the finite combination
/// E(d) + E(H-d) - 2E(H/2) of periodic-orbit energies. For curved heads with
/// an infinite casing the far chamber is dropped (its d-dependence decays
/// like L R / H^3), the energy at d = R is the exact half-cavity value and
/// for d > R the result is the dimensional envelope, tagged ScalingModel.
inline EnergyResult subtracted_energy(const PistonConfig& cfg, BoundaryCondition bc, const SeriesControl& ctl = {}) {
  cfg.validate();
  ctl.validate();
  if (cfg.geometry == Geometry::BoxFlatHead) {
    if (cfg.infinite_casing()) throw std::domain_error("subtracted_energy: box piston requires a finite casing length H");
    const double t[2] = {cfg.l2, cfg.l3};
    const BoxEnergy a = box_orbit_energy(cfg.d, t, bc, ctl.threads);
    const BoxEnergy b = box_orbit_energy(cfg.H - cfg.d, t, bc, ctl.threads);
    const BoxEnergy c = box_orbit_energy(0.5 * cfg.H, t, bc, ctl.threads);
    EnergyResult r;
    r.coefficient = cfg.d == 0.5 * cfg.H ? 0.0 : (a.energy + b.energy) - 2.0 * c.energy;
    r.truncation_error = a.error + b.error + 2.0 * c.error;
    r.scale = Scale::HbarCOverLength;
    r.provenance = Provenance::SeriesTruncated;
    return r;
  }
  detail::require_infinite_casing(cfg);
  EnergyResult r = detail::contact_energy(cfg, bc, ctl);
  if (detail::at_contact(cfg)) return r;
  const double ratio = std::pow(cfg.R / cfg.d, detail::envelope_power(cfg.geometry));
  r.coefficient *= ratio;
  r.truncation_error *= ratio;
  r.provenance = Provenance::ScalingModel;
  return r;
}

/// Force on the piston, F = -dE~/dd.
///
/// Box: differentiated analytically orbit by orbit (default) or by a
/// Richardson-improved central difference of the subtracted energy with step
/// 1e-4 d. Curved heads: derivative of the dimensional envelope, which is the
/// only information available for d >= R; always tagged ScalingModel.
inline ForceResult piston_force(const PistonConfig& cfg, BoundaryCondition bc, const SeriesControl& ctl = {},
                                ForceMethod method = ForceMethod::Analytic) {
  cfg.validate();
  ctl.validate();
  ForceResult f;
  if (cfg.geometry == Geometry::BoxFlatHead) {
    if (cfg.infinite_casing()) throw std::domain_error("piston_force: box piston requires a finite casing length H");
    f.scale = Scale::HbarCOverLength2;
    f.scale_factor = 1.0;
    const double t[2] = {cfg.l2, cfg.l3};
    if (method == ForceMethod::CentralDifference) {
      auto energy = [&](double d) {
        const BoxEnergy a = box_orbit_energy(d, t, bc, ctl.threads);
        const BoxEnergy b = box_orbit_energy(cfg.H - d, t, bc, ctl.threads);
        return a.energy + b.energy;  // the H/2 reference does not depend on d
      };
      const Derivative der = central_difference(energy, cfg.d, 1e-4 * cfg.d);
      f.coefficient = -der.value;
      f.error = der.error;
      f.method = ForceMethod::CentralDifference;
    } else {
      const BoxEnergy a = box_orbit_energy(cfg.d, t, bc, ctl.threads);
      const BoxEnergy b = box_orbit_energy(cfg.H - cfg.d, t, bc, ctl.threads);
      // d/dd [E(d) + E(H - d)] = E'(d) - E'(H - d)
      f.coefficient = cfg.d == 0.5 * cfg.H ? 0.0 : -(a.d_energy_dl1 - b.d_energy_dl1);
      f.error = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(a.d_energy_dl1) + std::abs(b.d_energy_dl1));
      f.method = ForceMethod::Analytic;
    }
    f.direction = classify(f.coefficient, f.error, cfg.d, cfg.H);
    return f;
  }

  detail::require_infinite_casing(cfg);
  const EnergyResult e0 = detail::contact_energy(cfg, bc, ctl);
  const double q = detail::envelope_power(cfg.geometry);
  // E(d) = E(R) (R/d)^q  =>  F = q E(R) R^q / d^(q+1); coefficient in units of the
  // contact scale divided by R.
  const double shape = q * std::pow(cfg.R / cfg.d, q + 1.0);
  f.coefficient = e0.coefficient * shape;
  f.error = e0.truncation_error * shape;
  f.method = ForceMethod::ScalingModel;
  if (cfg.geometry == Geometry::HalfCylinderHead) {
    f.scale = Scale::HbarCLOverR3;
    f.scale_factor = cfg.L / (cfg.R * cfg.R * cfg.R);
  } else {
    f.scale = Scale::HbarCOverR2;
    f.scale_factor = 1.0 / (cfg.R * cfg.R);
  }
  f.direction = classify(f.coefficient, f.error, cfg.d, cfg.H);
  return f;
}

/// Force on a hemispherical-head piston at contact (d = R) for perfect
/// conductors, assuming the energy scales inversely with the shortest
/// primitive orbit: F = E_EM(R) / R.
inline ForceResult hemisphere_force_estimate(double R, const SeriesControl& ctl = {}) {
  PistonConfig cfg;
  cfg.geometry = Geometry::HemisphereHead;
  cfg.R = R;
  cfg.d = R;
  cfg.H = infinite_length;
  return piston_force(cfg, BoundaryCondition::EM, ctl);
}

struct ProfilePoint {
  double d = 0.0;
  EnergyResult energy;
};

/// Energy anchors for the half-cylinder-head piston on a grid of heights:
/// the exact half-cylinder value at d = R and the envelope
/// c3 L R / d^3 (c3 fitted to the d = R anchor) elsewhere. The envelope
/// vanishes as d -> inf, matching the far anchor.
inline std::vector<ProfilePoint> halfcyl_force_profile(const PistonConfig& cfg, BoundaryCondition bc,
                                                       std::span<const double> grid, const SeriesControl& ctl = {}) {
  if (cfg.geometry != Geometry::HalfCylinderHead) throw std::domain_error("halfcyl_force_profile: geometry must be HalfCylinderHead");
  detail::require_infinite_casing(cfg);
  for (double d : grid)
    if (!(d >= cfg.R)) throw std::domain_error("halfcyl_force_profile: grid point " + std::to_string(d) + " lies below R");
  PistonConfig at = cfg;
  at.d = cfg.R;
  const EnergyResult anchor = subtracted_energy(at, bc, ctl);
  std::vector<ProfilePoint> out;
  out.reserve(grid.size());
  for (double d : grid) {
    ProfilePoint p{d, anchor};
    if (std::abs(d - cfg.R) > 1e-12 * cfg.R) {
      const double ratio = std::pow(cfg.R / d, 3.0);
      p.energy.coefficient *= ratio;
      p.energy.truncation_error *= ratio;
      p.energy.provenance = Provenance::ScalingModel;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace casimir::piston
