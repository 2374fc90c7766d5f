// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/model.hpp>
#include <casimir/oracle.hpp>
#include <casimir/orbits.hpp>
#include <casimir/piston.hpp>
#include <casimir/semiclassical.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <exception>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

/// The acceptance suite: nine criteria, each a list of measured-vs-target
/// checks with pinned tolerances plus a wall-clock limit where one applies.
/// Shared by the `verify` subcommand and the acceptance test binary.
namespace casimir::acceptance {

struct Check {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string rule;  // "rel", "abs", "le", "true"
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string group;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
  std::string failure;      // exception text, if the run threw

  bool pass() const {
    if (!failure.empty()) return false;
    if (time_limit > 0.0 && seconds >= time_limit) return false;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

namespace detail {

inline Check rel(std::string name, double measured, double target, double tol) {
  return {std::move(name), measured, target, tol, "rel", std::abs(measured - target) <= tol * std::abs(target)};
}

inline Check abs(std::string name, double measured, double target, double tol) {
  return {std::move(name), measured, target, tol, "abs", std::abs(measured - target) <= tol};
}

/// measured <= bound
inline Check le(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, 0.0, "le", measured <= bound};
}

inline Check truth(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok}; }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline PistonConfig box(double d, double H, double l2, double l3) {
  PistonConfig c;
  c.geometry = Geometry::BoxFlatHead;
  c.d = d;
  c.H = H;
  c.l2 = l2;
  c.l3 = l3;
  return c;
}

inline bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace detail

// 1. Half-cylinder golden constant.
inline void half_cylinder_constant(Criterion& c) {
  c.time_limit = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyResult e = semiclassical::energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet);
  c.seconds = detail::seconds_since(t0);
  c.checks.push_back(detail::rel("halfcyl Dirichlet R=L=1", e.value(), -1.209e-4, 5e-3));
}

// 2. Hemisphere up-down closed form and series.
inline void hemisphere_updown_constant(Criterion& c) {
  const double closed = std::numbers::pi / 128.0;
  const EnergyResult e = semiclassical::energy_updown_hemisphere(1.0, BoundaryCondition::Dirichlet);
  c.checks.push_back(detail::abs("updown closed form = pi/128", e.value(), closed, 0.0));
  const EnergyResult s = semiclassical::updown_hemisphere_series(1.0, 10000);
  c.checks.push_back(detail::rel("updown 1e4-term series", s.value(), closed, 1e-6));
}

// 3. Hemisphere totals.
inline void hemisphere_constant(Criterion& c) {
  const EnergyResult d = semiclassical::energy_hemisphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult em = semiclassical::energy_hemisphere(1.0, BoundaryCondition::EM);
  c.checks.push_back(detail::rel("hemisphere Dirichlet", d.value(), 0.03621, 5e-3));
  c.checks.push_back(detail::rel("hemisphere EM", em.value(), 0.07242, 5e-3));
}

// 4. Exact zeros.
inline void exact_zeros(Criterion& c) {
  SeriesControl ctl;
  ctl.k_max = 10000;
  int nonzero = 0;
  for (int k = 1; k <= 10000; ++k)
    nonzero += orbits::cos_quarter_turns(orbits::maslov_updown(k, orbits::UpDownGeometry::HalfDisc)) != 0;
  c.checks.push_back(detail::abs("half-disc up-down orbits with cos(sigma pi/2) != 0, k <= 1e4", nonzero, 0, 0.0));
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const EnergyResult u = semiclassical::energy_updown_halfcyl(1.0, 1.0, bc, ctl);
    c.checks.push_back(detail::abs(std::string("updown halfcyl ") + std::string(to_string(bc)), u.value(), 0.0, 0.0));
  }
  const EnergyResult cyl = semiclassical::energy_cylinder(1.0, 1.0, BoundaryCondition::EM);
  const EnergyResult half = semiclassical::energy_halfcylinder(1.0, 1.0, BoundaryCondition::EM);
  c.checks.push_back(detail::abs("cylinder EM", cyl.value(), 0.0, 1e-12));
  c.checks.push_back(detail::abs("half-cylinder EM", half.value(), 0.0, 1e-12));
}

// 5. Hemisphere = sphere / 2 + up-down.
inline void decomposition(Criterion& c) {
  const EnergyResult hemi = semiclassical::energy_hemisphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult sph = semiclassical::energy_sphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult ud = semiclassical::energy_updown_hemisphere(1.0, BoundaryCondition::Dirichlet);
  const double gap = std::abs(hemi.value() - (0.5 * sph.value() + ud.value()));
  const double budget = hemi.value_error() + 0.5 * sph.value_error() + 1e-15;
  c.checks.push_back(detail::le("|hemi - (sphere/2 + pi/128)| <= errors", gap, budget));
  c.checks.push_back(detail::rel("sphere Dirichlet", sph.value(), 0.02334, 5e-3));
}

// 6. Parallel-plate limit.
inline void plates(Criterion& c) {
  c.time_limit = 10.0;
  const auto t0 = std::chrono::steady_clock::now();
  const PistonConfig cfg = detail::box(0.01, 1.0, 1.0, 1.0);
  const piston::ForceResult f = piston::piston_force(cfg, BoundaryCondition::EM);
  c.seconds = detail::seconds_since(t0);
  c.checks.push_back(detail::rel("F / F_plates at d = 0.01", f.value(), piston::parallel_plate_force(0.01, 1.0, 1.0), 1e-2));
}

// 7. Mode-sum oracle versus periodic orbits.
inline void oracle_equivalence(Criterion& c) {
  c.time_limit = 120.0;
  const auto t0 = std::chrono::steady_clock::now();
  const double transverse[2] = {1.0, 1.0};
  for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::EM}) {
    double worst = 0.0;
    for (int j = 0; j < 10; ++j) {
      const double d = 0.05 + 0.04 * j;
      const double orbit = piston::subtracted_energy(detail::box(d, 1.0, 1.0, 1.0), bc).coefficient;
      const double mode = oracle::oracle_piston_energy(d, 1.0, transverse, bc).value;
      worst = std::max(worst, std::abs(mode - orbit) / std::abs(orbit));
    }
    c.checks.push_back(detail::le(std::string("max rel. deviation, 10 d, ") + std::string(to_string(bc)), worst, 1e-4));
  }
  oracle::OracleControl wide;
  oracle::OracleControl narrow;
  narrow.lambda0_factor = wide.lambda0_factor / 4.0;
  const oracle::OracleResult a = oracle::oracle_piston_energy(0.05, 1.0, transverse, BoundaryCondition::EM, wide);
  const oracle::OracleResult b = oracle::oracle_piston_energy(0.05, 1.0, transverse, BoundaryCondition::EM, narrow);
  c.checks.push_back(detail::le("cutoff change (lambda0 / 4) vs error bar", std::abs(a.value - b.value), a.error_bar));
  c.seconds = detail::seconds_since(t0);
}

// 8. Signs.
inline void signs(Criterion& c) {
  // Box, l2 = 50 l3, H = 20 l3: attractive on two nested grids.
  for (int steps : {10, 20}) {
    bool all = true;
    for (int i = 1; i < steps; ++i) {
      const double d = 10.0 * i / steps;
      const auto f = piston::piston_force(detail::box(d, 20.0, 50.0, 1.0), BoundaryCondition::EM);
      all = all && f.direction == piston::Direction::Attractive;
    }
    c.checks.push_back(detail::truth("box attractive on " + std::to_string(steps - 1) + "-point grid", all));
  }
  PistonConfig cyl;
  cyl.geometry = Geometry::HalfCylinderHead;
  cyl.R = 1.0;
  cyl.L = 1.0;
  cyl.d = 1.0;
  const EnergyResult anchor = piston::subtracted_energy(cyl, BoundaryCondition::Neumann);
  c.checks.push_back(detail::truth("Neumann half-cylinder E~(R) > 0", anchor.value() > 0.0));
  cyl.d = 1e6;
  const EnergyResult far = piston::subtracted_energy(cyl, BoundaryCondition::Neumann);
  c.checks.push_back(detail::truth("E~(R) > E~(1e6 R) (-> 0)", anchor.value() > far.value()));
  const piston::ForceResult f = piston::hemisphere_force_estimate(1.0);
  c.checks.push_back(detail::abs("hemisphere contact force", f.value(), 0.07, 0.01));
  c.checks.push_back(detail::truth("hemisphere force repulsive, scaling model",
                                   f.direction == piston::Direction::Repulsive &&
                                       f.method == piston::ForceMethod::ScalingModel));
  // One significant figure: 2e3 pN means [1.5e3, 2.5e3).
  const double pn = force_to_SI(f.coefficient, 1.0);
  c.checks.push_back(detail::abs("SI force at R = 1 nm [pN]", pn, 2000.0, 500.0));
}

// 9. Property suites.
inline void properties(Criterion& c) {
  // Dilation: coefficients of curved cavities are invariant; box energies and
  // forces scale as 1/length and 1/length^2.
  const double a = 2.5;
  const EnergyResult h1 = semiclassical::energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet);
  const EnergyResult ha = semiclassical::energy_halfcylinder(a, a, BoundaryCondition::Dirichlet);
  const EnergyResult s1 = semiclassical::energy_hemisphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult sa = semiclassical::energy_hemisphere(a, BoundaryCondition::Dirichlet);
  c.checks.push_back(detail::abs("dilation: half-cylinder coefficient", ha.coefficient, h1.coefficient, 0.0));
  c.checks.push_back(detail::abs("dilation: hemisphere coefficient", sa.coefficient, s1.coefficient, 0.0));
  const auto b1 = detail::box(0.3, 1.0, 1.0, 0.7);
  const auto ba = detail::box(0.3 * a, a, a, 0.7 * a);
  c.checks.push_back(detail::rel("dilation: box energy x length",
                                 a * piston::subtracted_energy(ba, BoundaryCondition::EM).coefficient,
                                 piston::subtracted_energy(b1, BoundaryCondition::EM).coefficient, 1e-12));
  c.checks.push_back(detail::rel("dilation: box force x length^2",
                                 a * a * piston::piston_force(ba, BoundaryCondition::EM).coefficient,
                                 piston::piston_force(b1, BoundaryCondition::EM).coefficient, 1e-12));

  // Dirichlet/Neumann relations.
  const EnergyResult hn = semiclassical::energy_halfcylinder(1.0, 1.0, BoundaryCondition::Neumann);
  c.checks.push_back(detail::abs("half-cylinder D = -N", h1.coefficient, -hn.coefficient, 0.0));
  const EnergyResult sn = semiclassical::energy_hemisphere(1.0, BoundaryCondition::Neumann);
  c.checks.push_back(detail::abs("hemisphere D = N", s1.coefficient, sn.coefficient, 0.0));
  const EnergyResult sp_d = semiclassical::energy_sphere(1.0, BoundaryCondition::Dirichlet);
  const EnergyResult sp_n = semiclassical::energy_sphere(1.0, BoundaryCondition::Neumann);
  c.checks.push_back(detail::abs("sphere D = N", sp_d.coefficient, sp_n.coefficient, 0.0));

  // Maslov reconstruction.
  bool maslov_ok = true;
  for (int k = 1; k <= 100; ++k) {
    for (auto g : {orbits::UpDownGeometry::HalfDisc, orbits::UpDownGeometry::HemiSphere}) {
      const auto parts = orbits::maslov_parts(k, g);
      maslov_ok = maslov_ok && orbits::maslov_updown(k, g) == parts.total() % 4;
    }
  }
  c.checks.push_back(detail::truth("sigma = (nu + mu) mod 4, k <= 100", maslov_ok));

  // Midpoint antisymmetry of the box piston.
  double worst_e = 0.0, worst_f = 0.0;
  for (double d : {0.1, 0.23, 0.37}) {
    const auto lo = detail::box(d, 1.0, 1.0, 1.0);
    const auto hi = detail::box(1.0 - d, 1.0, 1.0, 1.0);
    const double el = piston::subtracted_energy(lo, BoundaryCondition::EM).coefficient;
    const double eh = piston::subtracted_energy(hi, BoundaryCondition::EM).coefficient;
    const double fl = piston::piston_force(lo, BoundaryCondition::EM).coefficient;
    const double fh = piston::piston_force(hi, BoundaryCondition::EM).coefficient;
    worst_e = std::max(worst_e, std::abs(el - eh) / std::abs(el));
    worst_f = std::max(worst_f, std::abs(fl + fh) / std::abs(fl));
  }
  c.checks.push_back(detail::le("E~(d) = E~(H-d), rel.", worst_e, 1e-12));
  c.checks.push_back(detail::le("F(d) = -F(H-d), rel.", worst_f, 1e-12));

  // Determinism across thread counts: bitwise identical results.
  bool same = true;
  double ref[4] = {};
  bool first = true;
  const double transverse[2] = {1.0, 1.0};
  for (unsigned threads : {1u, 2u, 8u}) {
    SeriesControl ctl;
    ctl.threads = threads;
    oracle::OracleControl oc;
    oc.threads = threads;
    oc.levels = 3;
    const double now[4] = {
        semiclassical::energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, ctl).coefficient,
        semiclassical::energy_sphere(1.0, BoundaryCondition::Dirichlet, ctl).coefficient,
        piston::subtracted_energy(detail::box(0.2, 1.0, 1.0, 1.0), BoundaryCondition::EM, ctl).coefficient,
        oracle::oracle_piston_energy(0.2, 1.0, transverse, BoundaryCondition::EM, oc).value,
    };
    if (first) {
      std::copy(std::begin(now), std::end(now), ref);
      first = false;
    }
    for (int i = 0; i < 4; ++i) same = same && detail::same_bits(now[i], ref[i]);
  }
  c.checks.push_back(detail::truth("bitwise identical at 1/2/8 threads", same));
}

struct Entry {
  int id;
  const char* group;
  const char* title;
  void (*run)(Criterion&);
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {1, "constants", "half-cylinder energy -1.209e-4 L/R^2, < 1 s", half_cylinder_constant},
      {2, "constants", "hemisphere up-down energy pi/128", hemisphere_updown_constant},
      {3, "constants", "hemisphere energy 0.03621 (EM 0.07242)", hemisphere_constant},
      {4, "zeros", "vanishing up-down and EM cylinder energies", exact_zeros},
      {5, "decomposition", "hemisphere = sphere/2 + up-down", decomposition},
      {6, "plates", "parallel-plate limit of the box piston, < 10 s", plates},
      {7, "oracle", "mode-sum oracle equals periodic-orbit sum, < 2 min", oracle_equivalence},
      {8, "signs", "attraction, repulsion anchors, SI force", signs},
      {9, "properties", "dilation, D/N relations, Maslov, antisymmetry, determinism", properties},
  };
  return entries;
}

inline Criterion run(const Entry& e) {
  Criterion c;
  c.id = e.id;
  c.group = e.group;
  c.title = e.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    e.run(c);
  } catch (const std::exception& ex) {
    c.failure = ex.what();
  }
  if (c.seconds == 0.0) c.seconds = detail::seconds_since(t0);
  return c;
}

/// Runs the criteria whose group is in `only` (all when empty). Unknown
/// group names are rejected.
inline std::vector<Criterion> run_all(const std::vector<std::string>& only = {}) {
  for (const auto& g : only) {
    bool known = false;
    for (const auto& e : registry()) known = known || g == e.group;
    if (!known) throw std::invalid_argument("unknown check group '" + g + "'");
  }
  std::vector<Criterion> out;
  for (const auto& e : registry()) {
    bool selected = only.empty();
    for (const auto& g : only) selected = selected || g == e.group;
    if (selected) out.push_back(run(e));
  }
  return out;
}

}  // namespace casimir::acceptance
