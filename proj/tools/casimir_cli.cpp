// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

// casimir: periodic-orbit Casimir energies and piston forces.
//
//   casimir energy --geometry hemisphere --bc em --radius 1
//   casimir force --geometry box --d 0.001 --l2 1 --l3 1 --H 1 --bc em
//   casimir force --geometry hemisphere-head --radius 1 --at-contact --si --radius-nm 1
//   casimir verify [--only constants]
//   casimir oracle --d 0.05 --H 1 --l2 1 --l3 1 --bc dirichlet
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
// 3 numerical failure.

#include <casimir/acceptance.hpp>
#include <casimir/casimir.hpp>
#include <casimir/run_record.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace casimir;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

const std::map<std::string, BoundaryCondition> kBoundary = {
    {"dirichlet", BoundaryCondition::Dirichlet},
    {"neumann", BoundaryCondition::Neumann},
    {"em", BoundaryCondition::EM},
};

const std::map<std::string, Geometry> kPistonGeometry = {
    {"box", Geometry::BoxFlatHead},
    {"half-cylinder-head", Geometry::HalfCylinderHead},
    {"hemisphere-head", Geometry::HemisphereHead},
};

struct Common {
  SeriesControl series;
  std::string json_path;
};

struct EnergyArgs {
  std::string geometry;
  std::string bc = "dirichlet";
  double radius = 1.0;
  double length = 1.0;
};

struct ForceArgs {
  std::string geometry = "box";
  std::string bc = "em";
  double d = 0.0;
  std::string H = "inf";
  double l2 = 1.0, l3 = 1.0;
  double radius = 1.0, length = 1.0;
  bool at_contact = false;
  std::string method = "analytic";
  bool si = false;
  double radius_nm = 0.0;
  std::string curve;
  std::string csv_path;
};

struct VerifyArgs {
  std::vector<std::string> only;
};

struct OracleArgs {
  double d = 0.0;
  double H = 1.0;
  std::vector<double> transverse;
  std::string bc = "dirichlet";
  oracle::OracleControl ctl;
  std::string regulator = "exponential";
};

double parse_length(const std::string& s) {
  if (s == "inf" || s == "infinity") return infinite_length;
  std::size_t used = 0;
  const double x = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a length: '" + s + "'");
  return x;
}

void write_json(const Common& common, const io::RunRecord& rec) {
  if (common.json_path.empty()) return;
  std::ofstream out(common.json_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + common.json_path);
  out << rec.dump();
}

std::string sci(double x) { return io::format10(x); }

// ---------------------------------------------------------------------------

int cmd_energy(const Common& common, const EnergyArgs& a) {
  const BoundaryCondition bc = kBoundary.at(a.bc);
  EnergyResult e;
  if (a.geometry == "cylinder") e = semiclassical::energy_cylinder(a.radius, a.length, bc, common.series);
  else if (a.geometry == "half-cylinder") e = semiclassical::energy_halfcylinder(a.radius, a.length, bc, common.series);
  else if (a.geometry == "sphere") e = semiclassical::energy_sphere(a.radius, bc, common.series);
  else e = semiclassical::energy_hemisphere(a.radius, bc, common.series);

  io::RunRecord rec;
  rec.command = "energy";
  rec.config["geometry"] = a.geometry;
  rec.config["bc"] = a.bc;
  rec.config["R"] = io::round10(a.radius);
  rec.config["L"] = io::round10(a.length);
  rec.config["series"] = io::config_json(common.series);
  rec.add(a.geometry + " " + a.bc, e);

  std::printf("%s %s: %s %s  (+- %s)  [%s]\n", a.geometry.c_str(), a.bc.c_str(), sci(e.coefficient).c_str(),
              std::string(to_string(e.scale)).c_str(), sci(e.truncation_error).c_str(),
              std::string(to_string(e.provenance)).c_str());
  if (e.scale_factor != 1.0) std::printf("  value for the given lengths: %s\n", sci(e.value()).c_str());
  write_json(common, rec);
  return kOk;
}

// ---------------------------------------------------------------------------

Provenance force_provenance(const piston::ForceResult& f) {
  return f.method == piston::ForceMethod::ScalingModel ? Provenance::ScalingModel : Provenance::SeriesTruncated;
}

int cmd_force(const Common& common, const ForceArgs& a) {
  const BoundaryCondition bc = kBoundary.at(a.bc);
  PistonConfig cfg;
  cfg.geometry = kPistonGeometry.at(a.geometry);
  cfg.H = parse_length(a.H);
  cfg.l2 = a.l2;
  cfg.l3 = a.l3;
  cfg.R = a.radius;
  cfg.L = a.length;
  cfg.d = a.at_contact ? a.radius : a.d;
  if (a.at_contact && cfg.geometry == Geometry::BoxFlatHead)
    throw std::invalid_argument("--at-contact applies to curved heads only");
  const auto method = a.method == "central" ? piston::ForceMethod::CentralDifference : piston::ForceMethod::Analytic;

  io::RunRecord rec;
  rec.command = "force";
  rec.config["piston"] = io::config_json(cfg);
  rec.config["bc"] = a.bc;
  rec.config["method"] = a.method;
  rec.config["series"] = io::config_json(common.series);

  if (!a.curve.empty()) {
    double lo = 0, hi = 0;
    int steps = 0;
    char tail = 0;
    if (std::sscanf(a.curve.c_str(), "%lf:%lf:%d%c", &lo, &hi, &steps, &tail) != 3 || steps < 1 || !(hi >= lo))
      throw std::invalid_argument("--curve expects d_min:d_max:steps with d_min <= d_max and steps >= 1");
    std::ostringstream csv;
    csv << io::csv_header << '\n';
    for (int i = 0; i <= steps; ++i) {
      PistonConfig at = cfg;
      at.d = steps == 0 ? lo : lo + (hi - lo) * i / steps;
      const piston::ForceResult f = piston::piston_force(at, bc, common.series, method);
      io::write_csv_row(csv, at.d, f.coefficient, to_string(f.scale), f.error, force_provenance(f));
      rec.add("F(d=" + sci(at.d) + ")", f.coefficient, to_string(f.scale), f.error, force_provenance(f),
              std::string(piston::to_string(f.direction)));
    }
    rec.config["curve"] = a.curve;
    if (a.csv_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(a.csv_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + a.csv_path);
      out << csv.str();
    }
    write_json(common, rec);
    return kOk;
  }

  const piston::ForceResult f = piston::piston_force(cfg, bc, common.series, method);
  rec.add("force", f.coefficient, to_string(f.scale), f.error, force_provenance(f),
          std::string(piston::to_string(f.direction)));
  std::printf("force: %s %s  (+- %s)  %s, %s  [%s]\n", sci(f.coefficient).c_str(),
              std::string(to_string(f.scale)).c_str(), sci(f.error).c_str(),
              std::string(piston::to_string(f.direction)).c_str(), std::string(piston::to_string(f.method)).c_str(),
              std::string(to_string(force_provenance(f))).c_str());
  if (a.si) {
    if (f.scale != Scale::HbarCOverR2) throw std::invalid_argument("--si needs a force in units of hbar*c/R^2");
    if (!(a.radius_nm > 0.0)) throw std::invalid_argument("--si needs --radius-nm > 0");
    const double pn = force_to_SI(f.coefficient, a.radius_nm);
    rec.config["radius_nm"] = io::round10(a.radius_nm);
    rec.add("force_SI_pN", pn, "pN", force_to_SI(f.error, a.radius_nm), force_provenance(f),
            std::string(piston::to_string(f.direction)));
    std::printf("force at R = %s nm: %s pN\n", sci(a.radius_nm).c_str(), sci(pn).c_str());
  }
  write_json(common, rec);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Common& common, const VerifyArgs& a) {
  const auto report = acceptance::run_all(a.only);
  io::RunRecord rec;
  rec.command = "verify";
  rec.config["only"] = a.only;
  bool ok = true;
  std::printf("%-3s %-14s %-58s %16s %16s %10s %5s  %s\n", "#", "group", "check", "measured", "target", "tol", "rule",
              "result");
  for (const auto& c : report) {
    for (const auto& ch : c.checks) {
      std::printf("%-3d %-14s %-58s %16s %16s %10s %5s  %s\n", c.id, c.group.c_str(), ch.name.c_str(),
                  sci(ch.measured).c_str(), sci(ch.target).c_str(), sci(ch.tolerance).c_str(), ch.rule.c_str(),
                  ch.pass ? "PASS" : "FAIL");
      rec.add("c" + std::to_string(c.id) + ": " + ch.name, ch.measured, ch.rule, ch.tolerance, Provenance::Exact,
              ch.pass ? "PASS" : "FAIL");
    }
    if (!c.failure.empty()) std::printf("%-3d %-14s error: %s  FAIL\n", c.id, c.group.c_str(), c.failure.c_str());
    if (c.time_limit > 0.0)
      std::printf("%-3d %-14s %-58s %16s %16s %10s %5s  %s\n", c.id, c.group.c_str(), "runtime [s]",
                  sci(c.seconds).c_str(), sci(c.time_limit).c_str(), "-", "lt", c.seconds < c.time_limit ? "PASS" : "FAIL");
    ok = ok && c.pass();
  }
  std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
  write_json(common, rec);
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

int cmd_oracle(const Common& common, OracleArgs a) {
  const BoundaryCondition bc = kBoundary.at(a.bc);
  a.ctl.regulator = a.regulator == "gaussian" ? oracle::Regulator::Gaussian : oracle::Regulator::Exponential;
  a.ctl.threads = common.series.threads;
  const oracle::OracleResult r = oracle::oracle_piston_energy(a.d, a.H, a.transverse, bc, a.ctl);

  io::RunRecord rec;
  rec.command = "oracle";
  rec.config["d"] = io::round10(a.d);
  rec.config["H"] = io::round10(a.H);
  rec.config["transverse"] = a.transverse;
  rec.config["bc"] = a.bc;
  rec.config["regulator"] = a.regulator;
  rec.config["lambda0_factor"] = io::round10(a.ctl.lambda0_factor);
  rec.config["levels"] = a.ctl.levels;
  rec.config["order"] = a.ctl.order;
  rec.add("oracle", r.value, to_string(Scale::HbarCOverLength), r.error_bar, Provenance::Oracle);

  std::printf("oracle: %s +- %s hbar*c/length\n", sci(r.value).c_str(), sci(r.error_bar).c_str());
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    std::printf("  lambda %-14s damped %-18s extrapolant %s\n", sci(r.lambdas[i]).c_str(), sci(r.samples[i]).c_str(),
                sci(r.extrapolants[i]).c_str());

  // The periodic-orbit sum covers the same box in one to three dimensions.
  if (bc != BoundaryCondition::EM || a.transverse.size() == 2) {
    const auto lo = piston::box_energy_periodic_orbits(a.d, a.transverse, bc, common.series);
    const auto hi = piston::box_energy_periodic_orbits(a.H - a.d, a.transverse, bc, common.series);
    const auto mid = piston::box_energy_periodic_orbits(0.5 * a.H, a.transverse, bc, common.series);
    const double orbit = (lo.coefficient + hi.coefficient) - 2.0 * mid.coefficient;
    const double err = lo.truncation_error + hi.truncation_error + 2.0 * mid.truncation_error;
    rec.add("periodic_orbits", orbit, to_string(Scale::HbarCOverLength), err, Provenance::SeriesTruncated);
    std::printf("periodic orbits: %s  (relative difference %s)\n", sci(orbit).c_str(),
                sci(orbit != 0.0 ? (r.value - orbit) / orbit : r.value).c_str());
  }
  write_json(common, rec);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-orbit Casimir energies and piston forces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults");

  Common common;
  app.add_option("--k-max", common.series.k_max, "outer series cutoff")->check(CLI::PositiveNumber);
  app.add_option("--m-max", common.series.m_max, "inner series cutoff")->check(CLI::PositiveNumber);
  app.add_option("--tol", common.series.tol, "relative series tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", common.series.threads, "worker threads (0: CASIMIR_THREADS or hardware)");
  app.add_option("--json", common.json_path, "write the run record as JSON");

  auto bc_check = CLI::IsMember({"dirichlet", "neumann", "em"});

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "cavity energy from the periodic-orbit series");
  energy->add_option("--geometry", ea.geometry)
      ->required()
      ->check(CLI::IsMember({"cylinder", "half-cylinder", "sphere", "hemisphere"}));
  energy->add_option("--bc", ea.bc)->check(bc_check);
  energy->add_option("--radius", ea.radius)->check(CLI::PositiveNumber);
  energy->add_option("--length", ea.length)->check(CLI::PositiveNumber);

  ForceArgs fa;
  auto* force = app.add_subcommand("force", "piston force F = -dE/dd (F > 0 pushes away from the head)");
  force->add_option("--geometry", fa.geometry)->check(CLI::IsMember({"box", "half-cylinder-head", "hemisphere-head"}));
  force->add_option("--bc", fa.bc)->check(bc_check);
  force->add_option("--d", fa.d, "piston height");
  force->add_option("--H", fa.H, "casing length, or inf");
  force->add_option("--l2", fa.l2);
  force->add_option("--l3", fa.l3);
  force->add_option("--radius", fa.radius);
  force->add_option("--length", fa.length);
  force->add_flag("--at-contact", fa.at_contact, "place the piston at d = R");
  force->add_option("--method", fa.method)->check(CLI::IsMember({"analytic", "central"}));
  force->add_flag("--si", fa.si, "also print the force in pN");
  force->add_option("--radius-nm", fa.radius_nm, "head radius in nm for --si");
  force->add_option("--curve", fa.curve, "d_min:d_max:steps, emits CSV");
  force->add_option("--csv", fa.csv_path, "write the curve CSV here instead of stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--only", va.only, "restrict to groups")
      ->check(CLI::IsMember({"constants", "zeros", "decomposition", "plates", "oracle", "signs", "properties"}));

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "cutoff-extrapolated mode-sum energy of a box piston");
  orc->add_option("--d", oa.d)->required();
  orc->add_option("--H", oa.H);
  double l2 = 0.0, l3 = 0.0;
  orc->add_option("--l2", l2, "transverse edge (omit for lower dimensions)");
  orc->add_option("--l3", l3, "transverse edge");
  orc->add_option("--bc", oa.bc)->check(bc_check);
  orc->add_option("--regulator", oa.regulator)->check(CLI::IsMember({"exponential", "gaussian"}));
  orc->add_option("--lambda0-factor", oa.ctl.lambda0_factor)->check(CLI::PositiveNumber);
  orc->add_option("--levels", oa.ctl.levels)->check(CLI::Range(2, 12));
  orc->add_option("--order", oa.ctl.order)->check(CLI::Range(1, 11));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    common.series.validate();
    if (energy->parsed()) return cmd_energy(common, ea);
    if (force->parsed()) return cmd_force(common, fa);
    if (verify->parsed()) return cmd_verify(common, va);
    if (l2 > 0.0) oa.transverse.push_back(l2);
    if (l3 > 0.0) oa.transverse.push_back(l3);
    return cmd_oracle(common, oa);
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
}
