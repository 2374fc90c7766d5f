// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/model.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/// Machine-readable record of one CLI run. Every number is rounded to ten
/// significant digits when it enters the record, so the JSON text is
/// byte-stable and re-parses into an equal record.
namespace casimir::io {

using ordered_json = nlohmann::ordered_json;

/// x rounded to ten significant digits (the emitted precision).
inline double round10(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format10(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

/// JSON has no infinity; lengths that may be infinite are written as "inf".
inline ordered_json length_json(double x) {
  if (std::isinf(x)) return "inf";
  return round10(x);
}

inline double length_from_json(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("RunRecord: bad length " + j.dump());
  }
  return j.get<double>();
}

inline Provenance provenance_from_string(std::string_view s) {
  for (Provenance p : {Provenance::Exact, Provenance::SeriesTruncated, Provenance::ScalingModel, Provenance::Oracle})
    if (to_string(p) == s) return p;
  throw std::invalid_argument("RunRecord: unknown provenance '" + std::string(s) + "'");
}

struct ResultRow {
  std::string label;
  double coefficient = 0.0;
  std::string scale;
  double truncation_error = 0.0;
  Provenance provenance = Provenance::SeriesTruncated;
  std::string note;  // e.g. force direction; empty when unused

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct RunRecord {
  std::string command;
  ordered_json config = ordered_json::object();
  std::vector<ResultRow> results;

  void add(std::string label, double coefficient, std::string_view scale, double error, Provenance p,
           std::string note = {}) {
    results.push_back({std::move(label), round10(coefficient), std::string(scale), round10(error), p, std::move(note)});
  }

  void add(std::string label, const EnergyResult& e, std::string note = {}) {
    add(std::move(label), e.coefficient, to_string(e.scale), e.truncation_error, e.provenance, std::move(note));
  }

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["config"] = config;
    j["results"] = ordered_json::array();
    for (const auto& r : results) {
      ordered_json row;
      row["label"] = r.label;
      row["coefficient"] = r.coefficient;
      row["scale"] = r.scale;
      row["truncation_error"] = r.truncation_error;
      row["provenance"] = std::string(to_string(r.provenance));
      row["note"] = r.note;
      j["results"].push_back(std::move(row));
    }
    return j;
  }

  static RunRecord from_json(const ordered_json& j) {
    RunRecord rec;
    rec.command = j.at("command").get<std::string>();
    rec.config = j.at("config");
    for (const auto& row : j.at("results")) {
      rec.results.push_back({row.at("label").get<std::string>(), row.at("coefficient").get<double>(),
                             row.at("scale").get<std::string>(), row.at("truncation_error").get<double>(),
                             provenance_from_string(row.at("provenance").get<std::string>()),
                             row.at("note").get<std::string>()});
    }
    return rec;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline ordered_json config_json(const PistonConfig& cfg) {
  ordered_json j;
  j["geometry"] = std::string(to_string(cfg.geometry));
  j["d"] = length_json(cfg.d);
  j["H"] = length_json(cfg.H);
  j["R"] = length_json(cfg.R);
  j["L"] = length_json(cfg.L);
  j["l2"] = length_json(cfg.l2);
  j["l3"] = length_json(cfg.l3);
  return j;
}

inline ordered_json config_json(const SeriesControl& ctl) {
  ordered_json j;
  j["k_max"] = ctl.k_max;
  j["m_max"] = ctl.m_max;
  j["tol"] = round10(ctl.tol);
  return j;
}

// CSV rows for curves: d,coefficient,scale,error,provenance

inline constexpr std::string_view csv_header = "d,coefficient,scale,error,provenance";

inline void write_csv_row(std::ostream& os, double d, double coefficient, std::string_view scale, double error,
                          Provenance p) {
  os << format10(d) << ',' << format10(coefficient) << ',' << scale << ',' << format10(error) << ',' << to_string(p)
     << '\n';
}

}  // namespace casimir::io
