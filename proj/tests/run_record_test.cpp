// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#include <casimir/run_record.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace casimir;
using namespace casimir::io;

RunRecord sample() {
  RunRecord r;
  r.command = "force";
  PistonConfig cfg;
  cfg.geometry = Geometry::HemisphereHead;
  cfg.d = cfg.R = 1.0;
  r.config["piston"] = config_json(cfg);
  r.config["series"] = config_json(SeriesControl{});
  r.add("force", 0.0724209876543219, "hbar*c/R^2", 1.23456789012345e-9, Provenance::ScalingModel, "Repulsive");
  r.add("other", -1.0 / 3.0, "hbar*c/R", 0.0, Provenance::Exact);
  return r;
}

TEST(RunRecord, RoundsToTenDigits) {
  EXPECT_EQ(round10(0.0724209876543219), 0.07242098765);
  EXPECT_EQ(format10(-1.0 / 3.0), "-0.3333333333");
  EXPECT_EQ(format10(infinite_length), "inf");
}

TEST(RunRecord, JsonRoundTrip) {
  const RunRecord r = sample();
  const RunRecord back = RunRecord::from_json(ordered_json::parse(r.dump()));
  EXPECT_EQ(back, r);
  EXPECT_EQ(back.dump(), r.dump());
  EXPECT_EQ(length_from_json(back.config["piston"]["H"]), infinite_length);
}

TEST(RunRecord, FixedFieldOrderAndProvenance) {
  const std::string text = sample().dump();
  EXPECT_LT(text.find("\"command\""), text.find("\"config\""));
  EXPECT_LT(text.find("\"config\""), text.find("\"results\""));
  EXPECT_NE(text.find("\"provenance\": \"ScalingModel\""), std::string::npos);
  EXPECT_EQ(text, sample().dump());
}

TEST(RunRecord, RejectsUnknownProvenance) {
  auto j = sample().to_json();
  j["results"][0]["provenance"] = "Guess";
  EXPECT_THROW(RunRecord::from_json(j), std::invalid_argument);
}

TEST(Csv, RowFormat) {
  std::ostringstream os;
  os << csv_header << '\n';
  write_csv_row(os, 1.5, -2.0 / 3.0, "hbar*c*L/R^3", 1e-12, Provenance::ScalingModel);
  EXPECT_EQ(os.str(), "d,coefficient,scale,error,provenance\n1.5,-0.6666666667,hbar*c*L/R^3,1e-12,ScalingModel\n");
}

}  // namespace
