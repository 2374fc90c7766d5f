// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header. run_record.hpp is left out: it needs nlohmann/json.
#pragma once

#include <casimir/acceptance.hpp>
#include <casimir/lattice.hpp>
#include <casimir/model.hpp>
#include <casimir/numerics.hpp>
#include <casimir/oracle.hpp>
#include <casimir/orbits.hpp>
#include <casimir/piston.hpp>
#include <casimir/semiclassical.hpp>
