// SPDX-License-Identifier: Apache-2.0
//
// Deterministic report serialization (sorted keys, 12-significant-digit
// floats, complex numbers as {re, im}) plus the explicit-prior file
// format.

#pragma once

#include <string>

#include "qbayes/scenarios.hpp"

namespace qbayes {

enum class ReportFormat { Json, Text };

// Deterministic serialization of a report: identical reports produce
// identical bytes.
std::string emit_report(const ScenarioReport& report, ReportFormat format);

// Inverse of the JSON emission (floats round to 12 significant digits).
ScenarioReport parse_report_json(const std::string& text);

// Explicit-prior file: JSON {"dim": d, "entries": [[{"re":..,"im":..},..],..]},
// validated against the density-operator invariants.
DensityOperator load_prior_json(const std::string& text);
DensityOperator load_prior_file(const std::string& path);

}  // namespace qbayes
