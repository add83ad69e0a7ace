// SPDX-License-Identifier: Apache-2.0
//
// JSON wire formats shared by the CLI and the HTTP service. Non-finite
// numbers (an infinite H-spread) are written as the string "inf".
#pragma once

#include <json.hpp>

#include "dubois/layout.hpp"
#include "dubois/metrics.hpp"
#include "dubois/simulator.hpp"
#include "dubois/stats.hpp"

namespace dubois {

nlohmann::json to_json(const Dataset& d);
/// Throws Error(InvalidDataset) on a schema mismatch.
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DataProfile& p);
nlohmann::json to_json(const Recommendation& r);
/// {"profile": ..., "recommendation": ...}
nlohmann::json profile_report(const Dataset& d, double entropy_cutoff = 0.75, double hspread_cutoff = 4.5);

nlohmann::json to_json(const ChartLayout& layout);

/// Occupancy (all 16 cells plus below-range totals) and per-cell samples.
nlohmann::json to_json(const SimulationGrid& grid, std::span<const BinSample> samples);

nlohmann::json to_json(const AnalysisReport& report);
/// Fixed-width text table of the report rows.
std::string report_table(const AnalysisReport& report);

}  // namespace dubois
