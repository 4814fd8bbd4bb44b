#pragma once

#include <span>
#include <string>
#include <vector>

#include "tailrisk/baselines.hpp"
#include "tailrisk/k_selection.hpp"
#include "tailrisk/simulation.hpp"
#include "tailrisk/split_aggregation.hpp"

namespace tailrisk {

// Everything the estimate report needs; kept plain so callers can assemble it
// from CLI state or library calls alike. Reports carry no timestamps or
// thread counts: the same inputs must serialize to the same bytes.
struct EstimateReportInput {
  PipelineConfig config;
  std::string input_description;
  std::string y_column;
  std::vector<std::string> x_columns;
  std::vector<std::string> filters;
  std::vector<ConditionalEstimate> estimates;
  std::vector<std::string> warnings;
};

std::string estimate_report_json(const EstimateReportInput& input);
std::string estimate_report_csv(const EstimateReportInput& input);

// Monte Carlo tables, one row per cell.
std::string simulation_csv(std::span<const McCellResult> cells);
std::string gardes_simulation_csv(std::span<const GardesCellResult> cells);

// Threshold-count diagnostics, one row per candidate k plus a selection line.
std::string k_selection_csv(const KSelection& selection);

// Bandwidth-baseline estimates on real data, one row per bandwidth.
std::string bandwidth_csv(std::span<const BandwidthEstimate> estimates);

std::string descriptives_csv(std::span<const DescriptiveRow> rows);

}  // namespace tailrisk
