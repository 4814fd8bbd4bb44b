#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailrisk/csv.hpp"
#include "tailrisk/dataset.hpp"

namespace tailrisk {

enum class GrowthMode {
  absolute,      // y = |log e2 - log e1|, all pairs kept
  signed_left,   // only negative changes, kept as magnitudes
  signed_right,  // only positive changes
};

struct PanelRecord {
  std::string id;
  long long period = 0;
  double earnings = 0.0;
  std::vector<double> covariates;  // carried from the base period
};

struct PanelDeriveStats {
  std::size_t pairs_matched = 0;       // ids present in both periods
  std::size_t dropped_nonpositive = 0; // pairs lost to earnings <= 0
  std::size_t rows_dropped = 0;        // unparseable table rows (loader only)
};

// Long-format rows -> records. Rows with unparseable period or earnings are
// dropped and counted; covariate cells must parse on base-period rows.
std::vector<PanelRecord> panel_from_table(
    const CsvTable& table, const std::string& id_column,
    const std::string& period_column, const std::string& earnings_column,
    const std::vector<std::string>& covariate_columns = {},
    PanelDeriveStats* stats = nullptr);

// Pairs ids across the two periods and produces the growth Dataset:
// y per mode above, x = [base-earnings quantile rank, covariates...]. The
// rank is the type-1 empirical rank within the retained records, normalized
// so the minimum maps to 0 and the maximum to 1; ties order by first
// appearance. `base_earnings`, when given, receives e1 aligned with the
// returned rows (descriptives bin on it).
Dataset derive_growth_variable(std::span<const PanelRecord> panel,
                               long long base_period, long long next_period,
                               GrowthMode mode,
                               const std::vector<std::string>& covariate_names = {},
                               PanelDeriveStats* stats = nullptr,
                               std::vector<double>* base_earnings = nullptr);

}  // namespace tailrisk
