#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailrisk/dataset.hpp"

namespace tailrisk {

// Shortest round-trip decimal form of v; NaN prints as "nan". Keeps every
// emitted file byte-deterministic.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const;
};

// Minimal comma-separated reader: UTF-8, one header row, '.' decimal point,
// no quoting. CRLF tolerated.
CsvTable read_csv(const std::string& path);

// Finite double from a full cell, or nullopt (empty, trailing junk, inf).
std::optional<double> parse_number(const std::string& cell);

struct LoadStats {
  std::size_t rows_dropped = 0;
};

// Builds a Dataset from named columns. Rows with missing or non-numeric
// cells in any used column are dropped and counted. `source` only labels
// error messages.
Dataset dataset_from_table(const CsvTable& table, const std::string& source,
                           const std::string& y_column,
                           const std::vector<std::string>& x_columns,
                           LoadStats* stats = nullptr);

Dataset load_csv(const std::string& path, const std::string& y_column,
                 const std::vector<std::string>& x_columns,
                 LoadStats* stats = nullptr);

// Inverse of load_csv on the supported schema.
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::string& y_name);

}  // namespace tailrisk
