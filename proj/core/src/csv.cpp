#include "tailrisk/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tailrisk/error.hpp"

namespace tailrisk {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::schema, "cannot open '" + path + "'");

  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_line(line);
      first = false;
    } else {
      table.rows.push_back(split_line(line));
    }
  }
  if (first) fail(Errc::schema, "'" + path + "' has no header row");
  return table;
}

Dataset dataset_from_table(const CsvTable& table, const std::string& source,
                           const std::string& y_column,
                           const std::vector<std::string>& x_columns,
                           LoadStats* stats) {
  const auto y_idx = table.column(y_column);
  if (!y_idx) fail(Errc::schema, "missing column '" + y_column + "'");
  std::vector<std::size_t> x_idx;
  for (const auto& name : x_columns) {
    const auto idx = table.column(name);
    if (!idx) fail(Errc::schema, "missing column '" + name + "'");
    x_idx.push_back(*idx);
  }
  if (x_idx.empty()) fail(Errc::schema, "need at least one covariate column");

  Dataset data;
  data.dim = x_idx.size();
  data.x_names = x_columns;
  std::size_t dropped = 0;
  for (const auto& row : table.rows) {
    bool ok = true;
    double y = 0.0;
    std::vector<double> xs(x_idx.size());
    if (*y_idx >= row.size()) {
      ok = false;
    } else if (const auto v = parse_number(row[*y_idx])) {
      y = *v;
    } else {
      ok = false;
    }
    for (std::size_t c = 0; ok && c < x_idx.size(); ++c) {
      if (x_idx[c] >= row.size()) {
        ok = false;
      } else if (const auto v = parse_number(row[x_idx[c]])) {
        xs[c] = *v;
      } else {
        ok = false;
      }
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    data.y.push_back(y);
    data.x.insert(data.x.end(), xs.begin(), xs.end());
  }
  if (stats) stats->rows_dropped = dropped;
  if (data.y.empty()) {
    fail(Errc::empty_data, "'" + source + "' has no usable rows");
  }
  return data;
}

Dataset load_csv(const std::string& path, const std::string& y_column,
                 const std::vector<std::string>& x_columns,
                 LoadStats* stats) {
  return dataset_from_table(read_csv(path), path, y_column, x_columns, stats);
}

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::string& y_name) {
  std::ofstream out(path);
  if (!out) fail(Errc::schema, "cannot write '" + path + "'");
  out << y_name;
  for (std::size_t c = 0; c < data.dim; ++c) {
    out << ','
        << (c < data.x_names.size() ? data.x_names[c]
                                    : "x" + std::to_string(c + 1));
  }
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_number(data.y[i]);
    for (std::size_t c = 0; c < data.dim; ++c) {
      out << ',' << format_number(data.x[i * data.dim + c]);
    }
    out << '\n';
  }
}

}  // namespace tailrisk
