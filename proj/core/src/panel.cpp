#include "tailrisk/panel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "tailrisk/error.hpp"

namespace tailrisk {

namespace {

struct Pair {
  double e1 = 0.0;
  double e2 = 0.0;
  std::size_t order = 0;  // first-appearance order in the base period
  const std::vector<double>* covariates = nullptr;
};

}  // namespace

std::vector<PanelRecord> panel_from_table(
    const CsvTable& table, const std::string& id_column,
    const std::string& period_column, const std::string& earnings_column,
    const std::vector<std::string>& covariate_columns,
    PanelDeriveStats* stats) {
  const auto id_idx = table.column(id_column);
  if (!id_idx) fail(Errc::schema, "missing column '" + id_column + "'");
  const auto period_idx = table.column(period_column);
  if (!period_idx) fail(Errc::schema, "missing column '" + period_column + "'");
  const auto earn_idx = table.column(earnings_column);
  if (!earn_idx) fail(Errc::schema, "missing column '" + earnings_column + "'");
  std::vector<std::size_t> cov_idx;
  for (const std::string& name : covariate_columns) {
    const auto idx = table.column(name);
    if (!idx) fail(Errc::schema, "missing column '" + name + "'");
    cov_idx.push_back(*idx);
  }

  std::vector<PanelRecord> records;
  records.reserve(table.rows.size());
  std::size_t dropped = 0;
  for (const auto& row : table.rows) {
    const std::size_t needed =
        std::max({*id_idx, *period_idx, *earn_idx}) + 1;
    bool ok = row.size() >= needed;
    for (std::size_t c : cov_idx) ok = ok && c < row.size();
    PanelRecord rec;
    if (ok) {
      rec.id = row[*id_idx];
      ok = !rec.id.empty();
    }
    if (ok) {
      const auto p = parse_number(row[*period_idx]);
      ok = p.has_value() && *p == std::floor(*p);
      if (ok) rec.period = static_cast<long long>(*p);
    }
    if (ok) {
      const auto e = parse_number(row[*earn_idx]);
      ok = e.has_value();
      if (ok) rec.earnings = *e;
    }
    for (std::size_t c = 0; ok && c < cov_idx.size(); ++c) {
      const auto v = parse_number(row[cov_idx[c]]);
      ok = v.has_value();
      if (ok) rec.covariates.push_back(*v);
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (stats != nullptr) stats->rows_dropped = dropped;
  if (records.empty()) fail(Errc::empty_data, "panel has no usable rows");
  return records;
}

Dataset derive_growth_variable(std::span<const PanelRecord> panel,
                               long long base_period, long long next_period,
                               GrowthMode mode,
                               const std::vector<std::string>& covariate_names,
                               PanelDeriveStats* stats,
                               std::vector<double>* base_earnings) {
  if (base_period == next_period)
    fail(Errc::usage, "growth periods must differ");

  // First occurrence wins when an id repeats within a period.
  std::unordered_map<std::string, std::size_t> base_index;
  std::vector<const PanelRecord*> base_records;
  std::unordered_map<std::string, double> next_earnings;
  for (const PanelRecord& rec : panel) {
    if (rec.period == base_period) {
      auto [it, inserted] = base_index.try_emplace(rec.id, base_records.size());
      if (inserted) base_records.push_back(&rec);
    } else if (rec.period == next_period) {
      next_earnings.try_emplace(rec.id, rec.earnings);
    }
  }

  std::size_t matched = 0;
  std::size_t dropped = 0;
  std::vector<Pair> pairs;
  pairs.reserve(base_records.size());
  for (std::size_t i = 0; i < base_records.size(); ++i) {
    const PanelRecord& rec = *base_records[i];
    auto it = next_earnings.find(rec.id);
    if (it == next_earnings.end()) continue;
    ++matched;
    if (!(rec.earnings > 0.0) || !(it->second > 0.0)) {
      ++dropped;
      continue;
    }
    if (rec.covariates.size() != covariate_names.size())
      fail(Errc::dimension_mismatch, "covariate count does not match names");
    pairs.push_back(Pair{rec.earnings, it->second, i, &rec.covariates});
  }
  if (stats != nullptr) {
    stats->pairs_matched = matched;
    stats->dropped_nonpositive = dropped;
  }

  // Growth direction filter; magnitudes are kept in every mode.
  std::vector<Pair> kept;
  kept.reserve(pairs.size());
  for (const Pair& p : pairs) {
    const double g = std::log(p.e2) - std::log(p.e1);
    switch (mode) {
      case GrowthMode::absolute: kept.push_back(p); break;
      case GrowthMode::signed_left:
        if (g < 0.0) kept.push_back(p);
        break;
      case GrowthMode::signed_right:
        if (g > 0.0) kept.push_back(p);
        break;
    }
  }
  if (kept.empty()) fail(Errc::empty_data, "no usable growth pairs");

  // Base-earnings quantile rank over the retained records: stable sort by
  // (e1, first appearance), rank r in 0..n-1 mapped to r/(n-1). A single
  // record ranks 0.
  const std::size_t n = kept.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (kept[a].e1 != kept[b].e1) return kept[a].e1 < kept[b].e1;
    return kept[a].order < kept[b].order;
  });
  std::vector<double> rank(n, 0.0);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t r = 0; r < n; ++r)
    rank[idx[r]] = static_cast<double>(r) / denom;

  Dataset out;
  out.dim = 1 + covariate_names.size();
  out.x_names.reserve(out.dim);
  out.x_names.push_back("rank");
  for (const std::string& name : covariate_names) out.x_names.push_back(name);
  out.y.reserve(n);
  out.x.reserve(n * out.dim);
  if (base_earnings != nullptr) {
    base_earnings->clear();
    base_earnings->reserve(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.y.push_back(std::fabs(std::log(kept[i].e2) - std::log(kept[i].e1)));
    out.x.push_back(rank[i]);
    for (double c : *kept[i].covariates) out.x.push_back(c);
    if (base_earnings != nullptr) base_earnings->push_back(kept[i].e1);
  }
  out.validate();
  return out;
}

}  // namespace tailrisk
