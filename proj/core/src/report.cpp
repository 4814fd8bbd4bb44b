#include "tailrisk/report.hpp"

#include <cmath>

#include "json.hpp"
#include "tailrisk/csv.hpp"
#include "tailrisk/version.hpp"

namespace tailrisk {

namespace {

using json = nlohmann::ordered_json;

json auto_or(std::size_t v) {
  if (v == 0) return json("auto");
  return json(v);
}

json finite_or_null(double v) {
  if (!std::isfinite(v)) return json(nullptr);
  return json(v);
}

const char* form_name(TestForm form) {
  return form == TestForm::studentized ? "studentized" : "as_printed";
}

void append_row(std::string& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string estimate_report_json(const EstimateReportInput& input) {
  const PipelineConfig& cfg = input.config;

  json root;
  root["tool"] = "tailrisk";
  root["version"] = kVersion;
  root["seed"] = cfg.master_seed;

  json in;
  in["source"] = input.input_description;
  in["y"] = input.y_column;
  in["x"] = input.x_columns;
  in["filters"] = input.filters;
  root["input"] = std::move(in);

  json conf;
  conf["rows"] = auto_or(cfg.i_rows);
  conf["cols"] = auto_or(cfg.j_cols);
  conf["k"] = auto_or(cfg.k);
  conf["k_min"] = cfg.k_min;
  conf["k_max"] = auto_or(cfg.k_max);
  conf["splits"] = cfg.splits;
  conf["scale"] = cfg.scale.empty() ? json(nullptr) : json(cfg.scale);
  conf["moment_orders"] = cfg.moment_orders;
  conf["level"] = cfg.level;
  conf["test_form"] = form_name(cfg.test_form);
  root["config"] = std::move(conf);

  json results = json::array();
  for (const ConditionalEstimate& est : input.estimates) {
    json r;
    r["x0"] = est.x0;
    r["alpha_bar"] = finite_or_null(est.aggregate.alpha_bar);
    r["sigma2_hat"] = finite_or_null(est.aggregate.sigma2_hat);
    r["sigma_hat"] = finite_or_null(est.sigma_hat);
    r["k_median"] = est.aggregate.k_median;
    r["upper_bound"] = est.upper_bound.upper ? finite_or_null(*est.upper_bound.upper)
                                             : json(nullptr);
    r["confidence"] = est.upper_bound.level;
    r["splits_used"] = est.aggregate.s_splits;
    r["failed_splits"] = est.failed_splits;
    json tests = json::array();
    for (const MomentTest& t : est.moment_tests) {
      json jt;
      jt["r"] = t.r;
      jt["statistic"] = finite_or_null(t.statistic);
      jt["audit_statistic"] = finite_or_null(t.audit_statistic);
      jt["critical_value"] = t.critical_value;
      jt["p_value"] = finite_or_null(t.p_value);
      jt["reject"] = t.reject;
      tests.push_back(std::move(jt));
    }
    r["moment_tests"] = std::move(tests);
    results.push_back(std::move(r));
  }
  root["results"] = std::move(results);
  root["warnings"] = input.warnings;

  return root.dump(2) + "\n";
}

std::string estimate_report_csv(const EstimateReportInput& input) {
  const std::size_t dim =
      input.estimates.empty() ? 1 : input.estimates.front().x0.size();

  std::vector<std::string> header;
  if (dim == 1) {
    header.push_back("x0");
  } else {
    for (std::size_t d = 0; d < dim; ++d)
      header.push_back("x0_" + std::to_string(d + 1));
  }
  header.insert(header.end(),
                {"alpha_bar", "sigma2_hat", "sigma_hat", "k_median",
                 "upper_bound", "confidence", "splits_used", "failed_splits"});
  for (double r : input.config.moment_orders) {
    header.push_back("stat_r" + format_number(r));
    header.push_back("reject_r" + format_number(r));
  }

  std::string out;
  append_row(out, header);
  for (const ConditionalEstimate& est : input.estimates) {
    std::vector<std::string> row;
    for (double v : est.x0) row.push_back(format_number(v));
    row.push_back(format_number(est.aggregate.alpha_bar));
    row.push_back(format_number(est.aggregate.sigma2_hat));
    row.push_back(format_number(est.sigma_hat));
    row.push_back(std::to_string(est.aggregate.k_median));
    row.push_back(est.upper_bound.upper ? format_number(*est.upper_bound.upper)
                                        : "nan");
    row.push_back(format_number(est.upper_bound.level));
    row.push_back(std::to_string(est.aggregate.s_splits));
    row.push_back(std::to_string(est.failed_splits));
    for (const MomentTest& t : est.moment_tests) {
      row.push_back(format_number(t.statistic));
      row.push_back(t.reject ? "1" : "0");
    }
    append_row(out, row);
  }
  return out;
}

std::string simulation_csv(std::span<const McCellResult> cells) {
  std::string out =
      "design,rows,cols,k,x0,reps,bias,sd,rmse,coverage,mc_se,failures\n";
  for (const McCellResult& c : cells) {
    append_row(out, std::vector<std::string>{
                        std::to_string(c.design), std::to_string(c.i_rows),
                        std::to_string(c.j_cols), std::to_string(c.k),
                        format_number(c.x0), std::to_string(c.reps),
                        format_number(c.bias), format_number(c.sd),
                        format_number(c.rmse), format_number(c.coverage),
                        format_number(c.mc_standard_error),
                        std::to_string(c.failures)});
  }
  return out;
}

std::string gardes_simulation_csv(std::span<const GardesCellResult> cells) {
  std::string out =
      "design,n,bandwidth,k,x0,reps,bias,sd,rmse,coverage,mc_se,failures\n";
  for (const GardesCellResult& c : cells) {
    append_row(out, std::vector<std::string>{
                        std::to_string(c.design), std::to_string(c.n_total),
                        format_number(c.bandwidth), std::to_string(c.k),
                        format_number(c.x0), std::to_string(c.reps),
                        format_number(c.bias), format_number(c.sd),
                        format_number(c.rmse), format_number(c.coverage),
                        format_number(c.mc_standard_error),
                        std::to_string(c.failures)});
  }
  return out;
}

std::string k_selection_csv(const KSelection& selection) {
  std::string out = "k,t_stat,c_stat,window,selected\n";
  for (const KDiagnostic& d : selection.diagnostics) {
    append_row(out,
               std::vector<std::string>{
                   std::to_string(d.k), format_number(d.t_stat),
                   format_number(d.c_stat), std::to_string(d.window),
                   d.k == selection.k_star ? "1" : "0"});
  }
  return out;
}

std::string bandwidth_csv(std::span<const BandwidthEstimate> estimates) {
  std::string out =
      "bandwidth,alpha_hat,xi_hat,se_alpha,k,n_selected,threshold\n";
  for (const BandwidthEstimate& e : estimates) {
    append_row(out, std::vector<std::string>{
                        format_number(e.bandwidth), format_number(e.alpha_hat),
                        format_number(e.xi_hat), format_number(e.se_alpha),
                        std::to_string(e.k_used), std::to_string(e.n_selected),
                        format_number(e.order_stat_threshold)});
  }
  return out;
}

std::string descriptives_csv(std::span<const DescriptiveRow> rows) {
  std::string out =
      "bin,lower,upper,count,std_dev,kelly,crow_siddiqui,underfilled\n";
  for (const DescriptiveRow& r : rows) {
    append_row(out, std::vector<std::string>{
                        std::to_string(r.bin), format_number(r.lower),
                        format_number(r.upper), std::to_string(r.count),
                        format_number(r.std_dev), format_number(r.kelly),
                        format_number(r.crow_siddiqui),
                        r.underfilled ? "1" : "0"});
  }
  return out;
}

}  // namespace tailrisk
