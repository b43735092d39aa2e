#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fearconn/connectedness.hpp"
#include "fearconn/csv.hpp"
#include "fearconn/predictive.hpp"
#include "fearconn/rolling.hpp"
#include "fearconn/vol_index.hpp"

namespace fearconn::io {

/// Panel CSV: ISO date column followed by one column per name, 6 decimals.
inline void write_panel(const VolPanel& panel, const std::string& path,
                        const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  std::vector<std::string> header{"date"};
  for (auto& n : panel.names) header.push_back(n);
  w.row(header);
  for (size_t i = 0; i < panel.n_dates(); ++i) {
    std::vector<std::string> row{panel.dates[i].to_iso()};
    for (size_t j = 0; j < panel.n_names(); ++j)
      row.push_back(csv::format_double(panel.values[i][j]));
    w.row(row);
  }
}

inline VolPanel read_panel(const std::string& path, Flavor flavor) {
  auto table = csv::read_file(path);
  VolPanel p;
  p.flavor = flavor;
  if (table.header.empty() || table.header[0] != "date")
    throw SchemaError("panel file must start with a 'date' column: " + path);
  p.names.assign(table.header.begin() + 1, table.header.end());
  for (auto& row : table.rows) {
    p.dates.push_back(Date::parse_iso(row[0]));
    std::vector<double> vals;
    for (size_t j = 1; j < row.size(); ++j)
      vals.push_back(detail::parse_num(row[j], "panel value"));
    p.values.push_back(std::move(vals));
  }
  return p;
}

inline void write_series(const std::vector<Date>& dates, const std::vector<double>& values,
                         const std::string& value_name, const std::string& path,
                         const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"date", value_name});
  for (size_t i = 0; i < dates.size(); ++i)
    w.row({dates[i].to_iso(), csv::format_double(values[i])});
}

/// Summary matrix in the static-table layout: pairwise decomposition grid
/// with a FROM column and TO/NET rows, the total in the bottom-right corner.
inline void write_summary(const ConnectednessSummary& s, const FevdTable& table,
                          const std::string& path, const std::string& meta = "") {
  const int N = int(table.theta.rows());
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  std::vector<std::string> header{""};
  for (auto& n : s.names) header.push_back(n);
  header.push_back("FROM");
  w.row(header);
  for (int j = 0; j < N; ++j) {
    std::vector<std::string> row{s.names[j]};
    for (int k = 0; k < N; ++k)
      row.push_back(csv::format_double(100.0 * table.theta(j, k)));
    row.push_back(csv::format_double(s.from(j)));
    w.row(row);
  }
  std::vector<std::string> to_row{"TO"};
  for (int j = 0; j < N; ++j) to_row.push_back(csv::format_double(s.to(j)));
  to_row.push_back("TOTAL");
  w.row(to_row);
  std::vector<std::string> net_row{"NET"};
  for (int j = 0; j < N; ++j) net_row.push_back(csv::format_double(s.net(j)));
  net_row.push_back(csv::format_double(s.total));
  w.row(net_row);
}

inline void write_afc_report(const AfcReport& r, const std::string& path,
                             const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"name", "net_pos", "net_neg", "afc_net"});
  for (size_t j = 0; j < r.names.size(); ++j)
    w.row({r.names[j], csv::format_double(r.net_pos(j)),
           csv::format_double(r.net_neg(j)), csv::format_double(r.afc_net(j))});
  w.row({"AFC_TOTAL", csv::format_double(r.afc_total), "", ""});
}

inline void write_rolling_totals(const RollingSeries& s, const std::string& path,
                                 const std::string& meta = "") {
  auto ratio = ratio_series(s);
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"date", "C", "C_pos", "C_neg", "AFC", "ratio", "unstable"});
  for (size_t i = 0; i < s.dates.size(); ++i) {
    w.row({s.dates[i].to_iso(), csv::format_double(s.total_agg[i]),
           csv::format_double(s.total_pos[i]), csv::format_double(s.total_neg[i]),
           csv::format_double(s.total_pos[i] - s.total_neg[i]),
           std::isfinite(ratio[i]) ? csv::format_double(ratio[i]) : "",
           s.unstable[i] ? "1" : "0"});
  }
}

inline void write_rolling_nets(const RollingSeries& s, Flavor flavor,
                               const std::string& path, const std::string& meta = "") {
  const Matrix& nets = flavor == Flavor::Aggregate ? s.net_agg
                       : flavor == Flavor::Positive ? s.net_pos
                                                    : s.net_neg;
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  std::vector<std::string> header{"date"};
  for (auto& n : s.names) header.push_back(n);
  w.row(header);
  for (size_t i = 0; i < s.dates.size(); ++i) {
    std::vector<std::string> row{s.dates[i].to_iso()};
    for (size_t j = 0; j < s.names.size(); ++j)
      row.push_back(csv::format_double(nets(i, j)));
    w.row(row);
  }
}

inline void write_ranking(const RankingReport& r, const std::string& path,
                          const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"bucket", "name", "transmitted", "received"});
  for (size_t b = 0; b < r.bucket_labels.size(); ++b)
    for (size_t j = 0; j < r.names.size(); ++j)
      w.row({r.bucket_labels[b], r.names[j],
             csv::format_double(r.cells[b][j].transmitted),
             csv::format_double(r.cells[b][j].received)});
}

inline void write_monthly_connectedness(const MonthlyConnectedness& m,
                                        const std::string& path,
                                        const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"month", "stamp_date", "C", "C_pos", "C_neg"});
  for (size_t i = 0; i < m.months.size(); ++i)
    w.row({m.months[i].to_string(), m.stamp_dates[i].to_iso(),
           csv::format_double(m.total_agg[i]), csv::format_double(m.total_pos[i]),
           csv::format_double(m.total_neg[i])});
}

inline MonthlyConnectedness read_monthly_connectedness(const std::string& path) {
  auto table = csv::read_file(path);
  int c_month = table.require_column("month");
  int c_stamp = table.require_column("stamp_date");
  int c_c = table.require_column("C");
  int c_p = table.require_column("C_pos");
  int c_n = table.require_column("C_neg");
  MonthlyConnectedness m;
  for (auto& row : table.rows) {
    m.months.push_back(Month::parse(row[c_month]));
    m.stamp_dates.push_back(Date::parse_iso(row[c_stamp]));
    m.total_agg.push_back(detail::parse_num(row[c_c], "C"));
    m.total_pos.push_back(detail::parse_num(row[c_p], "C_pos"));
    m.total_neg.push_back(detail::parse_num(row[c_n], "C_neg"));
  }
  return m;
}

inline const char* predictor_set_name(PredictorSet p) {
  switch (p) {
    case PredictorSet::TotalC: return "total";
    case PredictorSet::PosAndNegC: return "pos_neg";
    case PredictorSet::RatioC: return "ratio";
  }
  return "?";
}

/// Regression grid: one row per (target, horizon, predictor set) cell with
/// the connectedness coefficients, their statistics and the fit measure.
inline void write_suite_results(const std::vector<CellResult>& cells,
                                const std::string& path, const std::string& meta = "") {
  csv::Writer w(path);
  if (!meta.empty()) w.comment(meta);
  w.row({"target", "horizon", "predictors", "estimator", "coef", "value", "stat",
         "r2_or_loglik", "n_obs", "error"});
  for (auto& cell : cells) {
    const auto& spec = cell.spec;
    std::string est = spec.estimator == Estimator::Probit ? "probit" : "ols_hac";
    if (!cell.result) {
      w.row({spec.target, std::to_string(spec.horizon), predictor_set_name(spec.predictors),
             est, "", "", "", "", "", cell.error});
      continue;
    }
    const auto& r = *cell.result;
    std::string fit = r.r2 ? csv::format_double(*r.r2)
                           : (r.loglik ? csv::format_double(*r.loglik) : "");
    for (size_t i = 0; i < r.coef_names.size(); ++i) {
      w.row({spec.target, std::to_string(spec.horizon), predictor_set_name(spec.predictors),
             est, r.coef_names[i], csv::format_double(r.coefficients(i)),
             std::isfinite(r.stats(i)) ? csv::format_double(r.stats(i)) : "",
             fit, std::to_string(r.n_obs), ""});
    }
  }
}

}  // namespace fearconn::io
