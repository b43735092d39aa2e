#pragma once

#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fearconn/connectedness.hpp"
#include "fearconn/var_engine.hpp"
#include "fearconn/vol_index.hpp"

namespace fearconn {

struct RollingConfig {
  int window = 200;  // trading days
  int p = 4;
  int H = 12;
  bool log_transform = true;
  int step = 1;
  int threads = 0;  // 0 = hardware concurrency
};

/// One window's result across the three flavors.
struct WindowResult {
  Date end_date;
  ConnectednessSummary aggregate;
  ConnectednessSummary positive;
  ConnectednessSummary negative;
  bool unstable = false;  // any flavor's VAR had spectral radius >= 1
};

struct RollingSeries {
  std::vector<Date> dates;  // window end dates
  std::vector<double> total_agg, total_pos, total_neg;
  Matrix net_agg, net_pos, net_neg;  // windows x names
  std::vector<std::string> names;
  std::vector<bool> unstable;
  std::vector<std::pair<Date, std::string>> skipped;
};

struct DateRange {
  std::string label;
  Date begin;
  Date end;  // inclusive
};

struct RankingReport {
  Flavor flavor = Flavor::Aggregate;
  struct Cell {
    double transmitted = 0.0;  // sum of positive daily nets
    double received = 0.0;     // sum of negative daily nets (<= 0)
  };
  std::vector<std::string> names;
  std::vector<std::string> bucket_labels;
  std::vector<std::vector<Cell>> cells;  // [bucket][name]
};

namespace detail {

inline Matrix to_matrix(const VolPanel& p, size_t row_begin, size_t rows) {
  Matrix m(rows, p.n_names());
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < p.n_names(); ++j)
      m(i, j) = p.values[row_begin + i][j];
  return m;
}

/// Run fn(i) for i in [0, n) on `threads` workers; each result lands at its
/// own index so the assembled output does not depend on scheduling.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Whole panel as a dense matrix (rows = dates).
inline Matrix panel_matrix(const VolPanel& p) {
  return detail::to_matrix(p, 0, p.n_dates());
}

/// Fit one window of one flavor and summarize it.
inline std::pair<ConnectednessSummary, bool> window_summary(
    const VolPanel& panel, size_t start, const RollingConfig& cfg) {
  Matrix m = detail::to_matrix(panel, start, size_t(cfg.window));
  auto model = fit_var(m, cfg.p, cfg.log_transform);
  bool unstable = !is_stable(model).stable;
  auto table = gfevd(model, cfg.H, panel.names);
  return {summarize(table, panel.flavor), unstable};
}

/// Right-aligned rolling connectedness over all three flavors. Windows are
/// independent; output is identical under serial or parallel execution.
inline RollingSeries rolling_connectedness(const VolPanel& agg, const VolPanel& pos,
                                           const VolPanel& neg, const RollingConfig& cfg) {
  const size_t T = agg.n_dates();
  if (pos.n_dates() != T || neg.n_dates() != T || pos.names != agg.names ||
      neg.names != agg.names)
    throw AxisMismatchError("rolling panels must share axes");
  if (T < size_t(cfg.window)) throw Error("sample shorter than rolling window");

  std::vector<size_t> ends;
  for (size_t end = size_t(cfg.window) - 1; end < T; end += size_t(cfg.step))
    ends.push_back(end);

  std::vector<std::optional<WindowResult>> results(ends.size());
  std::vector<std::optional<std::string>> failures(ends.size());

  detail::parallel_for(ends.size(), cfg.threads, [&](size_t i) {
    size_t start = ends[i] - size_t(cfg.window) + 1;
    try {
      WindowResult wr;
      wr.end_date = agg.dates[ends[i]];
      bool u1, u2, u3;
      std::tie(wr.aggregate, u1) = window_summary(agg, start, cfg);
      std::tie(wr.positive, u2) = window_summary(pos, start, cfg);
      std::tie(wr.negative, u3) = window_summary(neg, start, cfg);
      wr.unstable = u1 || u2 || u3;
      results[i] = std::move(wr);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  RollingSeries s;
  s.names = agg.names;
  const size_t N = agg.n_names();
  size_t ok = 0;
  for (auto& r : results)
    if (r) ++ok;
  s.net_agg.resize(ok, N);
  s.net_pos.resize(ok, N);
  s.net_neg.resize(ok, N);
  size_t row = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      s.skipped.emplace_back(agg.dates[ends[i]], *failures[i]);
      continue;
    }
    const WindowResult& wr = *results[i];
    s.dates.push_back(wr.end_date);
    s.total_agg.push_back(wr.aggregate.total);
    s.total_pos.push_back(wr.positive.total);
    s.total_neg.push_back(wr.negative.total);
    s.unstable.push_back(wr.unstable);
    s.net_agg.row(row) = wr.aggregate.net.transpose();
    s.net_pos.row(row) = wr.positive.net.transpose();
    s.net_neg.row(row) = wr.negative.net.transpose();
    ++row;
  }
  return s;
}

/// Pointwise C-/C+ ratio; windows with C+ = 0 are gaps (NaN).
inline std::vector<double> ratio_series(const RollingSeries& rolling) {
  std::vector<double> out(rolling.dates.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = rolling.total_pos[i] != 0.0
                 ? rolling.total_neg[i] / rolling.total_pos[i]
                 : std::nan("");
  return out;
}

/// Cumulative transmitter/receiver totals per bucket: T sums the positive
/// daily nets, R the negative ones.
inline RankingReport cumulative_ranking(const RollingSeries& rolling,
                                        const std::vector<DateRange>& buckets,
                                        Flavor flavor) {
  const Matrix& nets = flavor == Flavor::Aggregate ? rolling.net_agg
                       : flavor == Flavor::Positive ? rolling.net_pos
                                                    : rolling.net_neg;
  RankingReport report;
  report.flavor = flavor;
  report.names = rolling.names;
  for (auto& bucket : buckets) {
    std::vector<RankingReport::Cell> cells(rolling.names.size());
    bool any = false;
    for (size_t i = 0; i < rolling.dates.size(); ++i) {
      if (rolling.dates[i] < bucket.begin || rolling.dates[i] > bucket.end) continue;
      any = true;
      for (size_t j = 0; j < rolling.names.size(); ++j) {
        double v = nets(i, j);
        if (v > 0) cells[j].transmitted += v;
        else cells[j].received += v;
      }
    }
    if (!any) throw Error("empty ranking bucket: " + bucket.label);
    report.bucket_labels.push_back(bucket.label);
    report.cells.push_back(std::move(cells));
  }
  return report;
}

/// One month's quarterly-window connectedness totals.
struct MonthlyConnectedness {
  std::vector<Month> months;
  std::vector<Date> stamp_dates;  // last trading day of each month
  std::vector<double> total_agg, total_pos, total_neg;
  std::vector<std::pair<Month, std::string>> skipped;
};

/// Quarterly (60-trading-day) connectedness stamped at month ends, rolled
/// monthly. Months with fewer than `window` prior trading days are skipped.
inline MonthlyConnectedness quarterly_index(const VolPanel& agg, const VolPanel& pos,
                                            const VolPanel& neg, RollingConfig cfg) {
  if (agg.n_names() < 2) throw Error("connectedness undefined for a single name");
  cfg.step = 1;
  MonthlyConnectedness out;

  // month-end row indices: last date of each calendar month present
  std::vector<size_t> month_ends;
  for (size_t i = 0; i + 1 <= agg.n_dates(); ++i) {
    bool last_of_month = (i + 1 == agg.n_dates()) ||
                         agg.dates[i].month_id() != agg.dates[i + 1].month_id();
    if (last_of_month) month_ends.push_back(i);
  }

  for (size_t i : month_ends) {
    Month m = Month(agg.dates[i].month_id());
    if (i + 1 < size_t(cfg.window)) {
      out.skipped.emplace_back(m, "insufficient history");
      continue;
    }
    size_t start = i - size_t(cfg.window) + 1;
    try {
      auto [sa, u1] = window_summary(agg, start, cfg);
      auto [sp, u2] = window_summary(pos, start, cfg);
      auto [sn, u3] = window_summary(neg, start, cfg);
      out.months.push_back(m);
      out.stamp_dates.push_back(agg.dates[i]);
      out.total_agg.push_back(sa.total);
      out.total_pos.push_back(sp.total);
      out.total_neg.push_back(sn.total);
    } catch (const Error& e) {
      out.skipped.emplace_back(m, e.what());
    }
  }
  return out;
}

}  // namespace fearconn
