#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fearconn/errors.hpp"
#include "fearconn/market_data.hpp"

namespace fearconn {

enum class Flavor { Aggregate, Positive, Negative };
enum class StripSide { All, CallsOnly, PutsOnly };

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Aggregate: return "aggregate";
    case Flavor::Positive: return "positive";
    case Flavor::Negative: return "negative";
  }
  return "?";
}

/// One expiry's inputs to the variance formula: forward, reference strike and
/// the out-of-the-money strip.
struct ExpirySlice {
  double T = 0.0;     // year fraction, N_days/365
  int N_days = 0;     // calendar days to expiry
  double r = 0.0;     // annualized rate
  double F = 0.0;     // forward level from put-call parity
  double K0 = 0.0;    // largest strike <= F
  struct StripPoint {
    double strike;
    double mid;
    double gap;
  };
  std::vector<StripPoint> strip;
};

struct VarianceResult {
  double sigma2 = 0.0;
  StripSide side = StripSide::All;
  int n_strikes = 0;
};

struct VolPanel {
  std::vector<Date> dates;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // [date][name]
  Flavor flavor = Flavor::Aggregate;

  size_t n_dates() const { return dates.size(); }
  size_t n_names() const { return names.size(); }
};

struct VolConfig {
  int target_days = 30;
  int min_days_to_expiry = 7;
  bool error_on_leading_gap = false;
};

/// Pick the near/next expiries bracketing the 30-day target. When no expiry
/// sits on one side of the target the two nearest usable expiries are taken.
inline std::pair<Date, Date> select_expiries(const OptionChainDay& chain,
                                             const VolConfig& cfg = {}) {
  std::vector<std::pair<int, Date>> usable;  // (days, expiry)
  for (auto& [expiry, quotes] : chain.slices) {
    int days = expiry - chain.quote_date;
    if (days < cfg.min_days_to_expiry) continue;
    // need at least 2 distinct strikes
    std::vector<double> strikes;
    for (auto& q : quotes) strikes.push_back(q.strike);
    std::sort(strikes.begin(), strikes.end());
    strikes.erase(std::unique(strikes.begin(), strikes.end()), strikes.end());
    if (strikes.size() < 2) continue;
    usable.emplace_back(days, expiry);
  }
  if (usable.size() < 2)
    throw InsufficientChainError("fewer than 2 usable expiries for " + chain.underlier +
                                 " on " + chain.quote_date.to_iso());
  std::sort(usable.begin(), usable.end());

  const int target = cfg.target_days;
  std::optional<std::pair<int, Date>> near, next;
  for (auto& e : usable) {
    if (e.first <= target) near = e;       // latest at or below target
    else if (!next) next = e;              // earliest above target
  }
  if (near && next) return {near->second, next->second};
  if (!near) return {usable[0].second, usable[1].second};  // all beyond target
  // all at or below target: the two latest
  return {usable[usable.size() - 2].second, usable[usable.size() - 1].second};
}

namespace detail {

struct StrikeRow {
  double strike;
  std::optional<double> call;
  std::optional<double> put;
};

inline std::vector<StrikeRow> collate(const std::vector<OptionQuote>& quotes) {
  std::map<double, StrikeRow> rows;
  for (auto& q : quotes) {
    auto& r = rows[q.strike];
    r.strike = q.strike;
    if (q.right == Right::Call) r.call = q.mid();
    else r.put = q.mid();
  }
  std::vector<StrikeRow> out;
  out.reserve(rows.size());
  for (auto& [k, r] : rows) out.push_back(r);
  return out;
}

}  // namespace detail

/// Forward from put-call parity at the strike with minimal |c-p|, then K0 as
/// the largest strike at or below F.
inline std::pair<double, double> compute_forward(const std::vector<OptionQuote>& quotes,
                                                 double r, double T) {
  auto rows = detail::collate(quotes);
  const detail::StrikeRow* best = nullptr;
  double best_gap = 0.0;
  for (auto& row : rows) {
    if (!row.call || !row.put) continue;
    double gap = std::abs(*row.call - *row.put);
    if (!best || gap < best_gap) {
      best = &row;
      best_gap = gap;
    }
  }
  if (!best) throw ParityError("no strike with both call and put quotes");
  double F = std::exp(r * T) * (*best->call - *best->put) + best->strike;
  double K0 = 0.0;
  bool found = false;
  for (auto& row : rows) {
    if (row.strike <= F && (!found || row.strike > K0)) {
      K0 = row.strike;
      found = true;
    }
  }
  if (!found) throw ParityError("forward below lowest quoted strike");
  return {F, K0};
}

/// Strike gaps: half the distance between the two neighbours for interior
/// strikes, single adjacent difference at the boundaries.
inline std::vector<double> strike_gaps(const std::vector<double>& strikes) {
  size_t n = strikes.size();
  if (n < 2) throw Error("need at least 2 strikes for gaps");
  std::vector<double> gaps(n);
  gaps[0] = strikes[1] - strikes[0];
  gaps[n - 1] = strikes[n - 1] - strikes[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) gaps[i] = 0.5 * (strikes[i + 1] - strikes[i - 1]);
  return gaps;
}

/// Assemble the side-filtered OTM strip for one expiry. For the aggregate
/// side: puts below K0, calls above, call/put average at K0. The call-only
/// strip keeps calls with K >= K0 and the put-only strip puts with K <= K0,
/// so K0 enters both decomposed strips.
inline ExpirySlice build_expiry_slice(const std::vector<OptionQuote>& quotes,
                                      int n_days, double r, StripSide side) {
  ExpirySlice slice;
  slice.N_days = n_days;
  slice.T = double(n_days) / 365.0;
  slice.r = r;
  auto [F, K0] = compute_forward(quotes, r, slice.T);
  slice.F = F;
  slice.K0 = K0;

  auto rows = detail::collate(quotes);
  std::vector<std::pair<double, double>> selected;  // (strike, Q)
  for (auto& row : rows) {
    std::optional<double> q;
    switch (side) {
      case StripSide::All:
        if (row.strike < K0) q = row.put;
        else if (row.strike > K0) q = row.call;
        else if (row.call && row.put) q = 0.5 * (*row.call + *row.put);
        else q = row.call ? row.call : row.put;
        break;
      case StripSide::CallsOnly:
        if (row.strike >= K0) q = row.call;
        break;
      case StripSide::PutsOnly:
        if (row.strike <= K0) q = row.put;
        break;
    }
    if (q && *q > 0) selected.emplace_back(row.strike, *q);
  }
  if (selected.empty()) throw NoStripError("empty strip after side filter");

  std::vector<double> strikes;
  for (auto& [k, q] : selected) strikes.push_back(k);
  if (strikes.size() == 1)
    throw NoStripError("single-strike strip after side filter");
  auto gaps = strike_gaps(strikes);
  for (size_t i = 0; i < strikes.size(); ++i)
    slice.strip.push_back({strikes[i], selected[i].second, gaps[i]});
  return slice;
}

/// Annualized risk-neutral variance of one side's strip, including the
/// forward adjustment term.
inline VarianceResult variance_strip(const ExpirySlice& slice, StripSide side) {
  if (slice.strip.empty()) throw NoStripError("empty strip");
  double sum = 0.0;
  for (auto& p : slice.strip) sum += p.gap / (p.strike * p.strike) * p.mid;
  double adj = slice.F / slice.K0 - 1.0;
  double sigma2 =
      2.0 * std::exp(slice.r * slice.T) / slice.T * sum - adj * adj / slice.T;
  if (sigma2 <= 0)
    throw NonPositiveVarianceError("non-positive strip variance");
  return {sigma2, side, int(slice.strip.size())};
}

/// 30-day index from two expiry variances, linear in total variance.
inline double interpolate_index(const VarianceResult& v1, int n1,
                                const VarianceResult& v2, int n2) {
  if (n1 >= n2) throw Error("expiry days must satisfy N1 < N2");
  double t1 = double(n1) / 365.0, t2 = double(n2) / 365.0;
  double w1 = double(n2 - 30) / double(n2 - n1);
  double w2 = double(30 - n1) / double(n2 - n1);
  double radicand = (365.0 / 30.0) * (t1 * v1.sigma2 * w1 + t2 * v2.sigma2 * w2);
  if (radicand < 0)
    throw NegativeInterpolatedVarianceError(
        "negative interpolated variance: sigma2(T1)=" + std::to_string(v1.sigma2) +
        " sigma2(T2)=" + std::to_string(v2.sigma2));
  return 100.0 * std::sqrt(radicand);
}

struct DayIndexes {
  double aggregate = 0.0;
  double positive = 0.0;
  double negative = 0.0;
};

/// Full per-day computation: expiry selection, per-expiry strips for all
/// three sides, 30-day interpolation.
inline DayIndexes compute_day_indexes(const OptionChainDay& chain,
                                      const RateCurveDay& rates,
                                      const VolConfig& cfg = {}) {
  auto [near, next] = select_expiries(chain, cfg);
  const std::vector<OptionQuote>* q1 = nullptr;
  const std::vector<OptionQuote>* q2 = nullptr;
  for (auto& [expiry, quotes] : chain.slices) {
    if (expiry == near) q1 = &quotes;
    if (expiry == next) q2 = &quotes;
  }
  int n1 = near - chain.quote_date;
  int n2 = next - chain.quote_date;
  double r1 = rate_for(rates, n1);
  double r2 = rate_for(rates, n2);

  DayIndexes out;
  auto one = [&](StripSide side) {
    auto s1 = build_expiry_slice(*q1, n1, r1, side);
    auto s2 = build_expiry_slice(*q2, n2, r2, side);
    return interpolate_index(variance_strip(s1, side), n1, variance_strip(s2, side), n2);
  };
  out.aggregate = one(StripSide::All);
  out.positive = one(StripSide::CallsOnly);
  out.negative = one(StripSide::PutsOnly);
  return out;
}

struct GapReport {
  struct Entry {
    std::string name;
    Date date;
    std::string action;  // "carried_forward" | "leading_trimmed" | "failed"
    std::string detail;
  };
  std::vector<Entry> entries;
};

struct PanelSet {
  VolPanel aggregate;
  VolPanel positive;
  VolPanel negative;
  GapReport gaps;
};

/// Build dense daily panels for all three flavors from per-name chains.
/// Missing interior days carry the previous value forward; leading dates on
/// which some name has no value yet are trimmed (or rejected per config).
inline PanelSet build_panels(const std::map<std::string, std::vector<OptionChainDay>>& chains,
                             const std::map<Date, RateCurveDay>& rates,
                             const VolConfig& cfg = {}) {
  PanelSet out;
  std::vector<std::string> names;
  std::set<Date> date_set;
  for (auto& [name, days] : chains) {
    names.push_back(name);
    for (auto& d : days) date_set.insert(d.quote_date);
  }
  std::vector<Date> dates(date_set.begin(), date_set.end());

  size_t N = names.size();
  const double kMissing = -1.0;
  std::vector<std::vector<DayIndexes>> values(dates.size(),
                                              std::vector<DayIndexes>(N, {kMissing, kMissing, kMissing}));
  std::map<Date, size_t> date_idx;
  for (size_t i = 0; i < dates.size(); ++i) date_idx[dates[i]] = i;

  RateCurveDay flat_zero;
  flat_zero.tenors = {{30, 0.0}};

  for (size_t j = 0; j < N; ++j) {
    int computed = 0;
    for (auto& day : chains.at(names[j])) {
      auto it = rates.find(day.quote_date);
      const RateCurveDay& curve = it != rates.end() ? it->second : flat_zero;
      try {
        values[date_idx[day.quote_date]][j] = compute_day_indexes(day, curve, cfg);
        ++computed;
      } catch (const Error& e) {
        out.gaps.entries.push_back({names[j], day.quote_date, "failed", e.what()});
      }
    }
    if (computed == 0)
      throw Error("no computable index days for name " + names[j]);
  }

  // trim leading dates with any missing name
  size_t start = 0;
  while (start < dates.size()) {
    bool complete = std::all_of(values[start].begin(), values[start].end(),
                                [&](const DayIndexes& v) { return v.aggregate != kMissing; });
    if (complete) break;
    if (cfg.error_on_leading_gap)
      throw Error("leading gap at " + dates[start].to_iso());
    for (size_t j = 0; j < N; ++j)
      if (values[start][j].aggregate == kMissing)
        out.gaps.entries.push_back({names[j], dates[start], "leading_trimmed", ""});
    ++start;
  }
  if (start == dates.size()) throw Error("no date with a complete cross-section");

  auto init_panel = [&](Flavor f) {
    VolPanel p;
    p.flavor = f;
    p.names = names;
    p.dates.assign(dates.begin() + start, dates.end());
    p.values.assign(p.dates.size(), std::vector<double>(N, 0.0));
    return p;
  };
  out.aggregate = init_panel(Flavor::Aggregate);
  out.positive = init_panel(Flavor::Positive);
  out.negative = init_panel(Flavor::Negative);

  for (size_t i = start; i < dates.size(); ++i) {
    for (size_t j = 0; j < N; ++j) {
      DayIndexes v = values[i][j];
      if (v.aggregate == kMissing) {
        v = values[i - 1][j];  // carry forward (complete by induction)
        values[i][j] = v;
        out.gaps.entries.push_back({names[j], dates[i], "carried_forward", ""});
      }
      size_t row = i - start;
      out.aggregate.values[row][j] = v.aggregate;
      out.positive.values[row][j] = v.positive;
      out.negative.values[row][j] = v.negative;
    }
  }
  return out;
}

/// Market-cap-weighted sector index.
inline std::vector<double> sector_index(const VolPanel& panel, const MarketCapTable& caps) {
  std::vector<double> weights(panel.n_names());
  double total = 0.0;
  for (size_t j = 0; j < panel.n_names(); ++j) {
    auto it = caps.entries.find(panel.names[j]);
    if (it == caps.entries.end())
      throw Error("missing market cap for name " + panel.names[j]);
    weights[j] = it->second;
    total += it->second;
  }
  for (auto& w : weights) w /= total;
  std::vector<double> out(panel.n_dates(), 0.0);
  for (size_t i = 0; i < panel.n_dates(); ++i)
    for (size_t j = 0; j < panel.n_names(); ++j)
      out[i] += weights[j] * panel.values[i][j];
  return out;
}

}  // namespace fearconn
