#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fearconn/csv.hpp"
#include "fearconn/dates.hpp"
#include "fearconn/errors.hpp"

namespace fearconn {

enum class Right { Call, Put };

struct OptionQuote {
  double strike = 0.0;
  Right right = Right::Call;
  double bid = 0.0;
  double ask = 0.0;
  Date expiry;
  Date quote_date;

  double mid() const { return 0.5 * (bid + ask); }
};

/// All quotes for one underlier on one trading day, grouped by expiry.
struct OptionChainDay {
  std::string underlier;
  Date quote_date;
  // expiry -> quotes sorted by (strike, right), unique per (strike, right)
  std::vector<std::pair<Date, std::vector<OptionQuote>>> slices;
};

struct RateCurveDay {
  Date quote_date;
  std::vector<std::pair<int, double>> tenors;  // (days, annualized rate), increasing
};

struct MarketCapTable {
  std::map<std::string, double> entries;  // name -> avg market cap (billions)
};

enum class IndicatorKind { Continuous, Binary };

struct IndicatorSeries {
  std::string name;
  IndicatorKind kind = IndicatorKind::Continuous;
  std::vector<std::pair<Month, std::optional<double>>> observations;  // gaps = nullopt

  int gap_count() const {
    int n = 0;
    for (auto& [m, v] : observations)
      if (!v) ++n;
    return n;
  }
};

/// Column mapping for option chain files.
struct ChainSchema {
  std::string date = "date";
  std::string expiry = "expiry";
  std::string strike = "strike";
  std::string right = "right";
  std::string bid = "bid";
  std::string ask = "ask";
  std::string underlier = "underlier";
};

struct DropReport {
  long input_rows = 0;
  long dropped = 0;
  std::map<std::string, long> reasons;

  long surviving() const { return input_rows - dropped; }
};

namespace detail {

inline double parse_num(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v))
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("unparseable ") + what + ": '" + s + "'");
  }
}

}  // namespace detail

/// Parse option quotes from a delimited file, enforcing per-quote invariants.
/// Rows failing an invariant (including the zero-bid filter) are dropped and
/// counted by reason. Chains are returned ordered by (underlier, quote_date).
inline std::pair<std::vector<OptionChainDay>, DropReport> load_option_chains(
    const std::string& path, const ChainSchema& schema = {}) {
  auto table = csv::read_file(path);
  int c_date = table.require_column(schema.date);
  int c_expiry = table.require_column(schema.expiry);
  int c_strike = table.require_column(schema.strike);
  int c_right = table.require_column(schema.right);
  int c_bid = table.require_column(schema.bid);
  int c_ask = table.require_column(schema.ask);
  int c_und = table.column(schema.underlier);  // optional, defaults to ""

  DropReport report;
  // (underlier, quote_date) -> expiry -> quotes
  std::map<std::pair<std::string, Date>, std::map<Date, std::vector<OptionQuote>>> grouped;

  for (auto& row : table.rows) {
    ++report.input_rows;
    auto drop = [&](const std::string& reason) {
      ++report.dropped;
      ++report.reasons[reason];
    };
    OptionQuote q;
    std::string und;
    try {
      q.quote_date = Date::parse_iso(row[c_date]);
      q.expiry = Date::parse_iso(row[c_expiry]);
      q.strike = detail::parse_num(row[c_strike], "strike");
      q.bid = detail::parse_num(row[c_bid], "bid");
      q.ask = detail::parse_num(row[c_ask], "ask");
      const std::string& r = row[c_right];
      if (r == "C" || r == "c" || r == "Call" || r == "call")
        q.right = Right::Call;
      else if (r == "P" || r == "p" || r == "Put" || r == "put")
        q.right = Right::Put;
      else
        throw FormatError("unknown right '" + r + "'");
      und = c_und >= 0 ? row[c_und] : "";
    } catch (const std::exception&) {
      drop("unparseable");
      continue;
    }
    if (q.strike <= 0) {
      drop("nonpositive_strike");
      continue;
    }
    if (q.bid < 0 || q.ask < q.bid) {
      drop("crossed_or_negative_quote");
      continue;
    }
    if (q.bid == 0) {
      drop("zero_bid");
      continue;
    }
    if (q.expiry <= q.quote_date) {
      drop("expired");
      continue;
    }
    auto& slot = grouped[{und, q.quote_date}][q.expiry];
    bool dup = std::any_of(slot.begin(), slot.end(), [&](const OptionQuote& o) {
      return o.strike == q.strike && o.right == q.right;
    });
    if (dup) {
      drop("duplicate_strike_right");
      continue;
    }
    slot.push_back(q);
  }

  if (report.surviving() == 0)
    throw EmptyInputError("no parseable option rows in " + path);

  std::vector<OptionChainDay> chains;
  for (auto& [key, by_expiry] : grouped) {
    OptionChainDay day;
    day.underlier = key.first;
    day.quote_date = key.second;
    for (auto& [expiry, quotes] : by_expiry) {
      std::sort(quotes.begin(), quotes.end(), [](const OptionQuote& a, const OptionQuote& b) {
        if (a.strike != b.strike) return a.strike < b.strike;
        return a.right < b.right;
      });
      day.slices.emplace_back(expiry, std::move(quotes));
    }
    chains.push_back(std::move(day));
  }
  return {std::move(chains), report};
}

/// Rate lookup with linear interpolation between tenor knots and flat
/// extrapolation outside the quoted range.
inline double rate_for(const RateCurveDay& curve, int days) {
  if (curve.tenors.empty()) throw Error("empty rate curve");
  const auto& t = curve.tenors;
  if (days <= t.front().first) return t.front().second;
  if (days >= t.back().first) return t.back().second;
  for (size_t i = 1; i < t.size(); ++i) {
    if (days <= t[i].first) {
      auto [d0, r0] = t[i - 1];
      auto [d1, r1] = t[i];
      if (days == d1) return r1;
      double w = double(days - d0) / double(d1 - d0);
      return r0 + w * (r1 - r0);
    }
  }
  return t.back().second;  // unreachable
}

/// Rate curves file: columns date, tenor_days, rate.
inline std::map<Date, RateCurveDay> load_rate_curves(const std::string& path) {
  auto table = csv::read_file(path);
  int c_date = table.require_column("date");
  int c_tenor = table.require_column("tenor_days");
  int c_rate = table.require_column("rate");
  std::map<Date, RateCurveDay> out;
  for (auto& row : table.rows) {
    Date d = Date::parse_iso(row[c_date]);
    int tenor = int(detail::parse_num(row[c_tenor], "tenor_days"));
    double r = detail::parse_num(row[c_rate], "rate");
    auto& curve = out[d];
    curve.quote_date = d;
    curve.tenors.emplace_back(tenor, r);
  }
  for (auto& [d, curve] : out)
    std::sort(curve.tenors.begin(), curve.tenors.end());
  return out;
}

/// Market caps file: columns name, avg_mktcap.
inline MarketCapTable load_market_caps(const std::string& path) {
  auto table = csv::read_file(path);
  int c_name = table.require_column("name");
  int c_cap = table.require_column("avg_mktcap");
  MarketCapTable caps;
  for (auto& row : table.rows) {
    double v = detail::parse_num(row[c_cap], "avg_mktcap");
    if (v <= 0) throw FormatError("nonpositive market cap for " + row[c_name]);
    caps.entries[row[c_name]] = v;
  }
  return caps;
}

/// Indicators file: month column plus one column per series; blank cells are
/// gaps. A column whose non-gap values are all in {0,1} is flagged Binary.
inline std::vector<IndicatorSeries> load_indicators(const std::string& path) {
  auto table = csv::read_file(path);
  int c_month = table.require_column("month");
  std::vector<IndicatorSeries> out;
  for (size_t c = 0; c < table.header.size(); ++c) {
    if (int(c) == c_month) continue;
    IndicatorSeries s;
    s.name = table.header[c];
    bool binary = true;
    for (auto& row : table.rows) {
      Month m = Month::parse(row[c_month]);
      const std::string& cell = row[c];
      if (cell.empty()) {
        s.observations.emplace_back(m, std::nullopt);
      } else {
        double v = detail::parse_num(cell, s.name.c_str());
        if (v != 0.0 && v != 1.0) binary = false;
        s.observations.emplace_back(m, v);
      }
    }
    std::sort(s.observations.begin(), s.observations.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < s.observations.size(); ++i)
      if (!(s.observations[i - 1].first < s.observations[i].first))
        throw FormatError("duplicate month in indicator " + s.name);
    s.kind = binary ? IndicatorKind::Binary : IndicatorKind::Continuous;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fearconn
