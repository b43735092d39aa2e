#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fearconn/csv.hpp"
#include "fearconn/dates.hpp"
#include "fearconn/predictive.hpp"
#include "fearconn/var_engine.hpp"

namespace fearconn::fixture {

inline double bs_call(double S, double K, double r, double T, double sigma) {
  double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * T) / (sigma * std::sqrt(T));
  double d2 = d1 - sigma * std::sqrt(T);
  return S * norm_cdf(d1) - K * std::exp(-r * T) * norm_cdf(d2);
}

inline double bs_put(double S, double K, double r, double T, double sigma) {
  double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * T) / (sigma * std::sqrt(T));
  double d2 = d1 - sigma * std::sqrt(T);
  return K * std::exp(-r * T) * norm_cdf(-d2) - S * norm_cdf(-d1);
}

struct FixtureConfig {
  int names = 3;
  int days = 1100;        // trading days
  unsigned seed = 42;
  double spot = 100.0;
  double base_vol = 0.20;
  double skew = 0.15;     // downside smile tilt
  double rate = 0.01;
  double strike_lo = 50.0;
  double strike_hi = 150.0;
  double strike_step = 5.0;
  double min_mid = 0.05;  // drop quotes below this midprice
};

inline std::vector<Date> trading_days(Date start, int count) {
  std::vector<Date> out;
  Date d = start;
  while (int(out.size()) < count) {
    int dow = ((d.serial() % 7) + 7) % 7;  // 1970-01-01 was a Thursday (dow 4 = Thu)
    // serial 0 -> Thursday; weekend when dow maps to Sat (2) or Sun (3)
    if (dow != 2 && dow != 3) out.push_back(d);
    d = d + 1;
  }
  return out;
}

/// Simulate per-name daily flat volatilities from a stable VAR(1) on log-vol.
inline Matrix simulate_vols(const FixtureConfig& cfg, std::mt19937_64& rng) {
  const int N = cfg.names;
  VarModel gen;
  gen.p = 1;
  gen.N = N;
  Matrix phi = Matrix::Constant(N, N, 0.04);
  phi.diagonal().setConstant(0.85);
  gen.Phi = {phi};
  gen.intercept = Vector::Zero(N);
  gen.Sigma = Matrix::Identity(N, N) * 0.012 + Matrix::Constant(N, N, 0.004);
  Matrix logdev = simulate_var(gen, cfg.days, rng);
  Matrix vols(cfg.days, N);
  for (int t = 0; t < cfg.days; ++t)
    for (int j = 0; j < N; ++j)
      vols(t, j) = cfg.base_vol * std::exp(std::clamp(logdev(t, j), -1.0, 1.0));
  return vols;
}

/// Write a full synthetic input set: option chains priced under a skewed
/// Black-Scholes smile, a flat rate curve, market caps and monthly
/// indicator series tied to the simulated volatility level.
inline void write_fixture(const std::string& dir, const FixtureConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int N = cfg.names;
  auto dates = trading_days(Date(2010, 1, 4), cfg.days);
  Matrix vols = simulate_vols(cfg, rng);

  std::vector<std::string> names;
  for (int j = 0; j < N; ++j) names.push_back("BANK" + std::to_string(j + 1));

  {
    csv::Writer w(dir + "/chains.csv");
    w.row({"underlier", "date", "expiry", "strike", "right", "bid", "ask"});
    for (int t = 0; t < cfg.days; ++t) {
      for (int j = 0; j < N; ++j) {
        double sigma0 = vols(t, j);
        for (int n_days : {23, 37}) {
          Date expiry = dates[t] + n_days;
          double T = n_days / 365.0;
          for (double K = cfg.strike_lo; K <= cfg.strike_hi + 1e-9; K += cfg.strike_step) {
            // mild downside skew so call and put strips differ
            double sigma = sigma0 * (1.0 + cfg.skew * std::max(0.0, (cfg.spot - K) / cfg.spot));
            for (bool call : {true, false}) {
              double mid = call ? bs_call(cfg.spot, K, cfg.rate, T, sigma)
                                : bs_put(cfg.spot, K, cfg.rate, T, sigma);
              if (mid < cfg.min_mid) continue;
              double half = std::max(0.01, 0.01 * mid);
              w.row({names[j], dates[t].to_iso(), expiry.to_iso(),
                     csv::format_double(K, 2), call ? "C" : "P",
                     csv::format_double(mid - half, 6), csv::format_double(mid + half, 6)});
            }
          }
        }
      }
    }
  }

  {
    csv::Writer w(dir + "/rates.csv");
    w.row({"date", "tenor_days", "rate"});
    for (auto& d : dates) {
      w.row({d.to_iso(), "7", csv::format_double(cfg.rate, 6)});
      w.row({d.to_iso(), "60", csv::format_double(cfg.rate, 6)});
    }
  }

  {
    csv::Writer w(dir + "/caps.csv");
    w.row({"name", "avg_mktcap"});
    for (int j = 0; j < N; ++j)
      w.row({names[j], csv::format_double(100.0 + 25.0 * j, 3)});
  }

  {
    // monthly indicators over the fixture's calendar span
    csv::Writer w(dir + "/indicators.csv");
    w.row({"month", "macro", "uncert", "nber"});
    int first = dates.front().month_id();
    int last = dates.back().month_id();
    std::normal_distribution<double> noise(0.0, 0.3);
    double macro = 0.0;
    for (int id = first; id <= last; ++id) {
      macro = 0.7 * macro + noise(rng);
      double uncert = 10.0 + 2.0 * std::abs(macro) + 0.5 * noise(rng);
      int nber = macro < -0.6 ? 1 : 0;
      w.row({Month(id).to_string(), csv::format_double(macro, 6),
             csv::format_double(uncert, 6), std::to_string(nber)});
    }
  }
}

}  // namespace fearconn::fixture
