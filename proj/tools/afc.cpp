#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fearconn/connectedness.hpp"
#include "fearconn/fixture.hpp"
#include "fearconn/io.hpp"
#include "fearconn/market_data.hpp"
#include "fearconn/predictive.hpp"
#include "fearconn/rolling.hpp"
#include "fearconn/var_engine.hpp"
#include "fearconn/vol_index.hpp"

namespace fs = std::filesystem;
using namespace fearconn;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fnv1a_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

struct Options {
  std::string output = ".";
  int threads = 0;
  unsigned seed = 42;

  // inputs
  std::string chains = "chains.csv";
  std::string rates = "rates.csv";
  std::string caps = "caps.csv";
  std::string indicators = "indicators.csv";
  std::string monthly = "";  // monthly connectedness csv; default <output>/monthly_connectedness.csv

  // vol options
  int min_days_to_expiry = 7;
  bool error_on_leading_gap = false;

  // rolling options
  int window = 200;
  int var_lags = 4;
  int horizon = 12;
  int step = 1;
  int quarterly_window = 60;
  std::string crisis_begin = "2007-12-01";
  std::string crisis_end = "2009-06-30";

  // predictive options
  int max_horizon = 12;
  int hac_lags = -1;  // -1: lag equals the forecast horizon
  int endo_lags = 12;

  // fixture options
  int fixture_names = 3;
  int fixture_days = 1100;

  std::string mode = "static";

  std::string canonical() const {
    std::ostringstream ss;
    ss << chains << '|' << rates << '|' << caps << '|' << indicators << '|' << monthly
       << '|' << min_days_to_expiry << '|' << error_on_leading_gap << '|' << window
       << '|' << var_lags << '|' << horizon << '|' << step << '|' << quarterly_window
       << '|' << crisis_begin << '|' << crisis_end << '|' << max_horizon << '|'
       << hac_lags << '|' << endo_lags << '|' << seed << '|' << fixture_names << '|'
       << fixture_days << '|' << mode;
    return ss.str();
  }
  std::string meta() const {
    return std::string("afc ") + kVersion + " config_hash=" + fnv1a_hex(canonical());
  }
};

int fail(const std::string& kind, const std::string& message) {
  nlohmann::json err{{"error", kind}, {"message", message}};
  std::cerr << err.dump() << std::endl;
  return 1;
}

std::string in_dir(const std::string& dir, const std::string& path) {
  if (fs::path(path).is_absolute()) return path;
  return (fs::path(dir) / path).string();
}

int cmd_gen_fixture(const Options& opt) {
  fs::create_directories(opt.output);
  fixture::FixtureConfig cfg;
  cfg.names = opt.fixture_names;
  cfg.days = opt.fixture_days;
  cfg.seed = opt.seed;
  fixture::write_fixture(opt.output, cfg);
  std::cout << "wrote fixture (" << cfg.names << " names, " << cfg.days
            << " days) to " << opt.output << "\n";
  return 0;
}

int cmd_build_indexes(const Options& opt) {
  fs::create_directories(opt.output);
  auto [chain_list, drops] = load_option_chains(opt.chains);
  auto rates = load_rate_curves(opt.rates);
  auto caps = load_market_caps(opt.caps);

  std::map<std::string, std::vector<OptionChainDay>> by_name;
  for (auto& c : chain_list) by_name[c.underlier].push_back(c);

  VolConfig vcfg;
  vcfg.min_days_to_expiry = opt.min_days_to_expiry;
  vcfg.error_on_leading_gap = opt.error_on_leading_gap;
  auto panels = build_panels(by_name, rates, vcfg);

  std::string meta = opt.meta();
  io::write_panel(panels.aggregate, in_dir(opt.output, "panel_aggregate.csv"), meta);
  io::write_panel(panels.positive, in_dir(opt.output, "panel_positive.csv"), meta);
  io::write_panel(panels.negative, in_dir(opt.output, "panel_negative.csv"), meta);
  io::write_series(panels.aggregate.dates, sector_index(panels.aggregate, caps), "wvix",
                   in_dir(opt.output, "wvix.csv"), meta);

  csv::Writer w(in_dir(opt.output, "gap_report.csv"));
  w.comment(meta);
  w.row({"name", "date", "action", "detail"});
  for (auto& e : panels.gaps.entries)
    w.row({e.name, e.date.to_iso(), e.action, e.detail});

  std::cout << "panels: " << panels.aggregate.n_dates() << " dates x "
            << panels.aggregate.n_names() << " names; dropped rows: " << drops.dropped
            << "/" << drops.input_rows << "; gap events: " << panels.gaps.entries.size()
            << "\n";
  return 0;
}

int cmd_connectedness(const Options& opt) {
  fs::create_directories(opt.output);
  std::string meta = opt.meta();
  auto agg = io::read_panel(in_dir(opt.output, "panel_aggregate.csv"), Flavor::Aggregate);
  auto pos = io::read_panel(in_dir(opt.output, "panel_positive.csv"), Flavor::Positive);
  auto neg = io::read_panel(in_dir(opt.output, "panel_negative.csv"), Flavor::Negative);

  RollingConfig cfg;
  cfg.window = opt.window;
  cfg.p = opt.var_lags;
  cfg.H = opt.horizon;
  cfg.step = opt.step;
  cfg.threads = opt.threads;

  if (opt.mode == "static") {
    auto run = [&](const VolPanel& p) {
      Matrix m = panel_matrix(p);
      auto model = fit_var(m, cfg.p, cfg.log_transform);
      auto table = gfevd(model, cfg.H, p.names);
      return std::make_pair(summarize(table, p.flavor), table);
    };
    auto [sa, ta] = run(agg);
    auto [sp, tp] = run(pos);
    auto [sn, tn] = run(neg);
    io::write_summary(sa, ta, in_dir(opt.output, "static_aggregate.csv"), meta);
    io::write_summary(sp, tp, in_dir(opt.output, "static_positive.csv"), meta);
    io::write_summary(sn, tn, in_dir(opt.output, "static_negative.csv"), meta);
    io::write_afc_report(afc(sp, sn), in_dir(opt.output, "afc.csv"), meta);
    std::cout << "static totals: C=" << sa.total << " C+=" << sp.total
              << " C-=" << sn.total << "\n";
    return 0;
  }

  if (opt.mode != "rolling") throw ConfigError("mode must be 'static' or 'rolling'");
  auto series = rolling_connectedness(agg, pos, neg, cfg);
  io::write_rolling_totals(series, in_dir(opt.output, "rolling_totals.csv"), meta);
  io::write_rolling_nets(series, Flavor::Aggregate,
                         in_dir(opt.output, "rolling_nets_aggregate.csv"), meta);
  io::write_rolling_nets(series, Flavor::Positive,
                         in_dir(opt.output, "rolling_nets_positive.csv"), meta);
  io::write_rolling_nets(series, Flavor::Negative,
                         in_dir(opt.output, "rolling_nets_negative.csv"), meta);

  Date crisis_begin = Date::parse_iso(opt.crisis_begin);
  Date crisis_end = Date::parse_iso(opt.crisis_end);
  std::vector<DateRange> buckets;
  if (series.dates.front() < crisis_begin)
    buckets.push_back({"pre_crisis", series.dates.front(), crisis_begin + (-1)});
  if (crisis_begin <= series.dates.back() && crisis_end >= series.dates.front())
    buckets.push_back({"crisis", crisis_begin, crisis_end});
  if (series.dates.back() > crisis_end)
    buckets.push_back({"post_crisis", crisis_end + 1, series.dates.back()});
  if (buckets.empty())
    buckets.push_back({"full_sample", series.dates.front(), series.dates.back()});
  // keep only buckets that actually intersect the sample
  std::vector<DateRange> usable;
  for (auto& b : buckets) {
    bool any = false;
    for (auto& d : series.dates)
      if (d >= b.begin && d <= b.end) any = true;
    if (any) usable.push_back(b);
  }
  for (Flavor f : {Flavor::Aggregate, Flavor::Positive, Flavor::Negative}) {
    auto ranking = cumulative_ranking(series, usable, f);
    io::write_ranking(ranking,
                      in_dir(opt.output, std::string("ranking_") + flavor_name(f) + ".csv"),
                      meta);
  }

  RollingConfig qcfg = cfg;
  qcfg.window = opt.quarterly_window;
  auto monthly = quarterly_index(agg, pos, neg, qcfg);
  io::write_monthly_connectedness(monthly, in_dir(opt.output, "monthly_connectedness.csv"),
                                  meta);

  std::cout << "rolling windows: " << series.dates.size() << " (skipped "
            << series.skipped.size() << "); monthly points: " << monthly.months.size()
            << "\n";
  return 0;
}

int cmd_predict(const Options& opt) {
  fs::create_directories(opt.output);
  std::string meta = opt.meta();
  std::string monthly_path = opt.monthly.empty()
                                 ? in_dir(opt.output, "monthly_connectedness.csv")
                                 : opt.monthly;
  auto monthly = io::read_monthly_connectedness(monthly_path);
  auto indicators = load_indicators(opt.indicators);
  auto panel = align_monthly(monthly, indicators);

  std::vector<RegressionSpec> specs;
  for (auto& ind : indicators) {
    for (int h = 1; h <= opt.max_horizon; ++h) {
      for (PredictorSet ps :
           {PredictorSet::TotalC, PredictorSet::PosAndNegC, PredictorSet::RatioC}) {
        RegressionSpec spec;
        spec.target = ind.name;
        spec.horizon = h;
        spec.predictors = ps;
        spec.estimator = ind.kind == IndicatorKind::Binary ? Estimator::Probit
                                                           : Estimator::OlsHac;
        spec.endo_lags = opt.endo_lags;
        spec.hac_lags = opt.hac_lags;
        specs.push_back(spec);
      }
    }
  }
  auto cells = run_suite(specs, panel);
  io::write_suite_results(cells, in_dir(opt.output, "predict_results.csv"), meta);

  int failed = 0;
  for (auto& c : cells)
    if (!c.result) ++failed;
  std::cout << "predictive cells: " << cells.size() << " (" << failed << " failed)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric fear connectedness pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style config file; flags override config");
  app.allow_config_extras(false);

  Options opt;
  app.add_option("--output", opt.output, "Output directory")->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "RNG seed for fixture generation")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen-fixture", "Emit synthetic option chains and inputs");
  gen->add_option("--names", opt.fixture_names, "Number of underliers")->capture_default_str();
  gen->add_option("--days", opt.fixture_days, "Number of trading days")->capture_default_str();

  auto* build = app.add_subcommand("build-indexes", "Compute daily volatility index panels");
  build->add_option("--chains", opt.chains, "Option chain CSV")->capture_default_str();
  build->add_option("--rates", opt.rates, "Rate curve CSV")->capture_default_str();
  build->add_option("--caps", opt.caps, "Market cap CSV")->capture_default_str();
  build->add_option("--min-days-expiry", opt.min_days_to_expiry,
                    "Minimum calendar days to expiry")->capture_default_str();
  build->add_flag("--error-on-leading-gap", opt.error_on_leading_gap,
                  "Fail instead of trimming leading incomplete dates");

  auto* conn = app.add_subcommand("connectedness", "Static or rolling connectedness");
  conn->add_option("--mode", opt.mode, "static|rolling")->capture_default_str();
  conn->add_option("--window", opt.window, "Rolling window (trading days)")
      ->capture_default_str();
  conn->add_option("--lags", opt.var_lags, "VAR order p")->capture_default_str();
  conn->add_option("--horizon", opt.horizon, "FEVD horizon H (days)")->capture_default_str();
  conn->add_option("--step", opt.step, "Rolling step (days)")->capture_default_str();
  conn->add_option("--quarterly-window", opt.quarterly_window,
                   "Window for monthly-rolled quarterly index")->capture_default_str();
  conn->add_option("--crisis-begin", opt.crisis_begin, "Crisis bucket start (ISO)")
      ->capture_default_str();
  conn->add_option("--crisis-end", opt.crisis_end, "Crisis bucket end (ISO)")
      ->capture_default_str();

  auto* pred = app.add_subcommand("predict", "Predictive regression suites");
  pred->add_option("--indicators", opt.indicators, "Monthly indicator CSV")
      ->capture_default_str();
  pred->add_option("--monthly", opt.monthly,
                   "Monthly connectedness CSV (default: <output>/monthly_connectedness.csv)");
  pred->add_option("--max-horizon", opt.max_horizon, "Highest forecast horizon (months)")
      ->capture_default_str();
  pred->add_option("--hac-lags", opt.hac_lags,
                   "Newey-West lag count (-1: equal to horizon)")->capture_default_str();
  pred->add_option("--endo-lags", opt.endo_lags, "Endogenous lags of the target")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_fixture(opt);
    if (build->parsed()) return cmd_build_indexes(opt);
    if (conn->parsed()) return cmd_connectedness(opt);
    if (pred->parsed()) return cmd_predict(opt);
  } catch (const SchemaError& e) {
    return fail("schema", e.what());
  } catch (const InsufficientSampleError& e) {
    return fail("insufficient_sample", e.what());
  } catch (const ConfigError& e) {
    return fail("config", e.what());
  } catch (const Error& e) {
    return fail("pipeline", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
