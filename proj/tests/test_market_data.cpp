#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fearconn/market_data.hpp"

using namespace fearconn;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

}  // namespace

TEST_CASE("load_option_chains passes well-formed rows through") {
  auto path = write_temp("md_clean.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,2020-01-02,2020-02-01,95,P,1.0,1.2\n"
                         "X,2020-01-02,2020-02-01,100,C,2.0,2.2\n"
                         "X,2020-01-02,2020-02-01,105,C,0.5,0.7\n");
  auto [chains, report] = load_option_chains(path);
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].slices.size() == 1);
  CHECK(chains[0].slices[0].second.size() == 3);
  CHECK(report.dropped == 0);
  CHECK(report.input_rows == 3);
}

TEST_CASE("crossed quote is dropped and counted") {
  auto path = write_temp("md_crossed.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,2020-01-02,2020-02-01,95,P,1.0,1.2\n"
                         "X,2020-01-02,2020-02-01,100,C,2.5,2.2\n");
  auto [chains, report] = load_option_chains(path);
  CHECK(report.dropped == 1);
  CHECK(report.reasons.at("crossed_or_negative_quote") == 1);
  CHECK(chains[0].slices[0].second.size() == 1);
}

TEST_CASE("zero-bid quotes are filtered") {
  auto path = write_temp("md_zerobid.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,2020-01-02,2020-02-01,95,P,0,0.05\n"
                         "X,2020-01-02,2020-02-01,100,C,2.0,2.2\n");
  auto [chains, report] = load_option_chains(path);
  CHECK(report.reasons.at("zero_bid") == 1);
}

TEST_CASE("two quote dates produce two chains in date order") {
  auto path = write_temp("md_twodates.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,2020-01-03,2020-02-01,100,C,2.0,2.2\n"
                         "X,2020-01-02,2020-02-01,100,C,2.0,2.2\n");
  auto [chains, report] = load_option_chains(path);
  REQUIRE(chains.size() == 2);
  CHECK(chains[0].quote_date < chains[1].quote_date);
  CHECK(chains[0].quote_date.to_iso() == "2020-01-02");
}

TEST_CASE("missing required column raises schema error") {
  auto path = write_temp("md_noschema.csv",
                         "underlier,date,expiry,strike,right,bid\n"
                         "X,2020-01-02,2020-02-01,100,C,2.0\n");
  CHECK_THROWS_AS(load_option_chains(path), SchemaError);
}

TEST_CASE("zero parseable rows raises empty-input error") {
  auto path = write_temp("md_allbad.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,notadate,2020-02-01,100,C,2.0,2.2\n");
  CHECK_THROWS_AS(load_option_chains(path), EmptyInputError);
}

TEST_CASE("drop count plus survivors equals input rows") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::ostringstream ss;
  ss << "underlier,date,expiry,strike,right,bid,ask\n";
  int rows = 200;
  for (int i = 0; i < rows; ++i) {
    double bid = u(rng) < 0.2 ? 0.0 : 1.0 + u(rng);
    double ask = u(rng) < 0.2 ? bid - 0.5 : bid + 0.1;
    ss << "X,2020-01-02,2020-02-01," << 50 + i << "," << (i % 2 ? "C" : "P") << ","
       << bid << "," << ask << "\n";
  }
  auto path = write_temp("md_mixed.csv", ss.str());
  auto [chains, report] = load_option_chains(path);
  long surviving = 0;
  for (auto& c : chains)
    for (auto& [e, q] : c.slices) surviving += long(q.size());
  CHECK(report.input_rows == rows);
  CHECK(report.dropped + surviving == rows);
}

TEST_CASE("strikes are strictly increasing per right within a slice") {
  auto path = write_temp("md_order.csv",
                         "underlier,date,expiry,strike,right,bid,ask\n"
                         "X,2020-01-02,2020-02-01,105,C,0.5,0.7\n"
                         "X,2020-01-02,2020-02-01,95,C,3.0,3.2\n"
                         "X,2020-01-02,2020-02-01,95,C,3.0,3.2\n"
                         "X,2020-01-02,2020-02-01,100,C,2.0,2.2\n");
  auto [chains, report] = load_option_chains(path);
  CHECK(report.reasons.at("duplicate_strike_right") == 1);
  auto& quotes = chains[0].slices[0].second;
  for (size_t i = 1; i < quotes.size(); ++i)
    CHECK(quotes[i - 1].strike < quotes[i].strike);
}

TEST_CASE("rate_for interpolates and extrapolates flat") {
  RateCurveDay curve;
  curve.tenors = {{30, 0.02}};
  CHECK(rate_for(curve, 30) == Catch::Approx(0.02));

  RateCurveDay two;
  two.tenors = {{10, 0.01}, {30, 0.03}};
  CHECK(rate_for(two, 20) == Catch::Approx(0.02));
  CHECK(rate_for(two, 60) == Catch::Approx(0.03));
  CHECK(rate_for(two, 5) == Catch::Approx(0.01));
}

TEST_CASE("rate_for is monotone between knots for a monotone curve") {
  RateCurveDay curve;
  curve.tenors = {{7, 0.01}, {30, 0.015}, {90, 0.02}, {365, 0.04}};
  double prev = rate_for(curve, 0);
  for (int d = 1; d <= 400; ++d) {
    double r = rate_for(curve, d);
    CHECK(r >= prev - 1e-15);
    prev = r;
  }
}

TEST_CASE("load_indicators parses columns, binary detection and gaps") {
  auto path = write_temp("md_ind.csv",
                         "month,growth,nber\n"
                         "2020-01,1.5,0\n"
                         "2020-02,,1\n"
                         "2020-03,2.5,1\n");
  auto series = load_indicators(path);
  REQUIRE(series.size() == 2);
  auto& growth = series[0];
  auto& nber = series[1];
  CHECK(growth.name == "growth");
  CHECK(growth.kind == IndicatorKind::Continuous);
  CHECK(growth.gap_count() == 1);
  CHECK(growth.observations.size() == 3);
  CHECK(nber.kind == IndicatorKind::Binary);
  CHECK(nber.gap_count() == 0);
}

TEST_CASE("unparseable month raises format error") {
  auto path = write_temp("md_badmonth.csv",
                         "month,x\n"
                         "January,1\n");
  CHECK_THROWS_AS(load_indicators(path), FormatError);
}

TEST_CASE("market caps reject nonpositive values") {
  auto good = write_temp("md_caps.csv", "name,avg_mktcap\nJPM,165.046\nBAC,155.131\n");
  auto caps = load_market_caps(good);
  CHECK(caps.entries.at("JPM") == Catch::Approx(165.046));
  auto bad = write_temp("md_caps_bad.csv", "name,avg_mktcap\nJPM,0\n");
  CHECK_THROWS_AS(load_market_caps(bad), FormatError);
}
