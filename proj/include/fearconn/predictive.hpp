#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fearconn/errors.hpp"
#include "fearconn/market_data.hpp"
#include "fearconn/rolling.hpp"
#include "fearconn/var_engine.hpp"

namespace fearconn {

inline double norm_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Inverse standard normal CDF (Acklam's rational approximation refined by
/// one Halley step).
inline double norm_cdf_inv(double p) {
  if (p <= 0.0 || p >= 1.0) throw DomainError("norm_cdf_inv requires p in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double e = norm_cdf(x) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

/// Monthly design panel: connectedness columns plus previous-quarter-averaged
/// indicator columns aligned to the connectedness months.
struct AlignedPanel {
  std::vector<Month> months;
  std::vector<double> c_total, c_pos, c_neg, c_ratio;
  struct Column {
    IndicatorKind kind = IndicatorKind::Continuous;
    std::vector<std::optional<double>> values;
  };
  std::map<std::string, Column> indicators;
  long dropped_rows = 0;
};

/// Align monthly indicators with the connectedness months: each indicator
/// value becomes the mean over the trailing 3 months (gap if any is missing);
/// binary indicators binarize that mean at 0.5.
inline AlignedPanel align_monthly(const MonthlyConnectedness& conn,
                                  const std::vector<IndicatorSeries>& indicators) {
  AlignedPanel panel;
  panel.months = conn.months;
  panel.c_total = conn.total_agg;
  panel.c_pos = conn.total_pos;
  panel.c_neg = conn.total_neg;
  panel.c_ratio.resize(conn.months.size());
  for (size_t i = 0; i < conn.months.size(); ++i)
    panel.c_ratio[i] = conn.total_pos[i] != 0.0
                           ? conn.total_neg[i] / conn.total_pos[i]
                           : std::nan("");

  for (auto& ind : indicators) {
    std::map<int, std::optional<double>> raw;
    for (auto& [m, v] : ind.observations) raw[m.id()] = v;
    AlignedPanel::Column col;
    col.kind = ind.kind;
    for (auto& m : panel.months) {
      double sum = 0.0;
      bool complete = true;
      for (int k = 0; k < 3; ++k) {
        auto it = raw.find(m.id() - k);
        if (it == raw.end() || !it->second) {
          complete = false;
          break;
        }
        sum += *it->second;
      }
      if (!complete) {
        col.values.push_back(std::nullopt);
        ++panel.dropped_rows;
        continue;
      }
      double mean = sum / 3.0;
      if (ind.kind == IndicatorKind::Binary)
        col.values.push_back(mean > 0.5 ? 1.0 : 0.0);
      else
        col.values.push_back(mean);
    }
    panel.indicators[ind.name] = std::move(col);
  }

  long complete_rows = 0;
  for (size_t i = 0; i < panel.months.size(); ++i) {
    bool ok = true;
    for (auto& [name, col] : panel.indicators)
      if (!col.values[i]) ok = false;
    if (ok) ++complete_rows;
  }
  if (complete_rows < 24)
    throw InsufficientSampleError("only " + std::to_string(complete_rows) +
                                  " complete aligned months (need 24)");
  return panel;
}

struct RegressionResult {
  std::vector<std::string> coef_names;
  Vector coefficients;
  Vector stats;  // t- or z-statistics
  std::optional<double> r2;       // OLS only
  std::optional<double> loglik;   // probit only
  int n_obs = 0;
  bool degenerate = false;  // zero residual variance, stats undefined
};

/// OLS with Newey-West (Bartlett kernel) standard errors.
inline RegressionResult ols_hac(const Vector& y, const Matrix& X, int hac_lags,
                                std::vector<std::string> coef_names = {}) {
  const int n = int(X.rows());
  const int k = int(X.cols());
  if (n <= k) throw Error("not enough observations for OLS");
  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw CollinearityError("rank-deficient design matrix");

  Vector beta = qr.solve(y);
  Vector e = y - X * beta;
  double ssr = e.squaredNorm();
  double sst = (y.array() - y.mean()).square().sum();

  RegressionResult res;
  res.coef_names = coef_names.empty() ? std::vector<std::string>(k) : std::move(coef_names);
  res.coefficients = beta;
  res.n_obs = n;
  res.r2 = sst > 0 ? 1.0 - ssr / sst : 1.0;

  if (ssr < 1e-12 * std::max(1.0, sst)) {
    res.degenerate = true;
    res.stats = Vector::Constant(k, std::nan(""));
    return res;
  }

  Matrix S = Matrix::Zero(k, k);
  for (int t = 0; t < n; ++t)
    S += e(t) * e(t) * X.row(t).transpose() * X.row(t);
  for (int l = 1; l <= hac_lags; ++l) {
    double w = 1.0 - double(l) / double(hac_lags + 1);
    Matrix G = Matrix::Zero(k, k);
    for (int t = l; t < n; ++t)
      G += e(t) * e(t - l) * X.row(t).transpose() * X.row(t - l);
    S += w * (G + G.transpose());
  }
  Matrix XtX_inv = (X.transpose() * X).ldlt().solve(Matrix::Identity(k, k));
  Matrix cov = XtX_inv * S * XtX_inv;
  res.stats.resize(k);
  for (int i = 0; i < k; ++i) res.stats(i) = beta(i) / std::sqrt(cov(i, i));
  return res;
}

/// Probit ML via damped Newton on the log-likelihood; z-statistics from the
/// inverse observed information at the optimum.
inline RegressionResult probit_fit(const Vector& y, const Matrix& X,
                                   std::vector<std::string> coef_names = {},
                                   int max_iter = 100, double tol = 1e-8) {
  const int n = int(X.rows());
  const int k = int(X.cols());
  bool has0 = false, has1 = false;
  for (int i = 0; i < n; ++i) (y(i) > 0.5 ? has1 : has0) = true;
  if (!has0 || !has1) throw Error("probit target must contain both 0 and 1");
  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw CollinearityError("rank-deficient design matrix");

  auto loglik = [&](const Vector& beta) {
    double ll = 0.0;
    for (int i = 0; i < n; ++i) {
      double z = std::clamp(X.row(i).dot(beta), -35.0, 35.0);
      double p = std::clamp(norm_cdf(z), 1e-15, 1.0 - 1e-15);
      ll += y(i) > 0.5 ? std::log(p) : std::log(1.0 - p);
    }
    return ll;
  };

  Vector beta = Vector::Zero(k);
  double ll = loglik(beta);
  std::vector<double> trace{ll};
  Matrix H(k, k);

  for (int iter = 0; iter < max_iter; ++iter) {
    Vector grad = Vector::Zero(k);
    H.setZero();
    for (int i = 0; i < n; ++i) {
      double z = std::clamp(X.row(i).dot(beta), -35.0, 35.0);
      double phi = norm_pdf(z);
      double P = std::clamp(norm_cdf(z), 1e-15, 1.0 - 1e-15);
      double g, h;
      if (y(i) > 0.5) {
        g = phi / P;
        h = (-z * phi * P - phi * phi) / (P * P);
      } else {
        double Q = 1.0 - P;
        g = -phi / Q;
        h = (-z * phi * Q + phi * phi) / (Q * Q) * -1.0;
      }
      grad += g * X.row(i).transpose();
      H += h * X.row(i).transpose() * X.row(i);
    }
    if (grad.lpNorm<Eigen::Infinity>() < tol) break;

    Vector step = (-H).ldlt().solve(grad);
    double scale = 1.0;
    double new_ll = loglik(beta + scale * step);
    int halvings = 0;
    while (new_ll < ll && halvings < 40) {
      scale *= 0.5;
      new_ll = loglik(beta + scale * step);
      ++halvings;
    }
    // a step that cannot improve the (concave) likelihood beyond rounding
    // noise means we are at the optimum to working precision
    if (new_ll <= ll + 1e-12 * (1.0 + std::abs(ll))) {
      if (new_ll >= ll) beta += scale * step;
      break;
    }
    beta += scale * step;
    ll = new_ll;
    trace.push_back(ll);
    if (beta.lpNorm<Eigen::Infinity>() > 50.0)
      throw SeparationError("probit coefficients diverging (perfect separation?)");
    if (iter == max_iter - 1)
      throw ConvergenceError("probit failed to converge in " + std::to_string(max_iter) +
                             " iterations");
  }
  ll = loglik(beta);
  // a likelihood at (numerical) zero classifies every observation perfectly,
  // which finite coefficients cannot do
  if (ll > -1e-6)
    throw SeparationError("probit likelihood saturated (perfect separation?)");

  // observed information at the optimum
  H.setZero();
  for (int i = 0; i < n; ++i) {
    double z = std::clamp(X.row(i).dot(beta), -35.0, 35.0);
    double phi = norm_pdf(z);
    double P = std::clamp(norm_cdf(z), 1e-15, 1.0 - 1e-15);
    double h;
    if (y(i) > 0.5)
      h = (-z * phi * P - phi * phi) / (P * P);
    else {
      double Q = 1.0 - P;
      h = -(-z * phi * Q + phi * phi) / (Q * Q);
    }
    H += h * X.row(i).transpose() * X.row(i);
  }
  Matrix info_inv = (-H).ldlt().solve(Matrix::Identity(k, k));

  RegressionResult res;
  res.coef_names = coef_names.empty() ? std::vector<std::string>(k) : std::move(coef_names);
  res.coefficients = beta;
  res.n_obs = n;
  res.loglik = ll;
  res.stats.resize(k);
  for (int i = 0; i < k; ++i) res.stats(i) = beta(i) / std::sqrt(info_inv(i, i));
  return res;
}

enum class PredictorSet { TotalC, PosAndNegC, RatioC };
enum class Estimator { OlsHac, Probit };

struct RegressionSpec {
  std::string target;
  int horizon = 1;  // months ahead
  PredictorSet predictors = PredictorSet::TotalC;
  Estimator estimator = Estimator::OlsHac;
  int endo_lags = 12;
  int hac_lags = -1;  // -1: default to the horizon
};

struct CellResult {
  RegressionSpec spec;
  std::optional<RegressionResult> result;
  std::string error;
};

/// Run the predictive grid: for each spec, regress the h-month-ahead target
/// on a constant, the connectedness term(s) and lags 0..11 of the target.
inline std::vector<CellResult> run_suite(const std::vector<RegressionSpec>& specs,
                                         const AlignedPanel& panel) {
  std::vector<CellResult> out;
  const int M = int(panel.months.size());

  for (const auto& spec : specs) {
    CellResult cell;
    cell.spec = spec;
    try {
      auto it = panel.indicators.find(spec.target);
      if (it == panel.indicators.end())
        throw Error("unknown target indicator: " + spec.target);
      const auto& target = it->second;
      if ((spec.estimator == Estimator::Probit) !=
          (target.kind == IndicatorKind::Binary))
        throw Error("estimator/target-kind mismatch for " + spec.target);

      const int h = spec.horizon;
      const int lags = spec.endo_lags;
      const int n_conn = spec.predictors == PredictorSet::PosAndNegC ? 2 : 1;
      const int k = 1 + n_conn + lags;

      std::vector<Vector> rows;
      std::vector<double> ys;
      for (int t = lags - 1; t + h < M; ++t) {
        bool ok = bool(target.values[t + h]);
        for (int l = 0; l < lags && ok; ++l) ok = bool(target.values[t - l]);
        if (spec.predictors == PredictorSet::RatioC && !std::isfinite(panel.c_ratio[t]))
          ok = false;
        if (!ok) continue;
        Vector x(k);
        x(0) = 1.0;
        int c = 1;
        switch (spec.predictors) {
          case PredictorSet::TotalC: x(c++) = panel.c_total[t]; break;
          case PredictorSet::PosAndNegC:
            x(c++) = panel.c_neg[t];
            x(c++) = panel.c_pos[t];
            break;
          case PredictorSet::RatioC: x(c++) = panel.c_ratio[t]; break;
        }
        for (int l = 0; l < lags; ++l) x(c++) = *target.values[t - l];
        rows.push_back(std::move(x));
        ys.push_back(*target.values[t + h]);
      }
      if (int(rows.size()) <= k)
        throw InsufficientSampleError("too few complete rows for " + spec.target +
                                      " h=" + std::to_string(h));

      Matrix X(rows.size(), k);
      Vector y(rows.size());
      for (size_t i = 0; i < rows.size(); ++i) {
        X.row(i) = rows[i].transpose();
        y(i) = ys[i];
      }

      std::vector<std::string> names{"beta0"};
      if (spec.predictors == PredictorSet::PosAndNegC) {
        names.push_back("beta_neg");
        names.push_back("beta_pos");
      } else {
        names.push_back("beta");
      }
      for (int l = 0; l < lags; ++l) names.push_back("gamma" + std::to_string(l));

      if (spec.estimator == Estimator::Probit)
        cell.result = probit_fit(y, X, names);
      else
        cell.result = ols_hac(y, X, spec.hac_lags >= 0 ? spec.hac_lags : h, names);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    out.push_back(std::move(cell));
  }
  return out;
}

}  // namespace fearconn
