#pragma once

#include <string>
#include <vector>

#include "fearconn/errors.hpp"
#include "fearconn/var_engine.hpp"
#include "fearconn/vol_index.hpp"

namespace fearconn {

/// Generalized forecast-error variance decomposition at horizon H.
struct FevdTable {
  int H = 0;
  Matrix theta_raw;  // pre-normalization shares
  Matrix theta;      // row-normalized, rows sum to 1
  std::vector<std::string> names;
};

struct ConnectednessSummary {
  Flavor flavor = Flavor::Aggregate;
  double total = 0.0;          // percent
  Vector from;                 // percent, per name
  Vector to;                   // percent, per name
  Vector net;                  // to - from
  Matrix pairwise;             // percent, antisymmetric
  std::vector<std::string> names;
};

struct AfcReport {
  double afc_total = 0.0;  // C+ - C-
  Vector net_pos;
  Vector net_neg;
  Vector afc_net;  // net_pos - net_neg
  std::vector<std::string> names;
};

/// Generalized FEVD: share of j's H-step forecast-error variance due to
/// shocks in k, invariant to variable ordering. Sums run h = 0..H inclusive.
inline FevdTable gfevd(const VarModel& model, int H,
                       const std::vector<std::string>& names = {}) {
  const int N = model.N;
  for (int k = 0; k < N; ++k)
    if (model.Sigma(k, k) <= 0.0)
      throw DegenerateVarianceError("zero residual variance in equation " + std::to_string(k));

  auto ma = ma_coefficients(model, H);
  Matrix num = Matrix::Zero(N, N);
  Vector den = Vector::Zero(N);
  for (int h = 0; h <= H; ++h) {
    Matrix PS = ma.Psi[h] * model.Sigma;
    num += PS.array().square().matrix();
    den += (PS * ma.Psi[h].transpose()).diagonal();
  }

  FevdTable t;
  t.H = H;
  t.names = names.empty() ? std::vector<std::string>(N) : names;
  t.theta_raw.resize(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      t.theta_raw(j, k) = num(j, k) / (model.Sigma(k, k) * den(j));
  t.theta = t.theta_raw.array().colwise() / t.theta_raw.rowwise().sum().array();
  return t;
}

/// Aggregate the normalized FEVD into connectedness measures. Directional
/// FROM/TO/NET are 100x the off-diagonal row/column sums and the total is
/// the off-diagonal mass divided by N. Each measure is evaluated through the
/// form that touches the fewest matrix entries (FROM via the diagonal, NET
/// via full row/column sums, TO = FROM + NET); on a row-normalized table
/// these coincide exactly with the plain off-diagonal sums, and they stay
/// closer to published tables whose entries lost precision to rounding.
inline ConnectednessSummary summarize(const FevdTable& table, Flavor flavor) {
  const int N = int(table.theta.rows());
  ConnectednessSummary s;
  s.flavor = flavor;
  s.names = table.names;
  s.from.resize(N);
  s.to.resize(N);
  s.net.resize(N);
  s.pairwise.resize(N, N);
  for (int j = 0; j < N; ++j) {
    s.from(j) = 100.0 * (1.0 - table.theta(j, j));
    s.net(j) = 100.0 * (table.theta.col(j).sum() - table.theta.row(j).sum());
    s.to(j) = s.from(j) + s.net(j);
    for (int k = 0; k < N; ++k)
      s.pairwise(j, k) = 100.0 * (table.theta(k, j) - table.theta(j, k));
  }
  s.total = s.from.mean();
  return s;
}

/// Asymmetric fear connectedness: call-side minus put-side measures.
inline AfcReport afc(const ConnectednessSummary& pos, const ConnectednessSummary& neg) {
  if (pos.flavor != Flavor::Positive || neg.flavor != Flavor::Negative)
    throw AxisMismatchError("afc expects (positive, negative) summaries");
  if (pos.names != neg.names)
    throw AxisMismatchError("afc name axes differ");
  AfcReport r;
  r.names = pos.names;
  r.afc_total = pos.total - neg.total;
  r.net_pos = pos.net;
  r.net_neg = neg.net;
  r.afc_net = pos.net - neg.net;
  return r;
}

}  // namespace fearconn
