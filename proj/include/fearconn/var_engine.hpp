#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

#include "fearconn/errors.hpp"

namespace fearconn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Fitted VAR(p): y_t = c + Phi_1 y_{t-1} + ... + Phi_p y_{t-p} + e_t.
struct VarModel {
  int p = 0;
  int N = 0;
  std::vector<Matrix> Phi;  // p matrices, N x N
  Vector intercept;
  Matrix Sigma;  // residual covariance, divisor T_eff
  int T_eff = 0;
};

struct MaCoefficients {
  int H = 0;
  std::vector<Matrix> Psi;  // H+1 matrices, Psi[0] = I
};

/// Per-equation least squares with intercept. The cross-moment system is
/// solved by LDLT, falling back to a column-pivoted QR on the stacked
/// regressor matrix when the normal equations are ill-conditioned.
inline VarModel fit_var(const Matrix& panel, int p, bool log_transform) {
  const int T_obs = int(panel.rows());
  const int N = int(panel.cols());
  if (p < 1) throw Error("lag order must be >= 1");
  if (T_obs <= N * p + p + 1)
    throw Error("sample too short for VAR(" + std::to_string(p) + ")");

  Matrix data = panel;
  if (log_transform) {
    if ((data.array() <= 0.0).any())
      throw DomainError("non-positive value under log transform");
    data = data.array().log();
  }

  const int T_eff = T_obs - p;
  const int K = N * p + 1;  // regressors incl. intercept
  Matrix X(T_eff, K);
  Matrix Y(T_eff, N);
  for (int t = 0; t < T_eff; ++t) {
    X(t, 0) = 1.0;
    for (int lag = 1; lag <= p; ++lag)
      X.block(t, 1 + (lag - 1) * N, 1, N) = data.row(p + t - lag);
    Y.row(t) = data.row(p + t);
  }

  Matrix XtX = X.transpose() * X;
  Matrix XtY = X.transpose() * Y;

  // rank check via column-pivoted QR of X
  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < K)
    throw CollinearityError("singular regressor cross-moment matrix (rank " +
                            std::to_string(qr.rank()) + " of " + std::to_string(K) + ")");

  Matrix B;  // K x N coefficient matrix
  Eigen::JacobiSVD<Matrix> svd(XtX);
  double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (cond > 1e10) {
    B = qr.solve(Y);
  } else {
    B = XtX.ldlt().solve(XtY);
  }

  Matrix E = Y - X * B;
  VarModel m;
  m.p = p;
  m.N = N;
  m.T_eff = T_eff;
  m.intercept = B.row(0).transpose();
  for (int lag = 0; lag < p; ++lag)
    m.Phi.push_back(B.block(1 + lag * N, 0, N, N).transpose());
  m.Sigma = (E.transpose() * E) / double(T_eff);
  m.Sigma = 0.5 * (m.Sigma + m.Sigma.transpose().eval());
  return m;
}

/// Truncated MA representation: Psi_0 = I, Psi_h = sum_k Phi_k Psi_{h-k}.
inline MaCoefficients ma_coefficients(const VarModel& model, int H) {
  if (H < 1) throw Error("horizon must be >= 1");
  MaCoefficients ma;
  ma.H = H;
  ma.Psi.resize(H + 1);
  ma.Psi[0] = Matrix::Identity(model.N, model.N);
  for (int h = 1; h <= H; ++h) {
    Matrix acc = Matrix::Zero(model.N, model.N);
    for (int k = 1; k <= std::min(h, model.p); ++k)
      acc += model.Phi[k - 1] * ma.Psi[h - k];
    ma.Psi[h] = acc;
  }
  return ma;
}

struct StabilityResult {
  bool stable = false;
  double spectral_radius = 0.0;
};

/// Companion-matrix spectral radius test.
inline StabilityResult is_stable(const VarModel& model) {
  const int n = model.N * model.p;
  Matrix companion = Matrix::Zero(n, n);
  for (int k = 0; k < model.p; ++k)
    companion.block(0, k * model.N, model.N, model.N) = model.Phi[k];
  if (model.p > 1)
    companion.block(model.N, 0, n - model.N, n - model.N) =
        Matrix::Identity(n - model.N, n - model.N);
  Eigen::EigenSolver<Matrix> es(companion, /*computeEigenvectors=*/false);
  double radius = es.eigenvalues().array().abs().maxCoeff();
  return {radius < 1.0, radius};
}

/// Simulate T rows from the model (after burn-in) with correlated shocks.
/// Used by fixtures and Monte Carlo oracles.
template <typename Rng>
Matrix simulate_var(const VarModel& model, int T, Rng& rng, int burn_in = 200) {
  Eigen::LLT<Matrix> llt(model.Sigma);
  if (llt.info() != Eigen::Success)
    throw Error("Sigma not positive definite for simulation");
  Matrix L = llt.matrixL();
  std::normal_distribution<double> norm(0.0, 1.0);

  const int N = model.N;
  Matrix out(T, N);
  std::vector<Vector> hist(model.p, Vector::Zero(N));
  for (int t = 0; t < burn_in + T; ++t) {
    Vector z(N);
    for (int i = 0; i < N; ++i) z(i) = norm(rng);
    Vector y = model.intercept.size() ? Vector(model.intercept) : Vector(Vector::Zero(N));
    for (int k = 0; k < model.p; ++k) y += model.Phi[k] * hist[k];
    y += L * z;
    for (int k = model.p - 1; k > 0; --k) hist[k] = hist[k - 1];
    hist[0] = y;
    if (t >= burn_in) out.row(t - burn_in) = y.transpose();
  }
  return out;
}

}  // namespace fearconn
