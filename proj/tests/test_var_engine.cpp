#include <catch_amalgamated.hpp>

#include <random>

#include "fearconn/var_engine.hpp"

using namespace fearconn;

namespace {

VarModel bivariate_fixture() {
  VarModel m;
  m.p = 1;
  m.N = 2;
  Matrix phi(2, 2);
  phi << 0.5, 0.2, 0.1, 0.3;
  m.Phi = {phi};
  m.intercept = Vector::Zero(2);
  Matrix sigma(2, 2);
  sigma << 1.0, 0.3, 0.3, 1.0;
  m.Sigma = sigma;
  m.T_eff = 0;
  return m;
}

// power-iteration spectral radius, independent of the eigensolver
double power_radius(const Matrix& A, int iters = 20000) {
  Vector v = Vector::Ones(A.rows()).normalized();
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    Vector w = A * v;
    lambda = w.norm();
    if (lambda == 0.0) return 0.0;
    v = w / lambda;
  }
  return lambda;
}

}  // namespace

TEST_CASE("fit_var recovers a noiseless scalar recurrence exactly") {
  int T = 30;
  Matrix panel(T, 1);
  panel(0, 0) = 1.0;
  for (int t = 1; t < T; ++t) panel(t, 0) = 0.5 * panel(t - 1, 0);
  auto m = fit_var(panel, 1, false);
  CHECK(m.Phi[0](0, 0) == Catch::Approx(0.5).margin(1e-10));
  CHECK(std::abs(m.intercept(0)) < 1e-10);
  CHECK(m.Sigma(0, 0) < 1e-18);
  CHECK(m.T_eff == T - 1);
}

TEST_CASE("fit_var is consistent on a simulated bivariate VAR(1)") {
  auto gen = bivariate_fixture();
  std::mt19937_64 rng(12345);
  Matrix data = simulate_var(gen, 100000, rng);
  auto m = fit_var(data, 1, false);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(m.Phi[0](i, j) - gen.Phi[0](i, j)) < 0.02);
      CHECK(std::abs(m.Sigma(i, j) - gen.Sigma(i, j)) < 0.02);
    }
  // residual means vanish with an intercept included
  CHECK(std::abs(m.intercept(0)) < 0.02);
}

TEST_CASE("constant column triggers a collinearity error") {
  Matrix panel(50, 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 50; ++t) {
    panel(t, 0) = n01(rng);
    panel(t, 1) = 3.0;  // zero-variance regressor, collinear with the intercept
  }
  CHECK_THROWS_AS(fit_var(panel, 1, false), CollinearityError);
}

TEST_CASE("log transform rejects non-positive values") {
  Matrix panel = Matrix::Ones(50, 1);
  panel(10, 0) = -1.0;
  CHECK_THROWS_AS(fit_var(panel, 1, true), DomainError);
}

TEST_CASE("ma_coefficients of a zero model vanish beyond lag 0") {
  VarModel m = bivariate_fixture();
  m.Phi[0].setZero();
  auto ma = ma_coefficients(m, 6);
  CHECK(ma.Psi[0] == Matrix::Identity(2, 2));
  for (int h = 1; h <= 6; ++h) CHECK(ma.Psi[h].norm() == 0.0);
}

TEST_CASE("scalar MA coefficients follow the geometric recursion") {
  VarModel m;
  m.p = 1;
  m.N = 1;
  m.Phi = {Matrix::Constant(1, 1, 0.5)};
  m.intercept = Vector::Zero(1);
  m.Sigma = Matrix::Identity(1, 1);
  auto ma = ma_coefficients(m, 10);
  for (int h = 0; h <= 10; ++h)
    CHECK(ma.Psi[h](0, 0) == Catch::Approx(std::pow(0.5, h)).epsilon(1e-14));
}

TEST_CASE("MA coefficients of a VAR(1) equal matrix powers") {
  auto m = bivariate_fixture();
  auto ma = ma_coefficients(m, 12);
  Matrix power = Matrix::Identity(2, 2);
  for (int h = 0; h <= 12; ++h) {
    CHECK((ma.Psi[h] - power).norm() < 1e-12);
    power = m.Phi[0] * power;
  }
}

TEST_CASE("stability via companion spectral radius") {
  auto m = bivariate_fixture();
  auto s = is_stable(m);
  CHECK(s.stable);
  CHECK(s.spectral_radius == Catch::Approx(power_radius(m.Phi[0])).epsilon(1e-8));

  m.Phi[0].setZero();
  auto z = is_stable(m);
  CHECK(z.stable);
  CHECK(z.spectral_radius == 0.0);

  VarModel unit;
  unit.p = 1;
  unit.N = 1;
  unit.Phi = {Matrix::Constant(1, 1, 1.0)};
  unit.intercept = Vector::Zero(1);
  unit.Sigma = Matrix::Identity(1, 1);
  auto u = is_stable(unit);
  CHECK_FALSE(u.stable);
  CHECK(u.spectral_radius == Catch::Approx(1.0));
}

TEST_CASE("refit on data simulated from a fitted model recovers it") {
  auto gen = bivariate_fixture();
  std::mt19937_64 rng(777);
  Matrix data = simulate_var(gen, 20000, rng);
  auto fitted = fit_var(data, 1, false);
  std::mt19937_64 rng2(778);
  Matrix redata = simulate_var(fitted, 50000, rng2);
  auto refit = fit_var(redata, 1, false);
  // 2 standard errors at T=50000 is well under 0.02 here
  CHECK((refit.Phi[0] - fitted.Phi[0]).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("fit_var commutes with column permutation") {
  auto gen = bivariate_fixture();
  std::mt19937_64 rng(99);
  Matrix data = simulate_var(gen, 5000, rng);
  Matrix swapped(data.rows(), 2);
  swapped.col(0) = data.col(1);
  swapped.col(1) = data.col(0);
  auto a = fit_var(data, 1, false);
  auto b = fit_var(swapped, 1, false);
  CHECK(a.Phi[0](0, 0) == Catch::Approx(b.Phi[0](1, 1)).margin(1e-10));
  CHECK(a.Phi[0](0, 1) == Catch::Approx(b.Phi[0](1, 0)).margin(1e-10));
  CHECK(a.Sigma(0, 1) == Catch::Approx(b.Sigma(1, 0)).margin(1e-10));
}

TEST_CASE("Sigma is symmetric with nonnegative diagonal") {
  auto gen = bivariate_fixture();
  std::mt19937_64 rng(5);
  Matrix data = simulate_var(gen, 3000, rng);
  auto m = fit_var(data, 3, false);
  CHECK((m.Sigma - m.Sigma.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(m.Sigma(0, 0) >= 0.0);
  CHECK(m.Sigma(1, 1) >= 0.0);
  CHECK(m.T_eff == 3000 - 3);
}
