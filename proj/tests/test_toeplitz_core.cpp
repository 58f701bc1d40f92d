#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qperisk/loss_model.hpp"
#include "qperisk/toeplitz_core.hpp"

using namespace qperisk;

namespace {

double residual(const RiskMatrix& rm, const Eigenpair& p) {
  const auto rv = rm.multiply(p.vector);
  double s = 0.0;
  for (std::size_t i = 0; i < rv.size(); ++i) s += std::pow(rv[i] - p.value * p.vector[i], 2);
  return std::sqrt(s);
}

double norm(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

}  // namespace

TEST(BuildRiskMatrix, HolevoSmall) {
  const auto fl = fourier_coefficients(LossSpec::holevo(), 3);
  const auto r1 = build_risk_matrix(fl, 1);
  EXPECT_EQ(r1.dense(), (std::vector<double>{0, -1, -1, 0}));
  const auto r2 = build_risk_matrix(fl, 2);
  const auto d = r2.dense();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(d[i * 4 + j], std::abs(i - j) == 1 ? -1.0 : 0.0);
  }
}

TEST(BuildRiskMatrix, ConstantLossIsZero) {
  const auto rm = build_risk_matrix(fourier_coefficients(LossSpec::constant(1.3), 7), 3);
  EXPECT_EQ(rm.dim(), 8);
  for (double x : rm.dense()) EXPECT_EQ(x, 0.0);
}

TEST(BuildRiskMatrix, SymmetryAndPreconditions) {
  const auto fl = fourier_coefficients(LossSpec::squared(), 15);
  const auto rm = build_risk_matrix(fl, 4);
  EXPECT_EQ(rm.dim(), static_cast<int>(rm.band().size()) + 1);
  for (int i = 0; i < 16; ++i) {
    EXPECT_EQ(rm.entry(i, i), 0.0);
    for (int j = 0; j < 16; ++j) EXPECT_EQ(rm.entry(i, j), rm.entry(j, i));
  }
  EXPECT_THROW(build_risk_matrix(fl, 5), ArgumentError);
  EXPECT_THROW(build_risk_matrix(fl, 0), ArgumentError);
  EXPECT_THROW(build_risk_matrix(fl, 17), ArgumentError);
}

TEST(MinEigenpair, HolevoOneQubit) {
  const auto p = min_eigenpair(build_risk_matrix(fourier_coefficients(LossSpec::holevo(), 1), 1));
  EXPECT_NEAR(p.value, -1.0, 1e-15);
  EXPECT_NEAR(p.vector[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.vector[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(MinEigenpair, HolevoTwoQubitsAgainstJacobi) {
  const auto rm = build_risk_matrix(fourier_coefficients(LossSpec::holevo(), 3), 2);
  const auto p = min_eigenpair(rm);
  const auto ref = oracle::jacobi(rm.dense(), 4);
  EXPECT_NEAR(p.value, -2.0 * std::cos(kPi / 5), 1e-14);
  EXPECT_NEAR(p.value, ref.values.front(), 1e-13);
}

TEST(MinEigenpair, ZeroMatrixReturnsUniform) {
  const auto p = min_eigenpair(RiskMatrix(std::vector<double>(3, 0.0)));
  EXPECT_EQ(p.value, 0.0);
  for (double x : p.vector) EXPECT_NEAR(x, 0.5, 1e-15);
}

TEST(MinEigenpair, TieAcrossFamiliesProjectsUniform) {
  // Only L_2 ≠ 0: eigenvalue -1 twice, spanned by (1,0,1,0) and (0,1,0,1).
  const auto p = min_eigenpair(RiskMatrix({0.0, -1.0, 0.0}));
  EXPECT_NEAR(p.value, -1.0, 1e-14);
  for (double x : p.vector) EXPECT_NEAR(x, 0.5, 1e-14);
}

TEST(MinEigenpair, HolevoMatchesCosineFormula) {
  for (int m = 1; m <= 10; ++m) {
    const int n = (1 << m) - 1;
    const auto p = min_eigenpair(build_risk_matrix(fourier_coefficients(LossSpec::holevo(), n), m));
    EXPECT_NEAR(p.value, -2.0 * std::cos(kPi / (n + 2)), 1e-10) << m;
    for (int i = 0; i <= n; ++i) {
      const double ref = std::sqrt(2.0 / (n + 2)) * std::cos((0.5 * n - i) * kPi / (n + 2));
      ASSERT_NEAR(p.vector[i], ref, 1e-8) << "m=" << m << " i=" << i;
    }
  }
}

TEST(MinEigenpair, RandomBandsAgainstJacobi) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> g;
  for (int dim : {2, 4, 6, 8, 10, 16, 32, 64}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> band(static_cast<std::size_t>(dim - 1));
      for (double& b : band) b = g(gen);
      const RiskMatrix rm(band);
      const auto p = min_eigenpair(rm);
      const auto ref = oracle::jacobi(rm.dense(), dim);
      EXPECT_NEAR(p.value, ref.values.front(), 1e-10) << "dim=" << dim;
      EXPECT_LE(residual(rm, p), 1e-8 * rm.band_norm());
      EXPECT_NEAR(norm(p.vector), 1.0, 1e-12);
      EXPECT_GE(std::accumulate(p.vector.begin(), p.vector.end(), 0.0), -1e-12);

      // min eig of -R is -(max eig of R)
      std::vector<double> neg(band);
      for (double& b : neg) b = -b;
      EXPECT_NEAR(min_eigenpair(RiskMatrix(neg)).value, -ref.values.back(), 1e-10);
    }
  }
}

TEST(MinEigenpair, RayleighQuotientBeatsUniform) {
  for (const auto& loss : {LossSpec::absolute(), LossSpec::squared(), LossSpec::one_zero(0.4)}) {
    for (int m = 1; m <= 8; ++m) {
      const int n = (1 << m) - 1;
      const auto rm = build_risk_matrix(fourier_coefficients(loss, n), m);
      const auto p = min_eigenpair(rm);
      const std::vector<double> u(static_cast<std::size_t>(n + 1), 1.0 / std::sqrt(n + 1.0));
      EXPECT_LE(rm.quadratic_form(p.vector), rm.quadratic_form(u) + 1e-12);
      EXPECT_NEAR(rm.quadratic_form(p.vector), p.value, 1e-10);
    }
  }
}

TEST(MinEigenpair, Errors) {
  EXPECT_THROW(min_eigenpair(RiskMatrix({std::numeric_limits<double>::quiet_NaN()})), NumericError);
  EXPECT_THROW(min_eigenpair(RiskMatrix({1.0, 2.0})), ArgumentError);
  EXPECT_THROW(RiskMatrix(std::vector<double>{}), ArgumentError);
}
