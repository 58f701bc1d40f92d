#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qperisk/fit.hpp"
#include "qperisk/risk_engine.hpp"

using namespace qperisk;

namespace {

const NoiseModel kNoiseless(0.0);

std::vector<LossSpec> named_losses(int m) {
  return {LossSpec::absolute(), LossSpec::squared(), LossSpec::holevo(), LossSpec::one_zero_for_register(m)};
}

FourierLoss coeffs_for(const LossSpec& loss, int m) { return fourier_coefficients(loss, resource_count(m)); }

// L_0 + 2 (1-λ)^N Σ L_k (1 - k/2^m) with the coefficients retyped in the oracle.
double uniform_direct_sum(const std::string& kind, double eps, int m, double lambda) {
  const int n = resource_count(m);
  double s = 0.0;
  for (int k = 1; k <= n; ++k) s += oracle::table_coeff(kind, k, eps) * (1.0 - k / std::ldexp(1.0, m));
  return oracle::table_coeff(kind, 0, eps) + 2.0 * std::pow(1.0 - lambda, n) * s;
}

std::string kind_name(const LossSpec& l) { return to_string(l.kind()); }

}  // namespace

TEST(NoiseModel, Validation) {
  EXPECT_THROW(NoiseModel(-0.1), ArgumentError);
  EXPECT_THROW(NoiseModel(1.0), ArgumentError);
  EXPECT_DOUBLE_EQ(NoiseModel(0.5).attenuation(3), 0.125);
  EXPECT_EQ(NoiseModel(0.0).attenuation(100), 1.0);
}

TEST(RiskOfState, Examples) {
  EXPECT_NEAR(risk_of_state(uniform_state(2), coeffs_for(LossSpec::holevo(), 2), kNoiseless).risk, 0.5, 1e-15);
  const auto opt = optimal_state(2, coeffs_for(LossSpec::holevo(), 2));
  EXPECT_NEAR(risk_of_state(opt, coeffs_for(LossSpec::holevo(), 2), kNoiseless).risk, 2 - 2 * std::cos(kPi / 5), 1e-14);
  EXPECT_NEAR(risk_of_state(uniform_state(1), coeffs_for(LossSpec::squared(), 1), kNoiseless).risk,
              kPi * kPi / 3 - 2, 1e-14);
  const auto c = fourier_coefficients(LossSpec::constant(0.8), 15);
  for (double lambda : {0.0, 0.3}) {
    EXPECT_EQ(risk_of_state(cosine_state(4, 0.1), c, NoiseModel(lambda)).risk, 0.8);
    EXPECT_EQ(risk_of_state(uniform_state(4), c, NoiseModel(lambda), RiskPath::quadratic_form).risk, 0.8);
  }
  EXPECT_THROW(risk_of_state(uniform_state(3), coeffs_for(LossSpec::holevo(), 2), kNoiseless), ArgumentError);
}

TEST(RiskOfState, ReportProvenance) {
  const auto r = risk_of_state(cosine_state(3, 0.2), coeffs_for(LossSpec::squared(), 3), NoiseModel(0.01),
                               RiskPath::quadratic_form);
  EXPECT_EQ(r.method, RiskMethod::matrix_form);
  EXPECT_EQ(r.m, 3);
  EXPECT_EQ(r.lambda, 0.01);
  EXPECT_EQ(r.loss, "squared");
  EXPECT_EQ(r.state, "cosine");
  ASSERT_TRUE(r.omega.has_value());
  EXPECT_EQ(*r.omega, 0.2);
  EXPECT_FALSE(r.standard_error.has_value());
}

TEST(RiskOfState, BothPathsAgree) {
  std::mt19937_64 gen(5);
  for (int m = 1; m <= 7; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      for (int t = 0; t < 5; ++t) {
        const RegisterState s(oracle::random_symmetric_state(m, gen), StateLabel::custom);
        const double a = risk_of_state(s, fl, NoiseModel(0.02)).risk;
        const double b = risk_of_state(s, fl, NoiseModel(0.02), RiskPath::quadratic_form).risk;
        EXPECT_NEAR(a, b, 1e-12);
        EXPECT_LE(a, fl.magnitude_bound());
      }
    }
  }
}

TEST(RiskOfState, LambdaFactorization) {
  std::mt19937_64 gen(9);
  for (int m = 1; m <= 6; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const RegisterState s(oracle::random_symmetric_state(m, gen), StateLabel::custom);
      const double r0 = risk_of_state(s, fl, kNoiseless).risk - fl.l0();
      for (double lambda : {0.001, 0.01, 0.1, 0.5}) {
        const double rl = risk_of_state(s, fl, NoiseModel(lambda)).risk - fl.l0();
        EXPECT_NEAR(rl, std::pow(1 - lambda, resource_count(m)) * r0, 1e-14);
      }
    }
  }
}

TEST(RiskCosineClosed, MatchesGeneralFormula) {
  for (int m = 1; m <= 8; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      for (double frac : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        const double w = frac * cosine_omega_max(m);
        const double closed = risk_cosine_closed(m, w, fl, NoiseModel(0.01)).risk;
        EXPECT_NEAR(closed, risk_of_state(cosine_state(m, w), fl, NoiseModel(0.01)).risk, 1e-12)
            << loss.descriptor() << " m=" << m << " w=" << w;
      }
    }
  }
}

TEST(RiskCosineClosed, Examples) {
  // N = 7, so the minimal Holevo risk is 2 - 2cos(π/9)
  EXPECT_NEAR(risk_cosine_closed(3, kPi / 9, coeffs_for(LossSpec::holevo(), 3), kNoiseless).risk,
              2 - 2 * std::cos(kPi / 9), 1e-14);
  for (int m = 1; m <= 10; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const double u = risk_uniform_closed(m, fl, NoiseModel(0.03)).risk;
      EXPECT_NEAR(risk_cosine_closed(m, 0.0, fl, NoiseModel(0.03)).risk, u, 1e-14);
      EXPECT_NEAR(risk_cosine_closed(m, 1e-9 * cosine_omega_max(m), fl, NoiseModel(0.03)).risk, u, 1e-9);
    }
  }
  EXPECT_THROW(risk_cosine_closed(3, 1.0, coeffs_for(LossSpec::holevo(), 3), kNoiseless), ArgumentError);
}

TEST(RiskUniformClosed, Examples) {
  EXPECT_EQ(risk_uniform_closed(2, coeffs_for(LossSpec::holevo(), 2), kNoiseless).risk, 0.5);
  EXPECT_NEAR(risk_uniform_closed(1, coeffs_for(LossSpec::squared(), 1), kNoiseless).risk, kPi * kPi / 3 - 2, 1e-14);
  for (const auto& loss : named_losses(4)) {
    const auto fl = coeffs_for(loss, 4);
    const double r0 = risk_uniform_closed(4, fl, kNoiseless).risk - fl.l0();
    const double rl = risk_uniform_closed(4, fl, NoiseModel(0.07)).risk - fl.l0();
    EXPECT_NEAR(rl, std::pow(0.93, 15) * r0, 1e-14);
  }
}

TEST(RiskUniformClosed, HolevoIsExactlyTwoOverSize) {
  for (int m = 1; m <= 16; ++m) {
    EXPECT_EQ(risk_uniform_closed(m, coeffs_for(LossSpec::holevo(), m), kNoiseless).risk, std::ldexp(2.0, -m));
    EXPECT_EQ(uniform_named_risk(m, LossSpec::holevo(), kNoiseless).risk, std::ldexp(2.0, -m));
  }
  for (int m = 1; m <= 12; ++m) {
    EXPECT_NEAR(risk_of_state(uniform_state(m), coeffs_for(LossSpec::holevo(), m), kNoiseless).risk,
                std::ldexp(2.0, -m), 8 * std::numeric_limits<double>::epsilon());
  }
}

TEST(UniformNamedRisk, MatchesDirectSum) {
  for (int m = 1; m <= 12; ++m) {
    for (const auto& loss : named_losses(m)) {
      for (double lambda : {0.0, 0.001}) {
        const double ref = uniform_direct_sum(kind_name(loss), loss.epsilon(), m, lambda);
        EXPECT_NEAR(uniform_named_risk(m, loss, NoiseModel(lambda)).risk, ref, 1e-9 * std::max(1.0, ref))
            << loss.descriptor() << " m=" << m;
        EXPECT_NEAR(risk_uniform_closed(m, coeffs_for(loss, m), NoiseModel(lambda)).risk, ref, 1e-12);
      }
    }
  }
  EXPECT_NEAR(uniform_named_risk(3, LossSpec::one_zero(kPi / 8), kNoiseless).risk,
              uniform_direct_sum("one_zero", kPi / 8, 3, 0.0), 1e-9);
  for (double eps : {0.05, 0.5, 2.0, kPi}) {
    for (int m = 1; m <= 10; ++m) {
      EXPECT_NEAR(uniform_named_risk(m, LossSpec::one_zero(eps), kNoiseless).risk,
                  uniform_direct_sum("one_zero", eps, m, 0.0), 1e-9);
    }
  }
  EXPECT_THROW(uniform_named_risk(3, LossSpec::constant(1.0), kNoiseless), ArgumentError);
}

TEST(OptimizeOmega, HolevoOptimum) {
  for (int m = 1; m <= 12; ++m) {
    const int n = resource_count(m);
    const auto opt = optimize_omega(m, coeffs_for(LossSpec::holevo(), m));
    // At m = 1 the cosine family collapses to the uniform state, so ω' ties to 0.
    EXPECT_NEAR(opt.omega, m == 1 ? 0.0 : kPi / (n + 2), 1e-6) << m;
    EXPECT_NEAR(opt.risk, 2 - 2 * std::cos(kPi / (n + 2)), 1e-12);
  }
}

TEST(OptimizeOmega, ConstantLossTiesToZero) {
  const auto opt = optimize_omega(5, fourier_coefficients(LossSpec::constant(0.4), 31));
  EXPECT_EQ(opt.omega, 0.0);
  EXPECT_EQ(opt.risk, 0.4);
}

TEST(OptimizeOmega, IsScanMinimum) {
  for (int m = 2; m <= 9; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const auto opt = optimize_omega(m, fl);
      EXPECT_NEAR(opt.risk, risk_cosine_closed(m, opt.omega, fl, kNoiseless).risk, 1e-15);
      for (int j = 0; j <= 2000; ++j) {
        const double w = cosine_omega_max(m) * j / 2000;
        ASSERT_LE(opt.risk, risk_cosine_closed(m, w, fl, kNoiseless).risk + 1e-14) << loss.descriptor();
      }
    }
  }
}

TEST(Baseline, AnalyticForms) {
  EXPECT_DOUBLE_EQ(baseline_risk(SigmaModel::custom(0.01), LossSpec::squared()), 0.01);
  EXPECT_DOUBLE_EQ(SigmaModel::shot_noise(8).sigma2(), 1.0 / 8);
  EXPECT_DOUBLE_EQ(SigmaModel::heisenberg(8).sigma2(), 1.0 / 64);
  for (double s2 : {1e-4, 0.01, 0.3, 2.0}) {
    const auto sig = SigmaModel::custom(s2);
    EXPECT_NEAR(baseline_risk(sig, LossSpec::holevo()), 2 * (1 - std::exp(-s2 / 2)), 1e-15);
    EXPECT_NEAR(baseline_risk(sig, LossSpec::absolute()), std::sqrt(s2) * std::sqrt(2 / kPi), 1e-15);
    // Each analytic form against Gauss–Hermite on the same loss written as a custom evaluator.
    for (const auto& loss : {LossSpec::squared(), LossSpec::holevo()}) {
      const auto custom = LossSpec::custom([loss](double d) { return loss.evaluate(d); });
      EXPECT_NEAR(baseline_risk(sig, loss), baseline_risk(sig, custom), 1e-12 * std::max(1.0, s2));
    }
  }
}

TEST(Baseline, NonSmoothFormsAgainstQuadrature) {
  // Kinked and discontinuous losses defeat Gauss–Hermite; integrate the density directly.
  auto gaussian_mean = [](auto f, double s2) {
    const double s = std::sqrt(s2);
    const int n = 400000;
    const double lo = -12 * s;
    const double h = 24 * s / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = lo + (i + 0.5) * h;
      acc += f(x) * std::exp(-x * x / (2 * s2));
    }
    return acc * h / std::sqrt(2 * kPi * s2);
  };
  for (double s2 : {0.01, 0.5}) {
    const auto sig = SigmaModel::custom(s2);
    EXPECT_NEAR(baseline_risk(sig, LossSpec::absolute()), gaussian_mean([](double x) { return std::abs(x); }, s2), 1e-9);
    // 1 - P(|δ| ≤ ε), integrating the density over [0, ε] only so the jump sits on an endpoint
    double inside = 0.0;
    const int steps = 100000;
    for (int i = 0; i < steps; ++i) {
      const double x = 0.2 * (i + 0.5) / steps;
      inside += std::exp(-x * x / (2 * s2));
    }
    inside *= 2 * 0.2 / steps / std::sqrt(2 * kPi * s2);
    EXPECT_NEAR(baseline_risk(sig, LossSpec::one_zero(0.2)), 1.0 - inside, 1e-10);
  }
  EXPECT_LT(baseline_risk(SigmaModel::custom(1e-8), LossSpec::one_zero(0.5)), 1e-12);
  EXPECT_GT(baseline_risk(SigmaModel::custom(1e8), LossSpec::one_zero(0.5)), 1 - 1e-4);
  EXPECT_THROW(SigmaModel::custom(0.0), ArgumentError);
  EXPECT_THROW(SigmaModel::custom(-1.0), ArgumentError);
}

TEST(BruteforceOracle, Examples) {
  EXPECT_NEAR(risk_bruteforce_oracle(uniform_state(2), LossSpec::holevo(), kNoiseless, 1024).risk, 0.5, 1e-8);
  const auto opt = optimal_state(3, coeffs_for(LossSpec::holevo(), 3));
  EXPECT_NEAR(risk_bruteforce_oracle(opt, LossSpec::holevo(), kNoiseless, 1024).risk, 2 - 2 * std::cos(kPi / 9), 1e-8);
  const auto fl = coeffs_for(LossSpec::squared(), 2);
  EXPECT_NEAR(risk_bruteforce_oracle(cosine_state(2, kPi / 9), LossSpec::squared(), NoiseModel(0.01), 2048).risk,
              risk_cosine_closed(2, kPi / 9, fl, NoiseModel(0.01)).risk, 1e-7);
  EXPECT_THROW(risk_bruteforce_oracle(uniform_state(3), LossSpec::holevo(), kNoiseless, 64), ArgumentError);
}

TEST(BruteforceOracle, EquivalenceGrid) {
  for (int m = 1; m <= 4; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      std::vector<RegisterState> states{uniform_state(m), optimal_state(m, fl)};
      for (double frac : {0.25, 0.5, 1.0}) states.push_back(cosine_state(m, frac * cosine_omega_max(m)));
      for (double lambda : {0.0, 0.01, 0.1}) {
        for (const auto& s : states) {
          const double closed = risk_of_state(s, fl, NoiseModel(lambda)).risk;
          const double brute = risk_bruteforce_oracle(s, loss, NoiseModel(lambda), 1 << (m + 4)).risk;
          EXPECT_NEAR(closed, brute, 1e-7) << loss.descriptor() << " m=" << m << " lambda=" << lambda;
        }
      }
    }
  }
}

TEST(Dominance, CosineOptimumBeatsUniform) {
  for (int m = 1; m <= 12; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const double u = risk_uniform_closed(m, fl, kNoiseless).risk;
      const double w = optimize_omega(m, fl).risk;
      EXPECT_LE(w, u + 1e-15) << loss.descriptor() << " m=" << m;
      if (m >= 2) {
        EXPECT_LT(w, u) << loss.descriptor() << " m=" << m;
      }
    }
  }
}

TEST(Dominance, OptimalBeatsRandomStates) {
  std::mt19937_64 gen(77);
  for (int m = 1; m <= 6; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const double best = risk_of_state(optimal_state(m, fl), fl, kNoiseless).risk;
      for (int t = 0; t < 100; ++t) {
        const RegisterState s(oracle::random_symmetric_state(m, gen), StateLabel::custom);
        ASSERT_LE(best, risk_of_state(s, fl, kNoiseless).risk + 1e-13);
      }
    }
  }
}

TEST(Dominance, UniformIsStrictlySuboptimal) {
  for (int m = 2; m <= 8; ++m) {
    for (const auto& loss : named_losses(m)) {
      const auto fl = coeffs_for(loss, m);
      const double gap =
          risk_of_state(uniform_state(m), fl, kNoiseless).risk - risk_of_state(optimal_state(m, fl), fl, kNoiseless).risk;
      EXPECT_GT(gap, 1e-9) << loss.descriptor() << " m=" << m;
    }
  }
}

TEST(Scaling, LargeNSlopes) {
  auto slope = [](auto risk_of_m) {
    std::vector<double> x, y;
    for (int m = 6; m <= 12; ++m) {
      x.push_back(std::log(resource_count(m)));
      y.push_back(std::log(risk_of_m(m)));
    }
    return linear_fit(x, y).slope;
  };
  auto cosine_opt = [](const LossSpec& loss) {
    return [loss](int m) { return optimize_omega(m, coeffs_for(loss, m)).risk; };
  };
  EXPECT_NEAR(slope(cosine_opt(LossSpec::squared())), -2.0, 0.1);
  EXPECT_NEAR(slope(cosine_opt(LossSpec::holevo())), -2.0, 0.1);
  EXPECT_NEAR(slope(cosine_opt(LossSpec::absolute())), -1.0, 0.1);
  // 1/(N^3 ε) only shows with ε held fixed; with ε = π/2^m the risk stays O(1).
  EXPECT_NEAR(slope(cosine_opt(LossSpec::one_zero(0.5))), -3.0, 0.2);
  EXPECT_NEAR(slope([](int m) { return risk_uniform_closed(m, coeffs_for(LossSpec::holevo(), m), kNoiseless).risk; }),
              -1.0, 0.05);
}
