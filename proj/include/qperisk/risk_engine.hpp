#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qperisk/angles.hpp"
#include "qperisk/errors.hpp"
#include "qperisk/loss_model.hpp"
#include "qperisk/minimize.hpp"
#include "qperisk/quadrature.hpp"
#include "qperisk/special_functions.hpp"
#include "qperisk/states.hpp"
#include "qperisk/toeplitz_core.hpp"

namespace qperisk {

/// Depolarizing channel of strength λ on the register after every U(θ).
class NoiseModel {
 public:
  explicit NoiseModel(double lambda = 0.0) : lambda_(lambda) {
    if (!(lambda >= 0.0) || !(lambda < 1.0)) throw ArgumentError("noise strength lambda must satisfy 0 <= lambda < 1");
  }
  double lambda() const noexcept { return lambda_; }
  /// (1-λ)^N, the weight of the coherent part after N applications.
  double attenuation(int n) const { return std::pow(1.0 - lambda_, n); }

 private:
  double lambda_;
};

enum class RiskMethod { closed_form, matrix_form, bruteforce, exact_multi, monte_carlo };

inline const char* to_string(RiskMethod method) {
  switch (method) {
    case RiskMethod::closed_form: return "closed_form";
    case RiskMethod::matrix_form: return "matrix_form";
    case RiskMethod::bruteforce: return "bruteforce";
    case RiskMethod::exact_multi: return "exact_multi";
    case RiskMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

struct RiskReport {
  double risk = 0.0;
  RiskMethod method = RiskMethod::closed_form;
  int m = 0;
  double lambda = 0.0;
  std::string loss;
  std::string state;
  std::optional<double> omega;
  std::optional<double> standard_error;
  int measurements = 1;
};

/// Which algebraic route risk_of_state takes.
enum class RiskPath {
  autocorrelation,  ///< L_0 + (1-λ)^N Σ_k L_k Σ_j c_j c_{j-k}
  quadratic_form,   ///< L_0 + (1-λ)^N cᵀ R c
};

namespace detail {

inline void require_kmax(const FourierLoss& fl, int n, const char* who) {
  if (fl.kmax() < n) {
    throw ArgumentError(std::string(who) + ": need kmax >= N = " + std::to_string(n) + ", got " +
                        std::to_string(fl.kmax()));
  }
}

inline RiskReport make_report(double risk, RiskMethod method, int m, const NoiseModel& noise, const FourierLoss& fl,
                              std::string state, std::optional<double> omega = std::nullopt) {
  if (!std::isfinite(risk)) throw NumericError("risk evaluated to a non-finite value");
  RiskReport r;
  r.risk = risk;
  r.method = method;
  r.m = m;
  r.lambda = noise.lambda();
  r.loss = fl.name();
  r.state = std::move(state);
  r.omega = omega;
  return r;
}

inline std::string state_name(const RegisterState& s) { return to_string(s.label()); }

}  // namespace detail

/// Single-shot Bayes risk of a register state with the estimator θ̂ = 2πy/2^m.
inline RiskReport risk_of_state(const RegisterState& state, const FourierLoss& fl, const NoiseModel& noise,
                                RiskPath path = RiskPath::autocorrelation) {
  const int n = state.n();
  detail::require_kmax(fl, n, "risk_of_state");
  double informative = 0.0;
  RiskMethod method = RiskMethod::closed_form;
  if (path == RiskPath::autocorrelation) {
    const auto r = state.autocorrelation();
    for (int k = 1; k <= n; ++k) informative += fl.at(k) * r[static_cast<std::size_t>(k)];
    informative *= 2.0;
  } else {
    informative = build_risk_matrix(fl, state.m()).quadratic_form(state.amplitudes());
    method = RiskMethod::matrix_form;
  }
  return detail::make_report(fl.l0() + noise.attenuation(n) * informative, method, state.m(), noise, fl,
                             detail::state_name(state), state.omega());
}

/// Σ_{k=1..N} L_k f_k(ω) for the cosine state; ω = 0 takes the limit f_k = 1 - k/2^m.
template <typename T>
T cosine_weighted_sum(int m, T omega, const FourierLoss& fl) {
  const int n = resource_count(m);
  const T size = static_cast<T>(1 << m);
  T sum = 0;
  if (omega == T(0)) {
    for (int k = 1; k <= n; ++k) sum += static_cast<T>(fl.at(k)) * (T(1) - static_cast<T>(k) / size);
    return sum;
  }
  const T s = std::sin(omega);
  const T den = size * s + std::sin(size * omega);
  for (int k = 1; k <= n; ++k) {
    const double lk = fl.at(k);
    if (lk == 0.0) continue;
    const T rest = size - static_cast<T>(k);
    const T f = (rest * std::cos(static_cast<T>(k) * omega) * s + std::sin(rest * omega)) / den;
    sum += static_cast<T>(lk) * f;
  }
  return sum;
}

/// d/dω of cosine_weighted_sum (ω > 0).
template <typename T>
T cosine_weighted_sum_derivative(int m, T omega, const FourierLoss& fl) {
  const int n = resource_count(m);
  const T size = static_cast<T>(1 << m);
  const T s = std::sin(omega);
  const T c = std::cos(omega);
  const T den = size * s + std::sin(size * omega);
  const T dden = size * c + size * std::cos(size * omega);
  T sum = 0;
  for (int k = 1; k <= n; ++k) {
    const double lk = fl.at(k);
    if (lk == 0.0) continue;
    const T kk = static_cast<T>(k);
    const T rest = size - kk;
    const T ck = std::cos(kk * omega);
    const T sk = std::sin(kk * omega);
    const T num = rest * ck * s + std::sin(rest * omega);
    const T dnum = rest * (-kk * sk * s + ck * c) + rest * std::cos(rest * omega);
    sum += static_cast<T>(lk) * (dnum * den - num * dden) / (den * den);
  }
  return sum;
}

inline void check_cosine_window(int m, double omega) {
  if (!(omega >= 0.0) || omega > cosine_omega_max(m)) {
    throw ArgumentError("omega must lie in the cosine window [0, 2pi/(N+2)]");
  }
}

/// Risk of the cosine state with frequency ω.
inline RiskReport risk_cosine_closed(int m, double omega, const FourierLoss& fl, const NoiseModel& noise) {
  check_register_size(m);
  check_cosine_window(m, omega);
  const int n = resource_count(m);
  detail::require_kmax(fl, n, "risk_cosine_closed");
  const long double sum = cosine_weighted_sum<long double>(m, omega, fl);
  const double risk = fl.l0() + 2.0 * noise.attenuation(n) * static_cast<double>(sum);
  return detail::make_report(risk, RiskMethod::closed_form, m, noise, fl, "cosine", omega);
}

/// Risk of the uniform state, L_0 + 2(1-λ)^N Σ L_k (1 - k/2^m).
inline RiskReport risk_uniform_closed(int m, const FourierLoss& fl, const NoiseModel& noise) {
  check_register_size(m);
  const int n = resource_count(m);
  detail::require_kmax(fl, n, "risk_uniform_closed");
  const double size = static_cast<double>(1 << m);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += fl.at(k) * (1.0 - k / size);
  return detail::make_report(fl.l0() + 2.0 * noise.attenuation(n) * sum, RiskMethod::closed_form, m, noise, fl,
                             "uniform", 0.0);
}

/// Noiseless uniform-state risk of a named loss through its special-function form.
inline double uniform_named_risk_noiseless(int m, const LossSpec& loss) {
  check_register_size(m);
  const int n = resource_count(m);
  const double size = static_cast<double>(1 << m);
  const double half = 0.5 * size;
  switch (loss.kind()) {
    case LossKind::absolute: {
      const double z = 0.5 * (n + 2);
      return (std::log(4.0) + special::digamma(z) + special::kEulerGamma) / (kPi * half) + special::trigamma(z) / kPi;
    }
    case LossKind::squared:
      return (std::log(2.0) + special::phi_alternating(size)) / (0.25 * size) + special::trigamma(0.5 * (size + 1.0)) -
             special::trigamma(half);
    case LossKind::holevo:
      return 2.0 / size;
    case LossKind::one_zero: {
      const double eps = loss.epsilon();
      const double head = std::sin(0.5 * n * eps) * std::sin(half * eps) / (kPi * half * std::sin(0.5 * eps));
      // Σ_{j≥2^m} sin(jε)/j = (π - ε)/2 - Σ_{j=1}^{2^m - 1} sin(jε)/j  (sawtooth series, 0 < ε ≤ π).
      double partial = 0.0;
      for (int j = 1; j <= n; ++j) partial += std::sin(j * eps) / j;
      const double tail = 0.5 * (kPi - eps) - partial;
      return head + 2.0 * tail / kPi;
    }
    case LossKind::custom:
      break;
  }
  throw ArgumentError("uniform_named_risk: unsupported loss '" + loss.descriptor() + "'");
}

inline double named_l0(const LossSpec& loss) {
  switch (loss.kind()) {
    case LossKind::absolute: return kPi / 2.0;
    case LossKind::squared: return kPi * kPi / 3.0;
    case LossKind::holevo: return 2.0;
    case LossKind::one_zero: return 1.0 - loss.epsilon() / kPi;
    case LossKind::custom: break;
  }
  throw ArgumentError("named_l0: unsupported loss '" + loss.descriptor() + "'");
}

/// Uniform-state risk of a named loss from digamma/trigamma/Φ closed forms, with λ
/// applied to the non-constant part.
inline RiskReport uniform_named_risk(int m, const LossSpec& loss, const NoiseModel& noise) {
  const double r0 = uniform_named_risk_noiseless(m, loss);
  const double l0 = named_l0(loss);
  const double risk = l0 + noise.attenuation(resource_count(m)) * (r0 - l0);
  if (!std::isfinite(risk)) throw NumericError("uniform_named_risk: non-finite result");
  RiskReport r;
  r.risk = risk;
  r.method = RiskMethod::closed_form;
  r.m = m;
  r.lambda = noise.lambda();
  r.loss = loss.descriptor();
  r.state = "uniform";
  r.omega = 0.0;
  return r;
}

struct OmegaOptimum {
  double omega = 0.0;
  double risk = 0.0;  ///< noiseless risk at omega
};

/// Points in the coarse ω scan before refinement.
inline constexpr int kOmegaScanPoints = 512;

/// ω' = argmin of the noiseless cosine-state risk over [0, 2π/(N+2)].
///
/// Coarse scan, golden-section refinement of the best bracket to 1e-10, then
/// a bisection on the analytic derivative inside the golden bracket. Ties
/// (including a constant loss) resolve to the smallest ω.
inline OmegaOptimum optimize_omega(int m, const FourierLoss& fl) {
  check_register_size(m);
  const int n = resource_count(m);
  detail::require_kmax(fl, n, "optimize_omega");
  using T = long double;
  const T hi = static_cast<T>(cosine_omega_max(m));
  auto objective = [&](T w) { return cosine_weighted_sum<T>(m, w, fl); };

  const int pts = kOmegaScanPoints;
  int best = 0;
  T best_val = objective(T(0));
  std::vector<T> grid(static_cast<std::size_t>(pts));
  for (int i = 0; i < pts; ++i) grid[static_cast<std::size_t>(i)] = hi * static_cast<T>(i) / static_cast<T>(pts - 1);
  // Differences below the rounding level of the sum are ties, resolved to the smaller ω
  // (at m = 1 every cosine state is the uniform state and the objective is flat).
  T magnitude = 0;
  for (int k = 1; k <= n; ++k) magnitude += std::abs(static_cast<T>(fl.at(k)));
  const T tol = T(64) * std::numeric_limits<T>::epsilon() * magnitude;
  for (int i = 1; i < pts; ++i) {
    const T v = objective(grid[static_cast<std::size_t>(i)]);
    if (v < best_val - tol) {
      best_val = v;
      best = i;
    }
  }
  T omega = grid[static_cast<std::size_t>(best)];
  T value = best_val;
  const T lo_b = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  const T hi_b = grid[static_cast<std::size_t>(std::min(best + 1, pts - 1))];
  const auto refined = golden_section<T>(objective, lo_b, hi_b, T(1e-10));
  if (refined.value < value - tol) {
    omega = refined.x;
    value = refined.value;
    // The objective is flat to rounding near its minimum; locate the stationary point
    // through the derivative, accepting it only if it does not raise the objective.
    auto slope = [&](T w) { return cosine_weighted_sum_derivative<T>(m, w, fl); };
    const T span = T(1e-5) * hi;
    const T a = std::max(omega - span, lo_b > T(0) ? lo_b : span * T(1e-3));
    const T b = std::min(omega + span, hi_b);
    if (a < b && slope(a) < T(0) && slope(b) > T(0)) {
      const T root = bisect_root<T>(slope, a, b, T(1e-16) * hi);
      const T rv = objective(root);
      if (rv <= value) {
        omega = root;
        value = rv;
      }
    }
  }
  return {static_cast<double>(omega), fl.l0() + 2.0 * static_cast<double>(value)};
}

enum class SigmaKind { shot_noise, heisenberg, custom };

/// Variance σ² of a Gaussian reference estimator. For Fisher-optimal schemes with
/// ν repetitions of n coherent applications, σ^{-2} = (1-λ)^{2n} n² ν; shot noise
/// (n fixed) gives σ² = 1/N and the Heisenberg limit (ν fixed) σ² = 1/N².
class SigmaModel {
 public:
  static SigmaModel shot_noise(double resources) {
    if (!(resources > 0.0)) throw ArgumentError("shot_noise: resources must be positive");
    return SigmaModel(SigmaKind::shot_noise, 1.0 / resources);
  }
  static SigmaModel heisenberg(double resources) {
    if (!(resources > 0.0)) throw ArgumentError("heisenberg: resources must be positive");
    return SigmaModel(SigmaKind::heisenberg, 1.0 / (resources * resources));
  }
  static SigmaModel custom(double sigma2) { return SigmaModel(SigmaKind::custom, sigma2); }

  SigmaKind kind() const noexcept { return kind_; }
  double sigma2() const noexcept { return sigma2_; }

 private:
  SigmaModel(SigmaKind kind, double sigma2) : kind_(kind), sigma2_(sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ArgumentError("variance must be positive and finite");
  }
  SigmaKind kind_;
  double sigma2_;
};

/// Expected (non-periodic) loss under δ ~ N(0, σ²).
inline double baseline_risk(const SigmaModel& sig, const LossSpec& loss) {
  const double s2 = sig.sigma2();
  const double s = std::sqrt(s2);
  switch (loss.kind()) {
    case LossKind::squared: return s2;
    case LossKind::absolute: return s * std::sqrt(2.0 / kPi);
    case LossKind::holevo: return -2.0 * std::expm1(-0.5 * s2);
    case LossKind::one_zero: return std::erfc(loss.epsilon() / (s * std::sqrt(2.0)));
    case LossKind::custom:
      return gaussian_expectation([&](double d) { return loss.evaluate(d); }, s2, 64);
  }
  return 0.0;
}

/// Direct numerical evaluation of Σ_y ∫ π(θ) p(y|θ) L(θ - 2πy/2^m) dθ.
///
/// p(y|θ) comes from the register amplitude of the measured state, and the
/// θ-integral uses `grid` equal panels on [0, 2π), each split at the loss
/// breakpoints and integrated with 8-point Gauss–Legendre.
inline RiskReport risk_bruteforce_oracle(const RegisterState& state, const LossSpec& loss, const NoiseModel& noise,
                                         int grid) {
  const int m = state.m();
  const int n = state.n();
  const int outcomes = 1 << m;
  if (grid < (1 << (m + 4))) throw ArgumentError("risk_bruteforce_oracle: grid must be >= 2^(m+4)");
  const double coherent = noise.attenuation(n);
  const double mixed = (1.0 - coherent) / outcomes;
  const auto rule = gauss_legendre(8);
  const auto c = state.amplitudes();

  auto likelihood = [&](double theta, double yphase) {
    double re = 0.0;
    double im = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double a = k * (theta - yphase);
      re += c[static_cast<std::size_t>(k)] * std::cos(a);
      im += c[static_cast<std::size_t>(k)] * std::sin(a);
    }
    return coherent * (re * re + im * im) / outcomes + mixed;
  };

  const double h = kTwoPi / grid;
  double total = 0.0;
  for (int y = 0; y < outcomes; ++y) {
    const double est = kTwoPi * y / outcomes;
    std::vector<double> breaks = {wrap_positive(est), wrap_positive(est + kPi)};
    if (loss.kind() == LossKind::one_zero) {
      breaks.push_back(wrap_positive(est + loss.epsilon()));
      breaks.push_back(wrap_positive(est - loss.epsilon()));
    }
    std::sort(breaks.begin(), breaks.end());
    double acc = 0.0;
    for (int p = 0; p < grid; ++p) {
      const double lo = p * h;
      const double hi = (p + 1 == grid) ? kTwoPi : (p + 1) * h;
      std::vector<double> cuts = {lo};
      for (double b : breaks) {
        if (b > lo && b < hi) cuts.push_back(b);
      }
      cuts.push_back(hi);
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double half = 0.5 * (cuts[s + 1] - cuts[s]);
        const double mid = 0.5 * (cuts[s + 1] + cuts[s]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double theta = mid + half * rule.nodes[i];
          acc += rule.weights[i] * half * likelihood(theta, est) * periodize_loss(loss, theta - est);
        }
      }
    }
    total += acc / kTwoPi;
  }
  RiskReport r;
  r.risk = total;
  r.method = RiskMethod::bruteforce;
  r.m = m;
  r.lambda = noise.lambda();
  r.loss = loss.descriptor();
  r.state = to_string(state.label());
  r.omega = state.omega();
  return r;
}

}  // namespace qperisk
