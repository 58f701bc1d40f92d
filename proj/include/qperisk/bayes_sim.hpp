#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qperisk/angles.hpp"
#include "qperisk/errors.hpp"
#include "qperisk/loss_model.hpp"
#include "qperisk/minimize.hpp"
#include "qperisk/random.hpp"
#include "qperisk/risk_engine.hpp"
#include "qperisk/states.hpp"

namespace qperisk {

/// Real trigonometric polynomial f(θ) = Σ_{|k|≤B} a_k e^{ikθ}, stored as a_0..a_B
/// with a_{-k} = conj(a_k).
class TrigSpectrum {
 public:
  using Complex = std::complex<double>;

  TrigSpectrum() : coeffs_{Complex(1.0 / kTwoPi, 0.0)} {}

  explicit TrigSpectrum(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw ArgumentError("TrigSpectrum needs at least a_0");
    coeffs_[0] = Complex(coeffs_[0].real(), 0.0);
  }

  /// The uniform prior density 1/2π.
  static TrigSpectrum flat_prior() { return TrigSpectrum(); }

  int bandwidth() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex coeff(int k) const noexcept {
    const int a = k < 0 ? -k : k;
    if (a > bandwidth()) return {};
    const Complex c = coeffs_[static_cast<std::size_t>(a)];
    return k < 0 ? std::conj(c) : c;
  }

  double evaluate(double theta) const {
    double s = 0.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      s += (coeffs_[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
    }
    return coeffs_[0].real() + 2.0 * s;
  }

  TrigSpectrum scaled(double factor) const {
    std::vector<Complex> c(coeffs_);
    for (auto& x : c) x *= factor;
    return TrigSpectrum(std::move(c));
  }

 private:
  std::vector<Complex> coeffs_;
};

/// Spectrum of the pointwise product (exact convolution, bandwidth adds).
inline TrigSpectrum multiply(const TrigSpectrum& a, const TrigSpectrum& b) {
  const int ba = a.bandwidth();
  const int bb = b.bandwidth();
  const int bc = ba + bb;
  std::vector<TrigSpectrum::Complex> c(static_cast<std::size_t>(bc) + 1);
  for (int k = 0; k <= bc; ++k) {
    TrigSpectrum::Complex s{};
    for (int j = std::max(-ba, k - bb); j <= std::min(ba, k + bb); ++j) s += a.coeff(j) * b.coeff(k - j);
    c[static_cast<std::size_t>(k)] = s;
  }
  return TrigSpectrum(std::move(c));
}

inline void check_outcome(const RegisterState& state, int y) {
  if (y < 0 || y >= (1 << state.m())) {
    throw ArgumentError("outcome " + std::to_string(y) + " outside [0, 2^m)");
  }
}

/// p(y|θ) as a trigonometric polynomial in θ of bandwidth N.
inline TrigSpectrum likelihood_spectrum(const RegisterState& state, const NoiseModel& noise, int y) {
  check_outcome(state, y);
  const int n = state.n();
  const double size = static_cast<double>(1 << state.m());
  const auto r = state.autocorrelation();
  const double coherent = noise.attenuation(n) / size;
  std::vector<TrigSpectrum::Complex> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0 / size;
  const double phase = kTwoPi * y / size;
  for (int k = 1; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = coherent * r[static_cast<std::size_t>(k)] * std::polar(1.0, -k * phase);
  }
  return TrigSpectrum(std::move(c));
}

/// Outcome probabilities p(y|θ), y = 0..2^m-1, from the amplitudes of the measured register.
inline std::vector<double> outcome_distribution(const RegisterState& state, const NoiseModel& noise, double theta) {
  const int n = state.n();
  const int outcomes = 1 << state.m();
  const double coherent = noise.attenuation(n);
  const double mixed = (1.0 - coherent) / outcomes;
  const auto c = state.amplitudes();
  std::vector<double> p(static_cast<std::size_t>(outcomes));
  double total = 0.0;
  for (int y = 0; y < outcomes; ++y) {
    const double shift = theta - kTwoPi * y / outcomes;
    std::complex<double> amp{};
    for (int k = 0; k <= n; ++k) amp += c[static_cast<std::size_t>(k)] * std::polar(1.0, k * shift);
    const double v = coherent * std::norm(amp) / outcomes + mixed;
    p[static_cast<std::size_t>(y)] = v;
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

struct MeasurementRecord {
  std::vector<int> outcomes;
  RegisterState state;
  NoiseModel noise;
};

/// Evidence below which an outcome record is treated as impossible.
inline constexpr double kDegenerateEvidence = 1e-300;

namespace detail {

struct Posterior {
  TrigSpectrum density;
  double evidence = 1.0;
};

// Uniform prior times the product of the given likelihoods, normalized.
inline Posterior posterior_from(std::span<const TrigSpectrum* const> likelihoods) {
  TrigSpectrum product = TrigSpectrum::flat_prior();
  for (const TrigSpectrum* l : likelihoods) product = multiply(product, *l);
  // ∫ (1/2π) Π p dθ = 2π a_0 of the prior-weighted product.
  const double evidence = kTwoPi * product.coeff(0).real();
  if (!(evidence > kDegenerateEvidence)) throw NumericError("degenerate evidence: outcome record has zero probability");
  return {product.scaled(1.0 / evidence), evidence};
}

}  // namespace detail

/// Posterior density p(θ|y_1..y_M) under the uniform prior, normalized to 2π a_0 = 1.
inline TrigSpectrum posterior_spectrum(const MeasurementRecord& rec) {
  std::vector<TrigSpectrum> likes;
  likes.reserve(rec.outcomes.size());
  for (int y : rec.outcomes) likes.push_back(likelihood_spectrum(rec.state, rec.noise, y));
  std::vector<const TrigSpectrum*> ptrs;
  for (const auto& l : likes) ptrs.push_back(&l);
  return detail::posterior_from(ptrs).density;
}

namespace detail {

inline void require_loss_bandwidth(const FourierLoss& fl, int bandwidth) {
  if (fl.kmax() < bandwidth) {
    throw ArgumentError("loss kmax " + std::to_string(fl.kmax()) + " is below posterior bandwidth " +
                        std::to_string(bandwidth));
  }
}

inline double expected_loss_unchecked(const TrigSpectrum& post, const FourierLoss& fl, double thetahat) {
  const auto a = post.coeffs();
  double s = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double lk = fl.at(static_cast<int>(k));
    if (lk != 0.0) s += lk * (a[k] * std::polar(1.0, static_cast<double>(k) * thetahat)).real();
  }
  return kTwoPi * (a[0].real() * fl.l0() + 2.0 * s);
}

inline double expected_loss_slope(const TrigSpectrum& post, const FourierLoss& fl, double thetahat) {
  const auto a = post.coeffs();
  double s = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double lk = fl.at(static_cast<int>(k));
    if (lk != 0.0) s += lk * static_cast<double>(k) * (a[k] * std::polar(1.0, static_cast<double>(k) * thetahat)).imag();
  }
  return -2.0 * kTwoPi * s;
}

}  // namespace detail

/// ∫ p(θ|y) L(θ - θ̂) dθ = 2π Σ_k a_k L_k e^{ikθ̂}; exact when kmax ≥ bandwidth.
inline double expected_posterior_loss(const TrigSpectrum& post, const FourierLoss& fl, double thetahat) {
  detail::require_loss_bandwidth(fl, post.bandwidth());
  return detail::expected_loss_unchecked(post, fl, thetahat);
}

/// Bayes estimate argmin_θ̂ of the posterior expected loss on [0, 2π).
///
/// Scans 4·bandwidth points, refines the best bracket by golden section, then
/// bisects the analytic slope. Values within a few ulps of the scale count as
/// ties and go to the smallest θ̂; a posterior whose expected loss is flat to
/// that tolerance returns 0.
inline double bayes_estimate(const TrigSpectrum& post, const FourierLoss& fl) {
  const int b = post.bandwidth();
  if (b == 0) return 0.0;
  detail::require_loss_bandwidth(fl, b);
  auto f = [&](double t) { return detail::expected_loss_unchecked(post, fl, t); };
  double scale = std::abs(post.coeff(0).real() * fl.l0());
  for (int k = 1; k <= b; ++k) scale += 2.0 * std::abs(post.coeff(k)) * std::abs(fl.at(k));
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * kTwoPi * scale;

  const int pts = 4 * b;
  const double h = kTwoPi / pts;
  int best = 0;
  double best_val = f(0.0), worst_val = best_val;
  for (int j = 1; j < pts; ++j) {
    const double v = f(j * h);
    worst_val = std::max(worst_val, v);
    if (v < best_val - tol) {
      best_val = v;
      best = j;
    }
  }
  if (worst_val - best_val <= tol) return 0.0;

  double est = best * h;
  double est_val = best_val;
  const auto refined = golden_section<double>(f, est - h, est + h, 1e-10);
  if (refined.value < best_val - tol) {
    est = refined.x;
    est_val = refined.value;
  }
  auto slope = [&](double t) { return detail::expected_loss_slope(post, fl, t); };
  const double span = 1e-6 * h;
  const double lo = std::max(est - span, best * h - h);
  const double hi = std::min(est + span, best * h + h);
  if (slope(lo) < 0.0 && slope(hi) > 0.0) {
    const double root = bisect_root<double>(slope, lo, hi, 1e-15);
    if (f(root) <= est_val + tol) est = root;
  }
  return wrap_positive(est);
}

/// Largest excess, over all outcomes y, of the posterior expected loss at
/// θ̂ = 2πy/2^m above its minimum. Zero (to rounding) when the single-shot
/// estimator is Bayes-optimal for this state; a custom state with sign-mixed
/// autocorrelations can make it positive.
inline double single_shot_estimator_gap(const RegisterState& state, const FourierLoss& fl, const NoiseModel& noise) {
  detail::require_loss_bandwidth(fl, state.n());
  const int outcomes = 1 << state.m();
  double gap = 0.0;
  for (int y = 0; y < outcomes; ++y) {
    const TrigSpectrum post = likelihood_spectrum(state, noise, y).scaled(outcomes / kTwoPi);
    const double at_grid = detail::expected_loss_unchecked(post, fl, kTwoPi * y / outcomes);
    const double best = detail::expected_loss_unchecked(post, fl, bayes_estimate(post, fl));
    gap = std::max(gap, at_grid - best);
  }
  return gap;
}

inline void check_multi_preconditions(const RegisterState& state, int measurements, const FourierLoss& fl) {
  if (measurements < 0) throw ArgumentError("number of measurements M must be >= 0");
  detail::require_loss_bandwidth(fl, measurements * state.n());
}

inline RiskReport make_multi_report(double risk, RiskMethod method, const RegisterState& state, int measurements,
                                    const FourierLoss& fl, const NoiseModel& noise) {
  RiskReport r;
  r.risk = risk;
  r.method = method;
  r.m = state.m();
  r.lambda = noise.lambda();
  r.loss = fl.name();
  r.state = to_string(state.label());
  r.omega = state.omega();
  r.measurements = measurements;
  return r;
}

/// Largest m·M for which exact enumeration is allowed.
inline constexpr int kMaxEnumerationBits = 16;

struct ExactMultiOptions {
  /// Enumerate outcome multisets with multinomial weights instead of every ordered record.
  bool use_multisets = true;
};

/// Bayes risk of M repeated measurements of one circuit, by exhaustive enumeration of outcome records.
inline RiskReport exact_multi_risk(const RegisterState& state, int measurements, const FourierLoss& fl,
                                   const NoiseModel& noise, const ExactMultiOptions& opts = {}) {
  check_multi_preconditions(state, measurements, fl);
  const int m = state.m();
  if (m * measurements > kMaxEnumerationBits) {
    throw ArgumentError("exact enumeration needs m*M <= 16; use the Monte Carlo path instead");
  }
  if (measurements == 0) return make_multi_report(fl.l0(), RiskMethod::exact_multi, state, 0, fl, noise);

  const int outcomes = 1 << m;
  std::vector<TrigSpectrum> likes;
  for (int y = 0; y < outcomes; ++y) likes.push_back(likelihood_spectrum(state, noise, y));

  std::vector<double> factorial(static_cast<std::size_t>(measurements) + 1, 1.0);
  for (int i = 1; i <= measurements; ++i) factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i - 1)] * i;

  std::vector<int> ys(static_cast<std::size_t>(measurements), 0);
  std::vector<const TrigSpectrum*> ptrs(static_cast<std::size_t>(measurements));
  double risk = 0.0;
  for (;;) {
    double weight = 1.0;
    if (opts.use_multisets) {
      weight = factorial[static_cast<std::size_t>(measurements)];
      int run = 1;
      for (int i = 1; i <= measurements; ++i) {
        if (i < measurements && ys[static_cast<std::size_t>(i)] == ys[static_cast<std::size_t>(i - 1)]) {
          ++run;
        } else {
          weight /= factorial[static_cast<std::size_t>(run)];
          run = 1;
        }
      }
    }
    for (int i = 0; i < measurements; ++i) ptrs[static_cast<std::size_t>(i)] = &likes[static_cast<std::size_t>(ys[static_cast<std::size_t>(i)])];

    TrigSpectrum product = TrigSpectrum::flat_prior();
    for (const TrigSpectrum* l : ptrs) product = multiply(product, *l);
    const double evidence = kTwoPi * product.coeff(0).real();
    if (evidence > kDegenerateEvidence) {
      const TrigSpectrum post = product.scaled(1.0 / evidence);
      const double est = bayes_estimate(post, fl);
      risk += weight * evidence * detail::expected_loss_unchecked(post, fl, est);
    }

    // Next record: lexicographic over ordered tuples, or non-decreasing tuples for multisets.
    int pos = measurements - 1;
    while (pos >= 0 && ys[static_cast<std::size_t>(pos)] == outcomes - 1) --pos;
    if (pos < 0) break;
    ++ys[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < measurements; ++i) {
      ys[static_cast<std::size_t>(i)] = opts.use_multisets ? ys[static_cast<std::size_t>(pos)] : 0;
    }
  }
  if (!std::isfinite(risk)) throw NumericError("exact_multi_risk: non-finite risk");
  return make_multi_report(risk, RiskMethod::exact_multi, state, measurements, fl, noise);
}

/// Samples per Monte Carlo shard; shard s draws from CounterRng(seed + s).
inline constexpr int kMonteCarloShard = 4096;

namespace detail {

struct RunningStats {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }
};

inline int sample_index(std::span<const double> p, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

inline RunningStats mc_shard(const RegisterState& state, int measurements, const FourierLoss& fl,
                             const NoiseModel& noise, const std::vector<TrigSpectrum>& likes, int samples,
                             std::uint64_t seed) {
  CounterRng rng(seed);
  RunningStats stats;
  std::vector<const TrigSpectrum*> ptrs(static_cast<std::size_t>(measurements));
  for (int s = 0; s < samples; ++s) {
    const double theta = kTwoPi * rng.uniform();
    const auto p = outcome_distribution(state, noise, theta);
    for (int i = 0; i < measurements; ++i) {
      ptrs[static_cast<std::size_t>(i)] = &likes[static_cast<std::size_t>(sample_index(p, rng.uniform()))];
    }
    const auto post = posterior_from(ptrs);
    const double est = bayes_estimate(post.density, fl);
    // The truncated series has the same posterior expectation as the loss itself
    // (the posterior bandwidth is at most kmax), so this sample is unbiased.
    stats.push(reconstruct_loss(fl, theta - est));
  }
  return stats;
}

}  // namespace detail

/// Monte Carlo estimate of the M-measurement Bayes risk with its standard error.
/// Deterministic for a fixed seed, independent of the thread count.
inline RiskReport mc_multi_risk(const RegisterState& state, int measurements, const FourierLoss& fl,
                                const NoiseModel& noise, int samples, std::uint64_t seed) {
  check_multi_preconditions(state, measurements, fl);
  if (samples < 100) throw ArgumentError("Monte Carlo needs at least 100 samples");
  std::vector<TrigSpectrum> likes;
  for (int y = 0; y < (1 << state.m()); ++y) likes.push_back(likelihood_spectrum(state, noise, y));

  const int shards = (samples + kMonteCarloShard - 1) / kMonteCarloShard;
  std::vector<detail::RunningStats> parts(static_cast<std::size_t>(shards));
  const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int first = 0; first < shards; first += workers) {
    std::vector<std::future<detail::RunningStats>> batch;
    for (int s = first; s < std::min(shards, first + workers); ++s) {
      const int count = std::min(kMonteCarloShard, samples - s * kMonteCarloShard);
      batch.push_back(std::async(std::launch::async, [&, s, count] {
        return detail::mc_shard(state, measurements, fl, noise, likes, count, seed + static_cast<std::uint64_t>(s));
      }));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) parts[static_cast<std::size_t>(first) + i] = batch[i].get();
  }
  detail::RunningStats total;
  for (const auto& p : parts) total.merge(p);
  auto report = make_multi_report(total.mean, RiskMethod::monte_carlo, state, measurements, fl, noise);
  report.standard_error = std::sqrt(total.m2 / (total.count - 1.0) / total.count);
  return report;
}

}  // namespace qperisk
