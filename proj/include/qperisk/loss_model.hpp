#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qperisk/angles.hpp"
#include "qperisk/errors.hpp"
#include "qperisk/quadrature.hpp"

namespace qperisk {

enum class LossKind { absolute, squared, holevo, one_zero, custom };

inline const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::absolute: return "absolute";
    case LossKind::squared: return "squared";
    case LossKind::holevo: return "holevo";
    case LossKind::one_zero: return "one_zero";
    case LossKind::custom: return "custom";
  }
  return "unknown";
}

/// An even loss L(δ) of the estimation error δ = θ - θ̂.
///
/// Named losses carry their closed-form Fourier coefficients. Custom losses
/// wrap a pointwise evaluator of the non-periodic loss L_NP(δ); the caller is
/// responsible for it being even and non-decreasing in |δ|.
class LossSpec {
 public:
  using Evaluator = std::function<double(double)>;

  static LossSpec absolute() { return LossSpec(LossKind::absolute, 0.0, nullptr, "absolute"); }
  static LossSpec squared() { return LossSpec(LossKind::squared, 0.0, nullptr, "squared"); }
  static LossSpec holevo() { return LossSpec(LossKind::holevo, 0.0, nullptr, "holevo"); }

  static LossSpec one_zero(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > kPi) {
      throw ArgumentError("one_zero loss requires 0 < epsilon <= pi");
    }
    std::ostringstream name;
    name.precision(17);
    name << "one_zero:" << epsilon;
    return LossSpec(LossKind::one_zero, epsilon, nullptr, name.str());
  }

  /// 1-0 loss with the binary-representation tolerance ε = π/2^m.
  static LossSpec one_zero_for_register(int m) {
    if (m < 1 || m > 16) throw ArgumentError("register size m must be in 1..16");
    return one_zero(kPi / static_cast<double>(1 << m));
  }

  static LossSpec custom(Evaluator evaluator, std::string name = "custom") {
    return LossSpec(LossKind::custom, 0.0, std::move(evaluator), std::move(name));
  }

  static LossSpec constant(double value) {
    std::ostringstream name;
    name.precision(17);
    name << "constant:" << value;
    LossSpec spec = custom([value](double) { return value; }, name.str());
    spec.constant_ = value;
    return spec;
  }

  LossKind kind() const noexcept { return kind_; }
  double epsilon() const noexcept { return epsilon_; }
  bool has_evaluator() const noexcept { return static_cast<bool>(evaluator_); }
  const std::string& descriptor() const noexcept { return name_; }
  /// Set only for LossSpec::constant, whose coefficients are then exact.
  std::optional<double> constant_value() const noexcept { return constant_; }

  /// The non-periodic loss L_NP(δ).
  double evaluate(double delta) const {
    switch (kind_) {
      case LossKind::absolute: return std::abs(delta);
      case LossKind::squared: return delta * delta;
      case LossKind::holevo: {
        const double s = std::sin(0.5 * delta);
        return 4.0 * s * s;
      }
      case LossKind::one_zero: return std::abs(delta) > epsilon_ ? 1.0 : 0.0;
      case LossKind::custom:
        if (!evaluator_) throw ConfigurationError("custom loss '" + name_ + "' has no evaluator");
        return evaluator_(delta);
    }
    return 0.0;
  }

 private:
  LossSpec(LossKind kind, double epsilon, Evaluator evaluator, std::string name)
      : kind_(kind), epsilon_(epsilon), evaluator_(std::move(evaluator)), name_(std::move(name)) {}

  LossKind kind_;
  double epsilon_;
  Evaluator evaluator_;
  std::string name_;
  std::optional<double> constant_;
};

/// Periodized loss L(δ) = min_l L_NP(δ + 2πl).
inline double periodize_loss(const LossSpec& loss, double delta) {
  if (!std::isfinite(delta)) throw ArgumentError("periodize_loss: delta must be finite");
  const double w = wrap_phase(delta);
  if (loss.kind() != LossKind::custom) return loss.evaluate(w);
  // A custom evaluator need not be monotone beyond [-π, π]; check the neighbouring images too.
  double best = loss.evaluate(w);
  best = std::min(best, loss.evaluate(w - kTwoPi));
  best = std::min(best, loss.evaluate(w + kTwoPi));
  return best;
}

/// Truncated Fourier series of an even loss, L(δ) ≈ L_0 + 2 Σ_{k=1..K} L_k cos kδ.
///
/// Only k ≥ 0 is stored: an even real loss has real coefficients with
/// L_{-k} = L_k, and `at(k)` applies that symmetry for negative k.
class FourierLoss {
 public:
  FourierLoss(double l0, std::vector<double> coeffs, std::string name = "custom")
      : l0_(l0), coeffs_(std::move(coeffs)), name_(std::move(name)) {
    if (coeffs_.empty()) throw ArgumentError("FourierLoss needs kmax >= 1");
    if (!std::isfinite(l0_)) throw NumericError("FourierLoss: non-finite L_0");
    for (double c : coeffs_) {
      if (!std::isfinite(c)) throw NumericError("FourierLoss: non-finite coefficient");
    }
  }

  double l0() const noexcept { return l0_; }
  int kmax() const noexcept { return static_cast<int>(coeffs_.size()); }
  /// L_1..L_K.
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  const std::string& name() const noexcept { return name_; }

  /// L_k for any integer k; zero beyond the truncation.
  double at(int k) const noexcept {
    if (k < 0) k = -k;
    if (k == 0) return l0_;
    if (k > kmax()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k - 1)];
  }

  /// Coarse bound L_0 + Σ |L_k| on any risk built from these coefficients.
  double magnitude_bound() const noexcept {
    double s = std::abs(l0_);
    for (double c : coeffs_) s += 2.0 * std::abs(c);
    return s;
  }

  /// The same coefficients cut to the first `k` (k ≤ kmax).
  FourierLoss truncated(int k) const {
    if (k < 1 || k > kmax()) throw ArgumentError("FourierLoss::truncated: k out of range");
    return FourierLoss(l0_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + k), name_);
  }

 private:
  double l0_;
  std::vector<double> coeffs_;
  std::string name_;
};

struct QuadratureOptions {
  /// Base node count for custom-loss quadrature on [0, π] (16-point Gauss–Legendre panels).
  int nodes = 8192;
};

namespace detail {

struct Panel {
  double lo;
  double hi;
};

// Panels on [0, π] for integrating L(δ)cos(kδ): uniform base panels, bisected
// wherever 16-point Gauss–Legendre of L itself disagrees with its two halves
// (kinks and jumps inside a panel).
inline std::vector<Panel> adaptive_panels(const LossSpec& loss, int base, const QuadratureRule& rule) {
  auto integrate = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * loss.evaluate(mid + half * rule.nodes[i]);
    return s * half;
  };
  std::vector<Panel> out;
  std::vector<std::pair<Panel, int>> stack;
  const double h = kPi / base;
  for (int i = base - 1; i >= 0; --i) {
    stack.push_back({{i * h, (i + 1 == base) ? kPi : (i + 1) * h}, 0});
  }
  constexpr int kMaxDepth = 52;
  while (!stack.empty()) {
    auto [p, depth] = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const double whole = integrate(p.lo, p.hi);
    const double halves = integrate(p.lo, mid) + integrate(mid, p.hi);
    if (depth >= kMaxDepth || std::abs(whole - halves) <= 1e-15 * std::max(1.0, std::abs(halves))) {
      out.push_back(p);
    } else {
      stack.push_back({{mid, p.hi}, depth + 1});
      stack.push_back({{p.lo, mid}, depth + 1});
    }
  }
  return out;
}

inline FourierLoss custom_coefficients(const LossSpec& loss, int kmax, const QuadratureOptions& opts) {
  if (!loss.has_evaluator()) throw ConfigurationError("custom loss '" + loss.descriptor() + "' has no evaluator");
  if (opts.nodes < 16) throw ArgumentError("quadrature needs at least 16 nodes");
  const auto rule = gauss_legendre(16);
  // Each base panel spans at most half a period of cos(kmax δ).
  const int base = std::max(opts.nodes / 16, kmax);
  const auto panels = adaptive_panels(loss, base, rule);

  std::vector<double> acc(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (const auto& p : panels) {
    const double half = 0.5 * (p.hi - p.lo);
    const double mid = 0.5 * (p.hi + p.lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      const double fw = rule.weights[i] * half * loss.evaluate(x);
      const std::complex<double> step(std::cos(x), std::sin(x));
      std::complex<double> rot(1.0, 0.0);
      for (int k = 0; k <= kmax; ++k) {
        // Re-seed the rotation periodically to keep the error growth bounded.
        if (k % 64 == 0) rot = std::complex<double>(std::cos(k * x), std::sin(k * x));
        acc[static_cast<std::size_t>(k)] += fw * rot.real();
        rot *= step;
      }
    }
  }
  std::vector<double> coeffs(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) coeffs[static_cast<std::size_t>(k - 1)] = acc[static_cast<std::size_t>(k)] / kPi;
  return FourierLoss(acc[0] / kPi, std::move(coeffs), loss.descriptor());
}

}  // namespace detail

/// Fourier coefficients L_0..L_kmax of the periodized loss.
///
/// Named losses use their closed forms; custom losses are integrated
/// numerically over one period (adaptive composite Gauss–Legendre).
inline FourierLoss fourier_coefficients(const LossSpec& loss, int kmax, const QuadratureOptions& opts = {}) {
  if (kmax < 1) throw ArgumentError("fourier_coefficients: kmax must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(kmax), 0.0);
  double l0 = 0.0;
  switch (loss.kind()) {
    case LossKind::absolute:
      l0 = kPi / 2.0;
      for (int k = 1; k <= kmax; k += 2) c[static_cast<std::size_t>(k - 1)] = -2.0 / (kPi * k * static_cast<double>(k));
      break;
    case LossKind::squared:
      l0 = kPi * kPi / 3.0;
      for (int k = 1; k <= kmax; ++k) {
        c[static_cast<std::size_t>(k - 1)] = (k % 2 == 0 ? 2.0 : -2.0) / (static_cast<double>(k) * k);
      }
      break;
    case LossKind::holevo:
      l0 = 2.0;
      c[0] = -1.0;
      break;
    case LossKind::one_zero: {
      const double eps = loss.epsilon();
      l0 = 1.0 - eps / kPi;
      if (eps != kPi) {
        for (int k = 1; k <= kmax; ++k) c[static_cast<std::size_t>(k - 1)] = -std::sin(k * eps) / (kPi * k);
      }
      break;
    }
    case LossKind::custom:
      if (const auto v = loss.constant_value()) {
        l0 = *v;
        break;
      }
      return detail::custom_coefficients(loss, kmax, opts);
  }
  return FourierLoss(l0, std::move(c), loss.descriptor());
}

/// Partial-sum evaluation L_0 + 2 Σ_{k=1..K} L_k cos(kδ).
inline double reconstruct_loss(const FourierLoss& fl, double delta) {
  double s = 0.0;
  const auto c = fl.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0.0) s += c[k] * std::cos(static_cast<double>(k + 1) * delta);
  }
  return fl.l0() + 2.0 * s;
}

}  // namespace qperisk
