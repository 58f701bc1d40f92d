#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qperisk/angles.hpp"
#include "qperisk/errors.hpp"
#include "qperisk/loss_model.hpp"
#include "qperisk/toeplitz_core.hpp"

namespace qperisk {

enum class StateLabel { uniform, cosine, optimal, custom };

inline const char* to_string(StateLabel label) {
  switch (label) {
    case StateLabel::uniform: return "uniform";
    case StateLabel::cosine: return "cosine";
    case StateLabel::optimal: return "optimal";
    case StateLabel::custom: return "custom";
  }
  return "unknown";
}

inline void check_register_size(int m) {
  if (m < 1 || m > 16) throw ArgumentError("register size m must be in 1..16, got " + std::to_string(m));
}

/// N = 2^m - 1, the number of U(θ) applications in one circuit.
inline int resource_count(int m) { return (1 << m) - 1; }

/// Real amplitudes c_0..c_N of the m-qubit input register.
class RegisterState {
 public:
  /// Normalization must hold to 1e-10; the amplitudes are then rescaled to unit norm.
  RegisterState(std::vector<double> amplitudes, StateLabel label, std::optional<double> omega = std::nullopt)
      : amps_(std::move(amplitudes)), label_(label), omega_(omega) {
    const std::size_t size = amps_.size();
    if (size < 2 || (size & (size - 1)) != 0 || size > (std::size_t{1} << 16)) {
      throw ArgumentError("register state needs 2^m amplitudes with 1 <= m <= 16");
    }
    m_ = 0;
    while ((std::size_t{1} << m_) < size) ++m_;
    double norm2 = 0.0;
    for (double c : amps_) {
      if (!std::isfinite(c)) throw NumericError("register state has a non-finite amplitude");
      norm2 += c * c;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw ArgumentError("register state is not normalized");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : amps_) c *= inv;
  }

  int m() const noexcept { return m_; }
  int n() const noexcept { return resource_count(m_); }
  std::span<const double> amplitudes() const noexcept { return amps_; }
  double operator[](std::size_t i) const noexcept { return amps_[i]; }
  StateLabel label() const noexcept { return label_; }
  std::optional<double> omega() const noexcept { return omega_; }

  /// r_k = Σ_{j=k}^{N} c_j c_{j-k}, k = 0..N.
  std::vector<double> autocorrelation() const {
    const std::size_t size = amps_.size();
    std::vector<double> r(size, 0.0);
    for (std::size_t k = 0; k < size; ++k) {
      double s = 0.0;
      for (std::size_t j = k; j < size; ++j) s += amps_[j] * amps_[j - k];
      r[k] = s;
    }
    return r;
  }

 private:
  std::vector<double> amps_;
  StateLabel label_;
  std::optional<double> omega_;
  int m_ = 0;
};

inline RegisterState uniform_state(int m) {
  check_register_size(m);
  const std::size_t size = std::size_t{1} << m;
  return RegisterState(std::vector<double>(size, 1.0 / std::sqrt(static_cast<double>(size))), StateLabel::uniform,
                       0.0);
}

/// Upper end of the admissible cosine frequency window, 2π/(N+2).
inline double cosine_omega_max(int m) {
  check_register_size(m);
  return kTwoPi / static_cast<double>(resource_count(m) + 2);
}

/// Normalization 2^m sin ω + sin(2^m ω) (positive inside the window).
template <typename T>
T cosine_denominator(int m, T omega) {
  const T size = static_cast<T>(1 << m);
  return size * std::sin(omega) + std::sin(size * omega);
}

/// c_i ∝ cos((N/2 - i) ω), normalized; ω = 0 is the uniform state.
inline RegisterState cosine_state(int m, double omega) {
  check_register_size(m);
  if (!(omega >= 0.0) || omega > cosine_omega_max(m)) {
    throw ArgumentError("cosine_state: omega must lie in [0, 2pi/(N+2)]");
  }
  if (omega == 0.0) {
    auto u = uniform_state(m);
    return RegisterState(std::vector<double>(u.amplitudes().begin(), u.amplitudes().end()), StateLabel::cosine, 0.0);
  }
  const int n = resource_count(m);
  const double den = cosine_denominator(m, omega);
  if (!(den > 0.0)) throw ArgumentError("cosine_state: normalization denominator is not positive");
  const double scale = std::sqrt(2.0 * std::sin(omega) / den);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = scale * std::cos((0.5 * n - i) * omega);
  return RegisterState(std::move(c), StateLabel::cosine, omega);
}

/// Risk-minimizing state: the minimum eigenvector of the risk matrix. Independent of λ.
inline RegisterState optimal_state(int m, const FourierLoss& fl) {
  check_register_size(m);
  auto pair = min_eigenpair(build_risk_matrix(fl, m));
  return RegisterState(std::move(pair.vector), StateLabel::optimal);
}

/// Reads a state file: header `c_i`, then one real amplitude per line.
/// A norm within 1e-6 of 1 is renormalized; anything further off is rejected.
inline RegisterState read_state_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("state file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "c_i") throw ArgumentError("state file must start with header 'c_i'");
  std::vector<double> c;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw ArgumentError("state file: cannot parse amplitude '" + line + "'");
    }
    if (used != line.size()) throw ArgumentError("state file: cannot parse amplitude '" + line + "'");
    if (!std::isfinite(v)) throw ArgumentError("state file: non-finite amplitude");
    c.push_back(v);
  }
  double norm2 = 0.0;
  for (double x : c) norm2 += x * x;
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > 1e-6) throw ArgumentError("state file: amplitudes are not normalized");
  for (double& x : c) x /= norm;
  return RegisterState(std::move(c), StateLabel::custom);
}

inline RegisterState read_state_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file '" + path + "'");
  return read_state_csv(in);
}

}  // namespace qperisk
