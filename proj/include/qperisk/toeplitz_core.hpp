#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <thread>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qperisk/errors.hpp"
#include "qperisk/loss_model.hpp"

namespace qperisk {

/// Symmetric Toeplitz risk matrix with zero diagonal, stored as its band
/// (first column below the diagonal): entry (i, j) = L_{|i-j|}, i ≠ j.
class RiskMatrix {
 public:
  explicit RiskMatrix(std::vector<double> band) : band_(std::move(band)) {
    if (band_.empty()) throw ArgumentError("RiskMatrix: band must be non-empty");
  }

  int dim() const noexcept { return static_cast<int>(band_.size()) + 1; }
  std::span<const double> band() const noexcept { return band_; }

  double entry(int i, int j) const noexcept {
    const int d = i > j ? i - j : j - i;
    return d == 0 ? 0.0 : band_[static_cast<std::size_t>(d - 1)];
  }

  /// Row-major dense copy.
  std::vector<double> dense() const {
    const auto n = static_cast<std::size_t>(dim());
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = entry(static_cast<int>(i), static_cast<int>(j));
    }
    return a;
  }

  std::vector<double> multiply(std::span<const double> v) const {
    const int n = dim();
    if (static_cast<int>(v.size()) != n) throw ArgumentError("RiskMatrix::multiply: size mismatch");
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += entry(i, j) * v[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = s;
    }
    return out;
  }

  /// vᵀ R v.
  double quadratic_form(std::span<const double> v) const {
    const auto rv = multiply(v);
    return std::inner_product(v.begin(), v.end(), rv.begin(), 0.0);
  }

  double band_norm() const noexcept {
    double s = 0.0;
    for (double b : band_) s += b * b;
    return std::sqrt(s);
  }

 private:
  std::vector<double> band_;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// R built from L_1..L_N with N = 2^m - 1.
inline RiskMatrix build_risk_matrix(const FourierLoss& fl, int m) {
  if (m < 1 || m > 16) throw ArgumentError("build_risk_matrix: m must be in 1..16");
  const int n = (1 << m) - 1;
  if (fl.kmax() < n) {
    throw ArgumentError("build_risk_matrix: need kmax >= 2^m - 1 = " + std::to_string(n) + ", got " +
                        std::to_string(fl.kmax()));
  }
  const auto c = fl.coeffs();
  return RiskMatrix(std::vector<double>(c.begin(), c.begin() + n));
}

/// Largest dimension handled by the dense solver.
inline constexpr int kMaxDenseDim = 4096;

namespace detail {

// LU of a tridiagonal matrix with partial pivoting, as in LAPACK's dgttrf.
struct TridiagonalLu {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLu(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double shift, double tiny) {
    const auto n = static_cast<std::size_t>(diag.size());
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[static_cast<Eigen::Index>(i)] - shift;
    dl.assign(off.data(), off.data() + off.size());
    du = dl;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 0 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] != 0.0) {
          const double fact = dl[i] / d[i];
          dl[i] = fact;
          d[i + 1] -= fact * du[i];
        }
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    // An exact eigenvalue shift leaves a zero pivot; nudge it as inverse iteration expects.
    for (double& p : d) {
      if (std::abs(p) < tiny) p = p < 0.0 ? -tiny : tiny;
    }
  }

  void solve(Eigen::VectorXd& b) const {
    const auto n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (!swapped[i]) {
        b[ii + 1] -= dl[i] * b[ii];
      } else {
        const double temp = b[ii];
        b[ii] = b[ii + 1];
        b[ii + 1] = temp - dl[i] * b[ii];
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      const auto kk = static_cast<Eigen::Index>(k);
      double v = b[kk];
      if (k + 1 < n) v -= du[k] * b[kk + 1];
      if (k + 2 < n) v -= du2[k] * b[kk + 2];
      b[kk] = v / d[k];
    }
  }
};

// Eigenvalues of a dense symmetric matrix via Householder tridiagonalization;
// eigenvectors on request by inverse iteration on the tridiagonal form.
class SymmetricSpectrum {
 public:
  explicit SymmetricSpectrum(const Eigen::MatrixXd& a) : tri_(a) {
    diag_ = tri_.diagonal();
    off_ = tri_.subDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag_, off_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
    values_ = es.eigenvalues();
    scale_ = diag_.cwiseAbs().maxCoeff();
    if (off_.size() > 0) scale_ += 2.0 * off_.cwiseAbs().maxCoeff();
    scale_ = std::max(scale_, std::numeric_limits<double>::min());
  }

  const Eigen::VectorXd& values() const noexcept { return values_; }

  /// Unit eigenvector for values()[index], orthogonal to those returned earlier
  /// for nearby eigenvalues.
  std::vector<double> vector(Eigen::Index index) {
    const double lambda = values_[index];
    const Eigen::Index n = diag_.size();
    const TridiagonalLu lu(diag_, off_, lambda, std::numeric_limits<double>::epsilon() * scale_);
    std::vector<const Eigen::VectorXd*> cluster;
    for (const auto& [value, vec] : found_) {
      if (std::abs(value - lambda) <= 1e-3 * scale_) cluster.push_back(&vec);
    }
    // Deterministic start with no special alignment.
    Eigen::VectorXd u(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index);
    for (Eigen::Index i = 0; i < n; ++i) {
      state ^= state >> 12;
      state ^= state << 25;
      state ^= state >> 27;
      u[i] = static_cast<double>(state * 0x2545F4914F6CDD1DULL >> 11) * 0x1.0p-53 - 0.5;
    }
    auto orthogonalize = [&] {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto* q : cluster) u -= q->dot(u) * *q;
      }
    };
    orthogonalize();
    u.normalize();
    for (int it = 0; it < 8; ++it) {
      lu.solve(u);
      orthogonalize();
      const double norm = u.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("inverse iteration broke down");
      u /= norm;
      if (it >= 2 && tridiagonal_residual(u, lambda) <= 1e-13 * scale_) break;
    }
    found_.emplace_back(lambda, u);
    const Eigen::VectorXd v = tri_.matrixQ() * u;
    return {v.data(), v.data() + v.size()};
  }

 private:
  double tridiagonal_residual(const Eigen::VectorXd& u, double lambda) const {
    const Eigen::Index n = diag_.size();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = (diag_[i] - lambda) * u[i];
      if (i > 0) r += off_[i - 1] * u[i - 1];
      if (i + 1 < n) r += off_[i] * u[i + 1];
      s += r * r;
    }
    return std::sqrt(s);
  }

  Eigen::Tridiagonalization<Eigen::MatrixXd> tri_;
  Eigen::VectorXd diag_;
  Eigen::VectorXd off_;
  Eigen::VectorXd values_;
  double scale_ = 1.0;
  std::vector<std::pair<double, Eigen::VectorXd>> found_;
};

inline void sign_normalize(std::vector<double>& v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  const double scale = std::sqrt(static_cast<double>(v.size()));
  bool flip = false;
  if (s < -1e-12 * scale) {
    flip = true;
  } else if (std::abs(s) <= 1e-12 * scale) {
    flip = !v.empty() && v.front() < 0.0;
  }
  if (flip) {
    for (double& x : v) x = -x;
  }
}

}  // namespace detail

/// Algebraically smallest eigenpair of R.
///
/// R is symmetric and persymmetric, so its eigenvectors split into symmetric
/// (v = [u; Ju]) and antisymmetric (v = [u; -Ju]) families; each half-size
/// block A ± BJ is tridiagonalized and its smallest eigenvectors found by
/// inverse iteration. When the minimum is degenerate (within 1e-12), the
/// uniform vector is projected onto the tied eigenspace; if that projection
/// vanishes, the tied basis vector with the largest entry sum is returned.
/// The vector is signed so its entries sum to ≥ 0 (first entry ≥ 0 on a zero sum).
inline Eigenpair min_eigenpair(const RiskMatrix& rm) {
  double scale = 1.0;
  bool all_zero = true;
  for (double b : rm.band()) {
    if (!std::isfinite(b)) throw NumericError("min_eigenpair: non-finite band entry");
    scale = std::max(scale, std::abs(b));
    all_zero = all_zero && b == 0.0;
  }
  const int n = rm.dim();
  if (n > kMaxDenseDim) throw ArgumentError("min_eigenpair: dense solver supports dim <= 4096 (m <= 12)");
  if (n % 2 != 0) throw ArgumentError("min_eigenpair: dimension must be even");
  if (all_zero) {
    // Every vector ties; the projection rule yields the uniform vector.
    return {0.0, std::vector<double>(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)))};
  }
  const int half = n / 2;

  auto block = [&](double sign) {
    Eigen::MatrixXd a(half, half);
    for (int j = 0; j < half; ++j) {
      for (int i = 0; i < half; ++i) {
        // (A ± BJ)_{ij} = L_{|i-j|} ± L_{n-1-i-j}
        a(i, j) = rm.entry(i, j) + sign * rm.entry(0, n - 1 - i - j);
      }
    }
    return a;
  };
  // The two families are independent; on a single core running them
  // concurrently only thrashes the cache.
  const auto launch = std::thread::hardware_concurrency() > 1 ? std::launch::async : std::launch::deferred;
  auto pending = std::async(launch, [&] { return detail::SymmetricSpectrum(block(-1.0)); });
  detail::SymmetricSpectrum sym(block(+1.0));
  detail::SymmetricSpectrum anti = pending.get();

  const double lambda_min = std::min(sym.values()[0], anti.values()[0]);
  const double tie = 1e-12 * scale;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto expand = [&](const std::vector<double>& u, double sign) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < half; ++i) {
      v[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * inv_sqrt2;
      v[static_cast<std::size_t>(n - 1 - i)] = sign * u[static_cast<std::size_t>(i)] * inv_sqrt2;
    }
    return v;
  };

  std::vector<std::vector<double>> basis;
  for (auto [fam, sign] : {std::pair{&sym, 1.0}, std::pair{&anti, -1.0}}) {
    for (Eigen::Index i = 0; i < fam->values().size() && fam->values()[i] <= lambda_min + tie; ++i) {
      basis.push_back(expand(fam->vector(i), sign));
    }
  }

  Eigenpair result;
  result.value = lambda_min;
  if (basis.size() == 1) {
    result.vector = std::move(basis.front());
  } else {
    // Projection of the all-ones vector onto the tied eigenspace.
    std::vector<double> proj(static_cast<std::size_t>(n), 0.0);
    std::size_t best = 0;
    double best_sum = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double s = std::accumulate(basis[b].begin(), basis[b].end(), 0.0);
      for (int i = 0; i < n; ++i) proj[static_cast<std::size_t>(i)] += s * basis[b][static_cast<std::size_t>(i)];
      if (std::abs(s) > best_sum) {
        best_sum = std::abs(s);
        best = b;
      }
    }
    const double norm = std::sqrt(std::inner_product(proj.begin(), proj.end(), proj.begin(), 0.0));
    if (norm > 1e-10) {
      for (double& x : proj) x /= norm;
      result.vector = std::move(proj);
    } else {
      result.vector = std::move(basis[best]);
    }
  }
  detail::sign_normalize(result.vector);

  const auto rv = rm.multiply(result.vector);
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    res += (rv[k] - lambda_min * result.vector[k]) * (rv[k] - lambda_min * result.vector[k]);
  }
  if (!(std::sqrt(res) <= 1e-8 * std::max(1.0, rm.band_norm()))) {
    throw NumericError("min_eigenpair: eigenvector residual check failed");
  }
  return result;
}

}  // namespace qperisk
