// Optimal register state for the Holevo variance at small m, next to the
// analytic cosine state with ω = π/(N+2) and the traditional uniform state.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qperisk/qperisk.hpp"

int main() {
  using namespace qperisk;
  const NoiseModel noiseless(0.0);
  std::printf("%3s %6s %14s %14s %14s %12s\n", "m", "N", "R(uniform)", "R(optimal)", "2-2cos(pi/(N+2))", "max|dc|");
  for (int m = 1; m <= 8; ++m) {
    const int n = resource_count(m);
    const auto fl = fourier_coefficients(LossSpec::holevo(), n);
    const auto opt = optimal_state(m, fl);
    const auto cos_state = cosine_state(m, kPi / (n + 2));
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(opt[i] - cos_state[i]));
    std::printf("%3d %6d %14.10f %14.10f %14.10f %12.3e\n", m, n, risk_of_state(uniform_state(m), fl, noiseless).risk,
                risk_of_state(opt, fl, noiseless).risk, 2.0 - 2.0 * std::cos(kPi / (n + 2)), worst);
  }
  return 0;
}
