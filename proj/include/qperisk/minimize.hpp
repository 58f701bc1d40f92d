#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace qperisk {

template <typename T>
struct ScalarMinimum {
  T x;
  T value;
};

/// Golden-section search on [lo, hi] until the bracket is narrower than `width`.
template <typename T, typename F>
ScalarMinimum<T> golden_section(F&& f, T lo, T hi, T width, int max_iter = 200) {
  const T inv_phi = (std::sqrt(T(5)) - T(1)) / T(2);
  T a = lo;
  T b = hi;
  T x1 = b - inv_phi * (b - a);
  T x2 = a + inv_phi * (b - a);
  T f1 = f(x1);
  T f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > width; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ScalarMinimum<T>{x1, f1} : ScalarMinimum<T>{x2, f2};
}

/// Bisection for a sign change of g on [lo, hi]; returns the midpoint of the final bracket.
template <typename T, typename G>
T bisect_root(G&& g, T lo, T hi, T width, int max_iter = 200) {
  T glo = g(lo);
  for (int it = 0; it < max_iter && (hi - lo) > width; ++it) {
    const T mid = lo + (hi - lo) / T(2);
    const T gm = g(mid);
    if (gm == T(0)) return mid;
    if ((gm < T(0)) == (glo < T(0))) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / T(2);
}

}  // namespace qperisk
