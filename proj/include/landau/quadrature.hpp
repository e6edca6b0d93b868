#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace landau {

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    throw QuadratureFailure("adaptive_simpson: recursion limit reached before tolerance");
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Throws QuadratureFailure when
/// the interval cannot be resolved within max_depth bisections.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-13, int max_depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double r = detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
  if (!std::isfinite(r)) throw QuadratureFailure("adaptive_simpson: non-finite integrand");
  return r;
}

/// Fixed 8-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss_legendre8(const F& f, double a, double b) {
  static constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                                  0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                                    0.2223810344533745, 0.1012285362903763};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += weights[i] * (f(mid - half * nodes[i]) + f(mid + half * nodes[i]));
  }
  return half * s;
}

}  // namespace landau
