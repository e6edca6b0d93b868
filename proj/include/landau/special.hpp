#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace landau {

/// Largest polynomial degree accepted by hermite() and assoc_laguerre().
inline constexpr int max_polynomial_degree = 300;

/// Physicists' Hermite polynomial H_n(x), three-term recurrence.
inline double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  if (n > max_polynomial_degree) {
    throw std::domain_error("hermite: n = " + std::to_string(n) + " exceeds cap " +
                            std::to_string(max_polynomial_degree));
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Generalised Laguerre polynomial L^alpha_k(x), recurrence in k.
inline double assoc_laguerre(int k, double alpha, double x) {
  if (k < 0) throw std::invalid_argument("assoc_laguerre: k must be >= 0");
  if (k > max_polynomial_degree) {
    throw std::domain_error("assoc_laguerre: k = " + std::to_string(k) + " exceeds cap " +
                            std::to_string(max_polynomial_degree));
  }
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace detail {

inline constexpr int log_factorial_table_size = 601;

inline const std::array<double, log_factorial_table_size>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, log_factorial_table_size> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int i = 1; i < log_factorial_table_size; ++i) {
      acc += std::log(static_cast<long double>(i));
      t[i] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// ln(n!). Tabulated (long double accumulation) up to 600, lgamma beyond.
inline double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  if (n < detail::log_factorial_table_size) return detail::log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace landau
