#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gauge.hpp"
#include "params.hpp"

namespace landau {

using cplx = std::complex<double>;

/// Central-difference scheme of the given order. With `covariant` set, the
/// gauge function part of A is not differenced: A-dependent operators are
/// evaluated as e^{-ie chi} O_base e^{ie chi}, which makes them exactly
/// covariant under psi -> e^{-ie chi} psi.
struct Discretization {
  int order = 8;
  bool covariant = true;

  std::size_t radius() const { return static_cast<std::size_t>(order / 2); }
  void validate() const {
    if (order != 2 && order != 4 && order != 6 && order != 8) {
      throw std::invalid_argument("Discretization: order must be 2, 4, 6 or 8");
    }
  }
  friend bool operator==(const Discretization&, const Discretization&) = default;
};

namespace stencil {

/// Coefficients c_1..c_r of the antisymmetric first-derivative stencil.
inline std::vector<double> first(int order) {
  switch (order) {
    case 2: return {0.5};
    case 4: return {2.0 / 3.0, -1.0 / 12.0};
    case 6: return {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    case 8: return {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  }
  throw std::invalid_argument("stencil: unsupported order " + std::to_string(order));
}

/// Centre coefficient followed by d_1..d_r of the symmetric second-derivative stencil.
inline std::vector<double> second(int order) {
  switch (order) {
    case 2: return {-2.0, 1.0};
    case 4: return {-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
    case 6: return {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
    case 8: return {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  }
  throw std::invalid_argument("stencil: unsupported order " + std::to_string(order));
}

}  // namespace stencil

// ---------------------------------------------------------------------------
// Row-parallel helper. Each row is written by exactly one worker, so the
// result does not depend on the thread count.

inline unsigned& thread_count_setting() {
  static unsigned n = 1;
  return n;
}
inline void set_thread_count(unsigned n) { thread_count_setting() = std::max(1u, n); }

template <class F>
void parallel_rows(std::size_t rows, F&& body) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_count_setting(), std::max<std::size_t>(rows, 1)));
  if (workers <= 1) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < rows; r += workers) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Raw derivatives on a flattened field. Points closer than the stencil radius
// to the edge are set to zero; callers track that band as margin.

enum class Axis { x, y };

inline void require_points(const GridSpec& g, std::size_t radius) {
  if (g.nx <= 2 * radius || g.ny <= 2 * radius) {
    throw std::invalid_argument("finite differences: grid too small for the stencil");
  }
}

inline std::vector<cplx> derivative(const std::vector<cplx>& v, const GridSpec& g, Axis axis,
                                    int order) {
  const auto c = stencil::first(order);
  const std::size_t r = c.size();
  require_points(g, r);
  std::vector<cplx> out(v.size(), cplx{});
  const double inv_h = 1.0 / (axis == Axis::x ? g.dx() : g.dy());
  const std::size_t stride = axis == Axis::x ? 1 : g.nx;
  const std::size_t n_along = axis == Axis::x ? g.nx : g.ny;
  parallel_rows(g.ny, [&](std::size_t iy) {
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const std::size_t pos = axis == Axis::x ? ix : iy;
      if (pos < r || pos + r >= n_along) continue;
      const std::size_t k = g.index(ix, iy);
      cplx acc{};
      for (std::size_t j = 0; j < r; ++j) acc += c[j] * (v[k + (j + 1) * stride] - v[k - (j + 1) * stride]);
      out[k] = acc * inv_h;
    }
  });
  return out;
}

inline std::vector<cplx> second_derivative(const std::vector<cplx>& v, const GridSpec& g, Axis axis,
                                           int order) {
  const auto d = stencil::second(order);
  const std::size_t r = d.size() - 1;
  require_points(g, r);
  std::vector<cplx> out(v.size(), cplx{});
  const double h = axis == Axis::x ? g.dx() : g.dy();
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t stride = axis == Axis::x ? 1 : g.nx;
  const std::size_t n_along = axis == Axis::x ? g.nx : g.ny;
  parallel_rows(g.ny, [&](std::size_t iy) {
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const std::size_t pos = axis == Axis::x ? ix : iy;
      if (pos < r || pos + r >= n_along) continue;
      const std::size_t k = g.index(ix, iy);
      cplx acc = d[0] * v[k];
      for (std::size_t j = 1; j <= r; ++j) acc += d[j] * (v[k + j * stride] + v[k - j * stride]);
      out[k] = acc * inv_h2;
    }
  });
  return out;
}

}  // namespace landau
