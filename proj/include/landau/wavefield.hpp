#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gauge.hpp"
#include "params.hpp"

namespace landau {

using cplx = std::complex<double>;

struct SymmetricNM {
  int n = 0;
  int m = 0;
  /// n_r = n - (|m| + m)/2, the number of radial nodes.
  int radial_nodes() const { return n - (std::abs(m) + m) / 2; }
};
struct Landau1NK {
  int n = 0;
  double kx = 0.0;
};
struct Landau2NK {
  int n = 0;
  double ky = 0.0;
};
using QuantumNumbers = std::variant<std::monostate, SymmetricNM, Landau1NK, Landau2NK>;

struct StateLabel {
  QuantumNumbers numbers;
  std::optional<double> packet_sigma;  // set for normalisable wave packets
  bool plane_wave_normalized = false;  // delta(k - k') normalisation in x or y
  std::string note;

  std::string describe() const {
    std::string s;
    if (const auto* a = std::get_if<SymmetricNM>(&numbers)) {
      s = "S(n=" + std::to_string(a->n) + ",m=" + std::to_string(a->m) + ")";
    } else if (const auto* b = std::get_if<Landau1NK>(&numbers)) {
      s = "L1(n=" + std::to_string(b->n) + ",kx=" + fmt(b->kx) + ")";
    } else if (const auto* c = std::get_if<Landau2NK>(&numbers)) {
      s = "L2(n=" + std::to_string(c->n) + ",ky=" + fmt(c->ky) + ")";
    } else {
      s = "field";
    }
    if (packet_sigma) s += "~packet(sigma=" + fmt(*packet_sigma) + ")";
    if (!note.empty()) s += "[" + note + "]";
    return s;
  }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }
};

/// Complex field sampled on a GridSpec, tagged with the gauge it lives in.
/// `margin` counts boundary cells per side whose values are not trusted
/// (finite-difference stencils reached past the grid); they are excluded
/// from every norm and integral.
class WaveField {
 public:
  WaveField(GridSpec grid, GaugeSpec gauge, StateLabel label, std::vector<cplx> values,
            std::size_t margin = 0)
      : grid_(grid),
        gauge_(std::move(gauge)),
        label_(std::move(label)),
        values_(std::move(values)),
        margin_(margin) {
    grid_.validate();
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("WaveField: value count does not match the grid");
    }
  }

  /// Zero field on the grid.
  WaveField(GridSpec grid, GaugeSpec gauge, StateLabel label = {})
      : WaveField(grid, std::move(gauge), std::move(label), std::vector<cplx>(grid.size())) {}

  const GridSpec& grid() const { return grid_; }
  const GaugeSpec& gauge() const { return gauge_; }
  const StateLabel& label() const { return label_; }
  std::size_t margin() const { return margin_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> mutable_values() { return values_; }

  cplx operator()(std::size_t ix, std::size_t iy) const { return values_[grid_.index(ix, iy)]; }
  cplx& at(std::size_t ix, std::size_t iy) { return values_[grid_.index(ix, iy)]; }

  bool in_interior(std::size_t ix, std::size_t iy) const {
    return ix >= margin_ && iy >= margin_ && ix + margin_ < grid_.nx && iy + margin_ < grid_.ny;
  }

  WaveField with_values(std::vector<cplx> values, std::size_t margin) const {
    return WaveField(grid_, gauge_, label_, std::move(values), margin);
  }
  WaveField retagged(GaugeSpec gauge) const {
    return WaveField(grid_, std::move(gauge), label_, values_, margin_);
  }
  WaveField relabeled(StateLabel label) const {
    return WaveField(grid_, gauge_, std::move(label), values_, margin_);
  }
  WaveField with_margin(std::size_t margin) const {
    return WaveField(grid_, gauge_, label_, values_, std::max(margin, margin_));
  }

  /// Sub-sampled copy on grid().coarsened().
  WaveField coarsened() const {
    const GridSpec g = grid_.coarsened();
    std::vector<cplx> v(g.size());
    for (std::size_t iy = 0; iy < g.ny; ++iy)
      for (std::size_t ix = 0; ix < g.nx; ++ix) v[g.index(ix, iy)] = (*this)(2 * ix, 2 * iy);
    return WaveField(g, gauge_, label_, std::move(v), (margin_ + 1) / 2);
  }

 private:
  GridSpec grid_;
  GaugeSpec gauge_;
  StateLabel label_;
  std::vector<cplx> values_;
  std::size_t margin_ = 0;
};

/// Trapezoidal integral of f(ix, iy) over the trusted interior of `grid`.
template <class F>
auto integrate_interior(const GridSpec& grid, std::size_t margin, F&& f) {
  using R = decltype(f(std::size_t{}, std::size_t{}));
  R sum{};
  const std::size_t x0 = margin, x1 = grid.nx - 1 - margin;
  const std::size_t y0 = margin, y1 = grid.ny - 1 - margin;
  for (std::size_t iy = y0; iy <= y1; ++iy) {
    const double wy = (iy == y0 || iy == y1) ? 0.5 : 1.0;
    R row{};
    for (std::size_t ix = x0; ix <= x1; ++ix) {
      const double wx = (ix == x0 || ix == x1) ? 0.5 : 1.0;
      row += wx * f(ix, iy);
    }
    sum += wy * row;
  }
  return sum * (grid.dx() * grid.dy());
}

/// <a|b> over the interior common to both fields.
inline cplx inner_product(const WaveField& a, const WaveField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  const std::size_t margin = std::max(a.margin(), b.margin());
  return integrate_interior(a.grid(), margin, [&](std::size_t ix, std::size_t iy) {
    return std::conj(a(ix, iy)) * b(ix, iy);
  });
}

inline double norm_squared(const WaveField& a) {
  return integrate_interior(a.grid(), a.margin(), [&](std::size_t ix, std::size_t iy) {
    return std::norm(a(ix, iy));
  });
}

inline double norm(const WaveField& a) { return std::sqrt(norm_squared(a)); }

/// ||a - b|| over the common interior.
inline double distance(const WaveField& a, const WaveField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("distance: grid mismatch");
  const std::size_t margin = std::max(a.margin(), b.margin());
  return std::sqrt(integrate_interior(a.grid(), margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(a(ix, iy) - b(ix, iy));
  }));
}

/// Largest pointwise | |a|^2 - |b|^2 | over the common interior.
inline double max_density_difference(const WaveField& a, const WaveField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("density: grid mismatch");
  const std::size_t margin = std::max(a.margin(), b.margin());
  double worst = 0.0;
  for (std::size_t iy = margin; iy + margin < a.grid().ny; ++iy)
    for (std::size_t ix = margin; ix + margin < a.grid().nx; ++ix)
      worst = std::max(worst, std::abs(std::norm(a(ix, iy)) - std::norm(b(ix, iy))));
  return worst;
}

inline double peak_density(const WaveField& a) {
  double peak = 0.0;
  for (const cplx& v : a.values()) peak = std::max(peak, std::norm(v));
  return peak;
}

/// psi -> exp(-i e chi) psi, with the gauge tag moved to A + grad(chi).
inline WaveField transform_wavefield(const WaveField& psi, const PolynomialGaugeFunction& chi,
                                     const PhysicalParams& params) {
  if (chi.is_zero()) return psi;
  const GridSpec& g = psi.grid();
  std::vector<cplx> out(g.size());
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const double phase = -params.e() * chi.value(g.x(ix), y);
      out[g.index(ix, iy)] = psi(ix, iy) * std::polar(1.0, phase);
    }
  }
  return WaveField(g, psi.gauge().with_chi(chi), psi.label(), std::move(out), psi.margin());
}

}  // namespace landau
