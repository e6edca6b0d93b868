#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace landau {

/// Natural units, hbar = 1. The particle carries charge -e (e > 0).
class PhysicalParams {
 public:
  PhysicalParams() = default;
  PhysicalParams(double charge, double field, double mass) : e_(charge), b_(field), m_(mass) {
    if (!(charge > 0.0) || !(field > 0.0) || !(mass > 0.0)) {
      throw std::invalid_argument("PhysicalParams: e, B and m_e must be strictly positive");
    }
  }

  double e() const { return e_; }
  double B() const { return b_; }
  double mass() const { return m_; }

  double cyclotron_frequency() const { return e_ * b_ / m_; }
  double larmor_frequency() const { return 0.5 * cyclotron_frequency(); }
  double magnetic_length() const { return 1.0 / std::sqrt(e_ * b_); }
  double magnetic_length_sq() const { return 1.0 / (e_ * b_); }

  /// Same particle in the field B + delta_b.
  PhysicalParams with_field(double field) const { return PhysicalParams(e_, field, m_); }

 private:
  double e_ = 1.0;
  double b_ = 1.0;
  double m_ = 1.0;
};

/// Uniform 2-D grid, endpoints included: x_i = x_min + i*dx, i = 0..nx-1.
struct GridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double y_min = -8.0;
  double y_max = 8.0;
  std::size_t nx = 256;
  std::size_t ny = 256;

  static constexpr std::size_t min_points = 16;

  void validate() const {
    if (nx < min_points || ny < min_points) {
      throw std::invalid_argument("GridSpec: nx and ny must be >= " + std::to_string(min_points));
    }
    if (!(x_max > x_min) || !(y_max > y_min)) {
      throw std::invalid_argument("GridSpec: empty extent (need x_max > x_min and y_max > y_min)");
    }
  }

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny - 1); }
  double x(std::size_t ix) const { return x_min + static_cast<double>(ix) * dx(); }
  double y(std::size_t iy) const { return y_min + static_cast<double>(iy) * dy(); }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }

  static GridSpec square(double half_extent, std::size_t points) {
    return GridSpec{-half_extent, half_extent, -half_extent, half_extent, points, points};
  }

  /// Every second point in each direction; used for refinement error estimates.
  GridSpec coarsened() const {
    GridSpec g = *this;
    g.nx = (nx - 1) / 2 + 1;
    g.ny = (ny - 1) / 2 + 1;
    g.x_max = x_min + static_cast<double>(2 * (g.nx - 1)) * dx();
    g.y_max = y_min + static_cast<double>(2 * (g.ny - 1)) * dy();
    return g;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace landau
