#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "params.hpp"
#include "quadrature.hpp"

namespace landau {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// chi(x, y) = sum_{i+j <= 6} c_ij x^i y^j. Gradient and Laplacian are exact.
class PolynomialGaugeFunction {
 public:
  static constexpr int max_degree = 6;

  PolynomialGaugeFunction() { c_.fill({}); }

  /// Sets c_ij; throws when i + j exceeds max_degree.
  PolynomialGaugeFunction& set(int i, int j, double value) {
    if (i < 0 || j < 0 || i + j > max_degree) {
      throw std::invalid_argument("PolynomialGaugeFunction: total degree must be <= 6");
    }
    c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
    return *this;
  }

  double coefficient(int i, int j) const {
    if (i < 0 || j < 0 || i + j > max_degree) return 0.0;
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  bool is_zero() const {
    for (const auto& row : c_)
      for (double v : row)
        if (v != 0.0) return false;
    return true;
  }

  int degree() const {
    int d = -1;
    for (int i = 0; i <= max_degree; ++i)
      for (int j = 0; i + j <= max_degree; ++j)
        if (coefficient(i, j) != 0.0) d = std::max(d, i + j);
    return d;
  }

  double value(double x, double y) const {
    double s = 0.0;
    for (int i = max_degree; i >= 0; --i) {
      double row = 0.0;
      for (int j = max_degree - i; j >= 0; --j) row = row * y + coefficient(i, j);
      s = s * x + row;
    }
    return s;
  }

  Vec2 gradient(double x, double y) const {
    Vec2 g;
    for (int i = 0; i <= max_degree; ++i) {
      for (int j = 0; i + j <= max_degree; ++j) {
        const double c = coefficient(i, j);
        if (c == 0.0) continue;
        if (i > 0) g.x += c * i * ipow(x, i - 1) * ipow(y, j);
        if (j > 0) g.y += c * j * ipow(x, i) * ipow(y, j - 1);
      }
    }
    return g;
  }

  double laplacian(double x, double y) const {
    double s = 0.0;
    for (int i = 0; i <= max_degree; ++i) {
      for (int j = 0; i + j <= max_degree; ++j) {
        const double c = coefficient(i, j);
        if (c == 0.0) continue;
        if (i > 1) s += c * i * (i - 1) * ipow(x, i - 2) * ipow(y, j);
        if (j > 1) s += c * j * (j - 1) * ipow(x, i) * ipow(y, j - 2);
      }
    }
    return s;
  }

  PolynomialGaugeFunction derivative_x() const {
    PolynomialGaugeFunction out;
    for (int i = 1; i <= max_degree; ++i)
      for (int j = 0; i + j <= max_degree; ++j) out.set(i - 1, j, coefficient(i, j) * i);
    return out;
  }

  PolynomialGaugeFunction derivative_y() const {
    PolynomialGaugeFunction out;
    for (int i = 0; i <= max_degree; ++i)
      for (int j = 1; i + j <= max_degree; ++j) out.set(i, j - 1, coefficient(i, j) * j);
    return out;
  }

  PolynomialGaugeFunction operator+(const PolynomialGaugeFunction& o) const {
    PolynomialGaugeFunction r;
    for (int i = 0; i <= max_degree; ++i)
      for (int j = 0; i + j <= max_degree; ++j) r.set(i, j, coefficient(i, j) + o.coefficient(i, j));
    return r;
  }
  PolynomialGaugeFunction operator-() const {
    PolynomialGaugeFunction r;
    for (int i = 0; i <= max_degree; ++i)
      for (int j = 0; i + j <= max_degree; ++j) r.set(i, j, -coefficient(i, j));
    return r;
  }
  PolynomialGaugeFunction operator-(const PolynomialGaugeFunction& o) const { return *this + (-o); }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (int i = 0; i <= max_degree; ++i)
      for (int j = 0; i + j <= max_degree; ++j) {
        const double c = coefficient(i, j);
        if (c == 0.0) continue;
        if (!first) os << " + ";
        os << c;
        if (i > 0) os << "*x^" << i;
        if (j > 0) os << "*y^" << j;
        first = false;
      }
    return first ? "0" : os.str();
  }

  friend bool operator==(const PolynomialGaugeFunction&, const PolynomialGaugeFunction&) = default;

 private:
  static double ipow(double v, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= v;
    return r;
  }

  std::array<std::array<double, max_degree + 1>, max_degree + 1> c_{};
};

/// Random chi with zero constant term. Coefficients of total degree d are drawn
/// uniformly from [-bound, bound] / length_scale^d.
inline PolynomialGaugeFunction random_gauge_function(std::mt19937_64& rng, int max_degree,
                                                     double bound = 1.0,
                                                     double length_scale = 1.0) {
  if (max_degree < 1 || max_degree > PolynomialGaugeFunction::max_degree) {
    throw std::invalid_argument("random_gauge_function: degree must be in [1, 6]");
  }
  std::uniform_real_distribution<double> dist(-bound, bound);
  PolynomialGaugeFunction chi;
  for (int d = 1; d <= max_degree; ++d)
    for (int i = 0; i <= d; ++i) chi.set(i, d - i, dist(rng) / std::pow(length_scale, d));
  return chi;
}

/// Axially symmetric field B(r) e_z. The enclosed flux per radian,
/// Phi(r) = int_0^r B(r') r' dr', is tabulated with adaptive Simpson and
/// interpolated with cubic Hermite splines (Phi' = B(r) r is known exactly).
class RadialFieldProfile {
 public:
  RadialFieldProfile(std::function<double(double)> field, double r_max, std::string name,
                     double table_step = 1.0 / 256.0)
      : field_(std::move(field)), r_max_(r_max), step_(table_step), name_(std::move(name)) {
    if (!(r_max > 0.0) || !(table_step > 0.0)) {
      throw std::invalid_argument("RadialFieldProfile: r_max and table_step must be positive");
    }
    const auto n = static_cast<std::size_t>(std::ceil(r_max / step_)) + 1;
    flux_.resize(n + 1, 0.0);
    const auto integrand = [this](double r) { return field_(r) * r; };
    for (std::size_t i = 1; i <= n; ++i) {
      const double a = static_cast<double>(i - 1) * step_;
      const double b = static_cast<double>(i) * step_;
      flux_[i] = flux_[i - 1] + adaptive_simpson(integrand, a, b, 1e-15);
    }
  }

  static std::shared_ptr<const RadialFieldProfile> constant(double b, double r_max) {
    return std::make_shared<const RadialFieldProfile>([b](double) { return b; }, r_max,
                                                      "constant");
  }
  static std::shared_ptr<const RadialFieldProfile> gaussian(double b0, double r_max) {
    return std::make_shared<const RadialFieldProfile>(
        [b0](double r) { return b0 * std::exp(-r * r); }, r_max, "gaussian");
  }

  double field(double r) const { return field_(r); }
  const std::string& name() const { return name_; }
  double r_max() const { return r_max_; }

  double flux(double r) const {
    r = std::abs(r);
    if (r > r_max_) {
      throw QuadratureFailure("RadialFieldProfile: radius beyond tabulated range");
    }
    const auto i = static_cast<std::size_t>(r / step_);
    const double a = static_cast<double>(i) * step_;
    return flux_[i] + gauss_legendre8([this](double s) { return field_(s) * s; }, a, r);
  }

  /// Phi(r) / r^2, finite at the origin (limit B(0)/2).
  double flux_over_r2(double r) const {
    if (r < 1e-6) return 0.5 * field_(r);
    return flux(r) / (r * r);
  }

 private:
  std::function<double(double)> field_;
  double r_max_;
  double step_;
  std::string name_;
  std::vector<double> flux_;
};

enum class BaseGauge { symmetric, landau1, landau2, radial_profile };

inline std::string to_string(BaseGauge g) {
  switch (g) {
    case BaseGauge::symmetric: return "symmetric";
    case BaseGauge::landau1: return "landau1";
    case BaseGauge::landau2: return "landau2";
    case BaseGauge::radial_profile: return "radial_profile";
  }
  return "unknown";
}

/// A named vector potential plus a polynomial gauge function: A = A_base + grad(chi).
struct GaugeSpec {
  BaseGauge base = BaseGauge::symmetric;
  PolynomialGaugeFunction chi;
  std::shared_ptr<const RadialFieldProfile> profile;  // only for BaseGauge::radial_profile

  static GaugeSpec symmetric() { return {BaseGauge::symmetric, {}, nullptr}; }
  static GaugeSpec landau1() { return {BaseGauge::landau1, {}, nullptr}; }
  static GaugeSpec landau2() { return {BaseGauge::landau2, {}, nullptr}; }
  static GaugeSpec radial(std::shared_ptr<const RadialFieldProfile> p) {
    if (!p) throw std::invalid_argument("GaugeSpec::radial: null profile");
    return {BaseGauge::radial_profile, {}, std::move(p)};
  }

  GaugeSpec with_chi(const PolynomialGaugeFunction& extra) const {
    GaugeSpec g = *this;
    g.chi = chi + extra;
    return g;
  }

  std::string describe() const {
    std::string s = to_string(base);
    if (base == BaseGauge::radial_profile && profile) s += "(" + profile->name() + ")";
    if (!chi.is_zero()) s += " + grad(" + chi.to_string() + ")";
    return s;
  }

  friend bool operator==(const GaugeSpec& a, const GaugeSpec& b) {
    return a.base == b.base && a.chi == b.chi && a.profile == b.profile;
  }
};

/// Field strength B(x, y) realised by the gauge (curl of A).
inline double field_strength(const GaugeSpec& g, const PhysicalParams& p, double x, double y) {
  if (g.base == BaseGauge::radial_profile) return g.profile->field(std::hypot(x, y));
  return p.B();
}

inline Vec2 base_potential(const GaugeSpec& g, const PhysicalParams& p, double x, double y) {
  const double b = p.B();
  switch (g.base) {
    case BaseGauge::symmetric: return {-0.5 * b * y, 0.5 * b * x};
    case BaseGauge::landau1: return {-b * y, 0.0};
    case BaseGauge::landau2: return {0.0, b * x};
    case BaseGauge::radial_profile: {
      const double s = g.profile->flux_over_r2(std::hypot(x, y));
      return {-s * y, s * x};
    }
  }
  return {};
}

/// A(x, y) = A_base + grad(chi).
inline Vec2 potential_at(const GaugeSpec& g, const PhysicalParams& p, double x, double y) {
  Vec2 a = base_potential(g, p, x, y);
  if (!g.chi.is_zero()) {
    const Vec2 d = g.chi.gradient(x, y);
    a.x += d.x;
    a.y += d.y;
  }
  return a;
}

/// div A; base potentials are transverse, so only chi contributes.
inline double potential_divergence(const GaugeSpec& g, double x, double y) {
  return g.chi.is_zero() ? 0.0 : g.chi.laplacian(x, y);
}

/// int_{x0}^{x1} A_x^base(x', y) dx'
inline double base_line_integral_x(const GaugeSpec& g, const PhysicalParams& p, double x0,
                                   double x1, double y) {
  switch (g.base) {
    case BaseGauge::symmetric: return -0.5 * p.B() * y * (x1 - x0);
    case BaseGauge::landau1: return -p.B() * y * (x1 - x0);
    case BaseGauge::landau2: return 0.0;
    case BaseGauge::radial_profile:
      return gauss_legendre8(
          [&](double xs) { return -y * g.profile->flux_over_r2(std::hypot(xs, y)); }, x0, x1);
  }
  return 0.0;
}

/// int_{y0}^{y1} A_y^base(x, y') dy'
inline double base_line_integral_y(const GaugeSpec& g, const PhysicalParams& p, double x,
                                   double y0, double y1) {
  switch (g.base) {
    case BaseGauge::symmetric: return 0.5 * p.B() * x * (y1 - y0);
    case BaseGauge::landau1: return 0.0;
    case BaseGauge::landau2: return p.B() * x * (y1 - y0);
    case BaseGauge::radial_profile:
      return gauss_legendre8(
          [&](double ys) { return x * g.profile->flux_over_r2(std::hypot(x, ys)); }, y0, y1);
  }
  return 0.0;
}

namespace detail {

/// chi_b with A_b = A_symmetric + grad(chi_b).
inline PolynomialGaugeFunction chi_from_symmetric(BaseGauge b, const PhysicalParams& p) {
  PolynomialGaugeFunction chi;
  switch (b) {
    case BaseGauge::symmetric: break;
    case BaseGauge::landau1: chi.set(1, 1, -0.5 * p.B()); break;
    case BaseGauge::landau2: chi.set(1, 1, 0.5 * p.B()); break;
    case BaseGauge::radial_profile:
      throw std::invalid_argument("chi_between: radial profiles are not polynomially related");
  }
  return chi;
}

}  // namespace detail

/// chi with A_to = A_from + grad(chi), normalised to chi(0, 0) = 0.
inline PolynomialGaugeFunction chi_between(BaseGauge from, BaseGauge to, const PhysicalParams& p) {
  if (from == to) throw std::invalid_argument("chi_between: source and target gauge coincide");
  return detail::chi_from_symmetric(to, p) - detail::chi_from_symmetric(from, p);
}

}  // namespace landau

namespace landau {

/// Polynomial (A_x, A_y) for the constant-field gauges, including grad(chi).
struct PolynomialPotential {
  PolynomialGaugeFunction ax;
  PolynomialGaugeFunction ay;
};

inline PolynomialPotential polynomial_potential(const GaugeSpec& g, const PhysicalParams& p) {
  PolynomialPotential a;
  switch (g.base) {
    case BaseGauge::symmetric:
      a.ax.set(0, 1, -0.5 * p.B());
      a.ay.set(1, 0, 0.5 * p.B());
      break;
    case BaseGauge::landau1: a.ax.set(0, 1, -p.B()); break;
    case BaseGauge::landau2: a.ay.set(1, 0, p.B()); break;
    case BaseGauge::radial_profile:
      throw std::invalid_argument("polynomial_potential: radial profile is not polynomial");
  }
  a.ax = a.ax + g.chi.derivative_x();
  a.ay = a.ay + g.chi.derivative_y();
  return a;
}

/// d_x A_y - d_y A_x, coefficient by coefficient.
inline PolynomialGaugeFunction curl(const PolynomialPotential& a) {
  return a.ay.derivative_x() - a.ax.derivative_y();
}

}  // namespace landau
