#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gauge.hpp"
#include "params.hpp"
#include "special.hpp"
#include "wavefield.hpp"

namespace landau {

class GridCoverageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Pointwise analytic eigenfunctions

/// Radial factor R_{n,m}(r), normalised as int |R|^2 r dr = 1.
inline double symmetric_radial(int n, int m, const PhysicalParams& p, double r) {
  if (n < 0 || m > n) throw std::invalid_argument("symmetric state requires n >= 0 and m <= n");
  const int am = std::abs(m);
  const int nr = n - (am + m) / 2;
  const double l2 = p.magnetic_length_sq();
  const double rho = r * r / (2.0 * l2);
  const double lag = assoc_laguerre(nr, am, rho);
  if (lag == 0.0) return 0.0;
  if (rho == 0.0) return am == 0 ? std::sqrt(1.0 / l2) * lag : 0.0;
  const double log_mag = 0.5 * (log_factorial(nr) - log_factorial(nr + am)) +
                         0.5 * am * std::log(rho) - 0.5 * rho - 0.5 * std::log(l2);
  return std::exp(log_mag) * lag;
}

/// Psi^(S)_{n,m}(x, y) = e^{i m phi} / sqrt(2 pi) R_{n,m}(r).
inline cplx symmetric_value(int n, int m, const PhysicalParams& p, double x, double y) {
  const double r = std::hypot(x, y);
  const double radial = symmetric_radial(n, m, p, r);
  if (radial == 0.0) return {0.0, 0.0};
  const double phi = std::atan2(y, x);
  return std::polar(radial / std::sqrt(2.0 * std::numbers::pi), m * phi);
}

/// Unit-normalised oscillator factor N_n H_n(t) e^{-t^2/2}, t = (y - y0)/l_B.
inline double oscillator_factor(int n, double y, double center, double length) {
  const double t = (y - center) / length;
  const double h = hermite(n, t);
  if (h == 0.0) return 0.0;
  const double log_norm = -0.5 * (n * std::numbers::ln2 + log_factorial(n) +
                                  0.5 * std::log(std::numbers::pi) + std::log(length));
  return std::exp(log_norm - 0.5 * t * t) * h;
}

/// Psi^(L1)_{n,kx}(x, y) = e^{i kx x}/sqrt(2 pi) Y_n(y), Y_n centred at y0 = l_B^2 kx.
inline cplx landau1_value(int n, double kx, const PhysicalParams& p, double x, double y) {
  const double y0 = p.magnetic_length_sq() * kx;
  const double amp = oscillator_factor(n, y, y0, p.magnetic_length());
  return std::polar(amp / std::sqrt(2.0 * std::numbers::pi), kx * x);
}

/// 2nd Landau gauge, obtained from the 1st by (x, y, kx) -> (y, -x, ky).
inline cplx landau2_value(int n, double ky, const PhysicalParams& p, double x, double y) {
  return landau1_value(n, ky, p, y, -x);
}

// ---------------------------------------------------------------------------
// Grid heuristics

inline double mean_rc2(int n, const PhysicalParams& p) { return (2.0 * n + 1.0) * p.magnetic_length_sq(); }
inline double mean_guiding_r2(int n, int m, const PhysicalParams& p) {
  return (2.0 * n - 2.0 * m + 1.0) * p.magnetic_length_sq();
}

inline std::size_t round_up_points(double span, double spacing, std::size_t multiple = 64) {
  auto n = static_cast<std::size_t>(std::ceil(span / spacing)) + 1;
  n = ((n + multiple - 1) / multiple) * multiple;
  return std::max<std::size_t>(n, GridSpec::min_points);
}

/// Square grid centred on the origin that holds the symmetric-gauge state.
inline GridSpec auto_grid_symmetric(int n, int m, const PhysicalParams& p,
                                    std::size_t points = 512) {
  const int am = std::abs(m);
  const int nr = n - (am + m) / 2;
  const double lb = p.magnetic_length();
  const double r_rms = lb * std::sqrt(2.0 * (2.0 * nr + am + 1.0));
  const double half = std::max(r_rms + 8.0 * lb,
                               1.5 * std::sqrt(mean_rc2(n, p) + mean_guiding_r2(n, m, p)) + lb);
  return GridSpec::square(half, points);
}

inline GridSpec auto_grid_landau1(int n, double kx, const PhysicalParams& p,
                                  std::size_t nx = 256, std::size_t ny = 256) {
  const double lb = p.magnetic_length();
  const double y0 = p.magnetic_length_sq() * kx;
  const double half_y = (std::sqrt(2.0 * n + 1.0) + 8.0) * lb;
  return GridSpec{-16.0 * lb, 16.0 * lb, y0 - half_y, y0 + half_y, nx, ny};
}

inline void require_symmetric_coverage(int n, int m, const PhysicalParams& p, const GridSpec& g) {
  const double need = 1.5 * std::sqrt(mean_rc2(n, p) + mean_guiding_r2(n, m, p));
  const double have = std::min({-g.x_min, g.x_max, -g.y_min, g.y_max});
  if (have < need) {
    throw GridCoverageError("grid half-extent " + std::to_string(have) + " below required " +
                            std::to_string(need) + " for the symmetric state");
  }
}

inline void require_y_coverage(double center, double half, const GridSpec& g, const char* what) {
  if (g.y_min > center - half || g.y_max < center + half) {
    throw GridCoverageError(std::string(what) + ": grid must cover y in [" +
                            std::to_string(center - half) + ", " + std::to_string(center + half) +
                            "]");
  }
}

// ---------------------------------------------------------------------------
// Sampled eigenstates

template <class F>
std::vector<cplx> sample(const GridSpec& g, F&& f) {
  std::vector<cplx> v(g.size());
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    for (std::size_t ix = 0; ix < g.nx; ++ix) v[g.index(ix, iy)] = f(g.x(ix), y);
  }
  return v;
}

inline WaveField symmetric_state(int n, int m, const PhysicalParams& p, const GridSpec& g) {
  if (n < 0) throw std::invalid_argument("symmetric_state: n must be >= 0");
  if (m > n) throw std::invalid_argument("symmetric_state: m must satisfy m <= n");
  g.validate();
  require_symmetric_coverage(n, m, p, g);
  StateLabel label{SymmetricNM{n, m}, std::nullopt, false, {}};
  return WaveField(g, GaugeSpec::symmetric(), label,
                   sample(g, [&](double x, double y) { return symmetric_value(n, m, p, x, y); }));
}

inline WaveField landau1_state(int n, double kx, const PhysicalParams& p, const GridSpec& g) {
  if (n < 0) throw std::invalid_argument("landau1_state: n must be >= 0");
  g.validate();
  require_y_coverage(p.magnetic_length_sq() * kx, 8.0 * p.magnetic_length(), g, "landau1_state");
  StateLabel label{Landau1NK{n, kx}, std::nullopt, true, {}};
  return WaveField(g, GaugeSpec::landau1(), label,
                   sample(g, [&](double x, double y) { return landau1_value(n, kx, p, x, y); }));
}

inline WaveField landau2_state(int n, double ky, const PhysicalParams& p, const GridSpec& g) {
  if (n < 0) throw std::invalid_argument("landau2_state: n must be >= 0");
  g.validate();
  const double x0 = -p.magnetic_length_sq() * ky;
  if (g.x_min > x0 - 8.0 * p.magnetic_length() || g.x_max < x0 + 8.0 * p.magnetic_length()) {
    throw GridCoverageError("landau2_state: grid must cover x0 +- 8 l_B");
  }
  StateLabel label{Landau2NK{n, ky}, std::nullopt, true, {}};
  return WaveField(g, GaugeSpec::landau2(), label,
                   sample(g, [&](double x, double y) { return landau2_value(n, ky, p, x, y); }));
}

// ---------------------------------------------------------------------------
// Wave packets

enum class PacketProfile {
  /// int dk g(k - kx) Psi^(L1)_{n,k}: every component keeps its own centre l_B^2 k.
  coherent,
  /// F_kx(x) Y_n(y) with Y_n frozen at y0 = l_B^2 kx.
  separable,
};

/// g(k) = (pi sigma^2)^{-1/4} exp(-k^2 / (2 sigma^2)), int |g|^2 dk = 1.
struct PacketSpec {
  double sigma_k = 0.1;
  PacketProfile profile = PacketProfile::coherent;

  double weight(double k) const {
    return std::pow(std::numbers::pi * sigma_k * sigma_k, -0.25) *
           std::exp(-k * k / (2.0 * sigma_k * sigma_k));
  }
  /// F_kx(x) = int dk/sqrt(2 pi) g(k - kx) e^{ikx}, in closed form.
  cplx envelope(double kx, double x) const {
    const double amp = std::pow(sigma_k * sigma_k / std::numbers::pi, 0.25) *
                       std::exp(-0.5 * sigma_k * sigma_k * x * x);
    return std::polar(amp, kx * x);
  }
};

inline GridSpec auto_grid_packet(int n, double kx, const PacketSpec& packet, const PhysicalParams& p,
                                 double y_center, double max_spacing = 0.125) {
  const double lb = p.magnetic_length();
  const double half_x = 5.0 / packet.sigma_k;
  const double hx = std::min(max_spacing * lb, 0.25 / (std::abs(kx) + 6.0 * packet.sigma_k + 1.0));
  const double spread = p.magnetic_length_sq() * 6.0 * packet.sigma_k;
  const double half_y = (std::sqrt(2.0 * n + 1.0) + 8.0) * lb + spread;
  const double hy = std::min(max_spacing * lb, 0.25 * lb);
  return GridSpec{-half_x, half_x, y_center - half_y, y_center + half_y,
                  round_up_points(2.0 * half_x, hx), round_up_points(2.0 * half_y, hy)};
}

inline void require_packet_coverage(const PacketSpec& packet, const GridSpec& g, double y_center,
                                    double spread, const PhysicalParams& p) {
  if (!(packet.sigma_k > 0.0)) throw std::invalid_argument("packet: sigma_k must be > 0");
  const double half_x = 5.0 / packet.sigma_k;
  if (g.x_min > -half_x || g.x_max < half_x) {
    throw GridCoverageError("packet: grid x-extent must reach +-5/sigma_k (total >= 10/sigma_k)");
  }
  require_y_coverage(y_center, 8.0 * p.magnetic_length() + spread, g, "packet");
}

namespace detail {

/// sum_j w_j e^{i k_j x} Y_n(y - c(k_j)) with trapezoidal nodes in k.
template <class Center>
std::vector<cplx> coherent_superposition(int n, double kx, const PacketSpec& packet,
                                         const PhysicalParams& p, const GridSpec& g,
                                         Center&& center_of_k) {
  const double s = packet.sigma_k;
  const double x_reach = std::max(std::abs(g.x_min), std::abs(g.x_max));
  // Trapezoidal sums in k alias the x-envelope with period 2 pi / dk.
  const double period = 2.0 * x_reach + 12.0 / s;
  const double dk = std::min(2.0 * std::numbers::pi / period, 0.25 * s);
  const double q_max = 9.0 * s;
  const int half = static_cast<int>(std::ceil(q_max / dk));
  const double lb = p.magnetic_length();

  std::vector<cplx> v(g.size(), cplx{});
  std::vector<cplx> carrier(g.nx);
  std::vector<double> column(g.ny);
  for (int j = -half; j <= half; ++j) {
    const double q = j * dk;
    const double k = kx + q;
    const double w = packet.weight(q) * dk / std::sqrt(2.0 * std::numbers::pi);
    const double c = center_of_k(k);
    for (std::size_t ix = 0; ix < g.nx; ++ix) carrier[ix] = std::polar(w, k * g.x(ix));
    for (std::size_t iy = 0; iy < g.ny; ++iy) column[iy] = oscillator_factor(n, g.y(iy), c, lb);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      if (column[iy] == 0.0) continue;
      cplx* row = v.data() + g.index(0, iy);
      for (std::size_t ix = 0; ix < g.nx; ++ix) row[ix] += carrier[ix] * column[iy];
    }
  }
  return v;
}

template <class Center>
std::vector<cplx> packet_values(int n, double kx, const PacketSpec& packet, const PhysicalParams& p,
                                const GridSpec& g, Center&& center_of_k) {
  if (packet.profile == PacketProfile::coherent) {
    return coherent_superposition(n, kx, packet, p, g, center_of_k);
  }
  const double c = center_of_k(kx);
  return sample(g, [&](double x, double y) {
    return packet.envelope(kx, x) * oscillator_factor(n, y, c, p.magnetic_length());
  });
}

}  // namespace detail

/// Normalisable Landau-gauge packet, norm 1 up to quadrature.
inline WaveField packet_state(int n, double kx, const PacketSpec& packet, const PhysicalParams& p,
                              const GridSpec& g) {
  if (n < 0) throw std::invalid_argument("packet_state: n must be >= 0");
  g.validate();
  const double l2 = p.magnetic_length_sq();
  require_packet_coverage(packet, g, l2 * kx, 6.0 * packet.sigma_k * l2, p);
  StateLabel label{Landau1NK{n, kx}, packet.sigma_k, false,
                   packet.profile == PacketProfile::separable ? "separable" : ""};
  return WaveField(g, GaugeSpec::landau1(), label,
                   detail::packet_values(n, kx, packet, p, g, [l2](double k) { return l2 * k; }));
}

/// Member of the gauge class of `state`: U(chi) state, labels carried over.
inline WaveField class_member(const WaveField& state, const PolynomialGaugeFunction& chi,
                              const PhysicalParams& p) {
  return transform_wavefield(state, chi, p);
}

}  // namespace landau
