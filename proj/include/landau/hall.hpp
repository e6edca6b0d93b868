#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenstates.hpp"
#include "operators.hpp"

namespace landau {

/// Uniform B along z plus an electric field entering as H' = H - e E y.
struct HallParams {
  PhysicalParams base;
  double E_field = 0.0;

  /// y'_0 = k_x/(eB) + m_e E/(e B^2)
  double shifted_center(double kx) const {
    const double e = base.e(), b = base.B();
    return kx / (e * b) + base.mass() * E_field / (e * b * b);
  }
  /// Constant left over after completing the square, -(E/B) k_x - m_e E^2/(2 B^2).
  double energy_offset(double kx) const {
    const double b = base.B();
    return -(E_field / b) * kx - base.mass() * E_field * E_field / (2.0 * b * b);
  }
  /// E_n(k_x) = (2n+1) omega_L + energy_offset(k_x).
  double energy(int n, double kx) const {
    return (2.0 * n + 1.0) * base.larmor_frequency() + energy_offset(kx);
  }
  double drift_velocity() const { return -E_field / base.B(); }
};

inline GridSpec auto_grid_hall(int n, double kx, const HallParams& hp, const PacketSpec& packet) {
  return auto_grid_packet(n, kx, packet, hp.base, hp.shifted_center(kx));
}

/// Normalisable eigen-packet of H' in the first Landau gauge.
inline WaveField hall_state(int n, double kx, const HallParams& hp, const PacketSpec& packet,
                            const GridSpec& g) {
  if (n < 0) throw std::invalid_argument("hall_state: n must be >= 0");
  g.validate();
  const PhysicalParams& p = hp.base;
  const double eb = p.e() * p.B();
  const double shift = hp.shifted_center(0.0);
  require_packet_coverage(packet, g, hp.shifted_center(kx), 6.0 * packet.sigma_k / eb, p);
  StateLabel label{Landau1NK{n, kx}, packet.sigma_k, false, "E=" + std::to_string(hp.E_field)};
  return WaveField(g, GaugeSpec::landau1(), label,
                   detail::packet_values(n, kx, packet, p, g,
                                         [=](double k) { return k / eb + shift; }));
}

/// ||H' psi - [(2n+1) omega_L - m E^2/(2B^2) - (E/B) p_x] psi|| / ||psi||.
/// The p_x term carries the spread of energies across the packet.
inline double hall_eigen_residual(const WaveField& psi, int n, const HallParams& hp,
                                  Discretization scheme = {}) {
  const PhysicalParams& p = hp.base;
  const auto h = detail::apply_unchecked(OperatorSpec::of(OperatorKind::Hamiltonian, psi.gauge(), p, scheme), psi);
  const auto px = detail::apply_unchecked(OperatorSpec::of(OperatorKind::P_can_x, psi.gauge(), p, scheme), psi);
  const double e0 = hp.energy(n, 0.0);
  const double slope = hp.E_field / p.B();
  const GridSpec& g = psi.grid();
  const std::size_t margin = std::max(h.margin(), px.margin());
  const double res = integrate_interior(g, margin, [&](std::size_t ix, std::size_t iy) {
    const cplx lhs = h(ix, iy) - p.e() * hp.E_field * g.y(iy) * psi(ix, iy);
    const cplx rhs = e0 * psi(ix, iy) - slope * px(ix, iy);
    return std::norm(lhs - rhs);
  });
  const double nrm = integrate_interior(g, margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(psi(ix, iy));
  });
  return std::sqrt(res / nrm);
}

struct DriftReport {
  double jx = 0.0;
  double jy = 0.0;
  double jx_can = 0.0;
  double jx_gauge = 0.0;
  double vx = 0.0;
  double mean_y = 0.0;
  double error_estimate = 0.0;

  /// j_can + j_gauge - j_x, zero by construction of the decomposition.
  double decomposition_gap() const { return jx_can + jx_gauge - jx; }
};

/// Currents of a Hall state: j = (e/m) <Pi>, j_can = (e/m) <p_x>, j_gauge = (e/m) <e A_x>.
inline DriftReport drift_report(const WaveField& psi, const HallParams& hp, Discretization scheme = {},
                                ExpectationOptions opts = {}) {
  const PhysicalParams& p = hp.base;
  const double c = p.e() / p.mass();
  const GaugeSpec gauge = psi.gauge();
  auto ev = [&](const OperatorSpec& op, DriftReport& r) {
    const auto rep = expectation(op, psi, opts);
    r.error_estimate = std::max(r.error_estimate, rep.error_estimate);
    return rep.real();
  };
  DriftReport r;
  const double pix = ev(OperatorSpec::of(OperatorKind::P_mech_x, gauge, p, scheme), r);
  const double piy = ev(OperatorSpec::of(OperatorKind::P_mech_y, gauge, p, scheme), r);
  const double pcx = ev(OperatorSpec::of(OperatorKind::P_can_x, gauge, p, scheme), r);
  const double eax = ev(OperatorSpec::custom(
                            [&](double x, double y) {
                              return cplx(p.e() * potential_at(gauge, p, x, y).x, 0.0);
                            },
                            "eA_x"),
                        r);
  r.mean_y = ev(OperatorSpec::of(OperatorKind::Position_y, gauge, p, scheme), r);
  r.jx = c * pix;
  r.jy = c * piy;
  r.jx_can = c * pcx;
  r.jx_gauge = c * eax;
  r.vx = pix / p.mass();
  return r;
}

struct KxScanRow {
  double kx = 0.0;
  double vx = 0.0;
  double error_estimate = 0.0;
};

struct KxScan {
  std::vector<KxScanRow> rows;
  double spread = 0.0;
};

/// <v_x> for each k_x; the spread max - min measures k_x dependence.
inline KxScan kx_independence_scan(int n, const HallParams& hp, const PacketSpec& packet,
                                   const std::vector<double>& kxs, Discretization scheme = {}) {
  std::vector<double> distinct = kxs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw std::invalid_argument("kx_independence_scan: need >= 3 distinct k_x");
  KxScan scan;
  for (double kx : kxs) {
    const GridSpec g = auto_grid_hall(n, kx, hp, packet);
    const WaveField psi = hall_state(n, kx, hp, packet, g);
    const auto rep = expectation(OperatorSpec::of(OperatorKind::P_mech_x, psi.gauge(), hp.base, scheme), psi);
    scan.rows.push_back({kx, rep.real() / hp.base.mass(), rep.error_estimate / hp.base.mass()});
  }
  const auto [lo, hi] = std::minmax_element(scan.rows.begin(), scan.rows.end(),
                                            [](const auto& a, const auto& b) { return a.vx < b.vx; });
  scan.spread = hi->vx - lo->vx;
  return scan;
}

}  // namespace landau
