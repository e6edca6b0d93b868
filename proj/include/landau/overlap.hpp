#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenstates.hpp"
#include "operators.hpp"

namespace landau {

class WindowTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Square window for overlap integrals: side >= 40 l_B, spacing <= l_B/8.
inline GridSpec auto_grid_overlap(const PhysicalParams& p, std::size_t points = 512) {
  return GridSpec::square(20.0 * p.magnetic_length(), points);
}

namespace detail {

/// Landau-gauge eigenfunction as f(x) g(y) on the grid.
struct SeparableState {
  std::vector<cplx> fx;
  std::vector<cplx> gy;
};

inline SeparableState landau_factors(BaseGauge target, int n, double k, const PhysicalParams& p,
                                     const GridSpec& g) {
  SeparableState s{std::vector<cplx>(g.nx), std::vector<cplx>(g.ny)};
  const double l2 = p.magnetic_length_sq(), lb = p.magnetic_length();
  const double inv = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  if (target == BaseGauge::landau1) {
    for (std::size_t i = 0; i < g.nx; ++i) s.fx[i] = std::polar(inv, k * g.x(i));
    for (std::size_t j = 0; j < g.ny; ++j) s.gy[j] = oscillator_factor(n, g.y(j), l2 * k, lb);
  } else if (target == BaseGauge::landau2) {
    for (std::size_t i = 0; i < g.nx; ++i) s.fx[i] = oscillator_factor(n, -g.x(i), l2 * k, lb);
    for (std::size_t j = 0; j < g.ny; ++j) s.gy[j] = std::polar(inv, k * g.y(j));
  } else {
    throw std::invalid_argument("overlap: target gauge must be landau1 or landau2");
  }
  return s;
}

inline void require_window(const GridSpec& g, const PhysicalParams& p) {
  const double lb = p.magnetic_length();
  if (g.x_max - g.x_min < 40.0 * lb - 1e-9 || g.y_max - g.y_min < 40.0 * lb - 1e-9) {
    throw WindowTooSmallError("overlap: integration window must be at least 40 l_B wide");
  }
}

/// U_0 Psi^(S)_{n,m} sampled on g: the symmetric state carried into the target gauge.
inline std::vector<cplx> transported_symmetric(int n, int m, BaseGauge target,
                                               const PhysicalParams& p, const GridSpec& g) {
  const auto chi = chi_between(BaseGauge::symmetric, target, p);
  return sample(g, [&](double x, double y) {
    return std::polar(1.0, -p.e() * chi.value(x, y)) * symmetric_value(n, m, p, x, y);
  });
}

inline cplx separable_overlap(const SeparableState& s, const std::vector<cplx>& phi, const GridSpec& g) {
  cplx sum{};
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    const double wy = (iy == 0 || iy + 1 == g.ny) ? 0.5 : 1.0;
    cplx row{};
    const cplx* r = phi.data() + g.index(0, iy);
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const double wx = (ix == 0 || ix + 1 == g.nx) ? 0.5 : 1.0;
      row += wx * std::conj(s.fx[ix]) * r[ix];
    }
    sum += wy * std::conj(s.gy[iy]) * row;
  }
  return sum * (g.dx() * g.dy());
}

}  // namespace detail

/// <Psi^(L)_{n_landau,k}| U_0 |Psi^(S)_{n,m}> by 2-D trapezoidal quadrature.
inline cplx overlap_coefficient(int n_landau, int n, int m, double k, const PhysicalParams& p,
                                const GridSpec& g, BaseGauge target = BaseGauge::landau1) {
  if (n < 0 || n_landau < 0 || m > n) throw std::invalid_argument("overlap: need n >= 0 and m <= n");
  g.validate();
  detail::require_window(g, p);
  const auto phi = detail::transported_symmetric(n, m, target, p, g);
  return detail::separable_overlap(detail::landau_factors(target, n_landau, k, p, g), phi, g);
}

/// U_{n,m}(k).
inline cplx overlap_coefficient(int n, int m, double k, const PhysicalParams& p, const GridSpec& g,
                                BaseGauge target = BaseGauge::landau1) {
  return overlap_coefficient(n, n, m, k, p, g, target);
}

struct OverlapTable {
  int n = 0;
  int m = 0;
  double K = 8.0;
  int n_k = 257;
  BaseGauge target = BaseGauge::landau1;
  std::vector<double> k;
  std::vector<cplx> values;
  std::vector<double> error_estimates;  // |U_h - U_2h|
  double parseval = 0.0;                // trapezoid sum of |U|^2 over [-K, K]

  double dk() const { return 2.0 * K / (n_k - 1); }
};

/// U_{n,m}(k) on N_k equally spaced points of [-K, K].
inline OverlapTable overlap_table(int n, int m, const PhysicalParams& p, const GridSpec& g, double K = 8.0,
                                  int n_k = 257, BaseGauge target = BaseGauge::landau1,
                                  bool estimate_error = true) {
  if (n < 0 || m > n) throw std::invalid_argument("overlap_table: need n >= 0 and m <= n");
  if (!(K > 0.0) || n_k < 3) throw std::invalid_argument("overlap_table: need K > 0 and N_k >= 3");
  g.validate();
  detail::require_window(g, p);
  OverlapTable t;
  t.n = n;
  t.m = m;
  t.K = K;
  t.n_k = n_k;
  t.target = target;
  const auto phi = detail::transported_symmetric(n, m, target, p, g);
  const GridSpec gc = g.coarsened();
  std::vector<cplx> phi_c;
  if (estimate_error) phi_c = detail::transported_symmetric(n, m, target, p, gc);
  t.k.resize(n_k);
  t.values.resize(n_k);
  t.error_estimates.assign(n_k, 0.0);
  parallel_rows(static_cast<std::size_t>(n_k), [&](std::size_t i) {
    const double k = -K + t.dk() * static_cast<double>(i);
    t.k[i] = k;
    t.values[i] = detail::separable_overlap(detail::landau_factors(target, n, k, p, g), phi, g);
    if (estimate_error) {
      const cplx coarse =
          detail::separable_overlap(detail::landau_factors(target, n, k, p, gc), phi_c, gc);
      t.error_estimates[i] = std::abs(t.values[i] - coarse);
    }
  });
  for (int i = 0; i < n_k; ++i) {
    const double w = (i == 0 || i == n_k - 1) ? 0.5 : 1.0;
    t.parseval += w * std::norm(t.values[i]) * t.dk();
  }
  return t;
}

/// sum_k dk U(k) Psi^(L)_{n,k} on the grid of the table's window.
inline std::vector<cplx> reconstruct(const OverlapTable& t, const PhysicalParams& p, const GridSpec& g) {
  std::vector<cplx> v(g.size(), cplx{});
  for (int i = 0; i < t.n_k; ++i) {
    const cplx c = t.dk() * t.values[i];
    const auto s = detail::landau_factors(t.target, t.n, t.k[i], p, g);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const cplx cy = c * s.gy[iy];
      if (cy == cplx{}) continue;
      cplx* row = v.data() + g.index(0, iy);
      for (std::size_t ix = 0; ix < g.nx; ++ix) row[ix] += cy * s.fx[ix];
    }
  }
  return v;
}

/// ||U_0 Psi^(S) - sum_k dk U(k) Psi^(L)_{n,k}|| / ||Psi^(S)|| on the grid.
inline double superposition_residual(const OverlapTable& t, const PhysicalParams& p, const GridSpec& g) {
  const auto phi = detail::transported_symmetric(t.n, t.m, t.target, p, g);
  const auto rec = reconstruct(t, p, g);
  const double res = integrate_interior(g, 0, [&](std::size_t ix, std::size_t iy) {
    const std::size_t k = g.index(ix, iy);
    return std::norm(phi[k] - rec[k]);
  });
  const double nrm = integrate_interior(g, 0, [&](std::size_t ix, std::size_t iy) {
    return std::norm(phi[g.index(ix, iy)]);
  });
  return std::sqrt(res / nrm);
}

inline double verify_superposition(int n, int m, const PhysicalParams& p, const GridSpec& g, double K = 8.0,
                                   int n_k = 257, BaseGauge target = BaseGauge::landau1) {
  return superposition_residual(overlap_table(n, m, p, g, K, n_k, target, false), p, g);
}

struct ConvergenceStep {
  double K = 0.0;
  int n_k = 0;
  double residual = 0.0;
};

struct SuperpositionConvergence {
  std::vector<ConvergenceStep> steps;
  bool monotone = true;     // no step rises by more than `slack`
  bool stagnated = false;   // last residual still above tolerance
};

/// Residuals along a refinement path (N_k doubled each step: N_k -> 2 N_k - 1, K fixed).
inline SuperpositionConvergence superposition_convergence(int n, int m, const PhysicalParams& p,
                                                          const GridSpec& g, double K,
                                                          std::vector<int> n_ks, double tolerance,
                                                          double slack = 1e-10) {
  SuperpositionConvergence c;
  for (int nk : n_ks) {
    const double r = verify_superposition(n, m, p, g, K, nk);
    if (!c.steps.empty() && r > c.steps.back().residual + slack) c.monotone = false;
    c.steps.push_back({K, nk, r});
  }
  c.stagnated = !c.steps.empty() && c.steps.back().residual > tolerance;
  return c;
}

// ---------------------------------------------------------------------------
// Gauge-class dichotomy

enum class ClassRelation { equal, unequal, undecided };

inline std::string to_string(ClassRelation r) {
  switch (r) {
    case ClassRelation::equal: return "EQUAL";
    case ClassRelation::unequal: return "UNEQUAL";
    case ClassRelation::undecided: return "UNDECIDED";
  }
  return "?";
}

struct ClassRow {
  OperatorKind kind{};
  std::string state;
  bool symmetric_class = true;
  cplx value;
  double error_estimate = 0.0;
  ClassRelation relation = ClassRelation::undecided;
};

struct ClassInequalityReport {
  std::vector<ClassRow> rows;  // pairs: symmetric class then packet class, per operator
  PolynomialGaugeFunction chi_symmetric;
  PolynomialGaugeFunction chi_packet;
};

struct ClassReportOptions {
  std::uint64_t seed = 2024;
  int chi_degree = 3;
  double equality_tolerance = 1e-4;
  std::size_t symmetric_points = 512;
};

/// <P_mech_x>, <L_mech_z>, <P_cons_x>, <L_cons_z> on a symmetric-class state and on a
/// packet-class state, each moved by a random chi. Mechanical rows are flagged EQUAL when
/// they agree within the tolerance, conserved rows UNEQUAL when they differ by more than
/// ten times the combined quadrature error.
inline ClassInequalityReport class_inequality_report(int n, int m, double kx, const PacketSpec& packet,
                                                     const PhysicalParams& p,
                                                     ClassReportOptions opts = {},
                                                     Discretization scheme = {}) {
  std::mt19937_64 rng(opts.seed);
  const GridSpec gs = auto_grid_symmetric(n, m, p, opts.symmetric_points);
  const GridSpec gp = auto_grid_packet(n, kx, packet, p, p.magnetic_length_sq() * kx);
  ClassInequalityReport rep;
  rep.chi_symmetric = random_gauge_function(rng, opts.chi_degree, 1.0, gs.x_max);
  rep.chi_packet = random_gauge_function(rng, opts.chi_degree, 1.0, gp.x_max);
  const WaveField s = class_member(symmetric_state(n, m, p, gs), rep.chi_symmetric, p);
  const WaveField w = class_member(packet_state(n, kx, packet, p, gp), rep.chi_packet, p);
  for (OperatorKind kind : {OperatorKind::P_mech_x, OperatorKind::L_mech_z, OperatorKind::P_cons_x,
                            OperatorKind::L_cons_z}) {
    const auto a = expectation(OperatorSpec::of(kind, s.gauge(), p, scheme), s);
    const auto b = expectation(OperatorSpec::of(kind, w.gauge(), p, scheme), w);
    const bool mechanical = kind == OperatorKind::P_mech_x || kind == OperatorKind::L_mech_z;
    const double gap = std::abs(a.value - b.value);
    const double err = a.error_estimate + b.error_estimate;
    ClassRelation rel;
    if (mechanical) {
      rel = gap <= opts.equality_tolerance ? ClassRelation::equal : ClassRelation::undecided;
    } else {
      rel = gap > 10.0 * err ? ClassRelation::unequal : ClassRelation::undecided;
    }
    rep.rows.push_back({kind, a.state, true, a.value, a.error_estimate, rel});
    rep.rows.push_back({kind, b.state, false, b.value, b.error_estimate, rel});
  }
  return rep;
}

}  // namespace landau
