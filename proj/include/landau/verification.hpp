#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eigenstates.hpp"
#include "hall.hpp"
#include "operators.hpp"
#include "oscillator.hpp"
#include "overlap.hpp"

namespace landau {

/// One numeric check: passes when `measured` is below (or, for witnesses,
/// above) `tolerance`.
struct Check {
  int criterion = 0;
  std::string check_id;
  std::string target;
  double measured = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // witness: measured must exceed tolerance
  bool pass = false;
};

struct VerifyOptions {
  bool fast = false;
  std::uint64_t seed = 20240611;
};

namespace verify_detail {

inline std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

inline Check below(int c, std::string id, std::string target, double measured, double tol) {
  return {c, std::move(id), std::move(target), measured, tol, false, std::isfinite(measured) && measured < tol};
}
inline Check above(int c, std::string id, std::string target, double measured, double bound) {
  return {c, std::move(id), std::move(target), measured, bound, true, std::isfinite(measured) && measured > bound};
}
inline double rel(double v, double t) { return std::abs(v - t) / std::max(1.0, std::abs(t)); }
inline std::string nm(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

/// Off-centre Gaussian with a small drift, smooth and well inside the grid.
inline WaveField gaussian_probe(const GridSpec& g, const GaugeSpec& gauge, double width = 1.5) {
  auto v = sample(g, [&](double x, double y) {
    const double dx = x - 0.4, dy = y + 0.3;
    const double amp = std::exp(-(dx * dx + dy * dy) / (2.0 * width * width)) /
                       (std::sqrt(std::numbers::pi) * width);
    return std::polar(amp, 0.3 * x - 0.2 * y);
  });
  return WaveField(g, gauge, StateLabel{{}, std::nullopt, false, "gaussian"}, std::move(v));
}

inline double field_norm(const WaveField& f, std::size_t margin) {
  return std::sqrt(integrate_interior(f.grid(), margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(f(ix, iy));
  }));
}

}  // namespace verify_detail

/// Criterion 1: guiding-centre expectations and the Johnson-Lippmann relation.
inline std::vector<Check> verify_guiding_center(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  std::vector<Check> out;
  const std::size_t pts = o.fast ? 384 : 512;
  for (auto [n, m] : {std::pair{0, 0}, std::pair{3, 1}, std::pair{0, -20}, std::pair{20, 20}}) {
    const auto psi = symmetric_state(n, m, p, auto_grid_symmetric(n, m, p, pts));
    const auto r = guiding_center_report(psi, p, {}, {.estimate_error = false});
    const double rc2 = 2.0 * n + 1.0, r2 = 2.0 * n - 2.0 * m + 1.0;
    out.push_back(below(1, "rc2" + nm(n, m), "<r_c^2> = " + fmt("%g", rc2) + ", relative", std::abs(r.rc2.real() - rc2) / rc2, 1e-5));
    out.push_back(below(1, "R2" + nm(n, m), "<R^2> = " + fmt("%g", r2) + ", relative", std::abs(r.r2.real() - r2) / r2, 1e-5));
    out.push_back(below(1, "Lcan" + nm(n, m), "<L_can_z> = " + std::to_string(m) + ", relative", rel(r.l_can.real(), m), 1e-5));
    out.push_back(below(1, "JL" + nm(n, m), "Johnson-Lippmann residual", r.johnson_lippmann_residual, 1e-6));
  }
  return out;
}

/// Criterion 2: |Psi_{20,20}|^2 = |Psi_{0,-20}|^2 pointwise, energies 41 and 1 omega_L.
inline std::vector<Check> verify_radial_identity(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const GridSpec g = auto_grid_symmetric(20, 20, p, o.fast ? 384 : 512);
  const auto a = symmetric_state(20, 20, p, g);
  const auto b = symmetric_state(0, -20, p, g);
  std::vector<Check> out;
  out.push_back(below(2, "density", "max | |Psi_20,20|^2 - |Psi_0,-20|^2 | / peak", max_density_difference(a, b) / peak_density(a), 1e-8));
  const auto h = OperatorSpec::of(OperatorKind::Hamiltonian, GaugeSpec::symmetric(), p);
  out.push_back(below(2, "energy(20,20)", "||H psi - 41 omega_L psi|| / ||psi||", eigen_residual(h, a, 41.0 * p.larmor_frequency()), 1e-4));
  out.push_back(below(2, "energy(0,-20)", "||H psi - omega_L psi|| / ||psi||", eigen_residual(h, b, p.larmor_frequency()), 1e-4));
  return out;
}

/// Criterion 3: [X, Y] = i l_B^2, conserved quantities commute with H for random chi,
/// and P_cons_x, L_cons_z fail to commute.
inline std::vector<Check> verify_commutators(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const GridSpec g = GridSpec::square(10.0, o.fast ? 256 : 384);
  std::mt19937_64 rng(o.seed);
  std::vector<Check> out;
  const auto sym = GaugeSpec::symmetric();
  const auto probe = gaussian_probe(g, sym);
  auto spec = [&](OperatorKind k, const GaugeSpec& gs) { return OperatorSpec::of(k, gs, p); };
  out.push_back(below(3, "[X,Y]", "||[X,Y]psi - i l_B^2 psi|| / ||psi||",
                      commutator_residual(spec(OperatorKind::X_guiding, sym), spec(OperatorKind::Y_guiding, sym), probe,
                                          cplx(0.0, p.magnetic_length_sq())),
                      1e-4));
  double worst_p = 0.0, worst_l = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto chi = random_gauge_function(rng, 3, 1.0, 10.0);
    const auto psi = class_member(probe, chi, p);
    const auto gs = psi.gauge();
    const auto hpsi = apply(spec(OperatorKind::Hamiltonian, gs), psi);
    const double hn = field_norm(hpsi, 2 * hpsi.margin() + 8) / field_norm(psi, 2 * hpsi.margin() + 8);
    worst_p = std::max(worst_p, commutator_residual(spec(OperatorKind::P_cons_x, gs), spec(OperatorKind::Hamiltonian, gs), psi, cplx{}) / hn);
    worst_l = std::max(worst_l, commutator_residual(spec(OperatorKind::L_cons_z, gs), spec(OperatorKind::Hamiltonian, gs), psi, cplx{}) / hn);
  }
  out.push_back(below(3, "[P_cons_x,H]", "max over 5 chi of ||[P_cons_x,H]psi|| / ||H psi||", worst_p, 1e-4));
  out.push_back(below(3, "[L_cons_z,H]", "max over 5 chi of ||[L_cons_z,H]psi|| / ||H psi||", worst_l, 1e-4));
  out.push_back(above(3, "[P_cons_x,L_cons_z]", "||[P_cons_x,L_cons_z]psi|| / ||psi|| (witness)",
                      commutator_residual(spec(OperatorKind::P_cons_x, sym), spec(OperatorKind::L_cons_z, sym), probe, cplx{}),
                      0.1));
  return out;
}

/// Criterion 4: drift velocity and the canonical/gauge current decomposition.
inline std::vector<Check> verify_hall(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const PacketSpec packet{0.1};
  std::vector<Check> out;
  double w_v = 0, w_jy = 0, w_can = 0, w_gauge = 0;
  const std::vector<double> Es = o.fast ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0};
  for (double E : Es) {
    const HallParams hp{p, E};
    for (double kx : {-3.0, 0.0, 3.0}) {
      const auto psi = hall_state(0, kx, hp, packet, auto_grid_hall(0, kx, hp, packet));
      const auto d = drift_report(psi, hp, {}, {.estimate_error = false});
      const double c = p.e() / p.mass();
      w_v = std::max(w_v, std::abs(d.vx - hp.drift_velocity()));
      w_jy = std::max(w_jy, std::abs(d.jy));
      w_can = std::max(w_can, std::abs(d.jx_can - c * kx));
      w_gauge = std::max(w_gauge, std::abs(d.jx_gauge - (-c * kx - p.e() * E / p.B())));
    }
  }
  out.push_back(below(4, "v_x", "max |<v_x> + E/B| over k_x in {-3,0,3}, E grid", w_v, 1e-6));
  out.push_back(below(4, "j_y", "max |<j_y>|", w_jy, 1e-8));
  out.push_back(below(4, "j_can", "max |<j_can_x> - (e/m) k_x|", w_can, 1e-6));
  out.push_back(below(4, "j_gauge", "max |<j_gauge_x> + (e/m) k_x + eE/B|", w_gauge, 1e-6));
  return out;
}

/// Criterion 5: Zeeman splitting of shells 1 and 2.
inline std::vector<Check> verify_zeeman(const VerifyOptions&) {
  using namespace verify_detail;
  const double lambda = 0.1;
  std::vector<Check> out;
  const auto z1 = zeeman_split(1, lambda);
  out.push_back(below(5, "n=1 eigenvalues", "{+lambda, -lambda}", std::max(std::abs(z1.eigenvalues[0] - lambda), std::abs(z1.eigenvalues[1] + lambda)), 1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd plus(2), minus(2);
  plus << s, cplx(0, s);
  minus << s, cplx(0, -s);
  out.push_back(below(5, "n=1 eigenvectors", "(|1,0> +- i|0,1>)/sqrt2 up to phase",
                      std::max(1.0 - std::abs(plus.dot(z1.eigenvectors[0])), 1.0 - std::abs(minus.dot(z1.eigenvectors[1]))) +
                          std::max((z1.eigenvectors[0] - plus).norm(), (z1.eigenvectors[1] - minus).norm()),
                      1e-12));
  const auto z2 = zeeman_split(2, lambda);
  double w = 0.0;
  const double want[3] = {2 * lambda, 0.0, -2 * lambda};
  for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(z2.eigenvalues[i] - want[i]));
  out.push_back(below(5, "n=2 eigenvalues", "{2 lambda, 0, -2 lambda}", w, 1e-12));
  return out;
}

/// Criterion 6: the closed double-sum formula diagonalises L_z and is unitary per shell.
inline std::vector<Check> verify_basis_change(const VerifyOptions&) {
  using namespace verify_detail;
  double worst_eig = 0.0, worst_unit = 0.0, worst_raw = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const auto lz = lz_matrix(n);
    for (int m = -n; m <= n; m += 2) {
      const auto b = basis_change(n, m);
      const auto& v = b.state.coefficients;
      worst_eig = std::max(worst_eig, (lz * v - double(m) * v).norm());
      worst_raw = std::max(worst_raw, std::abs(b.raw_norm - 1.0));
    }
    const auto u = basis_change_matrix(n);
    worst_unit = std::max(worst_unit, (u.adjoint() * u - Eigen::MatrixXcd::Identity(n + 1, n + 1)).norm());
  }
  return {below(6, "eigen", "max ||L_z v - m v|| over n <= 8", worst_eig, 1e-12),
          below(6, "unitary", "max ||U^dag U - 1|| over n <= 8", worst_unit, 1e-12),
          below(6, "raw-norm", "max |raw norm - 1| of the unnormalised formula", worst_raw, 1e-12)};
}

/// Criterion 7: U_0 Psi^(S) = sum_k dk U(k) Psi^(L1)_k, converging under refinement.
inline std::vector<Check> verify_superposition_relation(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const GridSpec g = auto_grid_overlap(p, o.fast ? 320 : 512);
  std::vector<Check> out;
  for (auto [n, m] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{1, -1}, std::pair{2, 0}}) {
    const auto c = superposition_convergence(n, m, p, g, 8.0, {65, 129, 257}, 1e-3);
    out.push_back(below(7, "residual" + nm(n, m), "superposition residual at K=8, N_k=257", c.steps.back().residual, 1e-3));
    double worst_rise = 0.0;
    for (std::size_t i = 1; i < c.steps.size(); ++i)
      worst_rise = std::max(worst_rise, c.steps[i].residual - c.steps[i - 1].residual);
    out.push_back(below(7, "monotone" + nm(n, m), "largest residual increase along N_k = 65, 129, 257", worst_rise, 1e-10));
    out.push_back(above(7, "improves" + nm(n, m), "residual(N_k=65) / residual(N_k=257)",
                        c.steps.front().residual / std::max(c.steps.back().residual, 1e-300), 10.0));
  }
  return out;
}

/// Criterion 8: mechanical expectations agree across gauge classes, conserved ones do not,
/// and everything is chi-invariant within a class.
inline std::vector<Check> verify_class_dichotomy(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const int n = 1, m = 1;
  const double kx = 2.0;
  std::vector<Check> out;
  const auto rep = class_inequality_report(n, m, kx, PacketSpec{0.05}, p, {.seed = o.seed});
  const auto& r = rep.rows;
  out.push_back(below(8, "P_mech_x", "|<P_mech_x>_S - <P_mech_x>_packet|", std::abs(r[0].value - r[1].value), 1e-4));
  out.push_back(below(8, "L_mech_z", "|<L_mech_z>_S - <L_mech_z>_packet|", std::abs(r[2].value - r[3].value), 1e-4));
  out.push_back(below(8, "L_mech_z=2n+1", "|<L_mech_z>_packet - (2n+1)|", std::abs(r[3].value.real() - (2 * n + 1)), 1e-4));
  for (int i : {4, 6}) {
    const double err = r[i].error_estimate + r[i + 1].error_estimate;
    out.push_back(above(8, to_string(r[i].kind) + " gap", "|<.>_S - <.>_packet| / (10 x combined quadrature error)",
                        std::abs(r[i].value - r[i + 1].value) / (10.0 * std::max(err, 1e-300)), 1.0));
  }
  // sigma-halving: the packet value of L_mech_z does not drift away from 2n+1.
  const auto lmech_dev = [&](double sigma) {
    const PacketSpec ps{sigma};
    const auto psi = packet_state(n, kx, ps, p, auto_grid_packet(n, kx, ps, p, kx));
    return std::abs(expectation(OperatorSpec::of(OperatorKind::L_mech_z, psi.gauge(), p), psi, {.estimate_error = false}).real() - (2 * n + 1));
  };
  const double d1 = lmech_dev(0.1), d2 = lmech_dev(0.05);
  out.push_back(below(8, "sigma-halving", "|<L_mech_z> - 3| at sigma 0.05 minus that at 0.1", d2 - d1, 1e-8));
  // within-class chi invariance
  std::mt19937_64 rng(o.seed + 1);
  const GridSpec gs = auto_grid_symmetric(n, m, p, 384);
  const PacketSpec ps{0.1};
  const GridSpec gp = auto_grid_packet(n, kx, ps, p, kx);
  const WaveField s0 = symmetric_state(n, m, p, gs);
  const WaveField w0 = packet_state(n, kx, ps, p, gp);
  const int trials = o.fast ? 2 : 5;
  double worst = 0.0;
  for (OperatorKind k : {OperatorKind::P_mech_x, OperatorKind::L_mech_z, OperatorKind::P_cons_x, OperatorKind::L_cons_z}) {
    for (const WaveField* base : {&s0, &w0}) {
      const double ref = expectation(OperatorSpec::of(k, base->gauge(), p), *base, {.estimate_error = false}).real();
      for (int t = 0; t < trials; ++t) {
        const auto chi = random_gauge_function(rng, 3, 1.0, base->grid().x_max);
        const auto moved = class_member(*base, chi, p);
        const double v = expectation(OperatorSpec::of(k, moved.gauge(), p), moved, {.estimate_error = false}).real();
        worst = std::max(worst, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
      }
    }
  }
  out.push_back(below(8, "chi-invariance", "max relative change of the four expectations under random chi", worst, 1e-8));
  return out;
}

/// Criterion 9: Landau levels stay m-degenerate under Delta B, the oscillator shell splits.
inline std::vector<Check> verify_nonsplitting(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  const double dB = 0.5;
  const auto t = landau_nonsplitting_check(0, {0, -5, -20}, dB, p);
  std::vector<Check> out;
  out.push_back(below(9, "spread", "max - min Landau energy over m in {0,-5,-20}", t.spread, 1e-15));
  const PhysicalParams shifted = p.with_field(p.B() + dB);
  double worst = 0.0;
  for (int m : {0, -5, -20}) {
    const auto psi = symmetric_state(0, m, shifted, auto_grid_symmetric(0, m, shifted, o.fast ? 256 : 384));
    const auto h = OperatorSpec::of(OperatorKind::Hamiltonian, GaugeSpec::symmetric(), shifted);
    worst = std::max(worst, eigen_residual(h, psi, t.rows.front().energy));
  }
  out.push_back(below(9, "grid-residual", "max ||H' psi - omega'_L psi|| over m (B' = B + dB)", worst, 1e-4));
  const auto& z = t.oscillator_contrast;
  out.push_back(below(9, "oscillator-split", "|E_+ - E_- - 2 lambda|, lambda = e dB / 2m",
                      std::abs(z.eigenvalues.front() - z.eigenvalues.back() - 2.0 * z.lambda), 1e-12));
  out.push_back(above(9, "oscillator-splits", "E_+ - E_- for the oscillator shell n=1", z.eigenvalues.front() - z.eigenvalues.back(), 0.0));
  return out;
}

/// Criterion 10: conserved pseudo-OAM for an axially symmetric inhomogeneous field.
inline std::vector<Check> verify_inhomogeneous_oam(const VerifyOptions& o) {
  using namespace verify_detail;
  const PhysicalParams p;
  std::vector<Check> out;
  const GridSpec g = auto_grid_symmetric(1, -1, p, o.fast ? 256 : 384);
  const double r_max = std::hypot(g.x_max, g.y_max) + 1.0;
  const auto constant = RadialFieldProfile::constant(p.B(), r_max);
  const auto psi_sym = symmetric_state(1, -1, p, g);
  const auto psi_rad = psi_sym.retagged(GaugeSpec::radial(constant));
  const double lc = expectation(OperatorSpec::of(OperatorKind::L_cons_z, psi_sym.gauge(), p), psi_sym, {.estimate_error = false}).real();
  const double li = conserved_oam_inhomogeneous(constant, psi_rad, p, {}, {.estimate_error = false}).real();
  out.push_back(below(10, "constant-limit", "|<L_cons_inhomog> - <L_cons_z>| for constant B", std::abs(li - lc), 1e-8));
  const GridSpec gg = GridSpec::square(8.0, o.fast ? 256 : 384);
  const auto gaussian = RadialFieldProfile::gaussian(p.B(), std::hypot(gg.x_max, gg.y_max) + 1.0);
  const GaugeSpec rg = GaugeSpec::radial(gaussian);
  const auto probe = gaussian_probe(gg, rg);
  const double res = commutator_residual(OperatorSpec::inhomogeneous_oam(gaussian, rg, p),
                                         OperatorSpec::of(OperatorKind::Hamiltonian, rg, p), probe, cplx{});
  out.push_back(below(10, "commutator", "||[L_cons_inhomog, H]psi|| / ||psi|| for B(r) = exp(-r^2)", res, 1e-3));
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<std::vector<Check>(const VerifyOptions&)> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "guiding-center expectations", verify_guiding_center},
      {2, "radial/density identity", verify_radial_identity},
      {3, "commutators", verify_commutators},
      {4, "hall drift", verify_hall},
      {5, "zeeman splitting", verify_zeeman},
      {6, "basis-change formula", verify_basis_change},
      {7, "superposition relation", verify_superposition_relation},
      {8, "gauge-class dichotomy", verify_class_dichotomy},
      {9, "landau non-splitting", verify_nonsplitting},
      {10, "inhomogeneous conserved OAM", verify_inhomogeneous_oam},
  };
  return all;
}

inline std::vector<Check> run_verification(const VerifyOptions& o = {}) {
  std::vector<Check> all;
  for (const auto& c : criteria()) {
    auto part = c.run(o);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace landau
