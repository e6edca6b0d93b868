#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "landau/eigenstates.hpp"
#include "landau/operators.hpp"

using namespace landau;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ExpectationOptions no_err{.estimate_error = false};

WaveField gaussian(const GridSpec& g, const GaugeSpec& gauge, double x0, double y0, double w, double kx, double ky) {
  auto v = sample(g, [&](double x, double y) {
    const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
    return std::polar(std::exp(-r2 / (2 * w * w)) / (std::sqrt(std::numbers::pi) * w), kx * x + ky * y);
  });
  return WaveField(g, gauge, {}, std::move(v));
}

double ev(OperatorKind k, const WaveField& psi, const PhysicalParams& p, Discretization d = {}) {
  return expectation(OperatorSpec::of(k, psi.gauge(), p, d), psi, no_err).real();
}

double max_abs_diff(const WaveField& a, const WaveField& b, std::size_t margin) {
  double w = 0;
  for (std::size_t iy = margin; iy + margin < a.grid().ny; ++iy)
    for (std::size_t ix = margin; ix + margin < a.grid().nx; ++ix) w = std::max(w, std::abs(a(ix, iy) - b(ix, iy)));
  return w;
}

}  // namespace

TEST_CASE("operators refuse mismatched gauges, coarse grids and plane waves") {
  const PhysicalParams p;
  const auto psi = symmetric_state(0, 0, p, auto_grid_symmetric(0, 0, p, 128));
  CHECK_THROWS_AS(apply(OperatorSpec::of(OperatorKind::P_mech_x, GaugeSpec::landau1(), p), psi), GaugeMismatchError);
  CHECK_NOTHROW(apply(OperatorSpec::of(OperatorKind::P_can_x, GaugeSpec::landau1(), p), psi));
  const auto coarse = symmetric_state(0, 0, p, GridSpec::square(10.0, 64));
  CHECK_THROWS_AS(apply(OperatorSpec::of(OperatorKind::Hamiltonian, coarse.gauge(), p), coarse), GridTooCoarseError);
  const auto r = expectation(OperatorSpec::of(OperatorKind::Rc2, coarse.gauge(), p), coarse);
  CHECK_FALSE(r.warnings.empty());
  const auto pw = landau1_state(0, 0.0, p, auto_grid_landau1(0, 0.0, p, 128, 128));
  CHECK_THROWS_AS(expectation(OperatorSpec::of(OperatorKind::Rc2, pw.gauge(), p), pw), PlaneWaveExpectationError);
  CHECK_THROWS_AS((Discretization{3, true}.validate()), std::invalid_argument);
}

TEST_CASE("operator identities in the first Landau gauge") {
  const PhysicalParams p(1.0, 1.3, 1.0);
  const auto psi = gaussian(GridSpec::square(8.0, 160), GaugeSpec::landau1(), 0.3, -0.2, 1.2, 0.7, 0.1);
  const auto pcons = apply(OperatorSpec::of(OperatorKind::P_cons_x, psi.gauge(), p), psi);
  const auto pcan = apply(OperatorSpec::of(OperatorKind::P_can_x, psi.gauge(), p), psi);
  CHECK(max_abs_diff(pcons, pcan, pcan.margin()) < 1e-12);
  const auto yg = apply(OperatorSpec::of(OperatorKind::Y_guiding, psi.gauge(), p), psi);
  double w = 0;
  for (std::size_t k = 0; k < yg.values().size(); ++k)
    w = std::max(w, std::abs(yg.values()[k] - p.magnetic_length_sq() * pcan.values()[k]));
  CHECK(w < 1e-12);
}

TEST_CASE("guiding-centre expectations for n, |m| <= 6") {
  const PhysicalParams p;
  for (int n = 0; n <= 6; ++n)
    for (int m = -6; m <= n; ++m) {
      if (m > 6) continue;
      const auto psi = symmetric_state(n, m, p, auto_grid_symmetric(n, m, p, 384));
      INFO("n=" << n << " m=" << m);
      CHECK_THAT(ev(OperatorKind::Rc2, psi, p), WithinRel(2.0 * n + 1, 1e-6));
      CHECK_THAT(ev(OperatorKind::R2, psi, p), WithinRel(2.0 * n - 2.0 * m + 1, 1e-6));
    }
}

TEST_CASE("guiding-centre report") {
  const PhysicalParams p;
  auto rep = [&](int n, int m) {
    return guiding_center_report(symmetric_state(n, m, p, auto_grid_symmetric(n, m, p, 512)), p);
  };
  const auto r00 = rep(0, 0);
  CHECK_THAT(r00.rc2.real(), WithinAbs(1.0, 1e-8));
  CHECK_THAT(r00.r2.real(), WithinAbs(1.0, 1e-8));
  CHECK(r00.johnson_lippmann_residual < 1e-6);
  CHECK(r00.rc2.imaginary_part_ok());
  const auto rneg = rep(0, -20);
  CHECK(std::sqrt(rneg.rc2.real()) < std::sqrt(rneg.r2.real()));
  const auto rpos = rep(20, 20);
  CHECK(std::sqrt(rpos.rc2.real()) > std::sqrt(rpos.r2.real()));
  CHECK_THAT(rpos.l_can.real(), WithinAbs(20.0, 20 * 1e-5));
  CHECK(rpos.rc2.error_estimate < 1e-3);
  // the (2, 1) and (0, -20) examples
  CHECK_THAT(rep(2, 1).rc2.real(), WithinRel(5.0, 1e-8));
  CHECK_THAT(rneg.r2.real(), WithinRel(41.0, 1e-8));
}

TEST_CASE("higher orders converge faster") {
  const PhysicalParams p;
  const auto psi = symmetric_state(20, 20, p, auto_grid_symmetric(20, 20, p, 512));
  double prev = 1e300;
  for (int order : {2, 4, 6, 8}) {
    const double err = std::abs(ev(OperatorKind::R2, psi, p, {order, true}) - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-7);
}

TEST_CASE("self-adjoint kinds are Hermitian on interior fields") {
  const PhysicalParams p(1.0, 0.9, 1.2);
  const GridSpec g = GridSpec::square(9.0, 192);
  PolynomialGaugeFunction chi;
  chi.set(2, 1, 0.02).set(0, 2, -0.05);
  const auto gauge = GaugeSpec::symmetric().with_chi(chi);
  const auto a = gaussian(g, gauge, 0.5, -0.4, 1.1, 0.3, -0.6);
  const auto b = gaussian(g, gauge, -0.3, 0.2, 1.3, -0.2, 0.4);
  for (OperatorKind k : {OperatorKind::P_can_x, OperatorKind::P_can_y, OperatorKind::L_can_z, OperatorKind::P_mech_x,
                         OperatorKind::P_mech_y, OperatorKind::L_mech_z, OperatorKind::P_cons_x, OperatorKind::P_cons_y,
                         OperatorKind::L_cons_z, OperatorKind::X_guiding, OperatorKind::Y_guiding, OperatorKind::Rc2,
                         OperatorKind::R2, OperatorKind::Hamiltonian, OperatorKind::Position_r2}) {
    const auto op = OperatorSpec::of(k, gauge, p);
    const cplx lhs = inner_product(a, apply(op, b));
    const cplx rhs = inner_product(apply(op, a), b);
    INFO(to_string(k));
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("mechanical and conserved expectations are invariant within a gauge class") {
  const PhysicalParams p;
  std::mt19937_64 rng(5);
  const GridSpec g = auto_grid_symmetric(2, -1, p, 256);
  const auto psi = symmetric_state(2, -1, p, g);
  const OperatorKind kinds[] = {OperatorKind::P_mech_x, OperatorKind::P_mech_y, OperatorKind::L_mech_z,
                                OperatorKind::P_cons_x, OperatorKind::P_cons_y, OperatorKind::L_cons_z,
                                OperatorKind::X_guiding, OperatorKind::Y_guiding, OperatorKind::Rc2,
                                OperatorKind::R2, OperatorKind::Hamiltonian};
  std::vector<double> ref;
  for (auto k : kinds) ref.push_back(ev(k, psi, p));
  for (int t = 0; t < 5; ++t) {
    const auto moved = class_member(psi, random_gauge_function(rng, 4, 1.0, g.x_max), p);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK_THAT(ev(kinds[i], moved, p), WithinAbs(ref[i], 1e-8 * (1 + std::abs(ref[i]))));
    // covariance of the field itself: Pi psi' = e^{-ie chi} Pi psi
    const auto lhs = apply(OperatorSpec::of(OperatorKind::P_mech_x, moved.gauge(), p), moved);
    const auto rhs = transform_wavefield(apply(OperatorSpec::of(OperatorKind::P_mech_x, psi.gauge(), p), psi),
                                         moved.gauge().chi, p);
    CHECK(max_abs_diff(lhs, rhs, lhs.margin()) < 1e-12);
  }
}

TEST_CASE("the plain scheme is covariant only up to discretisation error") {
  const PhysicalParams p;
  PolynomialGaugeFunction chi;
  chi.set(3, 0, 0.05).set(1, 2, -0.04);
  double prev = 1e300;
  for (std::size_t pts : {96, 192, 384}) {
    const auto psi = symmetric_state(1, 1, p, auto_grid_symmetric(1, 1, p, pts));
    const auto moved = class_member(psi, chi, p);
    const Discretization plain{4, false};
    const double err = std::abs(ev(OperatorKind::L_mech_z, moved, p, plain) - ev(OperatorKind::L_mech_z, psi, p, plain));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev > 0.0);
  CHECK(prev < 1e-4);
}

TEST_CASE("commutators") {
  const PhysicalParams p(1.0, 1.4, 0.9);
  const GridSpec g = GridSpec::square(9.0, 320);
  const auto sym = GaugeSpec::symmetric();
  const auto psi = gaussian(g, sym, 0.4, -0.3, 1.4, 0.2, 0.1);
  auto op = [&](OperatorKind k, const GaugeSpec& gs) { return OperatorSpec::of(k, gs, p); };
  CHECK(commutator_residual(op(OperatorKind::X_guiding, sym), op(OperatorKind::Y_guiding, sym), psi,
                            cplx(0.0, p.magnetic_length_sq())) < 1e-4);
  CHECK(commutator_residual(op(OperatorKind::P_can_x, sym), op(OperatorKind::Position_x, sym), psi, cplx(0.0, -1.0)) < 1e-6);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto moved = class_member(psi, random_gauge_function(rng, 3, 1.0, 9.0), p);
    const auto gs = moved.gauge();
    CHECK(commutator_residual(op(OperatorKind::P_cons_x, gs), op(OperatorKind::Hamiltonian, gs), moved, cplx{}) < 1e-4);
    CHECK(commutator_residual(op(OperatorKind::P_cons_y, gs), op(OperatorKind::Hamiltonian, gs), moved, cplx{}) < 1e-4);
    CHECK(commutator_residual(op(OperatorKind::L_cons_z, gs), op(OperatorKind::Hamiltonian, gs), moved, cplx{}) < 1e-4);
    CHECK(commutator_residual(op(OperatorKind::X_guiding, gs), op(OperatorKind::Hamiltonian, gs), moved, cplx{}) < 1e-4);
  }
  // non-commuting pair, and its value: [P_cons_x, L_cons_z] = -i P_cons_y
  CHECK(commutator_residual(op(OperatorKind::P_cons_x, sym), op(OperatorKind::L_cons_z, sym), psi, cplx{}) > 0.1);
  auto minus_i_py = OperatorSpec::of(OperatorKind::P_cons_y, sym, p);
  const auto a = apply(op(OperatorKind::P_cons_x, sym), apply(op(OperatorKind::L_cons_z, sym), psi));
  const auto b = apply(op(OperatorKind::L_cons_z, sym), apply(op(OperatorKind::P_cons_x, sym), psi));
  const auto c = apply(minus_i_py, psi);
  const std::size_t margin = a.margin();
  const double res = std::sqrt(integrate_interior(g, margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(a(ix, iy) - b(ix, iy) + cplx(0, 1) * c(ix, iy));
  }));
  CHECK(res < 1e-6);
}

TEST_CASE("density and current maps") {
  const PhysicalParams p;
  SECTION("ring state: counter-clockwise outside, clockwise inside") {
    const auto psi = symmetric_state(0, -20, p, auto_grid_symmetric(0, -20, p, 384));
    const auto maps = density_current_maps(psi, p);
    const GridSpec& g = maps.grid;
    const double ring = std::sqrt(40.0);
    auto jphi_at = [&](double r) {
      const double x = r, y = 0.0;
      std::size_t ix = static_cast<std::size_t>(std::lround((x - g.x_min) / g.dx()));
      std::size_t iy = static_cast<std::size_t>(std::lround((y - g.y_min) / g.dy()));
      const std::size_t k = g.index(ix, iy);
      const double gx = g.x(ix), gy = g.y(iy);
      return (-gy * maps.jx[k] + gx * maps.jy[k]) / std::hypot(gx, gy);
    };
    CHECK(jphi_at(ring + 1.5) > 0.0);
    CHECK(jphi_at(ring - 1.5) < 0.0);
  }
  SECTION("landau1 band: leftward above y0, rightward below") {
    const auto psi = landau1_state(0, 5.0, p, auto_grid_landau1(0, 5.0, p, 128, 192));
    const auto maps = density_current_maps(psi, p);
    const GridSpec& g = maps.grid;
    const std::size_t ix = g.nx / 2;
    for (std::size_t iy = maps.margin; iy + maps.margin < g.ny; ++iy) {
      const double y = g.y(iy), jx = maps.jx[g.index(ix, iy)];
      if (maps.density[g.index(ix, iy)] < 1e-12) continue;
      if (y > 5.05) CHECK(jx < 0.0);
      if (y < 4.95) CHECK(jx > 0.0);
    }
  }
  SECTION("maps are unchanged by gauge transformations") {
    std::mt19937_64 rng(17);
    const GridSpec g = auto_grid_symmetric(1, -1, p, 256);
    const auto psi = symmetric_state(1, -1, p, g);
    const auto ref = density_current_maps(psi, p);
    for (int t = 0; t < 3; ++t) {
      const auto moved = class_member(psi, random_gauge_function(rng, 3, 1.0, g.x_max), p);
      const auto m = density_current_maps(moved, p);
      double w = 0;
      for (std::size_t k = 0; k < m.jx.size(); ++k)
        w = std::max({w, std::abs(m.jx[k] - ref.jx[k]), std::abs(m.jy[k] - ref.jy[k]), std::abs(m.density[k] - ref.density[k])});
      CHECK(w < 1e-12);
    }
  }
}

TEST_CASE("conserved OAM for radial fields") {
  const PhysicalParams p;
  const GridSpec g = auto_grid_symmetric(2, 1, p, 256);
  const double rmax = std::hypot(g.x_max, g.y_max) + 1;
  const auto constant = RadialFieldProfile::constant(p.B(), rmax);
  for (auto [n, m] : {std::pair{0, 0}, std::pair{2, 1}, std::pair{1, -1}}) {
    const auto psi = symmetric_state(n, m, p, g);
    const double lc = ev(OperatorKind::L_cons_z, psi, p);
    const double li = conserved_oam_inhomogeneous(constant, psi.retagged(GaugeSpec::radial(constant)), p, {}, no_err).real();
    CHECK_THAT(li, WithinAbs(lc, 1e-8));
    CHECK_THAT(li, WithinAbs(double(m), 1e-6));
  }
  CHECK_THROWS_AS(conserved_oam_inhomogeneous(nullptr, symmetric_state(0, 0, p, g), p), std::invalid_argument);
  // B(r) = exp(-r^2): L_cons commutes with H, the uniform-field L_cons does not.
  const GridSpec gg = GridSpec::square(8.0, 256);
  const auto prof = RadialFieldProfile::gaussian(1.0, std::hypot(8.0, 8.0) + 1);
  const auto rg = GaugeSpec::radial(prof);
  const auto psi = gaussian(gg, rg, 0.6, -0.2, 1.3, 0.3, 0.0);
  const auto h = OperatorSpec::of(OperatorKind::Hamiltonian, rg, p);
  CHECK(commutator_residual(OperatorSpec::inhomogeneous_oam(prof, rg, p), h, psi, cplx{}) < 1e-3);
  CHECK(commutator_residual(OperatorSpec::of(OperatorKind::L_cons_z, rg, p), h, psi, cplx{}) > 1e-2);
}

TEST_CASE("row-parallel application is deterministic") {
  const PhysicalParams p;
  const auto psi = symmetric_state(3, 1, p, auto_grid_symmetric(3, 1, p, 256));
  const auto op = OperatorSpec::of(OperatorKind::Hamiltonian, psi.gauge(), p);
  set_thread_count(1);
  const auto a = apply(op, psi);
  set_thread_count(3);
  const auto b = apply(op, psi);
  set_thread_count(1);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}
