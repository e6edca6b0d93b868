#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "landau/eigenstates.hpp"
#include "landau/operators.hpp"

using namespace landau;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Lowest radial states (n_r = 0): R = r^|m| e^{-r^2/4} / sqrt(2^|m| |m|!) for l_B = 1.
double lowest_radial_oracle(int m, double r) {
  const int a = std::abs(m);
  return std::pow(r, a) * std::exp(-r * r / 4) / std::sqrt(std::pow(2.0, a) * std::tgamma(a + 1.0));
}

// Y_1(t) = 2t e^{-t^2/2} / sqrt(2 sqrt(pi)) for l_B = 1.
double y1_oracle(double t) { return 2 * t * std::exp(-t * t / 2) / std::sqrt(2 * std::sqrt(std::numbers::pi)); }

}  // namespace

TEST_CASE("symmetric states: lowest radial functions match the closed form") {
  const PhysicalParams p;
  for (int m : {0, -1, -4, -20})
    for (double r : {0.0, 0.5, 2.0, 6.3, 9.0}) CHECK_THAT(symmetric_radial(0, m, p, r), WithinAbs(lowest_radial_oracle(m, r), 1e-14));
  for (int m : {1, 3, 20})
    for (double r : {0.0, 1.0, 6.3}) CHECK_THAT(symmetric_radial(m, m, p, r), WithinAbs(lowest_radial_oracle(m, r), 1e-14));
}

TEST_CASE("symmetric states: R_{n-m,-m} = R_{n,m}") {
  const PhysicalParams p(1.0, 2.3, 1.0);
  for (int n = 0; n <= 8; ++n)
    for (int m = -6; m <= n; ++m)
      for (double r : {0.2, 1.1, 3.4})
        CHECK(symmetric_radial(n - m, -m, p, r) == symmetric_radial(n, m, p, r));
}

TEST_CASE("symmetric states are orthonormal on their grids") {
  const PhysicalParams p;
  const GridSpec g = auto_grid_symmetric(4, -4, p, 256);
  const std::pair<int, int> labels[] = {{0, 0}, {1, 1}, {1, 0}, {2, -1}, {3, 1}, {4, -4}};
  for (auto [n, m] : labels) {
    const auto a = symmetric_state(n, m, p, g);
    CHECK_THAT(norm_squared(a), WithinAbs(1.0, 1e-10));
    for (auto [n2, m2] : labels) {
      if (n2 == n && m2 == m) continue;
      CHECK(std::abs(inner_product(a, symmetric_state(n2, m2, p, g))) < 1e-10);
    }
  }
}

TEST_CASE("symmetric states solve the Landau problem on the grid") {
  const PhysicalParams p(1.0, 1.5, 0.8);
  for (auto [n, m] : {std::pair{0, 0}, std::pair{2, 1}, std::pair{3, -2}, std::pair{5, 5}}) {
    const auto psi = symmetric_state(n, m, p, auto_grid_symmetric(n, m, p, 384));
    const auto h = OperatorSpec::of(OperatorKind::Hamiltonian, psi.gauge(), p);
    CHECK(eigen_residual(h, psi, (2.0 * n + 1.0) * p.larmor_frequency()) < 1e-6);
    const auto lz = OperatorSpec::of(OperatorKind::L_can_z, psi.gauge(), p);
    CHECK(eigen_residual(lz, psi, double(m)) < 1e-4);
  }
}

TEST_CASE("landau gauge states") {
  const PhysicalParams p;
  CHECK_THAT(oscillator_factor(1, 2.3, 1.0, 1.0), WithinAbs(y1_oracle(1.3), 1e-15));
  const cplx v = landau1_value(1, 0.7, p, 0.4, 1.5);
  CHECK_THAT(std::abs(v - std::polar(y1_oracle(1.5 - 0.7) / std::sqrt(2 * std::numbers::pi), 0.7 * 0.4)), WithinAbs(0.0, 1e-15));
  CHECK(landau2_value(2, 1.1, p, 0.3, -0.8) == landau1_value(2, 1.1, p, -0.8, -0.3));
  // oscillator factor normalisation for a large n
  const double nrm = adaptive_simpson([](double y) { return std::pow(oscillator_factor(30, y, 0.5, 1.3), 2); }, -20, 20, 1e-12);
  CHECK_THAT(nrm, WithinAbs(1.0, 1e-9));

  const auto l1 = landau1_state(2, 0.5, p, auto_grid_landau1(2, 0.5, p, 128, 192));
  CHECK(l1.label().plane_wave_normalized);
  const auto h = OperatorSpec::of(OperatorKind::Hamiltonian, l1.gauge(), p);
  CHECK(eigen_residual(h, l1, 2.5) < 1e-6);
  const auto px = OperatorSpec::of(OperatorKind::P_can_x, l1.gauge(), p);
  CHECK(eigen_residual(px, l1, 0.5) < 1e-8);

  GridSpec g2{-12, 8, -12, 12, 192, 256};
  const auto l2 = landau2_state(1, 2.0, p, g2);
  CHECK(eigen_residual(OperatorSpec::of(OperatorKind::Hamiltonian, l2.gauge(), p), l2, 1.5) < 1e-6);
  CHECK(eigen_residual(OperatorSpec::of(OperatorKind::P_can_y, l2.gauge(), p), l2, 2.0) < 1e-8);
}

TEST_CASE("label and coverage rejections") {
  const PhysicalParams p;
  CHECK_THROWS_AS(symmetric_state(1, 2, p, auto_grid_symmetric(1, 1, p, 64)), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_state(-1, -1, p, auto_grid_symmetric(1, 1, p, 64)), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_state(20, 0, p, GridSpec::square(4.0, 64)), GridCoverageError);
  CHECK_THROWS_AS(landau1_state(0, 20.0, p, GridSpec::square(8.0, 64)), GridCoverageError);
  CHECK_THROWS_AS(landau2_state(0, 20.0, p, GridSpec::square(8.0, 64)), GridCoverageError);
  CHECK_THROWS_AS(packet_state(0, 0.0, PacketSpec{0.1}, p, GridSpec::square(20.0, 64)), GridCoverageError);
  CHECK_THROWS_AS(packet_state(0, 0.0, PacketSpec{0.0}, p, GridSpec::square(20.0, 64)), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::square(4.0, 8).validate(), std::invalid_argument);
}

TEST_CASE("coherent packets are normalised Landau-level states") {
  const PhysicalParams p;
  const int n = 1;
  const double kx = 1.5;
  const PacketSpec ps{0.1};
  const auto g = auto_grid_packet(n, kx, ps, p, kx);
  const auto psi = packet_state(n, kx, ps, p, g);
  CHECK_THAT(norm_squared(psi), WithinAbs(1.0, 1e-8));
  const ExpectationOptions fast{.estimate_error = false};
  CHECK_THAT(expectation(OperatorSpec::of(OperatorKind::Position_y, psi.gauge(), p), psi, fast).real(), WithinAbs(kx, 1e-8));
  CHECK_THAT(expectation(OperatorSpec::of(OperatorKind::P_can_x, psi.gauge(), p), psi, fast).real(), WithinAbs(kx, 1e-7));
  CHECK_THAT(expectation(OperatorSpec::of(OperatorKind::Hamiltonian, psi.gauge(), p), psi, fast).real(), WithinAbs(1.5, 1e-7));
  CHECK_THAT(expectation(OperatorSpec::of(OperatorKind::L_mech_z, psi.gauge(), p), psi, fast).real(), WithinAbs(3.0, 1e-6));
}

TEST_CASE("separable packets carry L_mech = n + 1/2") {
  const PhysicalParams p;
  for (int n : {0, 1, 2}) {
    const PacketSpec ps{0.1, PacketProfile::separable};
    const auto psi = packet_state(n, 2.0, ps, p, auto_grid_packet(n, 2.0, ps, p, 2.0));
    CHECK_THAT(norm_squared(psi), WithinAbs(1.0, 1e-8));
    const auto lm = expectation(OperatorSpec::of(OperatorKind::L_mech_z, psi.gauge(), p), psi, {.estimate_error = false});
    CHECK_THAT(lm.real(), WithinAbs(n + 0.5, 1e-6));
  }
}

TEST_CASE("class members keep labels and move the gauge tag") {
  const PhysicalParams p;
  const auto psi = symmetric_state(1, 0, p, auto_grid_symmetric(1, 0, p, 128));
  PolynomialGaugeFunction chi;
  chi.set(1, 2, 0.01).set(2, 0, -0.03);
  const auto moved = class_member(psi, chi, p);
  CHECK(moved.gauge() == GaugeSpec::symmetric().with_chi(chi));
  CHECK(moved.label().describe() == psi.label().describe());
  CHECK(max_density_difference(psi, moved) < 1e-15);
  // Symmetric -> Landau 1 via chi_between: the tag equals landau1 as a potential.
  const auto to_l1 = class_member(psi, chi_between(BaseGauge::symmetric, BaseGauge::landau1, p), p);
  const Vec2 a = potential_at(to_l1.gauge(), p, 0.3, 0.9);
  const Vec2 b = potential_at(GaugeSpec::landau1(), p, 0.3, 0.9);
  CHECK_THAT(a.x, WithinAbs(b.x, 1e-15));
  CHECK_THAT(a.y, WithinAbs(b.y, 1e-15));
}
