#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "landau/overlap.hpp"

using namespace landau;
using Catch::Matchers::WithinAbs;

TEST_CASE("U_00 matches the Gaussian closed form") {
  const PhysicalParams p;
  const GridSpec g = auto_grid_overlap(p, 256);
  for (double k : {-2.0, -0.5, 0.0, 0.8, 3.0}) {
    const cplx u = overlap_coefficient(0, 0, k, p, g);
    const double oracle = std::pow(std::numbers::pi, -0.25) * std::exp(-k * k / 2);
    CHECK(std::abs(u - oracle) < 1e-10);
  }
}

TEST_CASE("overlap tables: Parseval, orthogonality, convergence") {
  const PhysicalParams p;
  const GridSpec g = auto_grid_overlap(p, 256);
  for (auto [n, m] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, -1}, std::pair{3, 1}}) {
    const auto t = overlap_table(n, m, p, g, 8.0, 129, BaseGauge::landau1, false);
    CHECK(t.values.size() == 129);
    CHECK_THAT(t.parseval, WithinAbs(1.0, 1e-8));
    CHECK(superposition_residual(t, p, g) < 1e-8);
  }
  CHECK(std::abs(overlap_coefficient(1, 2, 0, 0.4, p, g)) < 1e-12);
  CHECK(std::abs(overlap_coefficient(0, 1, 1, -0.7, p, g)) < 1e-12);
  CHECK(verify_superposition(1, 0, p, g, 8.0, 129, BaseGauge::landau2) < 1e-8);

  const auto c = superposition_convergence(1, 1, p, g, 8.0, {17, 33, 65, 129}, 1e-8);
  CHECK(c.monotone);
  CHECK_FALSE(c.stagnated);
  CHECK(c.steps.front().residual > c.steps.back().residual);
}

TEST_CASE("overlap input checks") {
  const PhysicalParams p;
  CHECK_THROWS_AS(overlap_coefficient(0, 0, 0.0, p, GridSpec::square(10.0, 128)), WindowTooSmallError);
  const GridSpec g = auto_grid_overlap(p, 128);
  CHECK_THROWS_AS(overlap_coefficient(0, 1, 0.0, p, g), std::invalid_argument);
  CHECK_THROWS_AS(overlap_table(0, 0, p, g, 8.0, 2), std::invalid_argument);
}

TEST_CASE("class report: mechanical equal, conserved unequal") {
  const PhysicalParams p;
  const auto rep = class_inequality_report(0, 0, 10.0, PacketSpec{0.1}, p, {.symmetric_points = 256});
  REQUIRE(rep.rows.size() == 8);
  for (std::size_t i = 0; i < 8; i += 2) {
    const auto k = rep.rows[i].kind;
    CHECK(rep.rows[i].symmetric_class);
    CHECK_FALSE(rep.rows[i + 1].symmetric_class);
    const bool mech = k == OperatorKind::P_mech_x || k == OperatorKind::L_mech_z;
    CHECK(rep.rows[i].relation == (mech ? ClassRelation::equal : ClassRelation::unequal));
  }
  CHECK(to_string(ClassRelation::undecided) == "UNDECIDED");
}
