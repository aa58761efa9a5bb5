#include <numbers>
#include <random>

#include "doctest.h"
#include "optoweak/phase_space.hpp"
#include "optoweak/weak_measure.hpp"
#include "oracles.hpp"

using namespace optoweak;

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;
const double kS = 1.0 / std::numbers::sqrt2;

StateVector superposition(cplx c0, cplx c1, const MechMode& mech) {
  return c0 * fock_state(0, mech) + c1 * fock_state(1, mech);
}

GridSpec square(double half_width, std::size_t resolution) {
  return {-half_width, half_width, -half_width, half_width, resolution};
}

StateVector pipeline_meter(double delta, double phi) {
  const auto p = SystemParams::with_sideband(50, phi, delta);
  const auto outcome = postselect(propagator_numeric(p) * initial_state(p), dark_port_state(delta), p);
  REQUIRE(std::holds_alternative<PostSelectionResult>(outcome));
  return std::get<PostSelectionResult>(outcome).meter_state;
}

}  // namespace

TEST_CASE("quadrature operators") {
  const MechMode mech(16);
  const auto comm = commutator(quadrature_x(mech), quadrature_y(mech));
  for (Eigen::Index k = 0; k < 16; ++k) CHECK(std::abs(comm.matrix()(k, k) - kI) < 1e-14);
  CHECK(std::abs(comm.matrix()(16, 16) + 16.0 * kI) < 1e-13);
  const MechMode big(32);
  const auto alpha = cplx(0.4, -0.7);
  const auto coh = coherent_state(alpha, big);
  CHECK(std::abs(expectation(quadrature_x(big), coh) - std::numbers::sqrt2 * alpha.real()) < 1e-12);
  CHECK(std::abs(expectation(quadrature_y(big), coh) - std::numbers::sqrt2 * alpha.imag()) < 1e-12);
}

TEST_CASE("wigner_point") {
  const MechMode mech(16);
  CHECK(std::abs(wigner_point(fock_state(0, mech), 0.0, 0.0) - kInvPi) <= 1e-9);
  CHECK(std::abs(wigner_point(fock_state(1, mech), 0.0, 0.0) + kInvPi) <= 1e-9);
  CHECK(std::abs(wigner_point(superposition(kS, -kS, mech), 0.0, 0.0)) <= 1e-9);

  SUBCASE("two-level states against the closed form") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = oracle::random_unit_vector(2, rng);
      const auto psi = superposition(c[0], c[1], mech);
      const double x = u(rng);
      const double y = u(rng);
      CHECK(std::abs(wigner_point(psi, x, y) - oracle::wigner_two_level(c[0], c[1], x, y)) <= 1e-10);
    }
  }

  SUBCASE("fast evaluator agrees with the direct displaced parity") {
    const MechMode work(40);
    const WignerEvaluator evaluator(work);
    const auto psi = pad_mech_state(coherent_state(cplx(0.5, 0.2), mech), work);
    for (double x : {-2.5, -0.3, 0.0, 1.7}) {
      for (double y : {-1.1, 0.0, 2.2}) {
        CHECK(std::abs(evaluator(psi, x, y) - wigner_point(psi, x, y, work)) <= 1e-12);
      }
    }
    CHECK_THROWS_AS(evaluator(psi, 9.0, 9.0), Error);
  }

  SUBCASE("coherent state is a displaced vacuum") {
    const double amp = 1e-3 * weak_value_closed_form(0.05);
    const auto coh = coherent_state(amp, mech);
    CHECK(std::abs(wigner_point(coh, std::numbers::sqrt2 * amp, 0.0) - kInvPi) <= 1e-9);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(wigner_point(fock_state(0, mech), 5.0, 5.0, MechMode(16)), Error);
    CHECK_THROWS_AS(wigner_point(cplx(2.0) * fock_state(0, mech), 0.0, 0.0), Error);
    CHECK_THROWS_AS(wigner_point(named_photon_state(PhotonMode::a1), 0.0, 0.0), Error);
  }
}

TEST_CASE("wigner grids") {
  const MechMode mech(16);

  SUBCASE("ground state: peak, normalization, purity, marginals") {
    const auto grid = wigner_grid(fock_state(0, mech), square(5.0, 201));
    CHECK(grid.xs.size() == 201);
    CHECK(grid.values.size() == 201u * 201u);
    CHECK(std::abs(grid.at(100, 100) - kInvPi) <= 1e-9);
    CHECK(grid.max() == grid.at(100, 100));
    CHECK(grid.normalization_residual <= 1e-3);
    CHECK(std::abs(grid.purity() - 1.0) <= 2e-3);
    const auto mx = marginal(grid, Axis::x);
    double mass = 0.0;
    for (double v : mx) mass += v * grid.dx();
    CHECK(std::abs(mass - 1.0) <= 1e-3);
    CHECK(std::abs(marginal_mean(grid, Axis::x)) <= 1e-3);
    CHECK(std::abs(marginal_variance(grid, Axis::x) - 0.5) <= 1e-3);
    CHECK(std::abs(marginal_variance(grid, Axis::y) - 0.5) <= 1e-3);
  }

  SUBCASE("weak-regime meter state has no negative part") {
    const auto grid = wigner_grid(pipeline_meter(5e-2, 1e-3), square(5.0, 201));
    CHECK(grid.min() >= -1e-6);
    CHECK(std::abs(grid.max() - kInvPi) <= 1e-3);
    CHECK(grid.normalization_residual <= 1e-3);
  }

  SUBCASE("meter state at delta = phi/2 is non-classical and shifted by one zero-point unit") {
    const auto grid = wigner_grid(pipeline_meter(5e-4, 1e-3), square(6.0, 241));
    CHECK(grid.min() < -0.05);
    CHECK(grid.normalization_residual <= 1e-3);
    CHECK(std::abs(marginal_mean(grid, Axis::x) + kS) <= 2e-3);
  }

  SUBCASE("displacement covariance") {
    const MechMode big(32);
    const auto psi = superposition(0.6, cplx(0.0, -0.8), big);
    // Shift by (0.5, 0.3) = (5, 3) grid steps of 0.1.
    const cplx beta = cplx(0.5, 0.3) / std::numbers::sqrt2;
    const auto shifted = displacement(beta, big) * psi;
    const auto base = wigner_grid(psi, square(5.5, 111));
    const auto moved = wigner_grid(shifted, square(5.5, 111));
    double worst = 0.0;
    for (std::size_t ix = 5; ix < 111; ++ix) {
      for (std::size_t iy = 3; iy < 111; ++iy) {
        worst = std::max(worst, std::abs(moved.at(ix, iy) - base.at(ix - 5, iy - 3)));
      }
    }
    CHECK(worst <= 1e-6);
  }

  SUBCASE("thread count does not change the values") {
    const auto psi = superposition(kS, -kS, mech);
    const auto one = wigner_grid(psi, square(6.0, 61), 1);
    const auto many = wigner_grid(psi, square(6.0, 61), 4);
    CHECK(one.values == many.values);
  }

  SUBCASE("support guard and spec errors") {
    CHECK_THROWS_AS(wigner_grid(fock_state(0, mech), square(3.0, 51)), Error);
    // <X> = -1/sqrt2 needs +-5.41.
    CHECK_THROWS_AS(wigner_grid(superposition(kS, -kS, mech), square(5.0, 51)), Error);
    CHECK_THROWS_AS(wigner_grid(fock_state(0, mech), square(5.0, 1)), Error);
    CHECK_THROWS_AS(wigner_grid(fock_state(0, mech), GridSpec{5.0, -5.0, -5.0, 5.0, 11}), Error);
  }
}
