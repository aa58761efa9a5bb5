#include <algorithm>
#include <numbers>

#include "doctest.h"
#include "optoweak/modes.hpp"
#include "oracles.hpp"

using namespace optoweak;

namespace {

const double kS = 1.0 / std::numbers::sqrt2;

StateVector photon(PhotonMode m) { return named_photon_state(m); }

double dist(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("ladder operators") {
  const MechMode mech(8);
  const auto a = annihilation(mech.dim());
  CHECK((a * fock_state(0, mech)).norm() == 0.0);
  CHECK(dist(a * fock_state(2, mech), cplx(std::sqrt(2.0)) * fock_state(1, mech)) < 1e-15);
  CHECK_THROWS_AS(annihilation(1), Error);

  SUBCASE("truncation artifact sits on the top level only") {
    const auto comm = commutator(a, creation(mech.dim()));
    for (Eigen::Index k = 0; k < 8; ++k) CHECK(std::abs(comm.matrix()(k, k) - 1.0) < 1e-14);
    CHECK(std::abs(comm.matrix()(8, 8) + 8.0) < 1e-14);
    Matrix off = comm.matrix();
    off.diagonal().setZero();
    CHECK(max_abs_entry(off) == 0.0);
  }

  CHECK_THROWS_AS(MechMode(7), Error);
}

TEST_CASE("standing-wave transform") {
  const auto to_standing = standing_wave_transform(WaveDirection::to_standing);
  const auto to_travelling = standing_wave_transform(WaveDirection::to_travelling);

  // Standing coordinates of r1 and l1: b1 at index 0, d1 at index 1.
  const auto r1 = to_standing * photon(PhotonMode::r1);
  CHECK(std::abs(r1[0] - kS) < 1e-15);
  CHECK(std::abs(r1[1] - kS) < 1e-15);
  const auto l1 = to_standing * photon(PhotonMode::l1);
  CHECK(std::abs(l1[0] - kS) < 1e-15);
  CHECK(std::abs(l1[1] + kS) < 1e-15);

  CHECK(max_abs_diff(to_travelling * to_standing, LinearOp::identity(photonic_space())) < 1e-14);
  CHECK(unitarity_residual(to_standing) < 1e-14);

  SUBCASE("standing view of a transition is a unit matrix entry") {
    const auto view = standing_view(photon_transition(PhotonMode::a1, PhotonMode::b1));
    Matrix expected = Matrix::Zero(6, 6);
    expected(4, 0) = 1.0;
    CHECK(max_abs_entry(view.matrix() - expected) < 1e-15);
  }
}

TEST_CASE("named photon states") {
  CHECK(dist(photon(PhotonMode::r1), StateVector::basis(photonic_space(), 0)) == 0.0);
  CHECK(dist(photon(PhotonMode::b1), cplx(kS) * (photon(PhotonMode::r1) + photon(PhotonMode::l1))) < 1e-15);
  CHECK(dist(photon(PhotonMode::d2), cplx(kS) * (photon(PhotonMode::r2) - photon(PhotonMode::l2))) < 1e-15);
  for (auto m : kAllPhotonModes) {
    CHECK(photon(m).is_normalized(1e-14));
    CHECK(parse_photon_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_photon_mode("x3"), Error);
}

TEST_CASE("angular momentum bilinears") {
  const auto jx = angular_momentum(JComponent::x, Arm::both);
  CHECK(std::abs(inner(photon(PhotonMode::a1), jx * photon(PhotonMode::b1)) - 0.5) < 1e-15);
  CHECK(max_abs_entry(commutator(jx, photon_difference()).matrix()) < 1e-14);

  const auto jz1 = angular_momentum(JComponent::z, Arm::one);
  CHECK(dist(jz1 * photon(PhotonMode::a1), cplx(0.5) * photon(PhotonMode::a1)) < 1e-15);

  SUBCASE("each arm closes an su(2) algebra") {
    for (Arm arm : {Arm::one, Arm::two}) {
      const auto x = angular_momentum(JComponent::x, arm);
      const auto y = angular_momentum(JComponent::y, arm);
      const auto z = angular_momentum(JComponent::z, arm);
      CHECK(x.hermitian_hint());
      CHECK(y.hermitian_hint());
      // The reversed orderings of Jy2 and Jz2 flip together, so both arms
      // satisfy [Jx, Jy] = i Jz.
      CHECK(max_abs_diff(commutator(x, y), kI * z) < 1e-14);
    }
  }

  SUBCASE("cavity difference decomposes as N/2 + Jz") {
    const auto jz = angular_momentum(JComponent::z, Arm::both);
    CHECK(max_abs_diff(cavity_difference(), 0.5 * photon_difference() + jz) < 1e-15);
  }
}

TEST_CASE("photon difference operator") {
  const auto n = photon_difference();
  CHECK(dist(n * photon(PhotonMode::a1), photon(PhotonMode::a1)) < 1e-15);
  CHECK((n * photon(PhotonMode::d2)).norm() < 1e-15);
  CHECK((n * photon(PhotonMode::d1)).norm() < 1e-15);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(n.matrix());
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + 6);
  std::sort(ev.begin(), ev.end());
  const std::vector<double> expected = {-1, -1, 0, 0, 1, 1};
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(ev[k] - expected[k]) < 1e-14);

  CHECK(max_abs_diff(side_number(Arm::one) - side_number(Arm::two), n) == 0.0);
}

TEST_CASE("coherent states") {
  const MechMode mech(16);
  CHECK(dist(coherent_state(0.0, mech), fock_state(0, mech)) == 0.0);
  CHECK(std::abs(expectation(number_operator(mech.dim()), coherent_state(0.3, mech)) - 0.09) < 1e-10);

  SUBCASE("agrees with the direct series inside the guard") {
    const MechMode big(32);
    const cplx alpha{0.7, -0.4};
    const auto series = oracle::coherent_series(alpha, 32);
    CHECK(max_abs_entry(coherent_state(alpha, big).amplitudes() - series) < 1e-12);
  }

  SUBCASE("displacement of vacuum matches the series construction") {
    const MechMode big(32);
    const cplx alpha{0.2, 0.1};
    CHECK(dist(displacement(alpha, big) * fock_state(0, big), coherent_state(alpha, big)) < 1e-10);
  }

  SUBCASE("guard") {
    CHECK(within_truncation_guard(2.0, mech));
    CHECK_FALSE(within_truncation_guard(2.01, mech));
    CHECK_THROWS_AS(coherent_state(2.5, mech), Error);
    CHECK_THROWS_AS(displacement(cplx(0.0, 2.5), mech), Error);
  }

  CHECK_THROWS_AS(fock_state(17, mech), Error);
}

TEST_CASE("displacement") {
  const MechMode mech(32);
  const auto id = LinearOp::identity(mech.space());
  CHECK(max_abs_diff(displacement(0.0, mech), id) < 1e-14);
  const cplx alpha{0.4, -0.3};
  CHECK(max_abs_diff(displacement(alpha, mech) * displacement(-alpha, mech), id) < 1e-10);
  CHECK(unitarity_residual(displacement(alpha, mech)) < 1e-10);
  const auto d = displacement(0.3, mech);
  CHECK(std::abs(d.matrix()(0, 0) - std::exp(-0.045)) < 1e-10);

  SUBCASE("matrix elements against the untruncated overlap") {
    const cplx beta{-0.25, 0.15};
    const auto psi = displacement(beta, mech) * coherent_state(alpha, mech);
    // D(beta)|alpha> = exp(i Im(beta alpha*)) |alpha + beta>
    const cplx phase = std::polar(1.0, std::imag(beta * std::conj(alpha)));
    CHECK(std::abs(inner(coherent_state(alpha + beta, mech), psi) - phase) < 1e-10);
  }
}

TEST_CASE("parity") {
  const MechMode mech(8);
  const auto p = parity(mech);
  CHECK(dist(p * fock_state(0, mech), fock_state(0, mech)) == 0.0);
  CHECK(dist(p * fock_state(1, mech), cplx(-1.0) * fock_state(1, mech)) == 0.0);
  CHECK(max_abs_diff(p * p, LinearOp::identity(mech.space())) == 0.0);
  // Parity of a coherent state: <alpha|P|alpha> = exp(-2|alpha|^2).
  const MechMode big(32);
  CHECK(std::abs(expectation(parity(big), coherent_state(0.5, big)) - std::exp(-0.5)) < 1e-12);
}
