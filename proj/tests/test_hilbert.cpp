#include <numbers>
#include <random>

#include "doctest.h"
#include "optoweak/hilbert.hpp"
#include "optoweak/modes.hpp"
#include "oracles.hpp"

using namespace optoweak;

namespace {

LinearOp random_hermitian_op(const CompositeSpace& space, std::mt19937_64& rng) {
  return LinearOp(space, oracle::random_hermitian(static_cast<int>(space.total_dim()), rng)).as_hermitian();
}

}  // namespace

TEST_CASE("composite space bookkeeping") {
  const CompositeSpace s({{"photon", 6}, {"mech", 17}});
  CHECK(s.total_dim() == 102);
  CHECK(s.position("mech") == 1);
  CHECK(s.stride(0) == 17);
  CHECK(s.without("photon") == CompositeSpace::single("mech", 17));
  CHECK_THROWS_AS(CompositeSpace({{"a", 2}, {"a", 3}}), Error);
  CHECK_THROWS_AS(CompositeSpace({{"a", 0}}), Error);
  CHECK_THROWS_AS(s.position("nope"), Error);
}

TEST_CASE("tensor_embed") {
  const CompositeSpace target({{"photon", 2}, {"mech", 3}});

  SUBCASE("identity embeds to identity") {
    const auto id = LinearOp::identity(CompositeSpace::single("photon", 2));
    CHECK(max_abs_diff(tensor_embed(id, target, "photon"), LinearOp::identity(target)) == 0.0);
  }

  SUBCASE("number operator on mech factor of 6 x 17 has trace 816") {
    const CompositeSpace big({{"photon", 6}, {"mech", 17}});
    const auto embedded = tensor_embed(number_operator(17), big, "mech");
    // brute-force oracle: I_6 (x) diag(0..16) by index loops
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(17, 17);
    for (int k = 0; k < 17; ++k) n(k, k) = k;
    const auto expected = oracle::kron(Eigen::MatrixXcd::Identity(6, 6), n);
    CHECK(max_abs_entry(embedded.matrix() - expected) == 0.0);
    CHECK(embedded.matrix().trace().real() == 816.0);
  }

  SUBCASE("acts only on the targeted factor") {
    const auto c = annihilation(3);
    const auto embedded = tensor_embed(c, target, "mech");
    // |photon=1, mech=2> -> sqrt2 |photon=1, mech=1>
    const auto out = embedded * StateVector::basis(target, 1 * 3 + 2);
    CHECK(std::abs(out[1 * 3 + 1] - std::sqrt(2.0)) < 1e-15);
    CHECK(out.norm() == doctest::Approx(std::sqrt(2.0)));
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(tensor_embed(annihilation(3), target, "phonon"), Error);
    CHECK_THROWS_AS(tensor_embed(annihilation(4), target, "mech"), Error);
  }

  SUBCASE("embedded single-factor operators commute") {
    std::mt19937_64 rng(7);
    const auto a = random_hermitian_op(CompositeSpace::single("photon", 2), rng);
    const auto b = random_hermitian_op(CompositeSpace::single("mech", 3), rng);
    const auto comm = commutator(tensor_embed(a, target, "photon"), tensor_embed(b, target, "mech"));
    CHECK(max_abs_entry(comm.matrix()) <= 1e-12);
  }
}

TEST_CASE("inner product") {
  const auto space = CompositeSpace::single("mech", 33);
  const auto e0 = StateVector::basis(space, 0);
  const auto e1 = StateVector::basis(space, 1);
  CHECK(inner(e0, e0) == cplx(1.0));
  CHECK(inner(e0, e1) == cplx(0.0));

  SUBCASE("coherent overlap against the closed form") {
    const MechMode mech(32);
    for (double phi : {0.1, 0.3, 0.5}) {
      const cplx got = inner(coherent_state(phi, mech), coherent_state(-phi, mech));
      CHECK(std::abs(got - std::exp(-2.0 * phi * phi)) < 1e-14);
    }
  }

  SUBCASE("conjugate-linear in the first argument") {
    const cplx s{0.3, -1.2};
    CHECK(std::abs(inner(s * e0, e0) - std::conj(s)) < 1e-15);
    CHECK(std::abs(inner(e0, s * e0) - s) < 1e-15);
  }

  CHECK_THROWS_AS(inner(e0, StateVector::basis(CompositeSpace::single("photon", 33), 0)), Error);
}

TEST_CASE("expm_hermitian") {
  SUBCASE("zero time gives identity") {
    std::mt19937_64 rng(1);
    const auto h = random_hermitian_op(CompositeSpace::single("s", 5), rng);
    CHECK(max_abs_diff(expm_hermitian(h, 0.0), LinearOp::identity(h.space())) < 1e-14);
  }

  SUBCASE("2x2 exchange matrix at t = pi/2") {
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    const LinearOp h(CompositeSpace::single("q", 2), sx, true);
    const auto u = expm_hermitian(h, std::numbers::pi / 2);
    // cos(t) I - i sin(t) sx at t = pi/2
    CHECK(max_abs_entry(u.matrix() - (-kI) * sx) < 1e-12);
  }

  SUBCASE("one-parameter group property on random 8x8") {
    std::mt19937_64 rng(11);
    const auto h = random_hermitian_op(CompositeSpace::single("s", 8), rng);
    const auto lhs = expm_hermitian(h, 0.37) * expm_hermitian(h, 1.21);
    CHECK(max_abs_diff(lhs, expm_hermitian(h, 1.58)) < 1e-10);
  }

  SUBCASE("non-Hermitian input is rejected") {
    const auto c = annihilation(4);
    CHECK_THROWS_AS(expm_hermitian(c, 1.0), Error);
    CHECK_THROWS_AS(c.as_hermitian(), Error);
    CHECK_THROWS_AS(LinearOp(c.space(), c.matrix(), true), Error);
  }
}

TEST_CASE("expectation") {
  const MechMode mech(16);
  const auto x = position_operator(mech);
  CHECK(std::abs(expectation(x, fock_state(0, mech))) < 1e-15);
  CHECK(std::abs(expectation(number_operator(mech.dim()), fock_state(1, mech)) - 1.0) < 1e-15);

  SUBCASE("coherent-state position is 2 Re(alpha)") {
    const MechMode big(32);
    for (double phi : {0.05, 0.3, 1.0}) {
      CHECK(std::abs(expectation(position_operator(big), coherent_state(phi, big)) - 2.0 * phi) < 1e-12);
    }
  }

  SUBCASE("Hermitian expectations are real") {
    std::mt19937_64 rng(3);
    const auto h = random_hermitian_op(CompositeSpace::single("s", 12), rng);
    const StateVector psi(h.space(), oracle::random_unit_vector(12, rng));
    CHECK(std::abs(expectation(h, psi).imag()) < 1e-12);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(expectation(x, cplx(2.0) * fock_state(0, mech)), Error);
    CHECK_THROWS_AS(expectation(x, named_photon_state(PhotonMode::a1)), Error);
  }
}

TEST_CASE("property: propagators preserve norm and reconstruct their generator") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const auto h = random_hermitian_op(CompositeSpace::single("s", static_cast<std::size_t>(n)), rng);
    const double t = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    const auto u = expm_hermitian(h, t);
    CHECK(unitarity_residual(u) < 1e-10);
    const StateVector psi(h.space(), oracle::random_unit_vector(n, rng));
    CHECK(std::abs((u * psi).norm() - 1.0) < 1e-10);
  }
  for (int n : {16, 64, 198, 256}) {
    const auto h = random_hermitian_op(CompositeSpace::single("s", static_cast<std::size_t>(n)), rng);
    CHECK(max_abs_entry(HermitianSpectrum(h).reconstruct() - h.matrix()) < 1e-10);
  }
}

TEST_CASE("contract and populations") {
  const MechMode mech(8);
  const auto joint = kron(named_photon_state(PhotonMode::l1), coherent_state(0.2, mech));
  const auto meter = contract(named_photon_state(PhotonMode::l1), joint, kPhotonLabel);
  CHECK(fidelity(meter, coherent_state(0.2, mech)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(contract(named_photon_state(PhotonMode::r1), joint, kPhotonLabel).norm() == 0.0);
  const auto pops = factor_populations(joint, kPhotonLabel);
  CHECK(pops[2] == doctest::Approx(1.0));
}

TEST_CASE("bures distance is exactly zero for identical states and phase blind") {
  std::mt19937_64 rng(5);
  const StateVector psi(CompositeSpace::single("s", 30), oracle::random_unit_vector(30, rng));
  CHECK(bures_distance(psi, psi) == 0.0);
  CHECK(bures_distance(psi, std::polar(1.0, 0.7) * psi) < 1e-15);
  const auto e0 = StateVector::basis(psi.space(), 0);
  const auto e1 = StateVector::basis(psi.space(), 1);
  CHECK(bures_distance(e0, e1) == doctest::Approx(1.0));
  const auto mixed = cplx(std::cos(0.3)) * e0 + cplx(std::sin(0.3)) * e1;
  CHECK(bures_distance(e0, mixed) == doctest::Approx(std::sin(0.3)).epsilon(1e-14));
}
