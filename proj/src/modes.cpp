#include "optoweak/modes.hpp"

#include <cmath>
#include <string>

namespace optoweak {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t travelling_index(PhotonMode mode) {
  switch (mode) {
    case PhotonMode::r1: return 0;
    case PhotonMode::l2: return 1;
    case PhotonMode::l1: return 2;
    case PhotonMode::r2: return 3;
    case PhotonMode::a1: return 4;
    case PhotonMode::a2: return 5;
    default: throw Error("not a travelling-basis mode: " + std::string(to_string(mode)));
  }
}

// Columns are the standing-wave states b1, d1, b2, d2, a1, a2 in travelling
// coordinates.
Matrix standing_columns() {
  Matrix s = Matrix::Zero(6, 6);
  s(0, 0) = kInvSqrt2;  // b1 = (r1 + l1)/sqrt2
  s(2, 0) = kInvSqrt2;
  s(0, 1) = kInvSqrt2;  // d1 = (r1 - l1)/sqrt2
  s(2, 1) = -kInvSqrt2;
  s(3, 2) = kInvSqrt2;  // b2 = (r2 + l2)/sqrt2
  s(1, 2) = kInvSqrt2;
  s(3, 3) = kInvSqrt2;  // d2 = (r2 - l2)/sqrt2
  s(1, 3) = -kInvSqrt2;
  s(4, 4) = 1.0;
  s(5, 5) = 1.0;
  return s;
}

Vector photon_coords(PhotonMode mode) {
  static const Matrix columns = standing_columns();
  switch (mode) {
    case PhotonMode::b1: return columns.col(0);
    case PhotonMode::d1: return columns.col(1);
    case PhotonMode::b2: return columns.col(2);
    case PhotonMode::d2: return columns.col(3);
    default: {
      Vector v = Vector::Zero(6);
      v[static_cast<Eigen::Index>(travelling_index(mode))] = 1.0;
      return v;
    }
  }
}

LinearOp photonic_op(Matrix m, bool hermitian) { return LinearOp(photonic_space(), std::move(m), hermitian); }

}  // namespace

std::string_view to_string(PhotonMode mode) {
  switch (mode) {
    case PhotonMode::r1: return "r1";
    case PhotonMode::l2: return "l2";
    case PhotonMode::l1: return "l1";
    case PhotonMode::r2: return "r2";
    case PhotonMode::a1: return "a1";
    case PhotonMode::a2: return "a2";
    case PhotonMode::b1: return "b1";
    case PhotonMode::d1: return "d1";
    case PhotonMode::b2: return "b2";
    case PhotonMode::d2: return "d2";
  }
  return "?";
}

PhotonMode parse_photon_mode(std::string_view label) {
  for (auto m : kAllPhotonModes) {
    if (to_string(m) == label) return m;
  }
  throw Error("unknown photon mode label '" + std::string(label) + "'");
}

MechMode::MechMode(int n_max) : n_max_(n_max) {
  if (n_max < kMinNMax) {
    throw Error("mechanical truncation n_max must be >= " + std::to_string(kMinNMax) + ", got " +
                std::to_string(n_max));
  }
}

CompositeSpace photonic_space() { return CompositeSpace::single(std::string(kPhotonLabel), kPhotonicDim); }

CompositeSpace joint_space(const MechMode& mech) { return tensor(photonic_space(), mech.space()); }

LinearOp annihilation(std::size_t dim, std::string_view label) {
  if (dim < 2) throw Error("annihilation: dimension must be at least 2");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return LinearOp(CompositeSpace::single(std::string(label), dim), std::move(m));
}

LinearOp creation(std::size_t dim, std::string_view label) { return annihilation(dim, label).adjoint(); }

LinearOp number_operator(std::size_t dim, std::string_view label) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return LinearOp(CompositeSpace::single(std::string(label), dim), std::move(m), true);
}

LinearOp standing_wave_transform(WaveDirection direction) {
  const Matrix s = standing_columns();
  return direction == WaveDirection::to_travelling ? photonic_op(s, false) : photonic_op(s.adjoint(), false);
}

LinearOp standing_view(const LinearOp& photonic_op_in) {
  if (!(photonic_op_in.space() == photonic_space())) throw Error("standing_view: operator is not photonic");
  const Matrix s = standing_columns();
  return LinearOp(photonic_space(), s.adjoint() * photonic_op_in.matrix() * s, photonic_op_in.hermitian_hint());
}

LinearOp photon_transition(PhotonMode to, PhotonMode from) {
  return photonic_op(photon_coords(to) * photon_coords(from).adjoint(), to == from);
}

LinearOp angular_momentum(JComponent which, Arm arm) {
  using P = PhotonMode;
  if (arm == Arm::both) {
    return angular_momentum(which, Arm::one) + angular_momentum(which, Arm::two);
  }
  const bool first = arm == Arm::one;
  const P a = first ? P::a1 : P::a2;
  const P b = first ? P::b1 : P::b2;
  // x^+ y -> |x><y|
  const LinearOp b_dag_a = photon_transition(b, a);  // a b^+
  const LinearOp a_dag_b = photon_transition(a, b);  // a^+ b
  LinearOp result = LinearOp::zero(photonic_space());
  switch (which) {
    case JComponent::x:
      result = 0.5 * (b_dag_a + a_dag_b);
      break;
    case JComponent::y:
      result = first ? (0.5 * kI) * (b_dag_a - a_dag_b) : (0.5 * kI) * (a_dag_b - b_dag_a);
      break;
    case JComponent::z: {
      const LinearOp na = photon_transition(a, a);
      const LinearOp nb = photon_transition(b, b);
      result = first ? 0.5 * (na - nb) : 0.5 * (nb - na);
      break;
    }
  }
  return result.as_hermitian();
}

LinearOp side_number(Arm arm) {
  using P = PhotonMode;
  switch (arm) {
    case Arm::one: return photon_transition(P::a1, P::a1) + photon_transition(P::b1, P::b1);
    case Arm::two: return photon_transition(P::a2, P::a2) + photon_transition(P::b2, P::b2);
    case Arm::both: return side_number(Arm::one) + side_number(Arm::two);
  }
  throw Error("side_number: invalid arm");
}

LinearOp photon_difference() { return (side_number(Arm::one) - side_number(Arm::two)).as_hermitian(); }

LinearOp cavity_difference() {
  return photon_transition(PhotonMode::a1, PhotonMode::a1) - photon_transition(PhotonMode::a2, PhotonMode::a2);
}

StateVector named_photon_state(PhotonMode mode) { return StateVector(photonic_space(), photon_coords(mode)); }

bool within_truncation_guard(cplx alpha, const MechMode& mech) {
  return std::norm(alpha) <= static_cast<double>(mech.n_max()) / 4.0;
}

StateVector fock_state(std::size_t n, const MechMode& mech) {
  if (n >= mech.dim()) throw Error("fock_state: level beyond truncation");
  return StateVector::basis(mech.space(), n);
}

StateVector coherent_state(cplx alpha, const MechMode& mech) {
  if (!within_truncation_guard(alpha, mech)) {
    throw Error("coherent_state: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                " exceeds truncation guard n_max/4 = " + std::to_string(mech.n_max() / 4.0));
  }
  const auto dim = static_cast<Eigen::Index>(mech.dim());
  Vector amps(dim);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < dim; ++n) amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  const double norm = amps.norm();
  if (std::abs(1.0 - norm) > kPropagationTol) {
    throw Error("coherent_state: truncation renormalization " + std::to_string(1.0 - norm) + " exceeds tolerance");
  }
  return StateVector(mech.space(), amps / norm);
}

LinearOp displacement(cplx alpha, const MechMode& mech) {
  if (!within_truncation_guard(alpha, mech)) {
    throw Error("displacement: |alpha|^2 = " + std::to_string(std::norm(alpha)) + " exceeds truncation guard");
  }
  const auto c = annihilation(mech.dim());
  const LinearOp generator = (kI * (alpha * c.adjoint() - std::conj(alpha) * c)).as_hermitian();
  return expm_hermitian(generator, 1.0);
}

LinearOp parity(const MechMode& mech) {
  const auto n = static_cast<Eigen::Index>(mech.dim());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return LinearOp(mech.space(), std::move(m), true);
}

LinearOp position_operator(const MechMode& mech) {
  const auto c = annihilation(mech.dim());
  return (c + c.adjoint()).as_hermitian();
}

}  // namespace optoweak
