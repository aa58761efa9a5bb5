#include "optoweak/weak_measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace optoweak {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector photon(PhotonMode m) { return named_photon_state(m); }

void require_nonzero_delta(double delta, const char* what) {
  if (delta == 0.0) throw Error(std::string(what) + ": delta must be nonzero");
}

}  // namespace

StateVector initial_photonic_state() {
  return cplx(kInvSqrt2) * (photon(PhotonMode::r1) + photon(PhotonMode::l2));
}

StateVector initial_state(const SystemParams& p) {
  return kron(initial_photonic_state(), fock_state(0, p.mech()));
}

StateVector preselected_state(const SystemParams& p) {
  const auto jx = angular_momentum(JComponent::x, Arm::both);
  return expm_hermitian(jx, 2.0 * p.xi * p.tau) * initial_photonic_state();
}

StateVector dark_port_state(double delta) {
  const auto bs = beam_splitter(delta);
  return cplx(bs.r) * photon(PhotonMode::l1) - cplx(bs.t) * photon(PhotonMode::r2);
}

StateVector bright_port_state(double delta) {
  const auto bs = beam_splitter(delta);
  return cplx(bs.t) * photon(PhotonMode::l1) + cplx(bs.r) * photon(PhotonMode::r2);
}

StateVector evolved_state(const SystemParams& p, EvolutionMethod method) {
  p.validate();
  if (method == EvolutionMethod::propagator) return propagator_analytic(p) * initial_state(p);

  const auto mech = p.mech();
  const auto q = derive(p);
  const auto vac = fock_state(0, mech);
  const auto plus = coherent_state(q.mech_displacement, mech);
  const auto minus = coherent_state(-q.mech_displacement, mech);
  const double c = std::cos(p.xi * p.tau);
  const double s = std::sin(p.xi * p.tau);
  // exp(i kerr N^2) multiplies the interacting (b, a) components; N = 0 on the
  // free d modes, which carry the bare |0>.
  const cplx kerr = std::polar(1.0, q.kerr_phase);
  const double w = 0.5 * kInvSqrt2;  // 1/(2 sqrt2)

  StateVector total = StateVector::zero(joint_space(mech));
  auto add = [&](PhotonMode m, const StateVector& meter) { total = total + kron(photon(m), meter); };
  add(PhotonMode::r1, cplx(w) * (vac + (kerr * c) * plus));
  add(PhotonMode::l2, cplx(w) * (vac + (kerr * c) * minus));
  add(PhotonMode::l1, cplx(-w) * (vac - (kerr * c) * plus));
  add(PhotonMode::r2, cplx(-w) * (vac - (kerr * c) * minus));
  add(PhotonMode::a1, (-0.5 * kI * s * kerr) * plus);
  add(PhotonMode::a2, (-0.5 * kI * s * kerr) * minus);
  return total;
}

StateVector meter_state_closed_form(double delta, double phi, const MechMode& mech) {
  const auto bs = beam_splitter(delta);
  const auto unnormalized = cplx(delta) * fock_state(0, mech) -
                            cplx(bs.r * kInvSqrt2) * coherent_state(phi, mech) +
                            cplx(bs.t * kInvSqrt2) * coherent_state(-phi, mech);
  return unnormalized.normalized();
}

PostSelectionOutcome postselect(const StateVector& state, const StateVector& f, const SystemParams& p) {
  if (!state.is_normalized(kPropagationTol)) throw Error("postselect: joint state is not normalized");
  if (!(f.space() == photonic_space())) throw Error("postselect: post-selected state must be photonic");
  if (!f.is_normalized(kPropagationTol)) throw Error("postselect: post-selected state is not normalized");

  const auto projected = contract(f, state, kPhotonLabel);
  const double probability = projected.amplitudes().squaredNorm();
  if (!(probability >= kMinPostSelectionProbability)) return PostSelectionFailure{probability};

  const double phi = p.g0 / p.omega_m;
  const auto mech = p.mech();
  auto meter = projected.normalized();
  const double mean = expectation(position_operator(mech), meter).real();

  std::optional<double> closed_form_fidelity;
  if (p.timing_holds() && post_selection_probability_formula(p.delta, phi) > 0.0) {
    closed_form_fidelity = fidelity(meter, meter_state_closed_form(p.delta, phi, mech));
  }
  return PostSelectionResult{std::move(meter), probability, post_selection_probability_formula(p.delta, phi), mean,
                             closed_form_fidelity};
}

cplx weak_value(const LinearOp& op, const StateVector& i, const StateVector& f) {
  const cplx overlap = inner(f, i);
  if (std::abs(overlap) < kOrthogonalOverlap) {
    throw Error("weak_value: pre- and post-selected states are orthogonal");
  }
  return inner(f, op * i) / overlap;
}

double weak_value_closed_form(double delta) {
  require_nonzero_delta(delta, "weak_value_closed_form");
  return -std::sqrt(1.0 - delta * delta) / (2.0 * delta);
}

SideWeakValues side_weak_values(double delta) {
  require_nonzero_delta(delta, "side_weak_values");
  return {0.5 - 0.25 / delta, 0.5 + 0.25 / delta};
}

SideWeakValues side_weak_values_exact(double delta) {
  require_nonzero_delta(delta, "side_weak_values_exact");
  const auto i = cplx(-kInvSqrt2) * (photon(PhotonMode::l1) + photon(PhotonMode::r2));
  const auto f = dark_port_state(delta);
  return {weak_value(side_number(Arm::one), i, f).real(), weak_value(side_number(Arm::two), i, f).real()};
}

double post_selection_probability_formula(double delta, double phi) { return delta * delta + 0.25 * phi * phi; }

Amplification amplification_and_position(double delta, double phi) {
  const double p = post_selection_probability_formula(delta, phi);
  if (p <= 0.0) throw Error("amplification_and_position: degenerate post-selection (delta = phi = 0)");
  const double f = -delta * std::sqrt(1.0 - delta * delta) / (2.0 * p);
  return {f, 2.0 * phi * f};
}

StateVector meter_state_first_order(double delta, double phi, const MechMode& mech) {
  if (phi < 0.0 || phi > 0.1) throw Error("meter_state_first_order: requires 0 <= phi <= 0.1");
  if (post_selection_probability_formula(delta, phi) <= 0.0) {
    throw Error("meter_state_first_order: degenerate post-selection (delta = phi = 0)");
  }
  const auto unnormalized = cplx(2.0 * delta) * fock_state(0, mech) -
                            cplx(phi * std::sqrt(1.0 - delta * delta)) * fock_state(1, mech);
  return unnormalized.normalized();
}

MeasurementRegime classify_regime(double delta, double phi) {
  return std::abs(delta) >= 10.0 * phi ? MeasurementRegime::weak : MeasurementRegime::strong;
}

std::string_view to_string(MeasurementRegime regime) {
  return regime == MeasurementRegime::weak ? "weak" : "strong";
}

WeakValueReport weak_value_report(double delta, double phi) {
  const auto side = side_weak_values(delta);
  return {weak_value_closed_form(delta), side.n1, side.n2, amplification_and_position(delta, phi).f,
          classify_regime(delta, phi)};
}

}  // namespace optoweak
