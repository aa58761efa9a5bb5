#pragma once

// Pre-selection, interferometer evolution, dark-port post-selection and the
// closed-form observables that go with them: weak values, post-selection
// probabilities, amplification factors and mirror displacements.

#include <optional>
#include <variant>

#include "optoweak/dynamics.hpp"
#include "optoweak/hilbert.hpp"
#include "optoweak/modes.hpp"

namespace optoweak {

// Below this |<f|i>| a weak value is undefined.
inline constexpr double kOrthogonalOverlap = 1e-12;
// Below this squared norm a projection counts as failed post-selection.
inline constexpr double kMinPostSelectionProbability = 1e-300;

// (|r1> + |l2>)/sqrt2 (x) |0>.
StateVector initial_state(const SystemParams& p);
// (|r1> + |l2>)/sqrt2 on the photonic factor alone.
StateVector initial_photonic_state();
// exp(-i 2 xi tau Jx) applied to the photonic input: the state that enters the
// weak value. At cos(xi tau) = -1 it is -(|l1> + |r2>)/sqrt2.
StateVector preselected_state(const SystemParams& p);

// r|l1> - t|r2>, detected at the dark port.
StateVector dark_port_state(double delta);
// t|l1> + r|r2>, the complementary output port.
StateVector bright_port_state(double delta);

enum class EvolutionMethod { analytic_closed_form, propagator };

// Joint photon (x) mech state after the interaction. The closed form is built
// branch by branch from coherent states +-phi(tau) and carries the same Kerr
// phase as the propagator, so the two agree amplitude by amplitude.
StateVector evolved_state(const SystemParams& p, EvolutionMethod method);

// Normalized meter state for dark-port detection at the sideband timing:
//   [delta|0> - (r/sqrt2)|phi> + (t/sqrt2)|-phi>] / norm
StateVector meter_state_closed_form(double delta, double phi, const MechMode& mech);

struct PostSelectionResult {
  StateVector meter_state;
  double probability_exact;
  double probability_formula;  // delta^2 + phi^2/4
  double mean_position_x0;     // <c + c^+> in meter_state
  // Against the closed-form meter state; empty when the sideband timing does
  // not hold.
  std::optional<double> fidelity_vs_closed_form;
};

struct PostSelectionFailure {
  double probability_exact;
};

using PostSelectionOutcome = std::variant<PostSelectionResult, PostSelectionFailure>;

// Projects `state` onto the photonic post-selection state `f`. `p` supplies
// delta and phi for the formula and closed-form comparison columns.
PostSelectionOutcome postselect(const StateVector& state, const StateVector& f, const SystemParams& p);

// <f|op|i> / <f|i>; throws when |<f|i>| < kOrthogonalOverlap.
cplx weak_value(const LinearOp& op, const StateVector& i, const StateVector& f);

// -sqrt(1 - delta^2) / (2 delta)
double weak_value_closed_form(double delta);

struct SideWeakValues {
  double n1;
  double n2;
};

// The leading-order pair (1/2 - 1/4delta, 1/2 + 1/4delta), which sums to the
// weak value of the total photon number.
SideWeakValues side_weak_values(double delta);
// <f|N_i|i>/<f|i> from the matrix elements. N_1 + N_2 counts only the
// interacting (a, b) photons, so these sum to 1/2; their difference is N_w.
SideWeakValues side_weak_values_exact(double delta);

double post_selection_probability_formula(double delta, double phi);

struct Amplification {
  double f;               // -delta sqrt(1 - delta^2) / (2P)
  double mean_q_over_x0;  // 2 phi f
};

Amplification amplification_and_position(double delta, double phi);

// (2 delta|0> - phi sqrt(1-delta^2)|1>), normalized. Requires phi <= 0.1.
StateVector meter_state_first_order(double delta, double phi, const MechMode& mech);

enum class MeasurementRegime { weak, strong };

// weak iff |delta| >= 10 phi.
MeasurementRegime classify_regime(double delta, double phi);
std::string_view to_string(MeasurementRegime regime);

struct WeakValueReport {
  double n_w;
  double n1_w;
  double n2_w;
  double amplification_f;
  MeasurementRegime regime;
};

WeakValueReport weak_value_report(double delta, double phi);

}  // namespace optoweak
