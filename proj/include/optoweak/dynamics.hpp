#pragma once

// Hamiltonians and propagators of the membrane-in-the-middle cavity coupled to
// the external travelling modes, plus the first-order Dyson certificate for
// dropping the Jz part of the radiation-pressure coupling.
//
// Units: hbar = 1, frequencies in units of omega_m by default, times in
// units of 1/omega_m.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "optoweak/hilbert.hpp"
#include "optoweak/modes.hpp"

namespace optoweak {

struct SystemParams {
  double g0 = 1e-3;       // vacuum optomechanical coupling
  double omega_m = 1.0;   // mechanical frequency
  double xi = 101.0;      // photon exchange rate, sqrt2 already absorbed
  double tau = std::numbers::pi;  // interaction time
  double delta = 0.05;    // dark-port imbalance (t - r)/sqrt2
  int n_max = 16;         // mechanical Fock truncation
  std::optional<int> sideband_index;  // xi = (2n+1) omega_m, omega_m tau = pi
  // Use the Kerr phase exactly as printed, (g0/2w)^2 (1 - sin w tau).
  bool paper_literal_kerr = false;

  // Timing preset: xi = (2n+1) omega_m and omega_m tau = pi, so that
  // cos(xi tau) = -1 and the one-photon displacement is maximal.
  static SystemParams with_sideband(int n, double g0, double delta, double omega_m = 1.0, int n_max = 16);
  // g0 = 1e-3, omega_m = 1, xi = 101, omega_m tau = pi, n_max = 16.
  static SystemParams default_preset();

  // Every violated invariant, empty when valid.
  std::vector<std::string> problems() const;
  // Throws Error listing all problems.
  void validate() const;
  // Regime warnings (g0 << omega_m << xi), never errors.
  std::vector<std::string> regime_warnings() const;
  // cos(xi tau) = -1 and omega_m tau = pi within 1e-9.
  bool timing_holds() const;

  MechMode mech() const { return MechMode(n_max); }
};

struct BeamSplitter {
  double r;
  double t;
};

// r = (sqrt(1-d^2) - d)/sqrt2, t = (sqrt(1-d^2) + d)/sqrt2.
BeamSplitter beam_splitter(double delta);

// Kerr phase of the disentangled propagator. The corrected form
// (g0/2w)^2 (w tau - sin w tau) vanishes at tau = 0.
double kerr_phase(double g0, double omega_m, double tau, bool paper_literal = false);

struct DerivedQuantities {
  double scaled_strength;  // phi = g0/omega_m
  cplx mech_displacement;  // (g0/2w)(1 - e^{-i w tau})
  double kerr_phase;
  double r;
  double t;
};

DerivedQuantities derive(const SystemParams& p);

// xi sum_i (a_i^+ b_i + h.c.) + w c^+c - g0 (a1^+a1 - a2^+a2)(c^+ + c)
LinearOp hamiltonian_full_interaction(const SystemParams& p);
// 2 xi Jx + w c^+c - (g0/2) N (c^+ + c)
LinearOp hamiltonian_approx(const SystemParams& p);

// exp[i kerr N^2] exp{N[phi c^+ - phi* c]} exp[-i 2 xi tau Jx] exp[-i w tau c^+c]
LinearOp propagator_analytic(const SystemParams& p);
// exp(-i H_approx tau) by direct spectral exponential.
LinearOp propagator_numeric(const SystemParams& p);

// Bures distance between psi0 evolved for time tau under the full and the
// approximate Hamiltonian.
double approximation_error(const SystemParams& p, const StateVector& psi0);

enum class DysonCoefficient { Abar, Bbar, fbar, gbar };

// Which closed form to evaluate. The printed gbar has sin^2(2 xi tau) in its
// first term where the integral gives sin^2(xi tau); `corrected` uses the
// latter and is what the quadrature reproduces.
enum class ClosedForm { printed, corrected };

std::string_view to_string(DysonCoefficient which);

// Rotating-frame integrands A(t), B(t), f(t), g(t).
cplx dyson_integrand(DysonCoefficient which, const SystemParams& p, double t);
// Time integral over [0, tau] from the closed forms. Throws near the pole
// |2 xi - omega_m| < 1e-6 omega_m.
cplx dyson_coefficient(DysonCoefficient which, const SystemParams& p, double tau,
                       ClosedForm form = ClosedForm::printed);
// Same integral by adaptive Simpson quadrature of dyson_integrand.
cplx dyson_coefficient_quadrature(DysonCoefficient which, const SystemParams& p, double tau);

// Spectral norm of the first-order Dyson term
//   i Jz [c^+ Abar + c Abar* + N fbar] + i Jy [c^+ Bbar + c Bbar* + N gbar]
// on the truncated photon (x) mech space, using the corrected closed forms.
double first_order_dyson_norm(const SystemParams& p, double tau);

}  // namespace optoweak
