#include "optoweak/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "optoweak/quadrature.hpp"

namespace optoweak {

namespace {

constexpr double kTimingTol = 1e-9;
constexpr int kMaxNMax = 128;

LinearOp on_photon(const LinearOp& op, const MechMode& mech) {
  return tensor_embed(op, joint_space(mech), kPhotonLabel);
}

LinearOp on_mech(const LinearOp& op, const MechMode& mech) { return tensor_embed(op, joint_space(mech), kMechLabel); }

void check_pole(const SystemParams& p) {
  if (p.xi <= 0.0) throw Error("Dyson closed forms require xi > 0");
  if (std::abs(2.0 * p.xi - p.omega_m) < 1e-6 * p.omega_m) {
    throw Error("Dyson closed forms are singular at 2 xi = omega_m");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SystemParams

SystemParams SystemParams::with_sideband(int n, double g0, double delta, double omega_m, int n_max) {
  SystemParams p;
  p.g0 = g0;
  p.omega_m = omega_m;
  p.xi = (2.0 * n + 1.0) * omega_m;
  p.tau = std::numbers::pi / omega_m;
  p.delta = delta;
  p.n_max = n_max;
  p.sideband_index = n;
  return p;
}

SystemParams SystemParams::default_preset() { return with_sideband(50, 1e-3, 0.05); }

std::vector<std::string> SystemParams::problems() const {
  std::vector<std::string> out;
  auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) {
      out.push_back(std::string(name) + " must be finite");
      return false;
    }
    return true;
  };
  if (finite(g0, "g0") && g0 < 0.0) out.push_back("g0 must be >= 0");
  if (finite(omega_m, "omega_m") && omega_m <= 0.0) out.push_back("omega_m must be > 0");
  if (finite(xi, "xi") && xi < 0.0) out.push_back("xi must be >= 0");
  if (finite(tau, "tau") && tau < 0.0) out.push_back("tau must be >= 0");
  if (finite(delta, "delta") && std::abs(delta) > std::numbers::sqrt2 / 2.0 + 1e-15) {
    out.push_back("delta must lie in [-1/sqrt2, 1/sqrt2]");
  }
  if (n_max < MechMode::kMinNMax || n_max > kMaxNMax) {
    out.push_back("n_max must lie in [" + std::to_string(MechMode::kMinNMax) + ", " + std::to_string(kMaxNMax) + "]");
  }
  if (sideband_index) {
    if (*sideband_index < 0) {
      out.push_back("sideband_index must be >= 0");
    } else {
      const double expected_xi = (2.0 * *sideband_index + 1.0) * omega_m;
      if (std::abs(xi - expected_xi) > 1e-12 * std::max(1.0, expected_xi)) {
        out.push_back("sideband_index requires xi = (2n+1) omega_m");
      }
      if (std::abs(omega_m * tau - std::numbers::pi) > 1e-12) {
        out.push_back("sideband_index requires omega_m tau = pi");
      }
    }
  }
  return out;
}

void SystemParams::validate() const {
  const auto issues = problems();
  if (issues.empty()) return;
  std::ostringstream os;
  os << "invalid system parameters:";
  for (const auto& s : issues) os << "\n  - " << s;
  throw Error(os.str());
}

std::vector<std::string> SystemParams::regime_warnings() const {
  std::vector<std::string> out;
  if (g0 > omega_m / 10.0) out.push_back("g0 << omega_m violated (g0 > omega_m/10)");
  if (omega_m > xi / 10.0) out.push_back("omega_m << xi violated (omega_m > xi/10)");
  return out;
}

bool SystemParams::timing_holds() const {
  return std::abs(std::cos(xi * tau) + 1.0) <= kTimingTol && std::abs(omega_m * tau - std::numbers::pi) <= kTimingTol;
}

// ---------------------------------------------------------------------------
// Derived quantities

BeamSplitter beam_splitter(double delta) {
  const double s = std::sqrt(1.0 - delta * delta);
  return {(s - delta) / std::numbers::sqrt2, (s + delta) / std::numbers::sqrt2};
}

double kerr_phase(double g0, double omega_m, double tau, bool paper_literal) {
  const double k = g0 / (2.0 * omega_m);
  const double wt = omega_m * tau;
  return paper_literal ? k * k * (1.0 - std::sin(wt)) : k * k * (wt - std::sin(wt));
}

DerivedQuantities derive(const SystemParams& p) {
  const auto bs = beam_splitter(p.delta);
  const double k = p.g0 / (2.0 * p.omega_m);
  const double wt = p.omega_m * p.tau;
  // 1 - e^{-i w tau}; pinned to exactly 2 at w tau = pi, where sin(pi) would
  // otherwise leave a 1e-16 imaginary residue.
  const bool half_period = std::abs(wt - std::numbers::pi) <= 1e-12;
  const cplx one_minus = half_period ? cplx{2.0, 0.0} : cplx{1.0 - std::cos(wt), std::sin(wt)};
  return {p.g0 / p.omega_m, k * one_minus, kerr_phase(p.g0, p.omega_m, p.tau, p.paper_literal_kerr), bs.r, bs.t};
}

// ---------------------------------------------------------------------------
// Hamiltonians and propagators

LinearOp hamiltonian_full_interaction(const SystemParams& p) {
  p.validate();
  const auto mech = p.mech();
  const auto jx = angular_momentum(JComponent::x, Arm::both);
  const auto x = position_operator(mech);
  const auto h = 2.0 * p.xi * on_photon(jx, mech) + p.omega_m * on_mech(number_operator(mech.dim()), mech) -
                 p.g0 * kron(cavity_difference(), x);
  return h.as_hermitian();
}

LinearOp hamiltonian_approx(const SystemParams& p) {
  p.validate();
  const auto mech = p.mech();
  const auto jx = angular_momentum(JComponent::x, Arm::both);
  const auto x = position_operator(mech);
  const auto h = 2.0 * p.xi * on_photon(jx, mech) + p.omega_m * on_mech(number_operator(mech.dim()), mech) -
                 (0.5 * p.g0) * kron(photon_difference(), x);
  return h.as_hermitian();
}

LinearOp propagator_analytic(const SystemParams& p) {
  p.validate();
  const auto mech = p.mech();
  const auto q = derive(p);
  const auto n_op = photon_difference();
  const auto c = annihilation(mech.dim());

  // exp(i kerr N^2) = exp(-i (N^2) t) with t = -kerr
  const auto kerr = expm_hermitian(on_photon((n_op * n_op).as_hermitian(), mech), -q.kerr_phase);
  // exp{N (phi c^+ - phi* c)} = exp(-i G), G = i N (x) (phi c^+ - phi* c)
  const auto om_generator =
      kron(n_op, kI * (q.mech_displacement * c.adjoint() - std::conj(q.mech_displacement) * c)).as_hermitian();
  const auto u_om = expm_hermitian(om_generator, 1.0);
  const auto u_ex = expm_hermitian(on_photon(angular_momentum(JComponent::x, Arm::both), mech), 2.0 * p.xi * p.tau);
  const auto u_m = expm_hermitian(on_mech(number_operator(mech.dim()), mech), p.omega_m * p.tau);
  return kerr * u_om * u_ex * u_m;
}

LinearOp propagator_numeric(const SystemParams& p) { return expm_hermitian(hamiltonian_approx(p), p.tau); }

double approximation_error(const SystemParams& p, const StateVector& psi0) {
  if (!psi0.is_normalized(kPropagationTol)) throw Error("approximation_error: initial state is not normalized");
  const HermitianSpectrum full(hamiltonian_full_interaction(p));
  const HermitianSpectrum approx(hamiltonian_approx(p));
  return bures_distance(full.evolve(psi0, p.tau), approx.evolve(psi0, p.tau));
}

// ---------------------------------------------------------------------------
// Dyson coefficients

std::string_view to_string(DysonCoefficient which) {
  switch (which) {
    case DysonCoefficient::Abar: return "Abar";
    case DysonCoefficient::Bbar: return "Bbar";
    case DysonCoefficient::fbar: return "fbar";
    case DysonCoefficient::gbar: return "gbar";
  }
  return "?";
}

cplx dyson_integrand(DysonCoefficient which, const SystemParams& p, double t) {
  const double w = p.omega_m;
  const double g0 = p.g0;
  const cplx rot = std::polar(1.0, w * t);
  switch (which) {
    case DysonCoefficient::Abar: return g0 * std::cos(2.0 * p.xi * t) * rot;
    case DysonCoefficient::Bbar: return g0 * std::sin(2.0 * p.xi * t) * rot;
    case DysonCoefficient::fbar: return g0 * g0 / w * std::cos(2.0 * p.xi * t) * (1.0 - std::cos(w * t));
    case DysonCoefficient::gbar: return g0 * g0 / w * std::sin(2.0 * p.xi * t) * (1.0 - std::cos(w * t));
  }
  return {};
}

cplx dyson_coefficient(DysonCoefficient which, const SystemParams& p, double tau, ClosedForm form) {
  check_pole(p);
  const double w = p.omega_m;
  const double k = p.g0 / (2.0 * p.xi);  // g0/2xi
  const double ratio = w / (2.0 * p.xi);  // omega_m/2xi
  const double lorentz = 1.0 / (1.0 - ratio * ratio);
  const double phi = p.g0 / w;  // g0/omega_m
  const double c2 = std::cos(2.0 * p.xi * tau);
  const double s2 = std::sin(2.0 * p.xi * tau);
  const cplx rot = std::polar(1.0, w * tau);

  switch (which) {
    case DysonCoefficient::Abar:
      return -kI * k * ratio * lorentz * (1.0 - c2 * rot) + k * lorentz * s2 * rot;
    case DysonCoefficient::Bbar:
      return k * lorentz * (1.0 - c2 * rot) + kI * k * ratio * lorentz * s2 * rot;
    case DysonCoefficient::fbar:
      return phi * k * s2 - k * phi * lorentz * std::cos(w * tau) * s2 + k * k * lorentz * c2 * std::sin(w * tau);
    case DysonCoefficient::gbar: {
      const double s1 = std::sin(p.xi * tau);
      const double lead = form == ClosedForm::printed ? phi * (p.g0 / p.xi) * s2 * s2 : phi * (p.g0 / p.xi) * s1 * s1;
      return lead - k * phi * lorentz + phi * k * lorentz * std::cos(w * tau) * c2 +
             k * k * lorentz * s2 * std::sin(w * tau);
    }
  }
  return {};
}

cplx dyson_coefficient_quadrature(DysonCoefficient which, const SystemParams& p, double tau) {
  auto integrand = [&](double t) { return dyson_integrand(which, p, t); };
  const auto result = adaptive_simpson(integrand, 0.0, tau, 1e-10, 1'000'000);
  if (!result.converged) throw Error("Dyson quadrature hit the subdivision cap");
  return result.value;
}

double first_order_dyson_norm(const SystemParams& p, double tau) {
  p.validate();
  check_pole(p);
  const auto mech = p.mech();
  const auto c = annihilation(mech.dim());
  const auto cd = c.adjoint();
  const auto jz = angular_momentum(JComponent::z, Arm::both);
  const auto jy = angular_momentum(JComponent::y, Arm::both);
  const auto n_op = photon_difference();
  const auto id_m = LinearOp::identity(mech.space());

  auto coeff = [&](DysonCoefficient w) { return dyson_coefficient(w, p, tau, ClosedForm::corrected); };
  const cplx a = coeff(DysonCoefficient::Abar);
  const cplx b = coeff(DysonCoefficient::Bbar);
  const cplx f = coeff(DysonCoefficient::fbar);
  const cplx g = coeff(DysonCoefficient::gbar);

  const auto term_z = kron(jz, a * cd + std::conj(a) * c) + f * kron(jz * n_op, id_m);
  const auto term_y = kron(jy, b * cd + std::conj(b) * c) + g * kron(jy * n_op, id_m);
  const Matrix u1 = kI * (term_z + term_y).matrix();
  Eigen::JacobiSVD<Matrix> svd(u1);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace optoweak
