#pragma once

// Mode operators and special states for the single-photon interferometer and
// the mechanical oscillator.
//
// The photonic factor is the six-dimensional single-excitation sector. Its
// canonical coordinates are the travelling basis
//     [r1, l2, l1, r2, a1, a2]
// and the standing-wave basis is
//     [b1, d1, b2, d2, a1, a2],   b = (r + l)/sqrt2,  d = (r - l)/sqrt2.
// Every photonic operator returned here is expressed in travelling
// coordinates unless a standing-wave view is asked for explicitly.

#include <array>
#include <string_view>

#include "optoweak/hilbert.hpp"

namespace optoweak {

inline constexpr std::size_t kPhotonicDim = 6;
inline constexpr std::string_view kPhotonLabel = "photon";
inline constexpr std::string_view kMechLabel = "mech";

enum class PhotonMode { r1, l2, l1, r2, a1, a2, b1, d1, b2, d2 };
enum class Convention { travelling, standing };

inline constexpr std::array kAllPhotonModes = {PhotonMode::r1, PhotonMode::l2, PhotonMode::l1, PhotonMode::r2,
                                               PhotonMode::a1, PhotonMode::a2, PhotonMode::b1, PhotonMode::d1,
                                               PhotonMode::b2, PhotonMode::d2};
inline constexpr std::array kTravellingOrder = {PhotonMode::r1, PhotonMode::l2, PhotonMode::l1,
                                                PhotonMode::r2, PhotonMode::a1, PhotonMode::a2};
inline constexpr std::array kStandingOrder = {PhotonMode::b1, PhotonMode::d1, PhotonMode::b2,
                                              PhotonMode::d2, PhotonMode::a1, PhotonMode::a2};

std::string_view to_string(PhotonMode mode);
// Throws on an unknown label.
PhotonMode parse_photon_mode(std::string_view label);

// Fock truncation of the mechanical mode.
class MechMode {
 public:
  static constexpr int kMinNMax = 8;

  explicit MechMode(int n_max);

  int n_max() const { return n_max_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_max_) + 1; }
  CompositeSpace space() const { return CompositeSpace::single(std::string(kMechLabel), dim()); }

 private:
  int n_max_;
};

CompositeSpace photonic_space();
// photon (x) mech
CompositeSpace joint_space(const MechMode& mech);

// Ladder operators on a single factor labeled `label`.
LinearOp annihilation(std::size_t dim, std::string_view label = kMechLabel);
LinearOp creation(std::size_t dim, std::string_view label = kMechLabel);
LinearOp number_operator(std::size_t dim, std::string_view label = kMechLabel);

enum class WaveDirection { to_standing, to_travelling };

// Coordinate change on the photonic factor. to_standing maps travelling
// coordinates to standing coordinates; to_travelling is its inverse.
LinearOp standing_wave_transform(WaveDirection direction);

// Re-expresses a photonic operator given in travelling coordinates in
// standing-wave coordinates.
LinearOp standing_view(const LinearOp& photonic_op);

// x^dagger y restricted to one excitation: |x><y|.
LinearOp photon_transition(PhotonMode to, PhotonMode from);

enum class JComponent { x, y, z };
enum class Arm { one, two, both };

// Cavity/standing-mode bilinears (hbar = 1):
//   Jx_i = (a_i b_i^+ + a_i^+ b_i)/2
//   Jy_1 = i(a_1 b_1^+ - a_1^+ b_1)/2,  Jy_2 = i(a_2^+ b_2 - a_2 b_2^+)/2
//   Jz_1 = (a_1^+ a_1 - b_1^+ b_1)/2,   Jz_2 = (b_2^+ b_2 - a_2^+ a_2)/2
LinearOp angular_momentum(JComponent which, Arm arm);

// N_i = a_i^+ a_i + b_i^+ b_i, the interacting photons on one side.
LinearOp side_number(Arm arm);
// N = N_1 - N_2.
LinearOp photon_difference();
// a1^+a1 - a2^+a2, the cavity imbalance that drives the membrane.
LinearOp cavity_difference();

// Unit single-photon state in canonical (travelling) coordinates.
StateVector named_photon_state(PhotonMode mode);

// Truncation guard for coherent amplitudes: |alpha|^2 <= n_max / 4.
bool within_truncation_guard(cplx alpha, const MechMode& mech);

StateVector fock_state(std::size_t n, const MechMode& mech);
// e^{-|a|^2/2} a^n / sqrt(n!), renormalized. Throws when the guard fails or the
// renormalization correction exceeds kPropagationTol.
StateVector coherent_state(cplx alpha, const MechMode& mech);
// exp(alpha c^+ - alpha* c) by spectral exponential of the Hermitian generator
// i(alpha c^+ - alpha* c).
LinearOp displacement(cplx alpha, const MechMode& mech);
// diag((-1)^n)
LinearOp parity(const MechMode& mech);
// c + c^+, the position in units of the zero-point fluctuation.
LinearOp position_operator(const MechMode& mech);

}  // namespace optoweak
