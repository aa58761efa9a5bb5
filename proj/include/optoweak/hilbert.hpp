#pragma once

// Dense complex linear algebra over labeled composite Hilbert spaces.
//
// A CompositeSpace is an ordered list of (label, dimension) factors. The flat
// index of a product basis state follows the Kronecker convention: the first
// factor is the most significant digit.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace optoweak {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// Tolerance for freshly constructed states and Hermitian operators.
inline constexpr double kConstructionTol = 1e-12;
// Tolerance after propagation; absorbs accumulated eigen-solver error.
inline constexpr double kPropagationTol = 1e-10;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Factor {
  std::string label;
  std::size_t dim = 0;

  bool operator==(const Factor&) const = default;
};

class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<Factor> factors);

  static CompositeSpace single(std::string label, std::size_t dim);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t num_factors() const { return factors_.size(); }

  bool has(std::string_view label) const;
  // Position of the factor in the ordering; throws on unknown label.
  std::size_t position(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const;

  // Product of the dimensions of all factors after `position`.
  std::size_t stride(std::size_t position) const;

  // Space with the named factor removed.
  CompositeSpace without(std::string_view label) const;

  std::string describe() const;

  bool operator==(const CompositeSpace& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b);

class StateVector {
 public:
  StateVector(CompositeSpace space, Vector amplitudes);

  static StateVector zero(CompositeSpace space);
  static StateVector basis(CompositeSpace space, std::size_t index);

  const CompositeSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return space_.total_dim(); }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kConstructionTol) const;
  // Throws if the norm vanishes.
  StateVector normalized() const;

  StateVector operator+(const StateVector& rhs) const;
  StateVector operator-(const StateVector& rhs) const;
  friend StateVector operator*(cplx s, const StateVector& v);

 private:
  CompositeSpace space_;
  Vector amplitudes_;
};

class LinearOp {
 public:
  // With `hermitian` set, the matrix is verified to within kConstructionTol.
  LinearOp(CompositeSpace space, Matrix matrix, bool hermitian = false);

  static LinearOp identity(CompositeSpace space);
  static LinearOp zero(CompositeSpace space);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  bool hermitian_hint() const { return hermitian_; }
  std::size_t dim() const { return space_.total_dim(); }
  cplx operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  // max |M - M^dagger| entrywise.
  double hermiticity_residual() const;
  LinearOp adjoint() const;
  // Returns a copy tagged Hermitian; throws if the residual exceeds tol.
  LinearOp as_hermitian(double tol = kConstructionTol) const;

  LinearOp operator+(const LinearOp& rhs) const;
  LinearOp operator-(const LinearOp& rhs) const;
  LinearOp operator*(const LinearOp& rhs) const;
  StateVector operator*(const StateVector& rhs) const;
  friend LinearOp operator*(cplx s, const LinearOp& op);
  friend LinearOp operator*(double s, const LinearOp& op);

 private:
  CompositeSpace space_;
  Matrix matrix_;
  bool hermitian_ = false;
};

double max_abs_entry(const Matrix& m);
// max |A - B| entrywise; spaces must match.
double max_abs_diff(const LinearOp& a, const LinearOp& b);
LinearOp commutator(const LinearOp& a, const LinearOp& b);

LinearOp kron(const LinearOp& a, const LinearOp& b);
StateVector kron(const StateVector& a, const StateVector& b);

// op (acting on the factor `factor_label`) tensored with identities on every
// other factor of `target`, in target's factor order.
LinearOp tensor_embed(const LinearOp& op, const CompositeSpace& target, std::string_view factor_label);

// <a|b>: conjugate-linear in a.
cplx inner(const StateVector& a, const StateVector& b);

// <psi|op|psi>; psi must be normalized to kPropagationTol.
cplx expectation(const LinearOp& op, const StateVector& psi);

// (<bra| (x) I)|joint>: contracts `bra` against the factor `factor_label`.
StateVector contract(const StateVector& bra, const StateVector& joint, std::string_view factor_label);

// Populations of each basis level of one factor, summed over all others.
std::vector<double> factor_populations(const StateVector& state, std::string_view factor_label);

// |<a|b>| for the normalized versions of a and b.
double fidelity(const StateVector& a, const StateVector& b);
// sqrt(1 - |<a|b>|^2), evaluated from the phase-aligned difference so that
// identical states give exactly zero.
double bures_distance(const StateVector& a, const StateVector& b);

// Eigen-decomposition of a Hermitian operator, reusable for many times t.
class HermitianSpectrum {
 public:
  explicit HermitianSpectrum(const LinearOp& h);

  const CompositeSpace& space() const { return space_; }
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }

  // exp(-i h t)
  LinearOp propagator(double t) const;
  StateVector evolve(const StateVector& psi, double t) const;
  // V diag(values) V^dagger, for reconstruction checks.
  Matrix reconstruct() const;

 private:
  CompositeSpace space_;
  Eigen::VectorXd values_;
  Matrix vectors_;
};

// U = exp(-i h t) by spectral decomposition. h must carry the Hermitian hint.
LinearOp expm_hermitian(const LinearOp& h, double t);

// max |U^dagger U - I| entrywise.
double unitarity_residual(const LinearOp& u);

}  // namespace optoweak
