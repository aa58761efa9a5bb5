#include "optoweak/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace optoweak {

namespace {

void require_same_space(const CompositeSpace& a, const CompositeSpace& b, const char* what) {
  if (!(a == b)) {
    throw Error(std::string(what) + ": space mismatch (" + a.describe() + " vs " + b.describe() + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CompositeSpace

CompositeSpace::CompositeSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error("CompositeSpace: at least one factor is required");
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw Error("CompositeSpace: factor '" + f.label + "' has zero dimension");
    if (!seen.insert(f.label).second) throw Error("CompositeSpace: duplicate label '" + f.label + "'");
    total_dim_ *= f.dim;
  }
}

CompositeSpace CompositeSpace::single(std::string label, std::size_t dim) {
  return CompositeSpace({Factor{std::move(label), dim}});
}

bool CompositeSpace::has(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.label == label; });
}

std::size_t CompositeSpace::position(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw Error("unknown factor label '" + std::string(label) + "' in " + describe());
}

std::size_t CompositeSpace::dim_of(std::string_view label) const { return factors_[position(label)].dim; }

std::size_t CompositeSpace::stride(std::size_t pos) const {
  std::size_t s = 1;
  for (std::size_t i = pos + 1; i < factors_.size(); ++i) s *= factors_[i].dim;
  return s;
}

CompositeSpace CompositeSpace::without(std::string_view label) const {
  const auto pos = position(label);
  std::vector<Factor> rest;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i != pos) rest.push_back(factors_[i]);
  }
  if (rest.empty()) throw Error("cannot remove the only factor '" + std::string(label) + "'");
  return CompositeSpace(std::move(rest));
}

std::string CompositeSpace::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " (x) ";
    os << factors_[i].label << '[' << factors_[i].dim << ']';
  }
  return os.str();
}

CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b) {
  auto factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return CompositeSpace(std::move(factors));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CompositeSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim()) {
    throw Error("StateVector: amplitude count does not match " + space_.describe());
  }
}

StateVector StateVector::zero(CompositeSpace space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return StateVector(std::move(space), Vector::Zero(n));
}

StateVector StateVector::basis(CompositeSpace space, std::size_t index) {
  if (index >= space.total_dim()) throw Error("StateVector::basis: index out of range");
  auto v = zero(std::move(space));
  v.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  return StateVector(space_, amplitudes_ / n);
}

StateVector StateVector::operator+(const StateVector& rhs) const {
  require_same_space(space_, rhs.space_, "StateVector +");
  return StateVector(space_, amplitudes_ + rhs.amplitudes_);
}

StateVector StateVector::operator-(const StateVector& rhs) const {
  require_same_space(space_, rhs.space_, "StateVector -");
  return StateVector(space_, amplitudes_ - rhs.amplitudes_);
}

StateVector operator*(cplx s, const StateVector& v) { return StateVector(v.space_, s * v.amplitudes_); }

// ---------------------------------------------------------------------------
// LinearOp

LinearOp::LinearOp(CompositeSpace space, Matrix matrix, bool hermitian)
    : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error("LinearOp: matrix shape does not match " + space_.describe());
  }
  if (hermitian_ && hermiticity_residual() > kConstructionTol) {
    throw Error("LinearOp: Hermitian hint set but residual is " + std::to_string(hermiticity_residual()));
  }
}

LinearOp LinearOp::identity(CompositeSpace space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return LinearOp(std::move(space), Matrix::Identity(n, n), true);
}

LinearOp LinearOp::zero(CompositeSpace space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return LinearOp(std::move(space), Matrix::Zero(n, n), true);
}

double LinearOp::hermiticity_residual() const { return max_abs_entry(matrix_ - matrix_.adjoint()); }

LinearOp LinearOp::adjoint() const { return LinearOp(space_, matrix_.adjoint(), hermitian_); }

LinearOp LinearOp::as_hermitian(double tol) const {
  const double r = hermiticity_residual();
  if (r > tol) throw Error("operator is not Hermitian (residual " + std::to_string(r) + ")");
  // Symmetrize so downstream eigen-solvers see an exactly Hermitian matrix.
  Matrix m = 0.5 * (matrix_ + matrix_.adjoint());
  return LinearOp(space_, std::move(m), true);
}

LinearOp LinearOp::operator+(const LinearOp& rhs) const {
  require_same_space(space_, rhs.space_, "LinearOp +");
  return LinearOp(space_, matrix_ + rhs.matrix_, hermitian_ && rhs.hermitian_);
}

LinearOp LinearOp::operator-(const LinearOp& rhs) const {
  require_same_space(space_, rhs.space_, "LinearOp -");
  return LinearOp(space_, matrix_ - rhs.matrix_, hermitian_ && rhs.hermitian_);
}

LinearOp LinearOp::operator*(const LinearOp& rhs) const {
  require_same_space(space_, rhs.space_, "LinearOp *");
  return LinearOp(space_, matrix_ * rhs.matrix_);
}

StateVector LinearOp::operator*(const StateVector& rhs) const {
  require_same_space(space_, rhs.space(), "LinearOp * StateVector");
  return StateVector(space_, matrix_ * rhs.amplitudes());
}

LinearOp operator*(cplx s, const LinearOp& op) {
  return LinearOp(op.space_, s * op.matrix_, op.hermitian_ && s.imag() == 0.0);
}

LinearOp operator*(double s, const LinearOp& op) { return LinearOp(op.space_, s * op.matrix_, op.hermitian_); }

// ---------------------------------------------------------------------------
// Free functions

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const LinearOp& a, const LinearOp& b) {
  require_same_space(a.space(), b.space(), "max_abs_diff");
  return max_abs_entry(a.matrix() - b.matrix());
}

LinearOp commutator(const LinearOp& a, const LinearOp& b) { return a * b - b * a; }

LinearOp kron(const LinearOp& a, const LinearOp& b) {
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    }
  }
  return LinearOp(tensor(a.space(), b.space()), std::move(out), a.hermitian_hint() && b.hermitian_hint());
}

StateVector kron(const StateVector& a, const StateVector& b) {
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  Vector out(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va[i] * vb;
  return StateVector(tensor(a.space(), b.space()), std::move(out));
}

LinearOp tensor_embed(const LinearOp& op, const CompositeSpace& target, std::string_view factor_label) {
  const auto pos = target.position(factor_label);
  if (op.dim() != target.factors()[pos].dim) {
    throw Error("tensor_embed: operator dimension " + std::to_string(op.dim()) + " does not match factor '" +
                std::string(factor_label) + "' of dimension " + std::to_string(target.factors()[pos].dim));
  }
  const auto& factors = target.factors();
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto d = static_cast<Eigen::Index>(factors[i].dim);
    const Matrix piece = (i == pos) ? op.matrix() : Matrix::Identity(d, d);
    Matrix next(m.rows() * piece.rows(), m.cols() * piece.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block(r * piece.rows(), c * piece.cols(), piece.rows(), piece.cols()) = m(r, c) * piece;
      }
    }
    m = std::move(next);
  }
  return LinearOp(target, std::move(m), op.hermitian_hint());
}

cplx inner(const StateVector& a, const StateVector& b) {
  require_same_space(a.space(), b.space(), "inner");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

cplx expectation(const LinearOp& op, const StateVector& psi) {
  require_same_space(op.space(), psi.space(), "expectation");
  if (!psi.is_normalized(kPropagationTol)) {
    throw Error("expectation: state is not normalized (norm " + std::to_string(psi.norm()) + ")");
  }
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

StateVector contract(const StateVector& bra, const StateVector& joint, std::string_view factor_label) {
  const auto& space = joint.space();
  const auto pos = space.position(factor_label);
  const auto d = space.factors()[pos].dim;
  if (bra.dim() != d) throw Error("contract: bra dimension does not match factor '" + std::string(factor_label) + "'");
  const auto inner_stride = space.stride(pos);
  const auto outer = space.total_dim() / (d * inner_stride);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(outer * inner_stride));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t k = 0; k < d; ++k) {
      const cplx w = std::conj(bra[k]);
      if (w == cplx{}) continue;
      for (std::size_t in = 0; in < inner_stride; ++in) {
        out[static_cast<Eigen::Index>(o * inner_stride + in)] += w * joint[o * d * inner_stride + k * inner_stride + in];
      }
    }
  }
  return StateVector(space.without(factor_label), std::move(out));
}

std::vector<double> factor_populations(const StateVector& state, std::string_view factor_label) {
  const auto& space = state.space();
  const auto pos = space.position(factor_label);
  const auto d = space.factors()[pos].dim;
  const auto s = space.stride(pos);
  std::vector<double> pops(d, 0.0);
  for (std::size_t i = 0; i < space.total_dim(); ++i) pops[(i / s) % d] += std::norm(state[i]);
  return pops;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::abs(inner(a.normalized(), b.normalized())));
}

double bures_distance(const StateVector& a, const StateVector& b) {
  const auto na = a.normalized();
  const auto nb = b.normalized();
  const cplx ov = inner(nb, na);
  if (std::abs(ov) == 0.0) return 1.0;
  const cplx phase = ov / std::abs(ov);
  // m = min_theta |a - e^{i theta} b|^2 = 2(1 - |<a|b>|)
  const double m = (na.amplitudes() - phase * nb.amplitudes()).squaredNorm();
  return std::sqrt(std::max(0.0, 0.5 * m * (2.0 - 0.5 * m)));
}

// ---------------------------------------------------------------------------
// Spectral exponential

HermitianSpectrum::HermitianSpectrum(const LinearOp& h) : space_(h.space()) {
  if (!h.hermitian_hint()) throw Error("spectral exponential requires a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigen-solver failed to converge");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

LinearOp HermitianSpectrum::propagator(double t) const {
  Vector phases(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) phases[k] = std::exp(-kI * (values_[k] * t));
  Matrix u = vectors_ * phases.asDiagonal() * vectors_.adjoint();
  return LinearOp(space_, std::move(u));
}

StateVector HermitianSpectrum::evolve(const StateVector& psi, double t) const {
  if (!(psi.space() == space_)) throw Error("HermitianSpectrum::evolve: space mismatch");
  Vector coeffs = vectors_.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < values_.size(); ++k) coeffs[k] *= std::exp(-kI * (values_[k] * t));
  return StateVector(space_, vectors_ * coeffs);
}

Matrix HermitianSpectrum::reconstruct() const {
  return vectors_ * values_.cast<cplx>().asDiagonal() * vectors_.adjoint();
}

LinearOp expm_hermitian(const LinearOp& h, double t) {
  if (!h.hermitian_hint()) throw Error("expm_hermitian: operator is not tagged Hermitian");
  return HermitianSpectrum(h).propagator(t);
}

double unitarity_residual(const LinearOp& u) {
  const auto n = static_cast<Eigen::Index>(u.dim());
  return max_abs_entry(u.matrix().adjoint() * u.matrix() - Matrix::Identity(n, n));
}

}  // namespace optoweak
