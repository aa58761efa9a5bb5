#include "optoweak/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "optoweak/parallel.hpp"

namespace optoweak {

namespace {

constexpr int kMinWorkingNMax = 32;

cplx alpha_of(double x, double y) { return cplx(x, y) / std::numbers::sqrt2; }

void require_mech_state(const StateVector& state, const char* what) {
  const auto& f = state.space().factors();
  if (f.size() != 1 || f.front().label != kMechLabel) {
    throw Error(std::string(what) + ": expected a mechanical state");
  }
  if (!state.is_normalized(kPropagationTol)) throw Error(std::string(what) + ": state is not normalized");
}

}  // namespace

LinearOp quadrature_x(const MechMode& mech) {
  const auto c = annihilation(mech.dim());
  return ((1.0 / std::numbers::sqrt2) * (c + c.adjoint())).as_hermitian();
}

LinearOp quadrature_y(const MechMode& mech) {
  const auto c = annihilation(mech.dim());
  return ((kI * (1.0 / std::numbers::sqrt2)) * (c.adjoint() - c)).as_hermitian();
}

MechMode wigner_working_mode(double max_alpha_sq, std::size_t state_dim) {
  const int from_guard = static_cast<int>(std::ceil(4.0 * max_alpha_sq));
  const int from_state = static_cast<int>(state_dim) - 1;
  return MechMode(std::max({kMinWorkingNMax, from_guard, from_state}));
}

StateVector pad_mech_state(const StateVector& state, const MechMode& mech) {
  if (state.dim() > mech.dim()) throw Error("pad_mech_state: target truncation is smaller than the state");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(mech.dim()));
  v.head(static_cast<Eigen::Index>(state.dim())) = state.amplitudes();
  return StateVector(mech.space(), std::move(v));
}

double wigner_point(const StateVector& state, double x, double y, const MechMode& work) {
  require_mech_state(state, "wigner_point");
  const cplx alpha = alpha_of(x, y);
  if (!within_truncation_guard(alpha, work)) {
    throw Error("wigner_point: |alpha|^2 = " + std::to_string(std::norm(alpha)) + " exceeds the truncation guard");
  }
  const auto padded = pad_mech_state(state, work);
  const auto shifted = displacement(alpha, work).adjoint() * padded;
  return expectation(parity(work), shifted).real() / std::numbers::pi;
}

double wigner_point(const StateVector& state, double x, double y) {
  return wigner_point(state, x, y, wigner_working_mode(std::norm(alpha_of(x, y)), state.dim()));
}

// ---------------------------------------------------------------------------
// WignerEvaluator

WignerEvaluator::WignerEvaluator(const MechMode& work) : work_(work) {
  const auto c = annihilation(work.dim());
  const HermitianSpectrum spectrum((kI * (c.adjoint() - c)).as_hermitian());
  values_ = spectrum.eigenvalues();
  vectors_ = spectrum.eigenvectors();
}

double WignerEvaluator::operator()(const StateVector& padded_state, double x, double y) const {
  const cplx alpha = alpha_of(x, y);
  if (!within_truncation_guard(alpha, work_)) throw Error("WignerEvaluator: point outside the truncation guard");
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  const auto n = values_.size();

  // D(alpha)^+ = R exp(-r (c^+ - c)) R^+,  R = exp(i theta c^+c),
  // and c^+ - c = -i G with G = i(c^+ - c).
  Vector q(n);
  for (Eigen::Index k = 0; k < n; ++k) q[k] = std::polar(1.0, -theta * static_cast<double>(k)) * padded_state[k];
  Vector coeffs = vectors_.adjoint() * q;
  for (Eigen::Index k = 0; k < n; ++k) coeffs[k] *= std::polar(1.0, r * values_[k]);
  q = vectors_ * coeffs;
  // R only rephases, so it drops out of the parity expectation.
  double parity_sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) parity_sum += (k % 2 == 0 ? 1.0 : -1.0) * std::norm(q[k]);
  return parity_sum / std::numbers::pi;
}

// ---------------------------------------------------------------------------
// Grids

double WignerGrid::dx() const { return xs.size() > 1 ? xs[1] - xs[0] : 0.0; }
double WignerGrid::dy() const { return ys.size() > 1 ? ys[1] - ys[0] : 0.0; }
double WignerGrid::min() const { return *std::min_element(values.begin(), values.end()); }
double WignerGrid::max() const { return *std::max_element(values.begin(), values.end()); }

double WignerGrid::integral() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * dx() * dy();
}

double WignerGrid::purity() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return 2.0 * std::numbers::pi * sum * dx() * dy();
}

WignerGrid wigner_grid(const StateVector& state, const GridSpec& spec, unsigned threads) {
  require_mech_state(state, "wigner_grid");
  if (spec.resolution < 2) throw Error("wigner_grid: resolution must be at least 2");
  if (!(spec.x_min < spec.x_max) || !(spec.y_min < spec.y_max)) throw Error("wigner_grid: empty range");

  const MechMode own(static_cast<int>(state.dim()) - 1);
  const double mean_x = expectation(quadrature_x(own), state).real();
  const double mean_y = expectation(quadrature_y(own), state).real();
  const double need_x = 2.0 * std::abs(mean_x) + 4.0;
  const double need_y = 2.0 * std::abs(mean_y) + 4.0;
  if (spec.x_min > -need_x || spec.x_max < need_x || spec.y_min > -need_y || spec.y_max < need_y) {
    throw Error("wigner_grid: grid must cover X in +-" + std::to_string(need_x) + " and Y in +-" +
                std::to_string(need_y));
  }

  WignerGrid grid;
  grid.spec = spec;
  const auto n = spec.resolution;
  grid.xs.resize(n);
  grid.ys.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(n - 1);
    grid.xs[k] = spec.x_min + u * (spec.x_max - spec.x_min);
    grid.ys[k] = spec.y_min + u * (spec.y_max - spec.y_min);
  }

  double max_alpha_sq = 0.0;
  for (double x : {spec.x_min, spec.x_max}) {
    for (double y : {spec.y_min, spec.y_max}) max_alpha_sq = std::max(max_alpha_sq, std::norm(alpha_of(x, y)));
  }
  const WignerEvaluator evaluator(wigner_working_mode(max_alpha_sq, state.dim()));
  const auto padded = pad_mech_state(state, evaluator.mode());

  grid.values.assign(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t ix) {
    for (std::size_t iy = 0; iy < n; ++iy) grid.values[ix * n + iy] = evaluator(padded, grid.xs[ix], grid.ys[iy]);
  });
  grid.normalization_residual = std::abs(grid.integral() - 1.0);
  return grid;
}

std::vector<double> marginal(const WignerGrid& grid, Axis axis) {
  const auto nx = grid.xs.size();
  const auto ny = grid.ys.size();
  std::vector<double> out(axis == Axis::x ? nx : ny, 0.0);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double w = grid.at(ix, iy);
      if (axis == Axis::x) {
        out[ix] += w * grid.dy();
      } else {
        out[iy] += w * grid.dx();
      }
    }
  }
  return out;
}

namespace {

double moment(const WignerGrid& grid, Axis axis, int order, double shift) {
  const auto m = marginal(grid, axis);
  const auto& coords = axis == Axis::x ? grid.xs : grid.ys;
  const double step = axis == Axis::x ? grid.dx() : grid.dy();
  double mass = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    mass += m[k] * step;
    acc += std::pow(coords[k] - shift, order) * m[k] * step;
  }
  return acc / mass;
}

}  // namespace

double marginal_mean(const WignerGrid& grid, Axis axis) { return moment(grid, axis, 1, 0.0); }

double marginal_variance(const WignerGrid& grid, Axis axis) {
  return moment(grid, axis, 2, marginal_mean(grid, axis));
}

}  // namespace optoweak
