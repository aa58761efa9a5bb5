#pragma once

// Wigner functions of mechanical states from the displaced-parity formula
//   W(X, Y) = (1/pi) <psi| D(alpha) P D(alpha)^+ |psi>,  alpha = (X + iY)/sqrt2,
// with quadratures X = (c + c^+)/sqrt2, Y = i(c^+ - c)/sqrt2, [X, Y] = i.
// Under this normalization the vacuum peaks at 1/pi.

#include <cstddef>
#include <vector>

#include "optoweak/hilbert.hpp"
#include "optoweak/modes.hpp"

namespace optoweak {

LinearOp quadrature_x(const MechMode& mech);
LinearOp quadrature_y(const MechMode& mech);

// Working truncation large enough for the displacement guard at |alpha|^2 and
// for a state of the given dimension.
MechMode wigner_working_mode(double max_alpha_sq, std::size_t state_dim);

// Embeds a mechanical state into a larger truncation (zero padding).
StateVector pad_mech_state(const StateVector& state, const MechMode& mech);

// Displaced-parity evaluation with an explicit working truncation. Throws if
// |alpha|^2 exceeds the guard of `work`.
double wigner_point(const StateVector& state, double x, double y, const MechMode& work);
// Chooses the working truncation from |alpha|^2.
double wigner_point(const StateVector& state, double x, double y);

struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  double y_min = -5.0;
  double y_max = 5.0;
  std::size_t resolution = 201;  // points per axis, endpoints included
};

struct WignerGrid {
  GridSpec spec;
  std::vector<double> xs;
  std::vector<double> ys;
  // Row-major, index [ix * ys.size() + iy].
  std::vector<double> values;
  double normalization_residual = 0.0;

  double at(std::size_t ix, std::size_t iy) const { return values[ix * ys.size() + iy]; }
  double dx() const;
  double dy() const;
  double min() const;
  double max() const;
  // Riemann sum of W dX dY.
  double integral() const;
  // Tr(rho^2) = 2 pi * integral of W^2 under [X, Y] = i; 1 for pure states.
  double purity() const;
};

// Fast evaluator reused across a grid: the displacement is factored as
// R(theta) exp(|alpha|(c^+ - c)) R(theta)^+ with one eigendecomposition of
// i(c^+ - c) shared by every point.
class WignerEvaluator {
 public:
  explicit WignerEvaluator(const MechMode& work);

  const MechMode& mode() const { return work_; }
  double operator()(const StateVector& padded_state, double x, double y) const;

 private:
  MechMode work_;
  Eigen::VectorXd values_;
  Matrix vectors_;
};

// Throws unless the grid covers +-(2|<X>| + 4) and +-(2|<Y>| + 4).
// `threads` = 0 uses the hardware concurrency.
WignerGrid wigner_grid(const StateVector& state, const GridSpec& spec = {}, unsigned threads = 0);

enum class Axis { x, y };

// Integrates out the other axis; entry k belongs to xs[k] (Axis::x) or ys[k].
std::vector<double> marginal(const WignerGrid& grid, Axis axis);
// First moment of a marginal.
double marginal_mean(const WignerGrid& grid, Axis axis);
double marginal_variance(const WignerGrid& grid, Axis axis);

}  // namespace optoweak
