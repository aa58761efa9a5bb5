#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the propagator or projection code paths it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Kronecker product by explicit index arithmetic.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// <alpha|beta> for untruncated coherent states.
inline cplx coherent_overlap(cplx alpha, cplx beta) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
}

// Truncated coherent amplitudes summed directly, no renormalization.
inline Eigen::VectorXcd coherent_series(cplx alpha, int n_max) {
  Eigen::VectorXcd v(n_max + 1);
  double log_fact = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    v[n] = std::exp(-0.5 * std::norm(alpha) - 0.5 * log_fact) * std::pow(alpha, n);
  }
  return v;
}

// Squared norm of the dark-port projection at the sideband timing, from the
// coherent overlaps:
//   (1/4)|delta|0> + e^{i kerr} [(t/sqrt2)|-phi> - (r/sqrt2)|phi>]|^2
inline double postselection_probability(double delta, double phi, double kerr = 0.0) {
  const double e1 = std::exp(-0.5 * phi * phi);
  const double e2 = std::exp(-2.0 * phi * phi);
  return 0.25 * (delta * delta + 0.5 + 2.0 * delta * delta * std::cos(kerr) * e1 - (0.5 - delta * delta) * e2);
}

// Same for the bright port t|l1> + r|r2>.
inline double bright_port_probability(double delta, double phi, double kerr = 0.0) {
  const double e1 = std::exp(-0.5 * phi * phi);
  const double e2 = std::exp(-2.0 * phi * phi);
  const double q = 1.0 - delta * delta;
  return 0.125 * (2.0 * q + 1.0 + (1.0 - 2.0 * delta * delta) * e2 + 4.0 * q * std::cos(kerr) * e1);
}

// Wigner function of c0|0> + c1|1> under the (1/pi)-peak convention.
inline double wigner_two_level(cplx c0, cplx c1, double x, double y) {
  const double r2 = x * x + y * y;
  const double bracket = std::norm(c0) + std::norm(c1) * (2.0 * r2 - 1.0) +
                         2.0 * std::numbers::sqrt2 * std::real(std::conj(c0) * c1 * cplx(x, -y));
  return std::exp(-r2) * bracket / std::numbers::pi;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

inline Eigen::VectorXcd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v.normalized();
}

}  // namespace oracle
