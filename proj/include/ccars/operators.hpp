#pragma once

// Small dense operator helpers shared by the Hamiltonian builders, the
// propagator and the dressed-state analysis. Everything is templated on the
// Eigen expression type so fixed-size 2x2 / 4x4 matrices stay on the stack.

#include <Eigen/Dense>

#include <complex>

namespace ccars {

template <typename Scalar, int N>
using Operator = Eigen::Matrix<std::complex<Scalar>, N, N>;

using Operator2 = Operator<double, 2>;
using Operator4 = Operator<double, 4>;

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

/// Largest entry of |M - M^dagger|.
template <typename Derived>
typename Derived::RealScalar hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Tr(rho^2) for a Hermitian rho, computed as the squared Frobenius norm.
template <typename Derived>
typename Derived::RealScalar purity(const Eigen::MatrixBase<Derived>& rho) {
  return rho.squaredNorm();
}

template <typename Derived>
typename Derived::RealScalar real_trace(const Eigen::MatrixBase<Derived>& m) {
  return std::real(m.trace());
}

/// exp(-i H h) for Hermitian H via its eigendecomposition.
template <typename Scalar, int N>
Operator<Scalar, N> unitary_step(const Operator<Scalar, N>& h_mat, Scalar h) {
  Eigen::SelfAdjointEigenSolver<Operator<Scalar, N>> es(h_mat);
  const auto& v = es.eigenvectors();
  Eigen::Matrix<std::complex<Scalar>, N, 1> phases(h_mat.rows());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    const Scalar a = -es.eigenvalues()(k) * h;
    phases(k) = std::complex<Scalar>(std::cos(a), std::sin(a));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

/// Closed form for the 2x2 case: write H = a0 I + a.sigma, then
/// exp(-i H h) = exp(-i a0 h) [cos(|a| h) I - i sin(|a| h) (a.sigma)/|a|].
/// The global phase is dropped since only U rho U^dagger is ever formed.
template <typename Scalar>
Operator<Scalar, 2> unitary_step(const Operator<Scalar, 2>& h_mat, Scalar h) {
  using C = std::complex<Scalar>;
  const Scalar az = Scalar(0.5) * (std::real(h_mat(0, 0)) - std::real(h_mat(1, 1)));
  const Scalar ax = std::real(h_mat(0, 1));
  const Scalar ay = -std::imag(h_mat(0, 1));
  const Scalar norm = std::sqrt(ax * ax + ay * ay + az * az);
  const Scalar c = std::cos(norm * h);
  // sin(x)/x with the removable singularity at 0
  const Scalar x = norm * h;
  const Scalar sinc = x == Scalar(0) ? Scalar(1) : std::sin(x) / x;
  const Scalar s = sinc * h;  // sin(|a| h) / |a|
  Operator<Scalar, 2> u;
  u(0, 0) = C(c, -s * az);
  u(1, 1) = C(c, s * az);
  // -i s (ax sigma_x + ay sigma_y): off-diagonals -i s (ax -/+ i ay)
  u(0, 1) = C(-s * ay, -s * ax);
  u(1, 0) = C(s * ay, -s * ax);
  return u;
}

}  // namespace ccars
