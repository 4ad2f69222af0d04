#pragma once
// Correction (lifting) operators: the exact modal construction, the discrete
// conservation residual, point evaluation of correction-function divergence
// fields, and the quadrature-based construction through an L2 projection.

#include <Eigen/Dense>
#include <stdexcept>

#include "trifr/operators.hpp"
#include "trifr/qfamily.hpp"

namespace trifr {

// Correction operator C = (M + Q)^{-1} L^T W_b in the modal frame. Each
// column is the modal coefficient vector of the divergence of one correction
// field. Throws if M + Q is not positive definite (unstable norm).
inline Eigen::MatrixXd correction_matrix(const Operators& op, const Eigen::MatrixXd& Q) {
  const Eigen::MatrixXd A = op.M + Q;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "correction_matrix: M + Q is not positive definite; the requested scheme is outside "
        "the energy-stable region");
  return llt.solve(op.L.transpose() * op.wB.asDiagonal());
}

inline Eigen::MatrixXd correction_matrix(int k, const Eigen::VectorXd& qs) {
  return correction_matrix(modal_operators(k), q_matrix(k, qs));
}

// Discrete conservation: the corrected lifting must act on constants exactly
// like the plain lifting, i.e. 1^T (M+Q)^{-1} L^T W = 1^T M^{-1} L^T W.
// Returns the max-norm of the difference of the two boundary functionals.
inline double conservation_residual(const Operators& op, const Eigen::MatrixXd& Q) {
  const int N = op.n;
  Eigen::VectorXd one = Eigen::VectorXd::Zero(N);
  one(0) = std::pow(3.0, 0.25);  // modal coefficients of the constant function 1
  const Eigen::MatrixXd LW = op.L.transpose() * op.wB.asDiagonal();
  const Eigen::VectorXd corrected =
      (op.M + Q).partialPivLu().solve(LW).transpose() * one;
  const Eigen::VectorXd plain = op.M.partialPivLu().solve(LW).transpose() * one;
  return (corrected - plain).cwiseAbs().maxCoeff();
}

inline double conservation_residual(int k, const Eigen::VectorXd& qs) {
  return conservation_residual(modal_operators(k), q_matrix(k, qs));
}

// Pointwise values of the divergence of the j-th correction field: the
// polynomial whose modal coefficients are column j of the correction matrix.
inline Eigen::VectorXd correction_field(
    int k, const Eigen::MatrixXd& C, int flux_point,
    const Eigen::Ref<const Eigen::Matrix<double, Eigen::Dynamic, 2>>& pts) {
  if (flux_point < 0 || flux_point >= C.cols())
    throw std::invalid_argument("correction_field: flux point index out of range");
  return vandermonde(k, pts) * C.col(flux_point);
}

// Discrete L2 projection from point values at the nodes of a quadrature rule
// to modal coefficients: R = (P^T W P)^{-1} P^T W with P the Vandermonde at
// the quadrature points. R P = I; the projection is L2-exact when the rule's
// strength is at least 2k.
inline Eigen::MatrixXd l2_projection(int k, const QuadratureRule& rule) {
  const Eigen::MatrixXd P = vandermonde(k, rule.pts);
  const Eigen::MatrixXd PW = P.transpose() * rule.w.asDiagonal();
  return (PW * P).partialPivLu().solve(PW);
}

// Correction operator built through quadrature-space algebra only: with
// R the projection and W_q the diagonal quadrature weights,
//   C_w = R (W_q + R^T Q R)^{-1} R^T L^T W_b.
// Algebraically identical to the exact construction whenever the rule
// integrates degree-2k products exactly.
inline Eigen::MatrixXd weak_quadrature_correction(int k, const Eigen::MatrixXd& Q,
                                                  int strength) {
  if (strength < 2 * k)
    throw std::invalid_argument("weak_quadrature_correction: rule strength must be >= 2k");
  const Operators op = modal_operators(k);
  const QuadratureRule rule = volume_quadrature(strength);
  const Eigen::MatrixXd R = l2_projection(k, rule);
  const Eigen::MatrixXd A =
      Eigen::MatrixXd(rule.w.asDiagonal()) + R.transpose() * Q * R;
  const Eigen::MatrixXd rhs = R.transpose() * (op.L.transpose() * op.wB.asDiagonal());
  return R * A.partialPivLu().solve(rhs);
}

}  // namespace trifr
