#pragma once
// Discrete operators on the reference triangle in the orthonormal modal basis
// and in the nodal (solution-point) basis, together with the
// summation-by-parts residual and the symmetry transfer matrices.

#include <Eigen/Dense>

#include "trifr/polybasis.hpp"
#include "trifr/refgeom.hpp"

namespace trifr {

struct Operators {
  int k = 0;
  int n = 0;      // number of basis functions / nodes
  int nfp = 0;    // number of flux points, 3(k+1)
  Eigen::MatrixXd M;   // mass matrix (identity in the modal frame up to roundoff)
  Eigen::MatrixXd Dx;  // (Dx)_{ij} = int phi_i d/dx phi_j; differentiation matrix
  Eigen::MatrixXd Dy;
  Eigen::MatrixXd L;   // trace matrix, L(f, j) = phi_j(x_f) at the flux points
  Eigen::VectorXd wB;                                 // flux-point weights
  Eigen::Matrix<double, Eigen::Dynamic, 2> nB;        // flux-point outward normals
};

// Operators in the orthonormal modal basis. Volume terms use a quadrature of
// strength 2k, so mass and stiffness integrals are exact up to roundoff.
inline Operators modal_operators(int k) {
  Operators op;
  op.k = k;
  op.n = n_modes(k);
  const QuadratureRule q = volume_quadrature(2 * k);
  const Eigen::MatrixXd V = vandermonde(k, q.pts);
  const auto [Vx, Vy] = grad_vandermonde(k, q.pts);
  const Eigen::MatrixXd VW = V.transpose() * q.w.asDiagonal();
  op.M = VW * V;
  op.Dx = VW * Vx;
  op.Dy = VW * Vy;
  const EdgeFluxPoints fp = edge_flux_points(k);
  op.nfp = static_cast<int>(fp.w.size());
  op.L = vandermonde(k, fp.pts);
  op.wB = fp.w;
  op.nB = fp.normals;
  return op;
}

// Operators expressed on the interpolation nodes: similarity transforms of the
// modal operators by the Vandermonde matrix at the solution points.
inline Operators nodal_operators(int k) {
  const Operators m = modal_operators(k);
  const Eigen::MatrixXd V = vandermonde(k, solution_points(k));
  const Eigen::MatrixXd Vinv = V.fullPivLu().inverse();
  Operators op = m;
  op.M = Vinv.transpose() * m.M * Vinv;
  op.Dx = V * m.Dx * Vinv;
  op.Dy = V * m.Dy * Vinv;
  op.L = m.L * Vinv;
  return op;
}

// Maximum-entry residual of the summation-by-parts identity
//   M D_a + D_a^T M = L^T diag(w n_a) L   for a in {x, y}.
inline double sbp_residual(const Operators& op) {
  const Eigen::VectorXd wnx = op.wB.array() * op.nB.col(0).array();
  const Eigen::VectorXd wny = op.wB.array() * op.nB.col(1).array();
  const Eigen::MatrixXd rx =
      op.M * op.Dx + op.Dx.transpose() * op.M - op.L.transpose() * wnx.asDiagonal() * op.L;
  const Eigen::MatrixXd ry =
      op.M * op.Dy + op.Dy.transpose() * op.M - op.L.transpose() * wny.asDiagonal() * op.L;
  return std::max(rx.cwiseAbs().maxCoeff(), ry.cwiseAbs().maxCoeff());
}

// Modal transfer matrix of the 120-degree rotation symmetry:
//   T_{ij} = int phi_i(p) phi_j(R p) dA, an orthogonal matrix with T^3 = I.
inline Eigen::MatrixXd rotation_matrix_modal(int k) {
  const QuadratureRule q = volume_quadrature(2 * k);
  const Eigen::MatrixXd V = vandermonde(k, q.pts);
  const Eigen::Matrix<double, Eigen::Dynamic, 2> rp = q.pts * ref_rotation().transpose();
  const Eigen::MatrixXd VR = vandermonde(k, rp);
  return V.transpose() * q.w.asDiagonal() * VR;
}

// Modal transfer matrix of the mirror symmetry (x -> -x), with S^2 = I.
inline Eigen::MatrixXd reflection_matrix_modal(int k) {
  const QuadratureRule q = volume_quadrature(2 * k);
  const Eigen::MatrixXd V = vandermonde(k, q.pts);
  const Eigen::Matrix<double, Eigen::Dynamic, 2> sp = q.pts * ref_reflection().transpose();
  const Eigen::MatrixXd VS = vandermonde(k, sp);
  return V.transpose() * q.w.asDiagonal() * VS;
}

}  // namespace trifr
