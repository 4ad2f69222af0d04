#pragma once
// Orthonormal polynomial basis on the reference triangle, quadrature rules,
// Vandermonde matrices, edge flux points, and interior solution points.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trifr/jacobi.hpp"
#include "trifr/refgeom.hpp"

namespace trifr {

// Basis modes (v, w) of total degree v + w <= k, ordered degree-by-degree
// with v ascending within each degree block.
inline std::vector<std::pair<int, int>> modes_deglex(int k) {
  std::vector<std::pair<int, int>> m;
  m.reserve((k + 1) * (k + 2) / 2);
  for (int d = 0; d <= k; ++d)
    for (int v = 0; v <= d; ++v) m.emplace_back(v, d - v);
  return m;
}

inline int n_modes(int k) { return (k + 1) * (k + 2) / 2; }

namespace detail {
// Collapsed coordinates (a, b) for the reference triangle. The ray through
// the top vertex degenerates; there a is set to 0 (every use multiplies it
// by a factor that vanishes at that vertex).
inline void collapsed_coords(double x, double y, double& a, double& b) {
  const double den = 2.0 - kSqrt3 * y;
  a = (std::abs(den) > 1e-13) ? 3.0 * x / den : 0.0;
  b = (2.0 * kSqrt3 * y - 1.0) / 3.0;
}
inline constexpr double kDubinerScale = 1.5196713713031850947;  // 2 / 3^{1/4}
}  // namespace detail

// Orthonormal basis function of mode (v, w):
//   phi_{vw}(x, y) = (2/3^{1/4}) (1-b)^v psi_v^{(0,0)}(a) psi_w^{(2v+1,0)}(b),
// with int_T phi_{vw} phi_{v'w'} dA = delta. The constant mode is 3^{-1/4}.
inline double dubiner(int v, int w, double x, double y) {
  double a, b;
  detail::collapsed_coords(x, y, a, b);
  return detail::kDubinerScale * std::pow(1.0 - b, v) * jacobi(v, 0.0, 0.0, a) *
         jacobi(w, 2.0 * v + 1.0, 0.0, b);
}

// Analytic gradient of phi_{vw}. Uses the factored form
//   d/dx = 2 C f'(a) g(b) (1-b)^{v-1}
//   d/dy = (2/sqrt(3)) C [ (a f'(a) - v f(a)) g(b) (1-b)^{v-1} + f(a) g'(b) (1-b)^v ]
// which is finite everywhere on the closed triangle (the (1-b)^{v-1} factors
// only appear multiplied by coefficients that vanish when v = 0).
inline Eigen::Vector2d dubiner_grad(int v, int w, double x, double y) {
  double a, b;
  detail::collapsed_coords(x, y, a, b);
  const double C = detail::kDubinerScale;
  const double f = jacobi(v, 0.0, 0.0, a);
  const double g = jacobi(w, 2.0 * v + 1.0, 0.0, b);
  const double gp = jacobi_deriv(w, 2.0 * v + 1.0, 0.0, b);
  const double pv = std::pow(1.0 - b, v);
  double dx = 0.0;
  double dy = C * (2.0 / kSqrt3) * f * gp * pv;
  if (v >= 1) {
    const double fp = jacobi_deriv(v, 0.0, 0.0, a);
    const double pvm1 = std::pow(1.0 - b, v - 1);
    dx = C * 2.0 * fp * g * pvm1;
    dy += C * (2.0 / kSqrt3) * (a * fp - v * f) * g * pvm1;
  }
  return {dx, dy};
}

struct QuadratureRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;
  Eigen::VectorXd w;
};

// Volume quadrature on the reference triangle, exact for total degree
// <= strength. Built as a collapsed Gauss-Legendre x Gauss-Jacobi product
// rule, then symmetrized over the three rotations so the point set is
// invariant under the symmetry group. Supported strengths: 1..23.
inline QuadratureRule volume_quadrature(int strength) {
  if (strength < 1 || strength > 23)
    throw std::invalid_argument("volume_quadrature: strength must be in 1..23");
  const int n = strength / 2 + 1;
  const Rule1D ga = gauss_legendre(n);
  const Rule1D gb = gauss_jacobi(n, 1.0, 0.0);
  Eigen::Matrix<double, Eigen::Dynamic, 2> base(n * n, 2);
  Eigen::VectorXd wb(n * n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = ga.x(i), b = gb.x(j);
      base(idx, 0) = a * (1.0 - b) / 2.0;
      base(idx, 1) = (3.0 * b + 1.0) / (2.0 * kSqrt3);
      wb(idx) = ga.w(i) * gb.w(j) * kSqrt3 / 4.0;
      ++idx;
    }
  }
  const Eigen::Matrix2d R = ref_rotation();
  QuadratureRule q;
  q.pts.resize(3 * n * n, 2);
  q.w.resize(3 * n * n);
  q.pts.topRows(n * n) = base;
  q.pts.middleRows(n * n, n * n) = base * R.transpose();
  q.pts.bottomRows(n * n) = base * (R * R).transpose();
  q.w << wb / 3.0, wb / 3.0, wb / 3.0;
  return q;
}

struct EdgeFluxPoints {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;      // 3(k+1) points, edge-major
  Eigen::VectorXd w;                                 // quadrature weights along the edge
  Eigen::Matrix<double, Eigen::Dynamic, 2> normals;  // outward unit normals
  int per_edge = 0;
};

// Gauss-Legendre flux points on each edge (k+1 per edge, ascending along the
// counterclockwise traversal). Weights are mapped so that sum w = edge length.
inline EdgeFluxPoints edge_flux_points(int k) {
  const int m = k + 1;
  const Rule1D g = gauss_legendre(m);
  EdgeFluxPoints fp;
  fp.per_edge = m;
  fp.pts.resize(3 * m, 2);
  fp.w.resize(3 * m);
  fp.normals.resize(3 * m, 2);
  for (int e = 0; e < 3; ++e) {
    const RefEdge edge = ref_edge(e);
    for (int j = 0; j < m; ++j) {
      const double t = (g.x(j) + 1.0) / 2.0;
      fp.pts.row(e * m + j) = ((1.0 - t) * edge.a + t * edge.b).transpose();
      fp.w(e * m + j) = g.w(j) * kRefEdgeLength / 2.0;
      fp.normals.row(e * m + j) = edge.normal.transpose();
    }
  }
  return fp;
}

// Vandermonde matrix V(i, m) = phi_m(p_i) over the deg-lex modes of degree k.
inline Eigen::MatrixXd vandermonde(int k, const Eigen::Ref<const Eigen::Matrix<double, Eigen::Dynamic, 2>>& pts) {
  const auto modes = modes_deglex(k);
  Eigen::MatrixXd V(pts.rows(), modes.size());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (std::size_t m = 0; m < modes.size(); ++m)
      V(i, m) = dubiner(modes[m].first, modes[m].second, pts(i, 0), pts(i, 1));
  return V;
}

// Gradient Vandermonde matrices: Vx(i, m) = d/dx phi_m(p_i), likewise Vy.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> grad_vandermonde(
    int k, const Eigen::Ref<const Eigen::Matrix<double, Eigen::Dynamic, 2>>& pts) {
  const auto modes = modes_deglex(k);
  Eigen::MatrixXd Vx(pts.rows(), modes.size()), Vy(pts.rows(), modes.size());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const Eigen::Vector2d g =
          dubiner_grad(modes[m].first, modes[m].second, pts(i, 0), pts(i, 1));
      Vx(i, m) = g.x();
      Vy(i, m) = g.y();
    }
  return {Vx, Vy};
}

namespace detail {

// Gauss-Lobatto nodes on [-1, 1]: endpoints plus the zeros of P_N'.
inline Eigen::VectorXd gauss_lobatto(int N) {
  Eigen::VectorXd r(N + 1);
  r(0) = -1.0;
  r(N) = 1.0;
  if (N >= 2) {
    const Rule1D gj = gauss_jacobi(N - 1, 1.0, 1.0);
    r.segment(1, N - 1) = gj.x;
  }
  return r;
}

// One-dimensional warp displacement used by the interior node construction:
// the interpolated gap between equispaced and Gauss-Lobatto nodes, evaluated
// at rout and deflated by (1 - r^2) away from the endpoints.
inline Eigen::VectorXd warp_factor(int N, const Eigen::VectorXd& rout) {
  const Eigen::VectorXd lgl = gauss_lobatto(N);
  Eigen::VectorXd req = Eigen::VectorXd::LinSpaced(N + 1, -1.0, 1.0);
  Eigen::MatrixXd Veq(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) Veq(i, j) = jacobi(j, 0.0, 0.0, req(i));
  Eigen::MatrixXd Pmat(N + 1, rout.size());
  for (int j = 0; j <= N; ++j)
    for (Eigen::Index r = 0; r < rout.size(); ++r) Pmat(j, r) = jacobi(j, 0.0, 0.0, rout(r));
  const Eigen::MatrixXd Lmat = Veq.transpose().fullPivLu().solve(Pmat);
  Eigen::VectorXd warp = Lmat.transpose() * (lgl - req);
  for (Eigen::Index r = 0; r < rout.size(); ++r) {
    if (std::abs(rout(r)) < 1.0 - 1e-10)
      warp(r) /= 1.0 - rout(r) * rout(r);
    else
      warp(r) = 0.0;
  }
  return warp;
}

}  // namespace detail

// Well-conditioned interpolation nodes on the reference triangle (warped and
// blended from the equispaced lattice; boundary nodes land on Gauss-Lobatto
// positions along each edge). Returns (k+1)(k+2)/2 points.
inline Eigen::Matrix<double, Eigen::Dynamic, 2> solution_points(int k) {
  if (k < 1) throw std::invalid_argument("solution_points: need k >= 1");
  static const double alpopt[16] = {0.0,    0.0,    0.0,    1.4152, 0.1001, 0.2751,
                                    0.9800, 1.0999, 1.2832, 1.3648, 1.4773, 1.4959,
                                    1.5743, 1.5770, 1.6223, 1.6258};
  const double alpha = (k < 16) ? alpopt[k] : 5.0 / 3.0;
  const int Np = n_modes(k);
  Eigen::VectorXd L1(Np), L2(Np), L3(Np);
  int s = 0;
  for (int n = 0; n <= k; ++n)
    for (int m = 0; m <= k - n; ++m) {
      L1(s) = static_cast<double>(n) / k;
      L3(s) = static_cast<double>(m) / k;
      L2(s) = 1.0 - L1(s) - L3(s);
      ++s;
    }
  Eigen::VectorXd x = -L2 + L3;
  Eigen::VectorXd y = (-L2 - L3 + 2.0 * L1) / kSqrt3;

  const Eigen::VectorXd blend1 = 4.0 * L2.array() * L3.array();
  const Eigen::VectorXd blend2 = 4.0 * L1.array() * L3.array();
  const Eigen::VectorXd blend3 = 4.0 * L1.array() * L2.array();
  const Eigen::VectorXd wf1 = detail::warp_factor(k, L3 - L2);
  const Eigen::VectorXd wf2 = detail::warp_factor(k, L1 - L3);
  const Eigen::VectorXd wf3 = detail::warp_factor(k, L2 - L1);
  const auto amp = [&](const Eigen::VectorXd& L) {
    return (1.0 + (alpha * L.array()).square()).matrix();
  };
  const Eigen::VectorXd w1 = blend1.array() * wf1.array() * amp(L1).array();
  const Eigen::VectorXd w2 = blend2.array() * wf2.array() * amp(L2).array();
  const Eigen::VectorXd w3 = blend3.array() * wf3.array() * amp(L3).array();

  constexpr double pi = std::numbers::pi;
  const double c23 = std::cos(2.0 * pi / 3.0), s23 = std::sin(2.0 * pi / 3.0);
  const double c43 = std::cos(4.0 * pi / 3.0), s43 = std::sin(4.0 * pi / 3.0);
  x += w1 + c23 * w2 + c43 * w3;
  y += s23 * w2 + s43 * w3;

  Eigen::Matrix<double, Eigen::Dynamic, 2> pts(Np, 2);
  pts.col(0) = x;
  pts.col(1) = y;
  return pts;
}

}  // namespace trifr
