#pragma once
// Spectral-difference flux representation on the triangle: Raviart-Thomas
// members, collocation degrees of freedom, the induced lifting, and the
// affine-in-q recovery system that decides whether the SD lifting is a
// member of the energy-stable corrected family.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "trifr/polybasis.hpp"
#include "trifr/qfamily.hpp"
#include "trifr/refgeom.hpp"

namespace trifr {

// Member of the Raviart-Thomas space RT_k = Q_k^2 + (x,y)(top-degree modes):
// kind 0 -> (phi, 0), kind 1 -> (0, phi), kind 2 -> (x phi, y phi) with phi
// of top total degree k. Dimension (k+1)(k+3).
struct RTMember {
  int kind = 0;
  int v = 0, w = 0;
};

inline std::vector<RTMember> rt_members(int k) {
  const auto modes = modes_deglex(k);
  std::vector<RTMember> mem;
  mem.reserve((k + 1) * (k + 3));
  for (const auto& m : modes) mem.push_back({0, m.first, m.second});
  for (const auto& m : modes) mem.push_back({1, m.first, m.second});
  for (const auto& m : modes)
    if (m.first + m.second == k) mem.push_back({2, m.first, m.second});
  return mem;
}

inline Eigen::Vector2d rt_eval(const RTMember& m, double x, double y) {
  const double p = dubiner(m.v, m.w, x, y);
  if (m.kind == 0) return {p, 0.0};
  if (m.kind == 1) return {0.0, p};
  return {x * p, y * p};
}

inline double rt_div(const RTMember& m, double x, double y) {
  const Eigen::Vector2d g = dubiner_grad(m.v, m.w, x, y);
  if (m.kind == 0) return g.x();
  if (m.kind == 1) return g.y();
  return 2.0 * dubiner(m.v, m.w, x, y) + x * g.x() + y * g.y();
}

// Collocation degrees of freedom: a point and a unit direction; the dof value
// of a vector field V is V(p) . n.
struct SDTriDofs {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts;
  Eigen::Matrix<double, Eigen::Dynamic, 2> normals;
  int n_boundary = 0;
};

namespace detailsd {

inline std::vector<Eigen::Vector2d> orbit3(double z) {
  return {bary_to_xy(1.0 - 2.0 * z, z, z), bary_to_xy(z, 1.0 - 2.0 * z, z),
          bary_to_xy(z, z, 1.0 - 2.0 * z)};
}

inline std::vector<Eigen::Vector2d> orbit6(double z1, double z2) {
  const double l[3] = {1.0 - z1 - z2, z1, z2};
  static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                 {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  std::vector<Eigen::Vector2d> pts;
  for (const auto& p : perm) pts.push_back(bary_to_xy(l[p[0]], l[p[1]], l[p[2]]));
  return pts;
}

}  // namespace detailsd

// Boundary dofs: k+1 equispaced-open points per edge at t = (j+1)/(k+2) with
// the outward edge normal. Interior dofs: orbit points, each used twice with
// the x and y unit directions. Orbits: "collocated" (k=1 centroid, k=2 one
// three-point orbit), "020" (two three-point orbits, k=3), "001" (one
// six-point orbit, k=3).
inline SDTriDofs sd_tri_dofs(int k, const std::string& orbit, const std::vector<double>& zs) {
  std::vector<Eigen::Vector2d> pts;
  std::vector<Eigen::Vector2d> dirs;
  for (int e = 0; e < 3; ++e) {
    const RefEdge edge = ref_edge(e);
    for (int j = 0; j <= k; ++j) {
      const double t = (j + 1.0) / (k + 2.0);
      pts.push_back(edge.a + t * (edge.b - edge.a));
      dirs.push_back(edge.normal);
    }
  }
  const int nb = static_cast<int>(pts.size());
  std::vector<Eigen::Vector2d> interior;
  if (k == 1) {
    interior = {Eigen::Vector2d::Zero()};
  } else if (k == 2 && orbit == "collocated") {
    if (zs.size() != 1) throw std::invalid_argument("sd_tri_dofs: k=2 needs one orbit parameter");
    interior = detailsd::orbit3(zs[0]);
  } else if (k == 3 && orbit == "020") {
    if (zs.size() != 2) throw std::invalid_argument("sd_tri_dofs: orbit 020 needs two parameters");
    interior = detailsd::orbit3(zs[0]);
    const auto o2 = detailsd::orbit3(zs[1]);
    interior.insert(interior.end(), o2.begin(), o2.end());
  } else if (k == 3 && orbit == "001") {
    if (zs.size() != 2) throw std::invalid_argument("sd_tri_dofs: orbit 001 needs two parameters");
    interior = detailsd::orbit6(zs[0], zs[1]);
  } else {
    throw std::invalid_argument("sd_tri_dofs: unsupported (k, orbit) combination");
  }
  for (const auto& p : interior) {
    pts.push_back(p);
    dirs.push_back(Eigen::Vector2d(1.0, 0.0));
    pts.push_back(p);
    dirs.push_back(Eigen::Vector2d(0.0, 1.0));
  }
  SDTriDofs d;
  d.n_boundary = nb;
  d.pts.resize(pts.size(), 2);
  d.normals.resize(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d.pts.row(i) = pts[i].transpose();
    d.normals.row(i) = dirs[i].transpose();
  }
  return d;
}

struct RTVandermonde {
  Eigen::MatrixXd V;
  int rank = 0;
  double cond = 0.0;
};

// Normal-trace Vandermonde of the RT space against the dof set:
// V(r, c) = member_c(p_r) . n_r.
inline RTVandermonde rt_vandermonde(int k, const SDTriDofs& dofs) {
  const auto mem = rt_members(k);
  const int nd = static_cast<int>(dofs.pts.rows());
  if (nd != static_cast<int>(mem.size()))
    throw std::invalid_argument("rt_vandermonde: dof count differs from space dimension");
  RTVandermonde r;
  r.V.resize(nd, nd);
  for (int i = 0; i < nd; ++i)
    for (int c = 0; c < nd; ++c)
      r.V(i, c) = rt_eval(mem[c], dofs.pts(i, 0), dofs.pts(i, 1))
                      .dot(Eigen::Vector2d(dofs.normals(i, 0), dofs.normals(i, 1)));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.V);
  const Eigen::VectorXd sv = svd.singularValues();
  r.cond = sv(0) / sv(sv.size() - 1);
  r.rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++r.rank;
  return r;
}

struct SDTriSystem {
  std::vector<std::pair<int, int>> modes;
  Eigen::MatrixXd CSD;  // SD lifting, N x 3(k+1), per-edge Legendre column frame
  Eigen::MatrixXd CDG;  // moment lifting in the same frame
  int vrt_rank = 0;
  double vrt_cond = 0.0;
  int ndof = 0;
};

// Assemble the SD and plain liftings. Columns are re-expressed per edge in
// the Legendre jump modes P_n(2t - 1) of the boundary trace. When the
// normal-trace Vandermonde is singular the build either aborts (default) or
// proceeds with its pseudoinverse (use_pinv).
inline SDTriSystem sd_tri_build(int k, const std::string& orbit, const std::vector<double>& zs,
                                bool use_pinv = false) {
  const SDTriDofs dofs = sd_tri_dofs(k, orbit, zs);
  const auto mem = rt_members(k);
  const int nd = static_cast<int>(mem.size());
  const int nb = dofs.n_boundary;
  const RTVandermonde vr = rt_vandermonde(k, dofs);
  SDTriSystem sys;
  sys.modes = modes_deglex(k);
  sys.vrt_rank = vr.rank;
  sys.vrt_cond = vr.cond;
  sys.ndof = nd;
  Eigen::MatrixXd Vinv;
  if (vr.rank < nd) {
    if (!use_pinv)
      throw std::runtime_error("sd_tri_build: normal-trace Vandermonde is singular (rank " +
                               std::to_string(vr.rank) + "/" + std::to_string(nd) +
                               ", condition number " + std::to_string(vr.cond) + ")");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vr.V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    Vinv = svd.solve(Eigen::MatrixXd::Identity(nd, nd));
  } else {
    Vinv = vr.V.partialPivLu().solve(Eigen::MatrixXd::Identity(nd, nd));
  }

  const int N = n_modes(k);
  const QuadratureRule rule = volume_quadrature(2 * k + 2);
  const Eigen::Index nq = rule.w.size();
  const Eigen::MatrixXd PhiW =
      vandermonde(k, rule.pts).transpose() * rule.w.asDiagonal();  // N x nq
  Eigen::MatrixXd DIV(nd, nq);
  for (int c = 0; c < nd; ++c)
    for (Eigen::Index q = 0; q < nq; ++q)
      DIV(c, q) = rt_div(mem[c], rule.pts(q, 0), rule.pts(q, 1));
  // lifting of boundary dof j: divergence of the j-th RT Lagrange field
  const Eigen::MatrixXd DIVL = Vinv.transpose() * DIV;           // nd x nq, rows = dofs
  sys.CSD = PhiW * DIVL.topRows(nb).transpose();                 // N x nb

  // plain lifting by exact edge moments: 2 * int_0^1 phi_i(edge(t)) l_j(t) dt
  const int m = k + 1;
  Eigen::VectorXd tloc(m);
  for (int j = 0; j < m; ++j) tloc(j) = (j + 1.0) / (k + 2.0);
  const Rule1D g = gauss_legendre(3 * k + 6);
  sys.CDG = Eigen::MatrixXd::Zero(N, nb);
  const auto modes = sys.modes;
  for (int e = 0; e < 3; ++e) {
    const RefEdge edge = ref_edge(e);
    for (Eigen::Index q = 0; q < g.x.size(); ++q) {
      const double t = 0.5 * (g.x(q) + 1.0);
      const double wq = 0.5 * g.w(q);
      const Eigen::Vector2d p = edge.a + t * (edge.b - edge.a);
      Eigen::VectorXd phi(N);
      for (int i = 0; i < N; ++i) phi(i) = dubiner(modes[i].first, modes[i].second, p.x(), p.y());
      for (int j = 0; j < m; ++j) {
        double lag = 1.0;
        for (int jj = 0; jj < m; ++jj)
          if (jj != j) lag *= (t - tloc(jj)) / (tloc(j) - tloc(jj));
        sys.CDG.col(e * m + j) += 2.0 * wq * lag * phi;
      }
    }
  }

  // per-edge Legendre column frame
  Eigen::MatrixXd V1d(m, m);
  for (int j = 0; j < m; ++j)
    for (int n = 0; n < m; ++n) V1d(j, n) = legendre(n, 2.0 * tloc(j) - 1.0);
  Eigen::MatrixXd Tbl = Eigen::MatrixXd::Zero(nb, nb);
  for (int e = 0; e < 3; ++e) Tbl.block(e * m, e * m, m, m) = V1d;
  sys.CSD = sys.CSD * Tbl;
  sys.CDG = sys.CDG * Tbl;
  return sys;
}

struct SDTriAffine {
  Eigen::MatrixXd A0;                // CSD - CDG in the column frame
  std::vector<Eigen::MatrixXd> Bs;   // q-direction matrices Q(e_i) CSD
};

inline SDTriAffine sd_tri_affine(int k, const SDTriSystem& sys) {
  SDTriAffine a;
  a.A0 = sys.CSD - sys.CDG;
  const int nq = q_param_count(k);
  for (int i = 0; i < nq; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nq);
    e(i) = 1.0;
    a.Bs.push_back(q_matrix(k, e) * sys.CSD);
  }
  return a;
}

struct SDTriResidual {
  double res = 0.0;      // max-norm residual at the optimal q
  Eigen::VectorXd q;     // least-squares parameters
};

// min over q of || A0 + sum q_i B_i ||: the recovery defect of the placement.
inline SDTriResidual sd_tri_min_residual(const SDTriAffine& a) {
  const Eigen::Index nv = a.A0.size();
  const int nq = static_cast<int>(a.Bs.size());
  Eigen::MatrixXd B(nv, nq);
  for (int i = 0; i < nq; ++i) B.col(i) = a.Bs[i].reshaped();
  SDTriResidual r;
  r.q = B.completeOrthogonalDecomposition().solve(-a.A0.reshaped());
  Eigen::VectorXd resid = a.A0.reshaped();
  for (int i = 0; i < nq; ++i) resid += r.q(i) * a.Bs[i].reshaped();
  r.res = resid.cwiseAbs().maxCoeff();
  return r;
}

struct Forced020 {
  bool converged = false;
  double z1 = 0.0, z2 = 0.0;   // ascending
  double q0 = 0.0, q1 = 0.0, q2 = 0.0;
  double column_residual = 0.0;  // residual of the solved column
};

namespace detailsd {

inline Eigen::VectorXd column1_residual(const Eigen::VectorXd& p) {
  const SDTriSystem sys = sd_tri_build(3, "020", {p(0), p(1)});
  const SDTriAffine a = sd_tri_affine(3, sys);
  Eigen::MatrixXd A = a.A0;
  for (int i = 0; i < 3; ++i) A += p(2 + i) * a.Bs[i];
  return A.col(1);
}

}  // namespace detailsd

// Gauss-Newton solve of the first odd-jump column (edge 0, Legendre mode 1)
// of the recovery system over (z1, z2, q0, q1, q2). The Jacobian is rank
// deficient along the q1 direction, so a pseudoinverse step is used; q1 is
// reported but not determined by this column.
inline Forced020 sd_tri_forced_020(Eigen::VectorXd seed = Eigen::VectorXd()) {
  Eigen::VectorXd p(5);
  if (seed.size() == 5)
    p = seed;
  else
    p << 0.15, 0.35, 0.1, 0.1, 0.1;
  Forced020 f;
  for (int it = 0; it < 80; ++it) {
    const Eigen::VectorXd r = detailsd::column1_residual(p);
    Eigen::MatrixXd J(r.size(), 5);
    for (int d = 0; d < 5; ++d) {
      Eigen::VectorXd pp = p;
      const double h = 1e-7 * std::max(1.0, std::abs(p(d)));
      pp(d) += h;
      J.col(d) = (detailsd::column1_residual(pp) - r) / h;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Eigen::VectorXd step = svd.solve(r);
    p -= step;
    if (step.cwiseAbs().maxCoeff() < 1e-13) {
      f.converged = true;
      break;
    }
  }
  f.z1 = std::min(p(0), p(1));
  f.z2 = std::max(p(0), p(1));
  f.q0 = p(2);
  f.q1 = p(3);
  f.q2 = p(4);
  f.column_residual = detailsd::column1_residual(p).cwiseAbs().maxCoeff();
  return f;
}

// With (z1, z2, q0, q2) pinned, every remaining entry of the system is affine
// in q1; collect the distinct roots. A recovery would require them to agree;
// the placement is refuted by the set containing more than one value.
inline std::vector<std::pair<double, int>> sd_tri_q1_roots(double z1, double z2, double q0,
                                                           double q2) {
  const SDTriSystem sys = sd_tri_build(3, "020", {z1, z2});
  const SDTriAffine a = sd_tri_affine(3, sys);
  const Eigen::MatrixXd Afix = a.A0 + q0 * a.Bs[0] + q2 * a.Bs[2];
  std::vector<std::pair<double, int>> roots;
  for (Eigen::Index i = 0; i < Afix.rows(); ++i)
    for (Eigen::Index j = 0; j < Afix.cols(); ++j) {
      const double b = a.Bs[1](i, j);
      if (std::abs(b) < 1e-9) continue;
      const double val = -Afix(i, j) / b;
      bool found = false;
      for (auto& rc : roots)
        if (std::abs(rc.first - val) < 1e-8) {
          ++rc.second;
          found = true;
        }
      if (!found) roots.emplace_back(val, 1);
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace trifr
