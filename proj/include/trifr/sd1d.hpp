#pragma once
// One-dimensional spectral-difference recovery: for which interior flux point
// placements does the SD lifting coincide with a stable corrected lifting?
// Works in the classical (non-normalized) Legendre modal frame on [-1, 1].

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trifr/jacobi.hpp"

namespace trifr {

struct SD1DFrame {
  int k = 0;
  Eigen::MatrixXd Mhat;  // diag(2 / (2n+1))
  Eigen::MatrixXd Dhat;  // modal differentiation matrix
  Eigen::MatrixXd Lhat;  // traces: row 0 left endpoint, row 1 right endpoint
  Eigen::MatrixXd CDG;   // plain lifting Mhat^{-1} Lhat^T, columns [left, right]
};

inline SD1DFrame sd1d_frame(int k) {
  SD1DFrame f;
  f.k = k;
  const int N = k + 1;
  f.Mhat = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n < N; ++n) f.Mhat(n, n) = 2.0 / (2.0 * n + 1.0);
  f.Dhat = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < N; ++m)
    for (int n = m + 1; n < N; ++n)
      if ((n - m) % 2 == 1) f.Dhat(m, n) = 2.0 * m + 1.0;
  f.Lhat.resize(2, N);
  for (int n = 0; n < N; ++n) {
    f.Lhat(0, n) = (n % 2 == 0) ? 1.0 : -1.0;
    f.Lhat(1, n) = 1.0;
  }
  f.CDG = f.Mhat.inverse() * f.Lhat.transpose();
  return f;
}

namespace detail1d {

// Monomial coefficient arrays (index = power) for small polynomials.
inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline double poly_eval(const std::vector<double>& a, double x) {
  double v = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
  return v;
}

inline std::vector<double> poly_deriv(const std::vector<double>& a) {
  if (a.size() <= 1) return {0.0};
  std::vector<double> d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = i * a[i];
  return d;
}

// Right correction function: h_R(x) = (1+x) x^n prod_i (x^2 - z_i^2) /
// (2 prod_i (1 - z_i^2)), normalized so h_R(1) = 1 and h_R(-1) = 0; the z_i
// are the free positive interior flux points and n = k mod 2.
inline std::vector<double> h_right_coeffs(int k, const std::vector<double>& z) {
  const int n = k % 2;
  std::vector<double> p = {1.0};
  for (int i = 0; i < n; ++i) p = poly_mul(p, {0.0, 1.0});
  double scale = 2.0;
  for (double zi : z) {
    p = poly_mul(p, {-zi * zi, 0.0, 1.0});
    scale *= (1.0 - zi * zi);
  }
  p = poly_mul(p, {1.0, 1.0});
  for (double& c : p) c /= scale;
  return p;
}

// Classical-Legendre modal coefficients of p' for a monomial-coefficient p:
// c_m = (2m+1)/2 * int P_m p' dx by Gauss quadrature.
inline Eigen::VectorXd modal_of_deriv(int k, const std::vector<double>& p) {
  const std::vector<double> dp = poly_deriv(p);
  const Rule1D g = gauss_legendre(k + 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
  for (int m = 0; m <= k; ++m) {
    double acc = 0.0;
    for (Eigen::Index q = 0; q < g.x.size(); ++q)
      acc += g.w(q) * legendre(m, g.x(q)) * poly_eval(dp, g.x(q));
    c(m) = (2.0 * m + 1.0) / 2.0 * acc;
  }
  return c;
}

}  // namespace detail1d

// SD lifting columns [left, right]: modal coefficients of -h_L' and +h_R'.
inline Eigen::MatrixXd sd1d_lifting(int k, const std::vector<double>& z) {
  const std::vector<double> hr = detail1d::h_right_coeffs(k, z);
  std::vector<double> hl = hr;  // h_L(x) = h_R(-x)
  for (std::size_t i = 1; i < hl.size(); i += 2) hl[i] = -hl[i];
  Eigen::MatrixXd C(k + 1, 2);
  C.col(0) = -detail1d::modal_of_deriv(k, hl);
  C.col(1) = detail1d::modal_of_deriv(k, hr);
  return C;
}

struct SD1DSolve {
  Eigen::MatrixXd Qhat;        // symmetric; gauged unknown pattern
  Eigen::VectorXd residual;    // least-squares residual of the recovery system
  Eigen::VectorXd off_family;  // solved entries other than the (k, k) slot
  double family_defect = 0;    // max |off_family|: zero iff Qhat = q0 e_k e_k^T
  double skew_residual = 0;    // max-norm of Qhat Dhat + Dhat^T Qhat
  bool stable = false;         // Mhat + Qhat positive definite
};

// Solve Qhat C_SD = -Mhat (C_SD - C_DG) for a symmetric Qhat. Two gauge
// conditions make the system square: parity-odd entries vanish (left/right
// symmetry) and the low-low block (both indices <= k-2) vanishes. The
// gauged system is consistent for every placement; the placement is a
// recovery point exactly when the solution collapses onto the top-mode
// slot (k, k), i.e. when family_defect vanishes.
inline SD1DSolve sd1d_solve_q(int k, const std::vector<double>& z) {
  const SD1DFrame f = sd1d_frame(k);
  const Eigen::MatrixXd CSD = sd1d_lifting(k, z);
  const Eigen::MatrixXd RHS = -f.Mhat * (CSD - f.CDG);
  const int N = k + 1;
  std::vector<std::pair<int, int>> unk;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      if ((i + j) % 2 == 0 && !(i <= k - 2 && j <= k - 2)) unk.emplace_back(i, j);
  const int nu = static_cast<int>(unk.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * N, nu);
  Eigen::VectorXd b(2 * N);
  b << RHS.col(0), RHS.col(1);
  for (int u = 0; u < nu; ++u) {
    const auto [i, j] = unk[u];
    // (Qhat CSD)(i, c) collects Qhat(i, j) CSD(j, c) and, if i != j, the
    // mirrored entry contributes to row j.
    A(i, u) += CSD(j, 0);
    A(N + i, u) += CSD(j, 1);
    if (i != j) {
      A(j, u) += CSD(i, 0);
      A(N + j, u) += CSD(i, 1);
    }
  }
  const Eigen::VectorXd x = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  SD1DSolve s;
  s.Qhat = Eigen::MatrixXd::Zero(N, N);
  s.off_family.resize(nu - 1);
  int noff = 0;
  for (int u = 0; u < nu; ++u) {
    s.Qhat(unk[u].first, unk[u].second) = x(u);
    s.Qhat(unk[u].second, unk[u].first) = x(u);
    if (!(unk[u].first == k && unk[u].second == k)) s.off_family(noff++) = x(u);
  }
  s.family_defect = noff > 0 ? s.off_family.cwiseAbs().maxCoeff() : 0.0;
  s.residual = A * x - b;
  s.skew_residual =
      (s.Qhat * f.Dhat + f.Dhat.transpose() * s.Qhat).cwiseAbs().maxCoeff();
  s.stable = Eigen::LLT<Eigen::MatrixXd>(Eigen::MatrixXd(f.Mhat + s.Qhat)).info() ==
             Eigen::Success;
  return s;
}

struct SD1DRoot {
  std::vector<double> z;  // interior flux point positions (ascending)
  double q0 = 0.0;        // family parameter: top-mode diagonal of Qhat
  double residual = 0.0;
  double skew_residual = 0.0;
  bool stable = false;
};

namespace detail1d {

inline double defect(int k, const std::vector<double>& z) {
  return sd1d_solve_q(k, z).family_defect;
}

// Gauss-Newton drive of the off-family entries to zero in the flux point
// positions (the gauged solve itself is always consistent, so the recovery
// condition is the vanishing of everything outside the (k, k) slot).
inline bool gauss_newton(int k, std::vector<double>& z) {
  const int m = static_cast<int>(z.size());
  if (m == 0) return true;
  for (int it = 0; it < 80; ++it) {
    const Eigen::VectorXd r0 = sd1d_solve_q(k, z).off_family;
    Eigen::MatrixXd J(r0.size(), m);
    for (int d = 0; d < m; ++d) {
      std::vector<double> zp = z;
      const double h = 1e-7;
      zp[d] += h;
      J.col(d) = (sd1d_solve_q(k, zp).off_family - r0) / h;
    }
    const Eigen::VectorXd step =
        J.completeOrthogonalDecomposition().pseudoInverse() * r0;
    double ns = 0.0;
    for (int d = 0; d < m; ++d) {
      z[d] -= step(d);
      ns = std::max(ns, std::abs(step(d)));
    }
    if (!std::isfinite(ns)) return false;
    if (ns < 1e-14) return true;
  }
  return false;
}

}  // namespace detail1d

// Find all interior flux point placements for which the SD lifting is a
// member of the corrected-lifting family: grid scan over the open unit
// interval followed by Gauss-Newton refinement. Supports k = 1..5
// (0, 1, or 2 free points).
inline std::vector<SD1DRoot> sd1d_search(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("sd1d_search: supported orders are k = 1..5");
  const int m = k / 2;
  std::vector<std::vector<double>> seeds;
  if (m == 0) {
    seeds.push_back({});
  } else if (m == 1) {
    // seed from local minima of the family defect over a fine scan
    std::vector<double> zg, rg;
    for (double z = 0.02; z < 0.995; z += 0.0025) {
      zg.push_back(z);
      rg.push_back(detail1d::defect(k, {z}));
    }
    for (std::size_t i = 1; i + 1 < zg.size(); ++i)
      if (rg[i] <= rg[i - 1] && rg[i] <= rg[i + 1]) seeds.push_back({zg[i]});
  } else {
    for (double z1 = 0.05; z1 < 0.95; z1 += 0.05)
      for (double z2 = z1 + 0.05; z2 < 0.99; z2 += 0.05) seeds.push_back({z1, z2});
  }
  std::vector<SD1DRoot> roots;
  for (auto z : seeds) {
    if (!detail1d::gauss_newton(k, z)) continue;
    bool ok = true;
    for (double zi : z) ok = ok && zi > 1e-6 && zi < 1.0 - 1e-6;
    if (!ok) continue;
    std::sort(z.begin(), z.end());
    if (z.size() == 2 && z[1] - z[0] < 1e-6) continue;  // coincident points
    const SD1DSolve s = sd1d_solve_q(k, z);
    if (s.family_defect > 1e-10 || s.residual.cwiseAbs().maxCoeff() > 1e-10) continue;
    bool dup = false;
    for (const auto& r : roots) {
      double d = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) d = std::max(d, std::abs(r.z[i] - z[i]));
      if (d < 1e-7) dup = true;
    }
    if (dup) continue;
    SD1DRoot root;
    root.z = z;
    root.q0 = s.Qhat(k, k);
    root.residual = s.residual.norm();
    root.skew_residual = s.skew_residual;
    root.stable = s.stable;
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(),
            [](const SD1DRoot& a, const SD1DRoot& b) { return a.z < b.z; });
  return roots;
}

}  // namespace trifr
