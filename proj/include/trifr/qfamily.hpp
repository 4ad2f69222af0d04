#pragma once
// The symmetric norm-modification family Q(q) on the reference triangle:
// closed forms for k = 1..4, the generic nullspace construction, stability
// tests (closed-form inequalities and Cholesky), the single-parameter
// Castonguay subfamily, and its stability limit.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "trifr/operators.hpp"

namespace trifr {

// Number of free parameters of the family at order k.
inline int q_param_count(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("q_param_count: closed forms cover k = 1..4");
  return k;
}

// Closed-form family member Q(q). Supported on the top-degree modal block;
// annihilates all modes of degree < k. Symmetric by construction.
inline Eigen::MatrixXd q_matrix(int k, const Eigen::VectorXd& qs) {
  if (qs.size() != q_param_count(k))
    throw std::invalid_argument("q_matrix: wrong number of parameters for this k");
  const int N = n_modes(k);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
  auto put = [&Q](int i, int j, double val) {
    Q(i, j) = val;
    Q(j, i) = val;
  };
  if (k == 1) {
    const double q0 = qs(0);
    put(1, 1, q0);
    put(2, 2, q0);
  } else if (k == 2) {
    const double q0 = qs(0), q1 = qs(1);
    put(3, 3, (5.0 * q0 - q1) / 4.0);
    put(4, 4, q1);
    put(5, 5, q0);
    put(3, 5, (q0 - q1) * std::sqrt(5.0) / 2.0);
  } else if (k == 3) {
    const double q0 = qs(0), q1 = qs(1), q2 = qs(2);
    put(6, 6, (q1 + 4.0 * q0) / 5.0 + q2 * std::sqrt(48.0 / 175.0));
    put(6, 8, (q0 - q1) / std::sqrt(5.0) + q2 * std::sqrt(3.0 / 35.0));
    put(7, 7, q0 - q2 * std::sqrt(16.0 / 21.0));
    put(7, 9, q2);
    put(8, 8, q1);
    put(9, 9, q0);
  } else {
    const double q0 = qs(0), q1 = qs(1), q2 = qs(2), q3 = qs(3);
    const double s21 = std::sqrt(21.0), s5 = std::sqrt(5.0), s105 = std::sqrt(105.0);
    const double th0 = (16.0 * s21 * q0 + 98.0 * q1 + 99.0 * q2 - 9.0 * s5 * q3) / 98.0;
    const double th1 = (8.0 * s21 * q0 + 42.0 * q1 + 75.0 * q2 - 45.0 * s5 * q3) / 42.0;
    const double th2 = (5.0 * s105 * q0 + 20.0 * s5 * q2 - 18.0 * q3) / 49.0;
    const double th3 = (4.0 * s21 * q0 + 147.0 * q1 + 240.0 * q2 - 102.0 * s5 * q3) / 147.0;
    const double th4 = (2.0 * s21 * q0 + 6.0 * q1 + 12.0 * q2 - 3.0 * s5 * q3) / 6.0;
    put(10, 10, th4);
    put(10, 12, q3);
    put(10, 14, q2);
    put(11, 11, q1);
    put(11, 13, q0);
    put(12, 12, th3);
    put(12, 14, th2);
    put(13, 13, th1);
    put(14, 14, th0);
  }
  return Q;
}

// Read the parameter vector back out of a family member (the inverse of the
// defining slots of q_matrix).
inline Eigen::VectorXd extract_q(int k, const Eigen::MatrixXd& Q) {
  Eigen::VectorXd qs(q_param_count(k));
  if (k == 1) {
    qs << Q(1, 1);
  } else if (k == 2) {
    qs << Q(5, 5), Q(4, 4);
  } else if (k == 3) {
    qs << Q(9, 9), Q(8, 8), Q(7, 9);
  } else {
    qs << Q(11, 13), Q(11, 11), Q(10, 14), Q(10, 12);
  }
  return qs;
}

// Expressions that are all positive exactly on the stable region of the
// closed-form family (margins of the printed inequalities).
inline Eigen::VectorXd stability_margins(int k, const Eigen::VectorXd& qs) {
  if (k == 1) {
    Eigen::VectorXd m(1);
    m << qs(0) + 1.0;
    return m;
  }
  if (k == 2) {
    const double q0 = qs(0), q1 = qs(1);
    Eigen::VectorXd m(2);
    m << q1 + 1.0, 9.0 * q0 - 5.0 * q1 + 4.0;
    return m;
  }
  if (k == 3) {
    const double q0 = qs(0), q1 = qs(1), q2 = qs(2);
    const double s21 = std::sqrt(21.0);
    Eigen::VectorXd m(4);
    m(0) = 28.0 * q0 + 7.0 * q1 + 4.0 * s21 * q2 + 35.0;
    m(1) = 21.0 * q0 - 4.0 * s21 * q2 + 21.0;
    // this product must be negative on the stable region
    m(2) = -(7.0 * q0 + s21 * q2 + 7.0) * (7.0 * q0 - 42.0 * q1 + s21 * q2 - 35.0);
    m(3) = (7.0 * q0 + s21 * q2 + 7.0) * (3.0 * q0 - s21 * q2 + 3.0);
    return m;
  }
  if (k == 4) {
    const double q0 = qs(0), q1 = qs(1), q2 = qs(2), q3 = qs(3);
    const Eigen::MatrixXd Q = q_matrix(4, qs);
    const double th0 = Q(14, 14), th1 = Q(13, 13), th2 = Q(12, 14), th3 = Q(12, 12),
                 th4 = Q(10, 10);
    Eigen::VectorXd m(5);
    m(0) = th4 + 1.0;
    m(1) = q1 + 1.0;
    m(2) = -q3 * q3 + th3 + th4 + th3 * th4 + 1.0;
    m(3) = -q0 * q0 + q1 + th1 + q1 * th1 + 1.0;
    m(4) = 2.0 * th2 * q2 * q3 + th3 * (th4 - q2 * q2 + 1.0) +
           th0 * ((th3 + 1.0) * (th4 + 1.0) - q3 * q3) - (th4 + 1.0) * th2 * th2 + th4 -
           q2 * q2 - q3 * q3 + 1.0;
    return m;
  }
  throw std::invalid_argument("stability_margins: closed forms cover k = 1..4");
}

inline bool is_stable_closed_form(int k, const Eigen::VectorXd& qs) {
  return (stability_margins(k, qs).array() > 0.0).all();
}

// Positive definiteness of M + Q by Cholesky (M is the identity in the
// orthonormal modal frame).
inline bool is_stable_cholesky(int k, const Eigen::VectorXd& qs) {
  const int N = n_modes(k);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N, N) + q_matrix(k, qs);
  return Eigen::LLT<Eigen::MatrixXd>(A).info() == Eigen::Success;
}

struct NullspaceResult {
  int dim = 0;
  Eigen::MatrixXd Z;  // orthonormal basis, n_pairs x dim, in the paired vectorization
  std::vector<std::pair<int, int>> pairs;
};

namespace detail {
inline std::vector<std::pair<int, int>> sym_pairs(int N) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) p.emplace_back(i, j);
  return p;
}
inline Eigen::MatrixXd sym_from_pairvec(int N, const std::vector<std::pair<int, int>>& pairs,
                                        const Eigen::VectorXd& v) {
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Q(pairs[p].first, pairs[p].second) = v(p);
    Q(pairs[p].second, pairs[p].first) = v(p);
  }
  return Q;
}
inline Eigen::VectorXd pairvec_from_sym(const std::vector<std::pair<int, int>>& pairs,
                                        const Eigen::MatrixXd& Q) {
  Eigen::VectorXd v(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) v(p) = Q(pairs[p].first, pairs[p].second);
  return v;
}
}  // namespace detail

// Generic construction of the admissible family: symmetric Q such that
//   Q Dx + Dx^T Q = 0,  Q Dy + Dy^T Q = 0,  T Q = Q T,  S Q = Q S,
// found as the nullspace of the stacked linear constraints over the
// independent entries of a symmetric matrix.
inline NullspaceResult q_nullspace(int k) {
  const Operators op = modal_operators(k);
  const Eigen::MatrixXd T = rotation_matrix_modal(k);
  const Eigen::MatrixXd S = reflection_matrix_modal(k);
  const int N = op.n;
  NullspaceResult res;
  res.pairs = detail::sym_pairs(N);
  const int np = static_cast<int>(res.pairs.size());
  Eigen::MatrixXd A(4 * N * N, np);
  for (int p = 0; p < np; ++p) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(np);
    e(p) = 1.0;
    const Eigen::MatrixXd Q = detail::sym_from_pairvec(N, res.pairs, e);
    Eigen::MatrixXd c1 = Q * op.Dx + op.Dx.transpose() * Q;
    Eigen::MatrixXd c2 = Q * op.Dy + op.Dy.transpose() * Q;
    Eigen::MatrixXd c3 = T * Q - Q * T;
    Eigen::MatrixXd c4 = S * Q - Q * S;
    A.block(0, p, N * N, 1) = c1.reshaped();
    A.block(N * N, p, N * N, 1) = c2.reshaped();
    A.block(2 * N * N, p, N * N, 1) = c3.reshaped();
    A.block(3 * N * N, p, N * N, 1) = c4.reshaped();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double tol = 1e-10 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  res.dim = np - rank;
  res.Z = svd.matrixV().rightCols(res.dim);
  return res;
}

// Max-norm distance of (normalized) Q from the span of the nullspace basis.
inline double family_projection_residual(const NullspaceResult& ns, const Eigen::MatrixXd& Q) {
  Eigen::VectorXd v = detail::pairvec_from_sym(ns.pairs, Q);
  const double nv = v.norm();
  if (nv > 0.0) v /= nv;
  return (ns.Z * (ns.Z.transpose() * v) - v).cwiseAbs().maxCoeff();
}

namespace detail {
inline Eigen::MatrixXd mat_pow(const Eigen::MatrixXd& A, int p) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  for (int i = 0; i < p; ++i) R = R * A;
  return R;
}
inline double binom(int n, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}
}  // namespace detail

// Generator of the single-parameter subfamily stable in a broken Sobolev
// norm: B = sum_{m=1}^{k+1} C(k, m-1) (K^m)^T K^m with K^m = Dx^{k-m+1} Dy^{m-1},
// so that Q = c B.
inline Eigen::MatrixXd castonguay_generator(int k) {
  const Operators op = modal_operators(k);
  const int N = op.n;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
  for (int m = 1; m <= k + 1; ++m) {
    const Eigen::MatrixXd K =
        detail::mat_pow(op.Dx, k - m + 1) * detail::mat_pow(op.Dy, m - 1);
    B += detail::binom(k, m - 1) * K.transpose() * K;
  }
  return B;
}

inline Eigen::MatrixXd castonguay_q(int k, double c) { return c * castonguay_generator(k); }

// Most negative admissible c of the subfamily: bisection on the positive
// definiteness of I + c B, cross-checkable against -1/lambda_max(B).
inline double stability_limit(int k) {
  const Eigen::MatrixXd B = castonguay_generator(k);
  const int N = static_cast<int>(B.rows());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  auto pd = [&](double c) {
    return Eigen::LLT<Eigen::MatrixXd>(Eigen::MatrixXd(I + c * B)).info() == Eigen::Success;
  };
  double lo = -1.0, hi = 0.0;
  if (pd(lo)) return lo;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::abs(hi) + 1e-300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (pd(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline double stability_limit_from_eig(int k) {
  const Eigen::MatrixXd B = castonguay_generator(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  return -1.0 / es.eigenvalues().maxCoeff();
}

// Closed-form reference limits; NaN where only a numeric reference exists.
inline double stability_limit_closed_form(int k) {
  switch (k) {
    case 1: return -1.0 / 6.0;
    case 2: return -1.0 / 150.0;
    case 3: return -1.0 / 9800.0;
    case 4: return -(115.0 - std::sqrt(1129.0)) / 76204800.0;
    case 5: return -(67.0 - std::sqrt(889.0)) / 5488560000.0;
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace trifr
