#pragma once
// Orthonormal Jacobi polynomials, classical Legendre polynomials, and
// Gauss-Jacobi quadrature rules on [-1, 1].

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace trifr {

// Orthonormal Jacobi polynomial psi_n^{(a,b)}(x): orthonormal with respect to
// the weight (1-x)^a (1+x)^b on [-1, 1]. Requires a, b > -1.
inline double jacobi(int n, double a, double b, double x) {
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("jacobi: weights require a, b > -1");
  if (n < 0) throw std::invalid_argument("jacobi: n must be nonnegative");
  const double g0 = std::pow(2.0, a + b + 1.0) / (a + b + 1.0) * std::tgamma(a + 1.0) *
                    std::tgamma(b + 1.0) / std::tgamma(a + b + 1.0);
  double pm1 = 1.0 / std::sqrt(g0);
  if (n == 0) return pm1;
  const double g1 = (a + 1.0) * (b + 1.0) / (a + b + 3.0) * g0;
  double p = ((a + b + 2.0) * x / 2.0 + (a - b) / 2.0) / std::sqrt(g1);
  if (n == 1) return p;
  double aold = 2.0 / (2.0 + a + b) * std::sqrt((a + 1.0) * (b + 1.0) / (a + b + 3.0));
  for (int i = 1; i < n; ++i) {
    const double h1 = 2.0 * i + a + b;
    const double anew = 2.0 / (h1 + 2.0) *
                        std::sqrt((i + 1.0) * (i + 1.0 + a + b) * (i + 1.0 + a) * (i + 1.0 + b) /
                                  ((h1 + 1.0) * (h1 + 3.0)));
    const double bnew = -(a * a - b * b) / (h1 * (h1 + 2.0));
    const double pnew = ((x - bnew) * p - aold * pm1) / anew;
    pm1 = p;
    p = pnew;
    aold = anew;
  }
  return p;
}

// Derivative of the orthonormal Jacobi polynomial:
//   d/dx psi_n^{(a,b)} = sqrt(n (n + a + b + 1)) psi_{n-1}^{(a+1,b+1)}.
inline double jacobi_deriv(int n, double a, double b, double x) {
  if (n == 0) return 0.0;
  return std::sqrt(n * (n + a + b + 1.0)) * jacobi(n - 1, a + 1.0, b + 1.0, x);
}

// Classical Legendre polynomial P_n with P_n(1) = 1.
inline double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int i = 1; i < n; ++i) {
    const double pnew = ((2.0 * i + 1.0) * x * p - i * pm1) / (i + 1.0);
    pm1 = p;
    p = pnew;
  }
  return p;
}

struct Rule1D {
  Eigen::VectorXd x;  // nodes in ascending order
  Eigen::VectorXd w;  // positive weights
};

// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1],
// computed from the symmetric tridiagonal recurrence matrix (Golub-Welsch).
// Exact for polynomials of degree <= 2n - 1 against the weight.
inline Rule1D gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: require a, b > -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  J(0, 0) = (b - a) / (a + b + 2.0);
  for (int m = 1; m < n; ++m) {
    const double h1 = 2.0 * m + a + b;
    J(m, m) = (b * b - a * a) / (h1 * (h1 + 2.0));
    const double off = std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) /
                                 ((h1 * h1 - 1.0) * h1 * h1));
    J(m, m - 1) = off;
    J(m - 1, m) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 =
      std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
      std::tgamma(a + b + 2.0);
  Rule1D r;
  r.x = es.eigenvalues();
  r.w = mu0 * es.eigenvectors().row(0).transpose().array().square();
  return r;
}

inline Rule1D gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace trifr
