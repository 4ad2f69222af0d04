#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trifr/jacobi.hpp"
#include "trifr/polybasis.hpp"
#include "trifr/refgeom.hpp"

using namespace trifr;

TEST_CASE("orthonormal Jacobi values and derivatives") {
  CHECK(jacobi(0, 0.0, 0.0, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(jacobi(1, 0.0, 0.0, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  // d/dx of the n-th mode against a central difference
  for (int n = 1; n <= 6; ++n) {
    const double x = 0.37, h = 1e-6;
    const double fd = (jacobi(n, 2.0, 0.0, x + h) - jacobi(n, 2.0, 0.0, x - h)) / (2 * h);
    CHECK(jacobi_deriv(n, 2.0, 0.0, x) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK_THROWS(jacobi(2, -1.5, 0.0, 0.0));
}

TEST_CASE("Gauss rules integrate polynomials exactly") {
  const Rule1D gl = gauss_legendre(4);  // exact through degree 7
  CHECK(gl.w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += gl.w(i) * std::pow(gl.x(i), 6);
  CHECK(s == doctest::Approx(2.0 / 7.0).epsilon(1e-13));

  const Rule1D gj = gauss_jacobi(3, 1.0, 0.0);  // weight (1-x)
  CHECK(gj.w.sum() == doctest::Approx(2.0).epsilon(1e-13));  // integral of (1-x)
  s = 0.0;
  for (int i = 0; i < 3; ++i) s += gj.w(i) * gj.x(i);  // integral of (1-x) x = -2/3
  CHECK(s == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("reference geometry") {
  CHECK(kRefArea == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (int e = 0; e < 3; ++e) {
    const RefEdge ed = ref_edge(e);
    CHECK((ed.b - ed.a).norm() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ed.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // outward: positive component along (midpoint - centroid), centroid = origin
    const Eigen::Vector2d mid = 0.5 * (ed.a + ed.b);
    CHECK(ed.normal.dot(mid) > 0.0);
  }
  // centroid of the reference triangle is the origin
  const Eigen::Vector2d c =
      (ref_vertex(0) + ref_vertex(1) + ref_vertex(2)) / 3.0;
  CHECK(c.norm() < 1e-15);
  // rotation maps vertex cycle, reflection fixes the top vertex
  const Eigen::Matrix2d R = ref_rotation();
  CHECK((R * ref_vertex(2) - ref_vertex(1)).norm() < 1e-14);
  CHECK((R * ref_vertex(1) - ref_vertex(0)).norm() < 1e-14);
  const Eigen::Matrix2d S = ref_reflection();
  CHECK((S * ref_vertex(2) - ref_vertex(2)).norm() < 1e-15);
  CHECK((S * ref_vertex(0) - ref_vertex(1)).norm() < 1e-14);
}

TEST_CASE("mode list is degree-then-lex ordered") {
  const auto m1 = modes_deglex(2);
  REQUIRE(m1.size() == 6);
  CHECK(m1[0] == std::pair<int, int>(0, 0));
  CHECK(m1[1] == std::pair<int, int>(0, 1));
  CHECK(m1[2] == std::pair<int, int>(1, 0));
  CHECK(m1[3] == std::pair<int, int>(0, 2));
  CHECK(m1[4] == std::pair<int, int>(1, 1));
  CHECK(m1[5] == std::pair<int, int>(2, 0));
  CHECK(n_modes(4) == 15);
}

TEST_CASE("volume quadrature: symmetric, positive, exact on the basis") {
  for (int strength : {1, 2, 4, 8, 13, 23}) {
    const QuadratureRule r = volume_quadrature(strength);
    CHECK(r.w.minCoeff() > 0.0);
    CHECK(r.w.sum() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    // first moment vanishes by symmetry
    CHECK((r.pts.transpose() * r.w).norm() < 1e-12);
  }
  // orthonormality of the basis under a strength-2k rule
  for (int k : {1, 2, 3, 4}) {
    const QuadratureRule r = volume_quadrature(2 * k);
    const Eigen::MatrixXd V = vandermonde(k, r.pts);
    const Eigen::MatrixXd G = V.transpose() * r.w.asDiagonal() * V;
    CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("constant basis mode and collapsed-coordinate guard") {
  CHECK(dubiner(0, 0, 0.2, -0.4) == doctest::Approx(0.7598356856515923).epsilon(1e-15));
  // top vertex is the collapsed point of the coordinate map
  const Eigen::Vector2d v3 = ref_vertex(2);
  for (int v = 0; v <= 2; ++v)
    for (int w = 0; v + w <= 2; ++w) {
      CHECK(std::isfinite(dubiner(v, w, v3.x(), v3.y())));
      CHECK(std::isfinite(dubiner_grad(v, w, v3.x(), v3.y()).norm()));
    }
}

TEST_CASE("analytic basis gradients match finite differences") {
  const double h = 1e-6;
  const Eigen::Vector2d pts[] = {{0.11, -0.31}, {-0.42, 0.05}, {0.3, 0.4}};
  for (const auto& p : pts)
    for (int v = 0; v <= 4; ++v)
      for (int w = 0; v + w <= 4; ++w) {
        const Eigen::Vector2d g = dubiner_grad(v, w, p.x(), p.y());
        const double fx =
            (dubiner(v, w, p.x() + h, p.y()) - dubiner(v, w, p.x() - h, p.y())) / (2 * h);
        const double fy =
            (dubiner(v, w, p.x(), p.y() + h) - dubiner(v, w, p.x(), p.y() - h)) / (2 * h);
        CHECK(g.x() == doctest::Approx(fx).epsilon(5e-6));
        CHECK(g.y() == doctest::Approx(fy).epsilon(5e-6));
      }
}

TEST_CASE("gradient is consistent with the divergence theorem") {
  // integral of grad(phi) over the element equals the boundary integral of
  // phi n, for every mode
  const int k = 3;
  const QuadratureRule r = volume_quadrature(2 * k);
  const auto [Vx, Vy] = grad_vandermonde(k, r.pts);
  const EdgeFluxPoints fp = edge_flux_points(k + 2);  // boundary rule exact to deg k
  const Eigen::MatrixXd Vb = vandermonde(k, fp.pts);
  for (int m = 0; m < n_modes(k); ++m) {
    const double ix = r.w.dot(Vx.col(m));
    const double iy = r.w.dot(Vy.col(m));
    double bx = 0.0, by = 0.0;
    for (Eigen::Index f = 0; f < fp.w.size(); ++f) {
      bx += fp.w(f) * fp.normals(f, 0) * Vb(f, m);
      by += fp.w(f) * fp.normals(f, 1) * Vb(f, m);
    }
    CHECK(ix == doctest::Approx(bx).epsilon(1e-10).scale(1.0));
    CHECK(iy == doctest::Approx(by).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("edge flux points: placement, weights, normals") {
  const EdgeFluxPoints fp1 = edge_flux_points(1);
  REQUIRE(fp1.w.size() == 6);
  CHECK(fp1.w.sum() == doctest::Approx(6.0).epsilon(1e-14));  // perimeter
  CHECK(fp1.w(0) == doctest::Approx(1.0).epsilon(1e-14));
  // first edge runs from vertex 1 to vertex 2 at y = -1/sqrt(3)
  CHECK(fp1.pts(0, 1) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(fp1.pts(0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(fp1.pts(1, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(fp1.normals(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fp1.normals(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
  // points ascend along each edge
  const EdgeFluxPoints fp3 = edge_flux_points(3);
  CHECK(fp3.per_edge == 4);
  for (int e = 0; e < 3; ++e) {
    const RefEdge ed = ref_edge(e);
    const Eigen::Vector2d dir = (ed.b - ed.a).normalized();
    double prev = -1e30;
    for (int j = 0; j < 4; ++j) {
      const Eigen::Vector2d p = fp3.pts.row(e * 4 + j).transpose();
      const double t = (p - ed.a).dot(dir);
      CHECK(t > prev);
      prev = t;
      CHECK((fp3.normals.row(e * 4 + j).transpose() - ed.normal).norm() < 1e-14);
    }
  }
}

TEST_CASE("solution points: count, symmetry, vertices included") {
  for (int k : {1, 2, 3, 4, 6}) {
    const auto pts = solution_points(k);
    REQUIRE(pts.rows() == n_modes(k));
    // every rotated point is again a solution point
    const Eigen::Matrix2d R = ref_rotation();
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      const Eigen::Vector2d q = R * pts.row(i).transpose();
      double best = 1e30;
      for (Eigen::Index j = 0; j < pts.rows(); ++j)
        best = std::min(best, (q - pts.row(j).transpose()).norm());
      CHECK(best < 1e-10);
    }
    // vertices present
    for (int v = 0; v < 3; ++v) {
      double best = 1e30;
      for (Eigen::Index j = 0; j < pts.rows(); ++j)
        best = std::min(best, (ref_vertex(v) - pts.row(j).transpose()).norm());
      CHECK(best < 1e-12);
    }
  }
  // interpolation is well posed
  for (int k : {1, 2, 3, 4}) {
    const Eigen::MatrixXd V = vandermonde(k, solution_points(k));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    CHECK(lu.isInvertible());
  }
}
