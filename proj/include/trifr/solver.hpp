#pragma once
// Desk-scale solver: periodic triangulated square, flux reconstruction
// context with a symmetric norm modification Q, linear advection and
// compressible Euler right-hand sides, classical RK4, energy/mass monitors,
// error norms, the translating vortex benchmark, and convergence orders.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "trifr/correction.hpp"
#include "trifr/operators.hpp"
#include "trifr/polybasis.hpp"
#include "trifr/qfamily.hpp"

namespace trifr {

// ---------------------------------------------------------------------------
// mesh

struct Mesh {
  int nx = 0;  // grid lines per direction on [-half, half]
  double half = 10.0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> verts;
  Eigen::Matrix<int, Eigen::Dynamic, 3> tris;  // counterclockwise vertex ids
  std::vector<std::array<int, 2>> nbr;         // per elem*3+edge: {elem, edge} of the match
  std::vector<Eigen::Matrix2d> J, Jinv;        // affine map from the reference triangle
  Eigen::VectorXd detJ;
};

// Uniform triangulation of the periodic square [-half, half]^2: (nx-1)^2
// cells, each split along the bottom-left/top-right diagonal. Faces are
// matched periodically by canonical (wrapped) vertex indices.
inline Mesh build_mesh(int nx, double half = 10.0) {
  if (nx < 3) throw std::invalid_argument("build_mesh: need nx >= 3");
  Mesh m;
  m.nx = nx;
  m.half = half;
  const int nc = nx - 1;
  const double h = 2.0 * half / nc;
  m.verts.resize(nx * nx, 2);
  for (int j = 0; j < nx; ++j)
    for (int i = 0; i < nx; ++i) {
      m.verts(j * nx + i, 0) = -half + i * h;
      m.verts(j * nx + i, 1) = -half + j * h;
    }
  m.tris.resize(2 * nc * nc, 3);
  int t = 0;
  for (int j = 0; j < nc; ++j)
    for (int i = 0; i < nc; ++i) {
      const int A = j * nx + i, B = j * nx + i + 1, C = (j + 1) * nx + i + 1,
                D = (j + 1) * nx + i;
      m.tris.row(t++) << A, B, C;
      m.tris.row(t++) << A, C, D;
    }

  // canonical (periodically wrapped) vertex index
  auto canon = [&](int vid) {
    const int i = vid % nx, j = vid / nx;
    return (j % nc) * nc + (i % nc);
  };
  std::map<std::pair<int, int>, std::vector<std::array<int, 2>>> faces;
  const int E = static_cast<int>(m.tris.rows());
  for (int e = 0; e < E; ++e)
    for (int s = 0; s < 3; ++s) {
      const int a = canon(m.tris(e, s)), b = canon(m.tris(e, (s + 1) % 3));
      faces[{std::min(a, b), std::max(a, b)}].push_back({e, s});
    }
  m.nbr.assign(3 * E, {-1, -1});
  for (const auto& [key, lst] : faces) {
    if (lst.size() != 2)
      throw std::runtime_error("build_mesh: face matching failed (periodic pairing)");
    m.nbr[lst[0][0] * 3 + lst[0][1]] = lst[1];
    m.nbr[lst[1][0] * 3 + lst[1][1]] = lst[0];
  }

  Eigen::Matrix2d R;
  R.col(0) = ref_vertex(1) - ref_vertex(0);
  R.col(1) = ref_vertex(2) - ref_vertex(0);
  const Eigen::Matrix2d Rinv = R.inverse();
  m.J.resize(E);
  m.Jinv.resize(E);
  m.detJ.resize(E);
  for (int e = 0; e < E; ++e) {
    Eigen::Matrix2d P;
    P.col(0) = (m.verts.row(m.tris(e, 1)) - m.verts.row(m.tris(e, 0))).transpose();
    P.col(1) = (m.verts.row(m.tris(e, 2)) - m.verts.row(m.tris(e, 0))).transpose();
    m.J[e] = P * Rinv;
    m.Jinv[e] = m.J[e].inverse();
    m.detJ(e) = m.J[e].determinant();
    if (m.detJ(e) <= 0.0) throw std::runtime_error("build_mesh: inverted element");
  }
  return m;
}

// ---------------------------------------------------------------------------
// context

struct SolverAbort : std::runtime_error {
  int elem = -1;
  double time = 0.0;
  SolverAbort(const std::string& what, int elem_, double time_)
      : std::runtime_error(what), elem(elem_), time(time_) {}
};

using State = std::vector<Eigen::MatrixXd>;  // one (N x E) matrix per variable

struct FRContext {
  int k = 0, N = 0, nfp = 0;
  Mesh mesh;
  Eigen::MatrixXd Dx, Dy, L, C, IQ;  // modal reference operators
  Eigen::MatrixXd V, Vinv;           // solution-point transfer
  Eigen::Matrix<double, Eigen::Dynamic, 2> sol_pts;
  std::vector<Eigen::MatrixXd> DxPhys, DyPhys;  // per element
  Eigen::MatrixXd fp_nx, fp_ny, fp_gamma;       // nfp x E face data
  Eigen::MatrixXi nbr_elem, nbr_idx;            // nfp x E flux point pairing
  // projection / error quadrature (strength 23)
  QuadratureRule err_rule;
  Eigen::MatrixXd PhiErr;  // nq x N
  Eigen::MatrixXd ProjW;   // N x nq, maps point values to modal coefficients

  Eigen::Vector2d phys_point(int e, double xi, double eta) const {
    return mesh.verts.row(mesh.tris(e, 0)).transpose() +
           mesh.J[e] * (Eigen::Vector2d(xi, eta) - ref_vertex(0));
  }
};

inline FRContext make_context(int k, const Mesh& mesh, const Eigen::MatrixXd& Q) {
  FRContext c;
  c.k = k;
  c.N = n_modes(k);
  c.mesh = mesh;
  const Operators op = modal_operators(k);
  c.nfp = op.nfp;
  c.Dx = op.Dx;
  c.Dy = op.Dy;
  c.L = op.L;
  c.C = correction_matrix(op, Q);
  c.IQ = op.M + Q;
  c.sol_pts = solution_points(k);
  c.V = vandermonde(k, c.sol_pts);
  c.Vinv = c.V.partialPivLu().solve(Eigen::MatrixXd::Identity(c.N, c.N));

  const int E = static_cast<int>(mesh.tris.rows());
  c.DxPhys.resize(E);
  c.DyPhys.resize(E);
  for (int e = 0; e < E; ++e) {
    const Eigen::Matrix2d& Ji = mesh.Jinv[e];
    c.DxPhys[e] = Ji(0, 0) * op.Dx + Ji(1, 0) * op.Dy;
    c.DyPhys[e] = Ji(0, 1) * op.Dx + Ji(1, 1) * op.Dy;
  }

  const int m = k + 1;
  c.fp_nx.resize(c.nfp, E);
  c.fp_ny.resize(c.nfp, E);
  c.fp_gamma.resize(c.nfp, E);
  c.nbr_elem.resize(c.nfp, E);
  c.nbr_idx.resize(c.nfp, E);
  for (int e = 0; e < E; ++e)
    for (int s = 0; s < 3; ++s) {
      const Eigen::Vector2d A = mesh.verts.row(mesh.tris(e, s)).transpose();
      const Eigen::Vector2d B = mesh.verts.row(mesh.tris(e, (s + 1) % 3)).transpose();
      const Eigen::Vector2d t = B - A;
      const double len = t.norm();
      const Eigen::Vector2d n(t.y() / len, -t.x() / len);
      const auto [ne, ns] = mesh.nbr[e * 3 + s];
      for (int j = 0; j < m; ++j) {
        const int f = s * m + j;
        c.fp_nx(f, e) = n.x();
        c.fp_ny(f, e) = n.y();
        c.fp_gamma(f, e) = len / 2.0;
        c.nbr_elem(f, e) = ne;
        c.nbr_idx(f, e) = ns * m + (m - 1 - j);  // opposite traversal direction
      }
    }

  c.err_rule = volume_quadrature(23);
  c.PhiErr = vandermonde(k, c.err_rule.pts);
  c.ProjW = c.PhiErr.transpose() * c.err_rule.w.asDiagonal();
  return c;
}

inline FRContext make_context(int k, int nx, const Eigen::VectorXd& qs) {
  return make_context(k, build_mesh(nx), q_matrix(k, qs));
}

// ---------------------------------------------------------------------------
// projection, diagnostics, errors

// Modal coefficients of a function on every element (exact L2 projection up
// to the strength-23 rule).
inline Eigen::MatrixXd project(const FRContext& c,
                               const std::function<double(double, double)>& f) {
  const int E = static_cast<int>(c.mesh.tris.rows());
  const Eigen::Index nq = c.err_rule.w.size();
  Eigen::MatrixXd U(c.N, E);
  Eigen::VectorXd vals(nq);
  for (int e = 0; e < E; ++e) {
    for (Eigen::Index q = 0; q < nq; ++q) {
      const Eigen::Vector2d x = c.phys_point(e, c.err_rule.pts(q, 0), c.err_rule.pts(q, 1));
      vals(q) = f(x.x(), x.y());
    }
    U.col(e) = c.ProjW * vals;
  }
  return U;
}

// Modal coefficients whose nodal values collocate f at the solution points.
// Initial conditions enter this way: the state is nodal, so pointwise-positive
// data (e.g. the vortex density) stays positive at every solution point.
inline Eigen::MatrixXd collocate(const FRContext& c,
                                 const std::function<double(double, double)>& f) {
  const int E = static_cast<int>(c.mesh.tris.rows());
  Eigen::MatrixXd U(c.N, E);
  Eigen::VectorXd vals(c.N);
  for (int e = 0; e < E; ++e) {
    for (int i = 0; i < c.N; ++i) {
      const Eigen::Vector2d x = c.phys_point(e, c.sol_pts(i, 0), c.sol_pts(i, 1));
      vals(i) = f(x.x(), x.y());
    }
    U.col(e) = c.Vinv * vals;
  }
  return U;
}

// Discrete energy sum_e detJ_e u_e^T (M + Q) u_e, summed over variables.
inline double energy(const FRContext& c, const State& u) {
  double E = 0.0;
  for (const auto& comp : u)
    for (Eigen::Index e = 0; e < comp.cols(); ++e)
      E += c.mesh.detJ(e) * comp.col(e).dot(c.IQ * comp.col(e));
  return E;
}

// Integral of one variable over the domain.
inline double total_mass(const FRContext& c, const Eigen::MatrixXd& u) {
  const double c0 = std::pow(3.0, 0.25);  // integral of the constant basis mode
  double m = 0.0;
  for (Eigen::Index e = 0; e < u.cols(); ++e) m += c.mesh.detJ(e) * c0 * u(0, e);
  return m;
}

struct ErrorNorms {
  double E1 = 0.0, E2 = 0.0;
};

// Unnormalized L1/L2 errors of one variable against an exact field,
// accumulated with the strength-23 rule on every element.
inline ErrorNorms error_norms(const FRContext& c, const Eigen::MatrixXd& u,
                              const std::function<double(double, double)>& exact) {
  const int E = static_cast<int>(c.mesh.tris.rows());
  const Eigen::Index nq = c.err_rule.w.size();
  ErrorNorms n;
  for (int e = 0; e < E; ++e) {
    const Eigen::VectorXd uh = c.PhiErr * u.col(e);
    for (Eigen::Index q = 0; q < nq; ++q) {
      const Eigen::Vector2d x = c.phys_point(e, c.err_rule.pts(q, 0), c.err_rule.pts(q, 1));
      const double d = uh(q) - exact(x.x(), x.y());
      n.E1 += c.mesh.detJ(e) * c.err_rule.w(q) * std::abs(d);
      n.E2 += c.mesh.detJ(e) * c.err_rule.w(q) * d * d;
    }
  }
  n.E2 = std::sqrt(n.E2);
  return n;
}

// ---------------------------------------------------------------------------
// right-hand sides

struct AdvectionProblem {
  Eigen::Vector2d a{1.0, 0.5};
  double kappa = 1.0;  // interface upwinding: 0 central, 1 full upwind
};

inline State advection_rhs(const FRContext& c, const State& u, const AdvectionProblem& p) {
  const Eigen::MatrixXd& U = u[0];
  const int E = static_cast<int>(U.cols());
  const Eigen::MatrixXd UF = c.L * U;
  Eigen::MatrixXd jump(c.nfp, E);
  for (int e = 0; e < E; ++e)
    for (int f = 0; f < c.nfp; ++f) {
      const double uin = UF(f, e);
      const double uout = UF(c.nbr_idx(f, e), c.nbr_elem(f, e));
      const double an = p.a.x() * c.fp_nx(f, e) + p.a.y() * c.fp_ny(f, e);
      const double fstar =
          an * 0.5 * (uin + uout) - p.kappa * 0.5 * std::abs(an) * (uout - uin);
      jump(f, e) = c.fp_gamma(f, e) * (fstar - an * uin);
    }
  State r(1, Eigen::MatrixXd(c.N, E));
  for (int e = 0; e < E; ++e)
    r[0].col(e) = -(p.a.x() * (c.DxPhys[e] * U.col(e)) + p.a.y() * (c.DyPhys[e] * U.col(e))) -
                  (c.C * jump.col(e)) / c.mesh.detJ(e);
  return r;
}

struct EulerProblem {
  double gamma = 1.4;
};

namespace detailso {

inline double pressure(const Eigen::Vector4d& q, double gamma) {
  return (gamma - 1.0) * (q(3) - 0.5 * (q(1) * q(1) + q(2) * q(2)) / q(0));
}

inline Eigen::Vector4d euler_normal_flux(const Eigen::Vector4d& q, double nx, double ny,
                                         double gamma) {
  const double rho = q(0), u = q(1) / q(0), v = q(2) / q(0);
  const double p = pressure(q, gamma);
  const double un = u * nx + v * ny;
  return {rho * un, q(1) * un + p * nx, q(2) * un + p * ny, (q(3) + p) * un};
}

}  // namespace detailso

// Rusanov (local Lax-Friedrichs) interface flux in direction n.
inline Eigen::Vector4d rusanov_flux(const Eigen::Vector4d& qL, const Eigen::Vector4d& qR,
                                    double nx, double ny, double gamma) {
  const double pL = detailso::pressure(qL, gamma), pR = detailso::pressure(qR, gamma);
  const double cL = std::sqrt(gamma * pL / qL(0)), cR = std::sqrt(gamma * pR / qR(0));
  const double unL = (qL(1) * nx + qL(2) * ny) / qL(0);
  const double unR = (qR(1) * nx + qR(2) * ny) / qR(0);
  const double lam = std::max(std::abs(unL) + cL, std::abs(unR) + cR);
  return 0.5 * (detailso::euler_normal_flux(qL, nx, ny, gamma) +
                detailso::euler_normal_flux(qR, nx, ny, gamma)) -
         0.5 * lam * (qR - qL);
}

inline State euler_rhs(const FRContext& c, const State& u, const EulerProblem& p, double time) {
  const int E = static_cast<int>(u[0].cols());
  std::array<Eigen::MatrixXd, 4> UF;
  for (int v = 0; v < 4; ++v) UF[v] = c.L * u[v];

  State r(4, Eigen::MatrixXd(c.N, E));
  std::array<Eigen::MatrixXd, 4> jump;
  for (int v = 0; v < 4; ++v) jump[v].resize(c.nfp, E);

  for (int e = 0; e < E; ++e)
    for (int f = 0; f < c.nfp; ++f) {
      Eigen::Vector4d qin, qout;
      const int ne = c.nbr_elem(f, e), nf = c.nbr_idx(f, e);
      for (int v = 0; v < 4; ++v) {
        qin(v) = UF[v](f, e);
        qout(v) = UF[v](nf, ne);
      }
      if (qin(0) <= 0.0 || detailso::pressure(qin, p.gamma) <= 0.0)
        throw SolverAbort("positivity violated at a flux point of element " +
                              std::to_string(e) + " at t = " + std::to_string(time),
                          e, time);
      if (qout(0) <= 0.0 || detailso::pressure(qout, p.gamma) <= 0.0)
        throw SolverAbort("positivity violated at a flux point of element " +
                              std::to_string(ne) + " at t = " + std::to_string(time),
                          ne, time);
      const double nx = c.fp_nx(f, e), ny = c.fp_ny(f, e);
      const Eigen::Vector4d fstar = rusanov_flux(qin, qout, nx, ny, p.gamma);
      const Eigen::Vector4d floc = detailso::euler_normal_flux(qin, nx, ny, p.gamma);
      for (int v = 0; v < 4; ++v) jump[v](f, e) = c.fp_gamma(f, e) * (fstar(v) - floc(v));
    }

  Eigen::MatrixXd qn(c.N, 4), fx(c.N, 4), fy(c.N, 4);
  for (int e = 0; e < E; ++e) {
    for (int v = 0; v < 4; ++v) qn.col(v) = c.V * u[v].col(e);
    for (int i = 0; i < c.N; ++i) {
      const Eigen::Vector4d q = qn.row(i).transpose();
      const double pr = detailso::pressure(q, p.gamma);
      if (q(0) <= 0.0 || pr <= 0.0)
        throw SolverAbort("positivity violated at a solution point of element " +
                              std::to_string(e) + " at t = " + std::to_string(time),
                          e, time);
      fx.row(i) = detailso::euler_normal_flux(q, 1.0, 0.0, p.gamma).transpose();
      fy.row(i) = detailso::euler_normal_flux(q, 0.0, 1.0, p.gamma).transpose();
    }
    const Eigen::MatrixXd fxm = c.Vinv * fx, fym = c.Vinv * fy;
    for (int v = 0; v < 4; ++v)
      r[v].col(e) = -(c.DxPhys[e] * fxm.col(v) + c.DyPhys[e] * fym.col(v)) -
                    (c.C * jump[v].col(e)) / c.mesh.detJ(e);
  }
  return r;
}

// ---------------------------------------------------------------------------
// time integration

// One classical fourth-order Runge-Kutta step.
inline State rk4_step(const State& u, double t, double dt,
                      const std::function<State(const State&, double)>& rhs) {
  auto axpy = [](const State& a, double s, const State& b) {
    State r = a;
    for (std::size_t v = 0; v < r.size(); ++v) r[v] += s * b[v];
    return r;
  };
  const State k1 = rhs(u, t);
  const State k2 = rhs(axpy(u, dt / 2.0, k1), t + dt / 2.0);
  const State k3 = rhs(axpy(u, dt / 2.0, k2), t + dt / 2.0);
  const State k4 = rhs(axpy(u, dt, k3), t + dt);
  State r = u;
  for (std::size_t v = 0; v < r.size(); ++v)
    r[v] += dt / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);
  return r;
}

// ---------------------------------------------------------------------------
// benchmark fields

// Periodic wrap into [-half, half).
inline double wrap_periodic(double v, double half = 10.0) {
  return v - 2.0 * half * std::floor((v + half) / (2.0 * half));
}

struct VortexParams {
  double mach = 0.4, beta = 13.5, radius = 1.5, gamma = 1.4;
};

// Primitive state (rho, u, v, p) of the isentropic vortex centered at the
// origin, advected by the uniform background (0, 1).
inline std::array<double, 4> vortex_primitive(const VortexParams& vp, double x, double y) {
  constexpr double pi = std::numbers::pi;
  const double rbar = (1.0 - x * x - y * y) / (2.0 * vp.radius * vp.radius);
  const double s = vp.beta * vp.mach / pi;
  const double base = 1.0 - 0.5 * s * s * (vp.gamma - 1.0) * std::exp(2.0 * rbar);
  if (base <= 0.0)
    throw std::runtime_error("vortex_primitive: parameters give a nonpositive density base");
  const double rho = std::pow(base, 1.0 / (vp.gamma - 1.0));
  const double u = vp.beta * y * std::exp(rbar) / (2.0 * pi * vp.radius);
  const double v = 1.0 - vp.beta * x * std::exp(rbar) / (2.0 * pi * vp.radius);
  const double p =
      1.0 / (vp.gamma * vp.mach * vp.mach) * std::pow(base, vp.gamma / (vp.gamma - 1.0));
  return {rho, u, v, p};
}

inline std::array<double, 4> vortex_conserved(const VortexParams& vp, double x, double y) {
  const auto [rho, u, v, p] = vortex_primitive(vp, x, y);
  return {rho, rho * u, rho * v, p / (vp.gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
}

// Exact translated-and-wrapped vortex at time t (translation velocity (0,1)).
inline std::array<double, 4> vortex_exact(const VortexParams& vp, double x, double y, double t,
                                          double half = 10.0) {
  return vortex_conserved(vp, wrap_periodic(x, half), wrap_periodic(y - t, half));
}

// ---------------------------------------------------------------------------
// case driver

struct RunConfig {
  std::string equation = "advection";
  int k = 3;
  int nx = 10;
  double dt = 5e-4;
  double t_final = 0.5;
  double kappa = 1.0;
  Eigen::VectorXd qs;  // empty means all-zero parameters
  double ax = 1.0, ay = 0.5;
  VortexParams vortex;
  int output_every = 0;  // error rows every this many steps; 0 = final only
  std::string out_prefix = "case";
};

struct RunResult {
  bool aborted = false;
  std::string abort_message;
  double E1 = 0.0, E2 = 0.0;  // final-time error norms (density for Euler)
  std::vector<std::array<double, 3>> energy_rows;  // t, energy, mass
  std::vector<std::array<double, 3>> error_rows;   // t, E1, E2
  std::vector<std::array<double, 3>> field_rows;   // x, y, value at solution points
  State final_state;
};

inline double advection_ic(double x, double y) {
  constexpr double pi = std::numbers::pi;
  return std::sin(pi * (x + y) / 10.0);
}

inline RunResult run_case(const RunConfig& cfg) {
  Eigen::VectorXd qs = cfg.qs;
  if (qs.size() == 0) qs = Eigen::VectorXd::Zero(q_param_count(cfg.k));
  FRContext ctx = make_context(cfg.k, cfg.nx, qs);
  const bool euler = cfg.equation == "euler";

  State u;
  if (euler) {
    u.resize(4);
    for (int v = 0; v < 4; ++v)
      u[v] = collocate(ctx, [&](double x, double y) { return vortex_conserved(cfg.vortex, x, y)[v]; });
  } else {
    u.resize(1);
    u[0] = collocate(ctx, advection_ic);
  }

  const AdvectionProblem ap{{cfg.ax, cfg.ay}, cfg.kappa};
  const EulerProblem ep{cfg.vortex.gamma};
  auto rhs = [&](const State& s, double t) {
    return euler ? euler_rhs(ctx, s, ep, t) : advection_rhs(ctx, s, ap);
  };
  auto exact_at = [&](double t) {
    return std::function<double(double, double)>([&, t](double x, double y) {
      if (euler) return vortex_exact(cfg.vortex, x, y, t, ctx.mesh.half)[0];
      return advection_ic(wrap_periodic(x - cfg.ax * t, ctx.mesh.half),
                          wrap_periodic(y - cfg.ay * t, ctx.mesh.half));
    });
  };

  const int n_steps = std::max(1, static_cast<int>(std::llround(cfg.t_final / cfg.dt)));
  const double dt = cfg.t_final / n_steps;
  RunResult res;
  auto log_energy = [&](double t) {
    res.energy_rows.push_back({t, energy(ctx, u), total_mass(ctx, u[0])});
  };
  auto log_errors = [&](double t) {
    const ErrorNorms n = error_norms(ctx, u[0], exact_at(t));
    res.error_rows.push_back({t, n.E1, n.E2});
    res.E1 = n.E1;
    res.E2 = n.E2;
  };
  log_energy(0.0);
  try {
    for (int s = 1; s <= n_steps; ++s) {
      u = rk4_step(u, (s - 1) * dt, dt, rhs);
      log_energy(s * dt);
      if (cfg.output_every > 0 && s % cfg.output_every == 0 && s != n_steps)
        log_errors(s * dt);
    }
    log_errors(cfg.t_final);
  } catch (const SolverAbort& ab) {
    res.aborted = true;
    res.abort_message = ab.what();
  }
  res.final_state = u;
  const QuadratureRule frule = volume_quadrature(2 * cfg.k);
  const Eigen::MatrixXd PhiF = vandermonde(cfg.k, frule.pts);
  const int E = static_cast<int>(ctx.mesh.tris.rows());
  for (int e = 0; e < E; ++e) {
    const Eigen::VectorXd vals = PhiF * u[0].col(e);
    for (Eigen::Index i = 0; i < PhiF.rows(); ++i) {
      const Eigen::Vector2d x = ctx.phys_point(e, frule.pts(i, 0), frule.pts(i, 1));
      res.field_rows.push_back({x.x(), x.y(), vals(i)});
    }
  }
  return res;
}

// Least-squares slope of log(err) against log(1/nx).
inline double convergence_order(const std::vector<int>& nx, const std::vector<double>& err) {
  const std::size_t n = nx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(1.0 / nx[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace trifr
