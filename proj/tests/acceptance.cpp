// Acceptance gate: eleven numbered criteria, each printing one PASS/FAIL
// line per sub-check with the measured value, the expected value, and the
// tolerance. Exit code 0 only if the requested criteria pass. Run with
// --criterion N (or --all).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "trifr/correction.hpp"
#include "trifr/operators.hpp"
#include "trifr/polybasis.hpp"
#include "trifr/qfamily.hpp"
#include "trifr/sd1d.hpp"
#include "trifr/sdtri.hpp"
#include "trifr/solver.hpp"

#include "balanced_vortex.hpp"

using namespace trifr;

namespace {

struct Checker {
  bool all = true;
  void line(bool ok, const char* fmtstr, ...) {
    all &= ok;
    std::printf("%s: ", ok ? "PASS" : "FAIL");
    va_list args;
    va_start(args, fmtstr);
    std::vprintf(fmtstr, args);
    va_end(args);
    std::printf("\n");
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

// --------------------------------------------------------------------------
bool criterion1() {
  std::puts("criterion 1: summation-by-parts identity, modal and nodal, k = 1..4");
  Checker c;
  const double t0 = now_seconds();
  for (int k = 1; k <= 4; ++k) {
    const double rm = sbp_residual(modal_operators(k));
    c.line(rm < 1e-11, "k=%d modal residual %.3e < 1e-11", k, rm);
    const double rn = sbp_residual(nodal_operators(k));
    c.line(rn < 1e-11, "k=%d nodal residual %.3e < 1e-11", k, rn);
  }
  const double dt = now_seconds() - t0;
  c.line(dt < 1.0, "runtime %.2f s < 1 s", dt);
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion2() {
  std::puts("criterion 2: single-parameter stability limits, k = 1..6");
  Checker c;
  const double t0 = now_seconds();
  for (int k = 1; k <= 5; ++k) {
    const double num = stability_limit(k);
    const double cf = stability_limit_closed_form(k);
    const double rel = std::abs(num - cf) / std::abs(cf);
    c.line(rel < 1e-8, "k=%d limit %.12e vs closed form %.12e, rel %.3e < 1e-8", k, num, cf, rel);
  }
  const double num6 = stability_limit(6);
  const double ref6 = -2.88363e-11;
  const double rel6 = std::abs(num6 - ref6) / std::abs(ref6);
  c.line(rel6 < 0.01, "k=6 limit %.6e vs reference %.6e, rel %.3e < 1e-2", num6, ref6, rel6);
  const double dt = now_seconds() - t0;
  c.line(dt < 10.0, "runtime %.2f s < 10 s", dt);
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion3() {
  std::puts(
      "criterion 3: single-parameter members live in the generic family; "
      "tabulated substitution coefficients");
  Checker c;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.005, 0.995);
  for (int k = 1; k <= 4; ++k) {
    const NullspaceResult ns = q_nullspace(k);
    const double cmin = stability_limit_closed_form(k);
    double worst_proj = 0.0;
    Eigen::VectorXd worst_sub = Eigen::VectorXd::Zero(q_param_count(k));
    for (int rep = 0; rep < 20; ++rep) {
      const double cc = u(rng) * cmin;  // strictly inside the stable interval
      const Eigen::MatrixXd Q = castonguay_q(k, cc);
      worst_proj = std::max(worst_proj, family_projection_residual(ns, Q));
      const Eigen::VectorXd q = extract_q(k, Q);
      Eigen::VectorXd expect(q_param_count(k));
      if (k == 2) expect << 410.0 * cc / 3.0, 150.0 * cc;
      if (k == 3) expect << 6384.0 * cc, 27440.0 * cc / 3.0, -168.0 * std::sqrt(21.0) * cc;
      if (k == 4)
        expect << -30240.0 * std::sqrt(21.0) * cc, 56440.0 * cc, 5040.0 * cc,
            -80640.0 * std::sqrt(5.0) * cc;
      if (k >= 2)
        for (int i = 0; i < q.size(); ++i)
          worst_sub(i) =
              std::max(worst_sub(i), std::abs(q(i) - expect(i)) / std::abs(expect(i)));
    }
    c.line(worst_proj < 1e-9, "k=%d projection onto the family basis, max residual %.3e < 1e-9",
           k, worst_proj);
    if (k == 1) {
      c.line(true, "k=1 has no tabulated substitution (projection only)");
    } else {
      for (int i = 0; i < worst_sub.size(); ++i)
        c.line(worst_sub(i) < 1e-9, "k=%d substitution coefficient q%d, max rel error %.3e < 1e-9",
               k, i, worst_sub(i));
    }
  }
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion4() {
  std::puts("criterion 4: closed-form inequalities vs Cholesky, 200 draws per k = 2..4");
  Checker c;
  for (int k = 2; k <= 4; ++k) {
    std::mt19937_64 rng(4242 + k);
    std::uniform_real_distribution<double> d(-0.95, 3.0);
    int checked = 0, agreed = 0, skipped = 0;
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd q(q_param_count(k));
      for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = d(rng);
      const double m = stability_margins(k, q).minCoeff();
      if (std::abs(m) < 1e-10) {
        ++skipped;
        continue;
      }
      ++checked;
      if (is_stable_closed_form(k, q) == is_stable_cholesky(k, q)) ++agreed;
    }
    c.line(agreed == checked, "k=%d agreement on %d/%d draws (%d on the boundary, skipped)", k,
           agreed, checked, skipped);
  }
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion5() {
  std::puts("criterion 5: 1D staggered recovery roots and parameters");
  Checker c;
  {
    const auto roots = sd1d_search(3);
    const bool found = roots.size() == 1;
    c.line(found, "k=3 search found %zu root(s), expected 1", roots.size());
    if (found) {
      const double dz = std::abs(roots[0].z[0] - std::sqrt(0.6));
      const double dq = std::abs(roots[0].q0 - 3.0 / 14.0);
      c.line(dz < 1e-10, "k=3 z = %.15f vs sqrt(3/5), diff %.3e < 1e-10", roots[0].z[0], dz);
      c.line(dq < 1e-10, "k=3 q0 = %.15f vs 3/14, diff %.3e < 1e-10", roots[0].q0, dq);
    }
  }
  {
    const auto roots = sd1d_search(4);
    const bool found = roots.size() == 1 && roots[0].z.size() == 2;
    c.line(found, "k=4 search found %zu root(s), expected 1 with two abscissas", roots.size());
    if (found) {
      const double s = (2.0 / 7.0) * std::sqrt(1.2);
      const double e1 = std::abs(roots[0].z[0] * roots[0].z[0] - (3.0 / 7.0 - s));
      const double e2 = std::abs(roots[0].z[1] * roots[0].z[1] - (3.0 / 7.0 + s));
      const double dq = std::abs(roots[0].q0 - 8.0 / 45.0);
      c.line(e1 < 1e-10, "k=4 z1^2 vs 3/7 - (2/7)sqrt(6/5), diff %.3e < 1e-10", e1);
      c.line(e2 < 1e-10, "k=4 z2^2 vs 3/7 + (2/7)sqrt(6/5), diff %.3e < 1e-10", e2);
      c.line(dq < 1e-10, "k=4 q0 = %.15f vs 8/45, diff %.3e < 1e-10", roots[0].q0, dq);
    }
  }
  return c.all;
}

// --------------------------------------------------------------------------
int mode_row(int k, int v, int w) {
  const auto modes = modes_deglex(k);
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i] == std::pair<int, int>(v, w)) return static_cast<int>(i);
  return -1;
}

bool criterion6() {
  std::puts("criterion 6: triangle staggered schemes: recovery at k=1, obstructions at k=2,3");
  Checker c;
  {  // (a) first order recovers
    const SDTriSystem sys = sd_tri_build(1, "", {});
    const SDTriResidual mr = sd_tri_min_residual(sd_tri_affine(1, sys));
    c.line(mr.res < 1e-11, "k=1 recovery residual %.3e < 1e-11", mr.res);
    const double dq = std::abs(mr.q(0) - 1.0 / 3.0);
    c.line(dq < 1e-9, "k=1 q0 = %.15f vs 1/3, diff %.3e < 1e-9", mr.q(0), dq);
  }
  {  // (b) tabulated k=2 closed form for the leading residual entry
    const int r00 = mode_row(2, 0, 0);
    const int r01 = mode_row(2, 0, 1);
    for (double z = 0.05; z < 0.46; z += 0.05) {
      const SDTriSystem sys = sd_tri_build(2, "collocated", {z});
      const SDTriAffine aff = sd_tri_affine(2, sys);
      const double measured = aff.A0(r00, 0);
      const double formula =
          (2.0 - 3.0 * std::sqrt(2.0)) / (18.0 * std::pow(3.0, 0.25) * z * (2.0 * z - 1.0));
      const double diff = std::abs(measured - formula);
      c.line(diff < 1e-9,
             "k=2 z=%.2f leading residual entry %.6e vs closed form %.6e, diff %.3e < 1e-9 "
             "(first nonzero row measures %.6f)",
             z, measured, formula, diff, aff.A0(r01, 0));
    }
  }
  {  // (c) forced placement and contradictory q1 requirements at k=3, orbit (0,2,0)
    const Forced020 f = sd_tri_forced_020();
    const double s15 = std::sqrt(15.0);
    const double d1 = std::abs(f.z1 - (6.0 - s15) / 21.0);
    const double d2 = std::abs(f.z2 - (6.0 + s15) / 21.0);
    c.line(f.converged && d1 < 1e-9, "k=3 orbit(0,2,0) forced z1 = %.12f vs (6-sqrt(15))/21, diff %.3e",
           f.z1, d1);
    c.line(f.converged && d2 < 1e-9, "k=3 orbit(0,2,0) forced z2 = %.12f vs (6+sqrt(15))/21, diff %.3e",
           f.z2, d2);
    const double dq0 = std::abs(f.q0 - 0.6);
    c.line(dq0 < 1e-7, "k=3 forced q0 = %.12f vs 3/5, diff %.3e < 1e-7", f.q0, dq0);
    c.line(std::abs(f.q2) < 1e-6, "k=3 forced q2 = %.3e, |q2| < 1e-6", f.q2);
    const auto roots = sd_tri_q1_roots(f.z1, f.z2, f.q0, f.q2);
    bool has_a = false, has_b = false;
    for (const auto& [val, cnt] : roots) {
      if (std::abs(val - 7.0 / 45.0) < 1e-6) has_a = true;
      if (std::abs(val + 11.0 / 15.0) < 1e-6) has_b = true;
    }
    c.line(has_a, "k=3 contradiction root q1 = 7/45 present (45 q1 - 7 = 0)");
    c.line(has_b, "k=3 contradiction root q1 = -11/15 present (15 q1 + 11 = 0)");
  }
  {  // (d) k=3 orbit (0,0,1): claimed constant residual entries at rows 9 and 6
    const double c1 = std::pow(49.0 / 3.0, 0.25);  // claimed for row 9, mode (3,0)
    const double c2 = std::pow(3.0, 0.25);         // claimed for row 6, mode (0,3)
    for (double z1 : {0.10, 0.15, 0.20})
      for (double z2 : {0.30, 0.35, 0.40}) {
        const SDTriSystem sys = sd_tri_build(3, "001", {z1, z2}, /*use_pinv=*/true);
        const SDTriAffine aff = sd_tri_affine(3, sys);
        const double m1 = std::abs(aff.A0(9, 0));
        const double m2 = std::abs(aff.A0(6, 0));
        const double d1 = std::abs(m1 - c1), d2 = std::abs(m2 - c2);
        c.line(d1 < 1e-9 && d2 < 1e-9,
               "k=3 orbit(0,0,1) z=(%.2f,%.2f) rows 9/6 measure %.6f / %.6f vs constants "
               "%.6f / %.6f (rank %d/24)",
               z1, z2, m1, m2, c1, c2, sys.vrt_rank);
      }
  }
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion7() {
  std::puts("criterion 7: conservation of the corrected lifting and of a long advection run");
  Checker c;
  std::mt19937_64 rng(777);
  for (int k = 1; k <= 4; ++k) {
    std::uniform_real_distribution<double> d(-0.95, 3.0);
    double worst = conservation_residual(k, Eigen::VectorXd::Zero(q_param_count(k)));
    int found = 0;
    while (found < 20) {
      Eigen::VectorXd q(q_param_count(k));
      for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = d(rng);
      if (!is_stable_cholesky(k, q)) continue;
      ++found;
      worst = std::max(worst, conservation_residual(k, q));
    }
    c.line(worst < 1e-11, "k=%d conservation residual over 20 stable draws, max %.3e < 1e-11", k,
           worst);
  }
  RunConfig cfg;
  cfg.k = 3;
  cfg.nx = 10;
  cfg.dt = 5e-4;
  cfg.t_final = 0.5;
  cfg.kappa = 1.0;
  Eigen::VectorXd qs(3);
  qs << 0.1, 0.1, 0.01;
  cfg.qs = qs;
  const RunResult r = run_case(cfg);
  if (r.aborted) {
    c.line(false, "advection run aborted: %s", r.abort_message.c_str());
    return c.all;
  }
  const FRContext ctx = make_context(cfg.k, cfg.nx, qs);
  const double scale =
      error_norms(ctx, Eigen::MatrixXd::Zero(ctx.N, ctx.mesh.tris.rows()), advection_ic).E1;
  double drift = 0.0;
  for (const auto& row : r.energy_rows) drift = std::max(drift, std::abs(row[2] - r.energy_rows[0][2]));
  const double rel = drift / scale;
  c.line(rel < 1e-10, "mass drift over %zu steps: %.3e relative to the L1 mass %.4f < 1e-10",
         r.energy_rows.size() - 1, rel, scale);
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion8() {
  std::puts("criterion 8: discrete energy stability of upwind and central advection");
  Checker c;
  const double t0 = now_seconds();
  auto run = [&](double kappa, bool withQ) {
    RunConfig cfg;
    cfg.k = 3;
    cfg.nx = 10;
    cfg.dt = 5e-4;
    cfg.t_final = 0.5;
    cfg.kappa = kappa;
    if (withQ) {
      Eigen::VectorXd qs(3);
      qs << 0.1, 0.1, 0.01;
      cfg.qs = qs;
    }
    return run_case(cfg);
  };
  // CFL check: |a| dt (k+1)^2 / h with h the cell edge
  const double cfl = std::sqrt(1.25) * 5e-4 * 16.0 / (20.0 / 9.0);
  c.line(cfl <= 0.1, "CFL estimate %.4f <= 0.1 at dt = 5e-4", cfl);
  for (bool withQ : {false, true}) {
    const RunResult r = run(1.0, withQ);
    if (r.aborted) {
      c.line(false, "upwind run aborted: %s", r.abort_message.c_str());
      continue;
    }
    double worst_inc = -1e30;
    for (std::size_t i = 1; i < r.energy_rows.size(); ++i)
      worst_inc = std::max(worst_inc, (r.energy_rows[i][1] - r.energy_rows[i - 1][1]) /
                                          r.energy_rows[i - 1][1]);
    c.line(worst_inc < 1e-12, "kappa=1 Q=%s worst per-step relative energy increase %.3e < 1e-12",
           withQ ? "(0.1,0.1,0.01)" : "0", worst_inc);
    const bool dec = r.energy_rows.back()[1] < r.energy_rows.front()[1];
    c.line(dec, "kappa=1 Q=%s energy strictly decreased: %.9f -> %.9f",
           withQ ? "(0.1,0.1,0.01)" : "0", r.energy_rows.front()[1], r.energy_rows.back()[1]);
  }
  for (bool withQ : {false, true}) {
    const RunResult r = run(0.0, withQ);
    if (r.aborted) {
      c.line(false, "central run aborted: %s", r.abort_message.c_str());
      continue;
    }
    const double e0 = r.energy_rows.front()[1], eT = r.energy_rows.back()[1];
    const double rel = std::abs(eT - e0) / e0;
    c.line(rel < 1e-10, "kappa=0 Q=%s relative energy change %.3e < 1e-10",
           withQ ? "(0.1,0.1,0.01)" : "0", rel);
  }
  const double dt = now_seconds() - t0;
  c.line(dt < 30.0, "runtime %.2f s < 30 s", dt);
  return c.all;
}

// --------------------------------------------------------------------------
// Not scored: convergence of the solver machinery on the mechanically
// balanced vortex variant (see tests/balanced_vortex.hpp). Prints the per-mesh
// errors and returns the E2 order, or NaN if a mesh aborted.
double balanced_diagnostic_series(int k, double dt, const std::vector<int>& nxs) {
  std::vector<double> e2s;
  for (int nx : nxs) {
    const FRContext c = make_context(k, nx, Eigen::VectorXd::Zero(q_param_count(k)));
    State u(4);
    for (int v = 0; v < 4; ++v)
      u[v] = collocate(c,
                       [&](double x, double y) { return trifr_tests::balanced_vortex_conserved(x, y)[v]; });
    const EulerProblem ep{1.4};
    const double t_final = 2.0;
    const int n_steps = static_cast<int>(std::llround(t_final / dt));
    try {
      double t = 0.0;
      for (int s = 0; s < n_steps; ++s) {
        u = rk4_step(u, t, dt, [&](const State& w, double tt) { return euler_rhs(c, w, ep, tt); });
        t += dt;
      }
      const ErrorNorms n = error_norms(c, u[0], [&](double x, double y) {
        return trifr_tests::balanced_vortex_conserved(wrap_periodic(x), wrap_periodic(y - t_final))[0];
      });
      std::printf("  diag: balanced variant k=%d n_x=%d density E2 = %.6e\n", k, nx, n.E2);
      e2s.push_back(n.E2);
    } catch (const SolverAbort& a) {
      std::printf("  diag: balanced variant k=%d n_x=%d aborted: %s\n", k, nx, a.what());
      return std::numeric_limits<double>::quiet_NaN();
    }
  }
  return convergence_order(nxs, e2s);
}

// Diagnostic for an aborted vortex run: the minimum interface-trace density
// and pressure of the nodal initial state on this mesh (the quantities whose
// positivity the Euler right-hand side requires).
std::pair<double, double> vortex_trace_floor(int k, int nx) {
  const FRContext c = make_context(k, nx, Eigen::VectorXd::Zero(q_param_count(k)));
  const VortexParams vp;
  State u(4);
  for (int v = 0; v < 4; ++v)
    u[v] = collocate(c, [&](double x, double y) { return vortex_conserved(vp, x, y)[v]; });
  std::array<Eigen::MatrixXd, 4> UF;
  for (int v = 0; v < 4; ++v) UF[v] = c.L * u[v];
  double rmin = std::numeric_limits<double>::max(), pmin = rmin;
  for (Eigen::Index e = 0; e < UF[0].cols(); ++e)
    for (int f = 0; f < c.nfp; ++f) {
      Eigen::Vector4d q;
      for (int v = 0; v < 4; ++v) q(v) = UF[v](f, e);
      rmin = std::min(rmin, q(0));
      pmin = std::min(pmin, detailso::pressure(q, vp.gamma));
    }
  return {rmin, pmin};
}

bool vortex_series(Checker& c, int k, double dt, double order_floor, const Eigen::VectorXd& qs,
                   const char* label, double* order_out) {
  const std::vector<int> nxs = {10, 15, 20};
  std::vector<double> e2s;
  for (int nx : nxs) {
    RunConfig cfg;
    cfg.equation = "euler";
    cfg.k = k;
    cfg.nx = nx;
    cfg.dt = dt;
    cfg.t_final = 2.0;
    cfg.qs = qs;
    const RunResult r = run_case(cfg);
    if (r.aborted) {
      const auto [rmin, pmin] = vortex_trace_floor(k, nx);
      c.line(false, "%s n_x=%d aborted: %s", label, nx, r.abort_message.c_str());
      c.line(false,
             "  initial trace floor: min rho = %.3e, min p = %.3e%s (core rho = 1.72e-3)", rmin,
             pmin,
             (rmin > 0.0 && pmin > 0.0)
                 ? "; positive at t = 0, positivity lost during stepping"
                 : "; the degree-k interpolant of the near-vacuum core overshoots at t = 0");
      continue;
    }
    e2s.push_back(r.E2);
    c.line(std::isfinite(r.E2) && r.E2 > 0.0, "%s n_x=%d density E2 = %.6e", label, nx, r.E2);
  }
  if (e2s.size() < nxs.size()) {
    c.line(false, "%s series incomplete (%zu of %zu meshes ran); no order vs required %.1f", label,
           e2s.size(), nxs.size(), order_floor);
    return false;
  }
  const double order = convergence_order(nxs, e2s);
  if (order_out) *order_out = order;
  if (order_floor > 0.0)
    c.line(order >= order_floor, "%s E2 order %.3f >= %.1f", label, order, order_floor);
  else
    c.line(true, "%s E2 order %.3f", label, order);
  return true;
}

bool criterion9() {
  std::puts("criterion 9: translating vortex convergence at desk scale");
  Checker c;
  const double t0 = now_seconds();
  vortex_series(c, 3, 5e-3, 3.5, Eigen::VectorXd::Zero(3), "k=3 dt=5e-3", nullptr);
  vortex_series(c, 4, 2e-3, 4.3, Eigen::VectorXd::Zero(4), "k=4 dt=2e-3", nullptr);
  c.line(false,
         "root cause: the configured initial state is not a steady co-moving Euler solution "
         "(its pressure gradient is 4x the swirl's centrifugal force), and its near-vacuum core "
         "cannot be represented positively by a degree-k nodal polynomial on these meshes");
  std::puts("  diag: quarter-strength base coefficient (beta M)^2/(8 pi^2) balances the pressure");
  std::puts("  diag: gradient against the swirl; the same solver then runs and converges:");
  const double o3 = balanced_diagnostic_series(3, 5e-3, {10, 15, 20});
  const double o3f = balanced_diagnostic_series(3, 5e-3, {15, 20, 25, 30});
  const double o4 = balanced_diagnostic_series(4, 2e-3, {15, 20, 25});
  std::printf(
      "  diag: balanced-variant E2 orders: k=3 desk meshes %.3f (under-resolved at n_x=10); "
      "k=3 {15,20,25,30} %.3f; k=4 {15,20,25} %.3f\n",
      o3, o3f, o4);
  const double dt = now_seconds() - t0;
  c.line(dt < 600.0, "runtime %.1f s < 600 s", dt);
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion10() {
  std::puts("criterion 10: convergence order is insensitive to the norm parameters");
  Checker c;
  double order_dg = 0.0, order_q = 0.0;
  const bool ran_dg = vortex_series(c, 3, 5e-3, 0.0, Eigen::VectorXd::Zero(3), "k=3 Q=0", &order_dg);
  Eigen::VectorXd qs(3);
  qs << 0.1, 0.1, 0.01;
  const bool ran_q = vortex_series(c, 3, 5e-3, 0.0, qs, "k=3 Q=(0.1,0.1,0.01)", &order_q);
  if (ran_dg && ran_q) {
    const double diff = std::abs(order_q - order_dg);
    c.line(diff < 0.5, "order difference |%.3f - %.3f| = %.3f < 0.5", order_q, order_dg, diff);
  } else {
    c.line(false,
           "order comparison unavailable: a series did not complete (same root cause as "
           "criterion 9: the configured vortex is not a steady co-moving solution)");
  }
  return c.all;
}

// --------------------------------------------------------------------------
bool criterion11() {
  std::puts("criterion 11: quadrature-space corrected lifting agrees with the exact path");
  Checker c;
  std::mt19937_64 rng(1111);
  for (int k : {2, 3}) {
    std::uniform_real_distribution<double> d(-0.95, 3.0);
    double worst = 0.0;
    int found = 0;
    // include the unmodified norm as the first sample
    std::vector<Eigen::VectorXd> samples{Eigen::VectorXd::Zero(q_param_count(k))};
    while (found < 10) {
      Eigen::VectorXd q(q_param_count(k));
      for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = d(rng);
      if (!is_stable_cholesky(k, q)) continue;
      ++found;
      samples.push_back(q);
    }
    for (const auto& q : samples) {
      const Eigen::MatrixXd Q = q_matrix(k, q);
      const Eigen::MatrixXd C = correction_matrix(k, q);
      for (int strength : {2 * k, 2 * k + 2}) {
        const double dev = (weak_quadrature_correction(k, Q, strength) - C).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
      }
    }
    c.line(worst < 1e-10, "k=%d max deviation over %zu norms x 2 strengths: %.3e < 1e-10", k,
           static_cast<std::size_t>(found + 1), worst);
  }
  return c.all;
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  bool all = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      criterion = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--all") == 0)
      all = true;
  }
  if (!all && (criterion < 1 || criterion > 11)) {
    std::fprintf(stderr, "usage: acceptance --criterion N (1..11) | --all\n");
    return 2;
  }
  bool (*fns[])() = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                     criterion7, criterion8, criterion9, criterion10, criterion11};
  bool ok = true;
  for (int n = 1; n <= 11; ++n) {
    if (!all && n != criterion) continue;
    const bool pass = fns[n - 1]();
    std::printf("CRITERION %d: %s\n", n, pass ? "PASS" : "FAIL");
    ok &= pass;
  }
  return ok ? 0 : 1;
}
