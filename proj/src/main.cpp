// trifr: command-line driver for energy-stable flux reconstruction operators
// on triangles. Subcommands cover operator dumps, verification reports,
// stability limits of the single-parameter family, norm-matrix tools,
// correction-field dumps, spectral-difference searches in 1D and on the
// triangle, and the desk-scale advection / Euler vortex experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"

#include "trifr/correction.hpp"
#include "trifr/csvio.hpp"
#include "trifr/operators.hpp"
#include "trifr/polybasis.hpp"
#include "trifr/qfamily.hpp"
#include "trifr/sd1d.hpp"
#include "trifr/sdtri.hpp"
#include "trifr/solver.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct Global {
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
};

std::string out_path(const Global& g, const std::string& name) {
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / name).string();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

// Print a double as the smallest-denominator rational p/q (q <= 100) within
// 1e-9, falling back to %.6g.
std::string pretty_rational(double x) {
  for (int den = 1; den <= 100; ++den) {
    const double num = x * den;
    const double rn = std::round(num);
    if (std::abs(num - rn) <= 1e-9 * den && std::abs(rn) < 1e15) {
      const long long n = static_cast<long long>(rn);
      if (den == 1) return std::to_string(n);
      return std::to_string(n) + "/" + std::to_string(den);
    }
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

bool parse_zgrid(const std::string& s, std::vector<double>& out) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return false;
  try {
    const double a = std::stod(s.substr(0, c1));
    const double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(s.substr(c2 + 1));
    if (step <= 0.0 || b < a) return false;
    for (double z = a; z <= b + 1e-12; z += step) out.push_back(z);
    return !out.empty();
  } catch (const std::exception&) {
    return false;
  }
}

std::string join_params(const Eigen::VectorXd& qs) {
  std::string s = "q=(";
  for (Eigen::Index i = 0; i < qs.size(); ++i) {
    if (i) s += ";";
    s += fmt("%.12g", qs(i));
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// verify

struct ReportLine {
  std::string check;
  int k;
  std::string params;
  double residual;
  double tolerance;
  bool pass;
};

void verify_suites(int k, const Eigen::VectorXd& qs, double scale,
                   std::vector<ReportLine>& lines) {
  using namespace trifr;
  const std::string par = join_params(qs);
  const Operators mop = modal_operators(k);
  lines.push_back({"sbp_modal", k, par, sbp_residual(mop), 1e-11 * scale,
                   sbp_residual(mop) < 1e-11 * scale});
  const Operators nop = nodal_operators(k);
  lines.push_back({"sbp_nodal", k, par, sbp_residual(nop), 1e-11 * scale,
                   sbp_residual(nop) < 1e-11 * scale});
  const int N = n_modes(k);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd T = rotation_matrix_modal(k);
  const double rrot = std::max((T * T * T - I).cwiseAbs().maxCoeff(),
                               (T.transpose() * T - I).cwiseAbs().maxCoeff());
  lines.push_back({"symmetry_rotation", k, par, rrot, 1e-10 * scale, rrot < 1e-10 * scale});
  const Eigen::MatrixXd S = reflection_matrix_modal(k);
  const double rref = std::max((S * S - I).cwiseAbs().maxCoeff(),
                               (S.transpose() * S - I).cwiseAbs().maxCoeff());
  lines.push_back({"symmetry_reflection", k, par, rref, 1e-10 * scale, rref < 1e-10 * scale});

  const Eigen::VectorXd margins = stability_margins(k, qs);
  const double mmin = margins.minCoeff();
  const bool cf = is_stable_closed_form(k, qs);
  const bool ch = is_stable_cholesky(k, qs);
  lines.push_back({"positive_definite", k, par, mmin, 0.0, cf && ch});
  if (cf && ch) {
    const double cons = conservation_residual(k, q_matrix(k, qs));
    lines.push_back({"conservation", k, par, cons, 1e-11 * scale, cons < 1e-11 * scale});
  }
}

int cmd_verify(const Global& g, int k_opt, const std::vector<double>& qlist, int n_random,
               const std::string& report_name) {
  using namespace trifr;
  std::vector<int> ks;
  if (k_opt > 0)
    ks.push_back(k_opt);
  else
    ks = {1, 2, 3, 4};
  if (!qlist.empty() && k_opt <= 0)
    return usage_error("verify: --q requires an explicit --k");

  std::vector<ReportLine> lines;
  for (int k : ks) {
    Eigen::VectorXd qs = Eigen::VectorXd::Zero(q_param_count(k));
    if (!qlist.empty()) {
      if (static_cast<int>(qlist.size()) != q_param_count(k))
        return usage_error("verify: expected " + std::to_string(q_param_count(k)) +
                           " q parameters for k = " + std::to_string(k) + ", got " +
                           std::to_string(qlist.size()));
      for (std::size_t i = 0; i < qlist.size(); ++i) qs(static_cast<Eigen::Index>(i)) = qlist[i];
    }
    verify_suites(k, qs, g.tol_scale, lines);

    std::mt19937_64 rng(g.seed + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> dist(-0.95, 3.0);
    for (int d = 0; d < n_random; ++d) {
      Eigen::VectorXd qr(q_param_count(k));
      for (Eigen::Index i = 0; i < qr.size(); ++i) qr(i) = dist(rng);
      const double mmin = stability_margins(k, qr).minCoeff();
      if (std::abs(mmin) < 1e-10) continue;  // skip the decision boundary
      const bool agree = is_stable_closed_form(k, qr) == is_stable_cholesky(k, qr);
      lines.push_back({"pd_agreement", k, join_params(qr), mmin, 0.0, agree});
    }
  }

  std::string cfg = "verify k=" + std::to_string(k_opt) + " random=" + std::to_string(n_random) +
                    " seed=" + std::to_string(g.seed) + " scale=" + fmt("%.12g", g.tol_scale);
  std::ofstream rep(out_path(g, report_name));
  rep << "# trifr " << kVersion << "\n";
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(fnv1a(cfg)));
  rep << "# config " << hash << "\n";
  rep << "check,k,params,residual,tolerance,verdict\n";
  bool all_pass = true;
  const ReportLine* first_fail = nullptr;
  for (const auto& l : lines) {
    const std::string row = l.check + "," + std::to_string(l.k) + "," + l.params + "," +
                            trifr::format_full(l.residual) + "," + trifr::format_full(l.tolerance) +
                            "," + (l.pass ? "PASS" : "FAIL");
    rep << row << "\n";
    std::cout << row << "\n";
    if (!l.pass) {
      all_pass = false;
      if (!first_fail) first_fail = &l;
    }
  }
  if (!all_pass) {
    std::cerr << "FAIL: " << first_fail->check << " (k = " << first_fail->k << ", "
              << first_fail->params << "), residual " << fmt("%.6e", first_fail->residual)
              << " vs tolerance " << fmt("%.6e", first_fail->tolerance) << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// operators / q / correction / stability-limit

int cmd_operators(const Global& g, int k, bool nodal, bool dump_vandermonde, int quad_strength,
                  bool dump_points) {
  using namespace trifr;
  const Operators op = nodal ? nodal_operators(k) : modal_operators(k);
  const std::string tag = std::string(nodal ? "nodal" : "modal") + "_k" + std::to_string(k);
  write_matrix_csv(out_path(g, tag + "_M.csv"), "M", op.M);
  write_matrix_csv(out_path(g, tag + "_Dx.csv"), "Dx", op.Dx);
  write_matrix_csv(out_path(g, tag + "_Dy.csv"), "Dy", op.Dy);
  write_matrix_csv(out_path(g, tag + "_L.csv"), "L", op.L);
  std::cout << "k = " << k << " (" << (nodal ? "nodal" : "modal")
            << "): wrote M, Dx, Dy, L; sbp_residual = " << fmt("%.6e", sbp_residual(op)) << "\n";
  if (dump_vandermonde) {
    const auto pts = solution_points(k);
    write_matrix_csv(out_path(g, "vandermonde_k" + std::to_string(k) + ".csv"), "V",
                     vandermonde(k, pts));
  }
  if (quad_strength > 0) {
    const QuadratureRule r = volume_quadrature(quad_strength);
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < r.w.size(); ++i)
      rows.push_back({r.pts(i, 0), r.pts(i, 1), r.w(i)});
    write_point_table(out_path(g, "quadrature_strength" + std::to_string(quad_strength) + ".txt"),
                      rows);
  }
  if (dump_points) {
    const auto sp = solution_points(k);
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < sp.rows(); ++i) rows.push_back({sp(i, 0), sp(i, 1)});
    write_point_table(out_path(g, "solution_points_k" + std::to_string(k) + ".txt"), rows);
    const EdgeFluxPoints fp = edge_flux_points(k);
    rows.clear();
    for (Eigen::Index i = 0; i < fp.w.size(); ++i)
      rows.push_back({fp.pts(i, 0), fp.pts(i, 1), fp.w(i), fp.normals(i, 0), fp.normals(i, 1)});
    write_point_table(out_path(g, "flux_points_k" + std::to_string(k) + ".txt"), rows);
  }
  return 0;
}

int cmd_q(const Global& g, int k, const std::vector<double>& qlist, const std::string& dump) {
  using namespace trifr;
  if (static_cast<int>(qlist.size()) != q_param_count(k))
    return usage_error("q: expected " + std::to_string(q_param_count(k)) +
                       " parameters for k = " + std::to_string(k) + ", got " +
                       std::to_string(qlist.size()));
  Eigen::VectorXd qs(q_param_count(k));
  for (std::size_t i = 0; i < qlist.size(); ++i) qs(static_cast<Eigen::Index>(i)) = qlist[i];
  const Eigen::MatrixXd Q = q_matrix(k, qs);
  const Eigen::VectorXd margins = stability_margins(k, qs);
  std::cout << "k = " << k << ", " << join_params(qs) << "\n";
  std::cout << "stability margins:";
  for (Eigen::Index i = 0; i < margins.size(); ++i) std::cout << " " << fmt("%.12g", margins(i));
  std::cout << "\nstable (closed form): " << (is_stable_closed_form(k, qs) ? "yes" : "no")
            << ", stable (Cholesky): " << (is_stable_cholesky(k, qs) ? "yes" : "no") << "\n";
  if (!dump.empty()) {
    write_matrix_csv(out_path(g, dump), "Q", Q);
    std::cout << "wrote " << out_path(g, dump) << "\n";
  }
  return 0;
}

int cmd_correction(const Global& g, int k, const std::vector<double>& qlist, bool field,
                   int flux_point, int grid, const std::string& outfile) {
  using namespace trifr;
  if (static_cast<int>(qlist.size()) != q_param_count(k))
    return usage_error("correction: expected " + std::to_string(q_param_count(k)) +
                       " parameters for k = " + std::to_string(k) + ", got " +
                       std::to_string(qlist.size()));
  Eigen::VectorXd qs(q_param_count(k));
  for (std::size_t i = 0; i < qlist.size(); ++i) qs(static_cast<Eigen::Index>(i)) = qlist[i];
  const Operators op = modal_operators(k);
  const Eigen::MatrixXd Q = q_matrix(k, qs);
  Eigen::MatrixXd C;
  try {
    C = correction_matrix(op, Q);
  } catch (const std::runtime_error& e) {
    std::cerr << "FAIL: " << e.what() << "\n";
    return 1;
  }
  std::cout << "k = " << k << ", " << join_params(qs)
            << ": conservation residual = " << fmt("%.6e", conservation_residual(op, Q)) << "\n";
  if (field) {
    if (grid < 2) return usage_error("correction: --grid must be at least 2");
    std::vector<std::vector<double>> rows;
    Eigen::Matrix<double, Eigen::Dynamic, 2> pts(1, 2);
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid - i; ++j) {
        const double l1 = static_cast<double>(i) / (grid - 1);
        const double l2 = static_cast<double>(j) / (grid - 1);
        const Eigen::Vector2d p = bary_to_xy(l1, l2, 1.0 - l1 - l2);
        pts(0, 0) = p.x();
        pts(0, 1) = p.y();
        const Eigen::VectorXd v = correction_field(k, C, flux_point, pts);
        rows.push_back({p.x(), p.y(), v(0)});
      }
    write_csv(out_path(g, outfile), "x,y,div_h", rows);
    std::cout << "wrote " << out_path(g, outfile) << " (" << rows.size() << " points)\n";
  }
  return 0;
}

int cmd_stability_limit(const Global& g, int k, bool table) {
  using namespace trifr;
  const double reference_k6 = -2.88363e-11;
  if (table) {
    std::vector<std::vector<double>> rows;
    for (int kk = 1; kk <= 6; ++kk) {
      const double num = stability_limit(kk);
      const double cf = stability_limit_closed_form(kk);
      const double rel = std::isnan(cf) ? std::nan("") : std::abs(num - cf) / std::abs(cf);
      rows.push_back({static_cast<double>(kk), num, cf, rel});
    }
    write_csv(out_path(g, "stability_limits.csv"), "k,c_min_numeric,c_min_closed_form,rel_error",
              rows);
    std::cout << "wrote " << out_path(g, "stability_limits.csv") << "\n";
    return 0;
  }
  const double num = stability_limit(k);
  const double cf = stability_limit_closed_form(k);
  std::cout << "k = " << k << ": c_min = " << trifr::format_full(num);
  if (!std::isnan(cf))
    std::cout << ", closed form = " << trifr::format_full(cf)
              << ", rel_error = " << fmt("%.3e", std::abs(num - cf) / std::abs(cf)) << "\n";
  else
    std::cout << ", closed form not available; reference = " << fmt("%.6e", reference_k6)
              << ", rel_difference = "
              << fmt("%.3e", std::abs(num - reference_k6) / std::abs(reference_k6)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sd

int cmd_sd1(int k) {
  using namespace trifr;
  if (k < 1 || k > 5) return usage_error("sd --dim 1 supports k = 1..5");
  const auto roots = sd1d_search(k);
  if (roots.empty()) {
    std::cout << "NO SOLUTION\n";
    return 0;
  }
  for (const auto& r : roots) {
    std::string zs;
    if (r.z.empty())
      zs = "none";
    else
      for (std::size_t i = 0; i < r.z.size(); ++i) {
        if (i) zs += ", ";
        zs += fmt("%.6f", r.z[i]);
      }
    std::cout << "z = " << zs << ", q0 = " << pretty_rational(r.q0)
              << (r.stable ? ", STABLE" : ", UNSTABLE") << "\n";
  }
  return 0;
}

int cmd_sd2(const Global& g, int k, const std::string& orbit, const std::string& zgrid,
            const std::string& outfile) {
  using namespace trifr;
  if (k == 1) {
    const SDTriSystem sys = sd_tri_build(1, "", {});
    const SDTriAffine aff = sd_tri_affine(1, sys);
    const SDTriResidual mr = sd_tri_min_residual(aff);
    std::cout << "RECOVERED: q0 = " << pretty_rational(mr.q(0))
              << " (residual = " << fmt("%.3e", mr.res) << ")\n";
    return 0;
  }
  if (k == 2) {
    if (orbit != "collocated")
      return usage_error("sd --dim 2 --k 2 requires --orbit collocated");
    std::vector<double> zs;
    if (!parse_zgrid(zgrid.empty() ? "0.01:0.49:0.01" : zgrid, zs))
      return usage_error("sd: --z-grid must be start:stop:step");
    std::vector<std::vector<double>> rows;
    double best = std::numeric_limits<double>::infinity(), bestz = zs.front();
    for (double z : zs) {
      double res = std::nan("");
      try {
        const SDTriSystem sys = sd_tri_build(2, "collocated", {z});
        res = sd_tri_min_residual(sd_tri_affine(2, sys)).res;
      } catch (const std::runtime_error&) {
        // singular normal-trace Vandermonde at this z: leave the row as NaN
      }
      rows.push_back({z, res});
      if (!std::isnan(res) && res < best) {
        best = res;
        bestz = z;
      }
    }
    write_csv(out_path(g, outfile), "z,residual", rows);
    std::cout << "NO SOLUTION: min residual " << fmt("%.6f", best) << " at z = "
              << fmt("%.6f", bestz) << "; landscape written to " << out_path(g, outfile) << "\n";
    return 0;
  }
  if (k == 3) {
    if (orbit == "020") {
      const Forced020 f = sd_tri_forced_020();
      std::cout << "forced vertex-orbit placement (first edge mode):\n"
                << "  z1 = " << fmt("%.12f", f.z1) << ", z2 = " << fmt("%.12f", f.z2)
                << " (exact (6 -+ sqrt(15))/21)\n"
                << "  q0 = " << fmt("%.12f", f.q0) << ", q2 = " << fmt("%.3e", f.q2)
                << ", column residual = " << fmt("%.3e", f.column_residual)
                << (f.converged ? "" : " [not converged]") << "\n";
      const auto roots = sd_tri_q1_roots(f.z1, f.z2, f.q0, f.q2);
      std::cout << "remaining entries demand contradictory q1 values:\n";
      for (const auto& [val, count] : roots)
        std::cout << "  q1 = " << pretty_rational(val) << " (" << fmt("%.12f", val) << ") from "
                  << count << " entries\n";
      std::cout << "NO SOLUTION: inconsistent q1 requirements\n";
      return 0;
    }
    if (orbit == "001") {
      std::vector<double> zs;
      if (!parse_zgrid(zgrid.empty() ? "0.05:0.45:0.05" : zgrid, zs))
        return usage_error("sd: --z-grid must be start:stop:step");
      std::vector<std::vector<double>> rows;
      int min_rank = 1 << 30;
      double best = std::numeric_limits<double>::infinity();
      for (double z1 : zs)
        for (double z2 : zs) {
          if (std::abs(z1 - z2) < 1e-9) continue;
          const SDTriSystem sys = sd_tri_build(3, "001", {z1, z2}, /*use_pinv=*/true);
          const double res = sd_tri_min_residual(sd_tri_affine(3, sys)).res;
          rows.push_back({z1, z2, static_cast<double>(sys.vrt_rank), sys.vrt_cond, res});
          min_rank = std::min(min_rank, sys.vrt_rank);
          best = std::min(best, res);
        }
      write_csv(out_path(g, outfile), "z1,z2,rank,cond,residual", rows);
      std::cout << "normal-trace Vandermonde is rank-deficient on the whole grid (rank "
                << min_rank << "/24); pseudoinverse landscape written to " << out_path(g, outfile)
                << "\n";
      std::cout << "NO SOLUTION: min residual " << fmt("%.6f", best) << "\n";
      return 0;
    }
    return usage_error("sd --dim 2 --k 3 requires --orbit 020 or 001");
  }
  return usage_error("sd --dim 2 supports k = 1..3");
}

// ---------------------------------------------------------------------------
// run / convergence

int parse_config_file(const std::string& path, trifr::RunConfig& rc) {
  std::ifstream in(path);
  if (!in) return usage_error("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int ln = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      return usage_error("config line " + std::to_string(ln) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  double qv[4] = {0, 0, 0, 0};
  bool qset[4] = {false, false, false, false};
  try {
    for (const auto& [key, val] : kv) {
      if (key == "equation")
        rc.equation = val;
      else if (key == "k")
        rc.k = std::stoi(val);
      else if (key == "n_x")
        rc.nx = std::stoi(val);
      else if (key == "dt")
        rc.dt = std::stod(val);
      else if (key == "t_final")
        rc.t_final = std::stod(val);
      else if (key == "kappa")
        rc.kappa = std::stod(val);
      else if (key == "ax")
        rc.ax = std::stod(val);
      else if (key == "ay")
        rc.ay = std::stod(val);
      else if (key == "mach")
        rc.vortex.mach = std::stod(val);
      else if (key == "beta")
        rc.vortex.beta = std::stod(val);
      else if (key == "radius")
        rc.vortex.radius = std::stod(val);
      else if (key == "gamma")
        rc.vortex.gamma = std::stod(val);
      else if (key == "out_prefix")
        rc.out_prefix = val;
      else if (key == "output_every")
        rc.output_every = std::stoi(val);
      else if (key.size() == 2 && key[0] == 'q' && key[1] >= '0' && key[1] <= '3') {
        qv[key[1] - '0'] = std::stod(val);
        qset[key[1] - '0'] = true;
      } else
        return usage_error("unknown config key: " + key);
    }
  } catch (const std::exception&) {
    return usage_error("config: malformed numeric value");
  }
  if (rc.equation != "advection" && rc.equation != "euler")
    return usage_error("config: equation must be advection or euler");
  if (rc.k < 1 || rc.k > 4) return usage_error("config: k must be in 1..4");
  if (rc.nx < 3) return usage_error("config: n_x must be at least 3");
  if (rc.dt <= 0 || rc.t_final <= 0) return usage_error("config: dt and t_final must be positive");
  const int np = trifr::q_param_count(rc.k);
  for (int i = np; i < 4; ++i)
    if (qset[i])
      return usage_error("config: q" + std::to_string(i) + " given but k = " +
                         std::to_string(rc.k) + " has only " + std::to_string(np) +
                         " parameters");
  rc.qs = Eigen::VectorXd::Zero(np);
  for (int i = 0; i < np; ++i) rc.qs(i) = qv[i];
  return 0;
}

int cmd_run(const Global& g, const std::string& config) {
  trifr::RunConfig rc;
  if (const int rcde = parse_config_file(config, rc); rcde != 0) return rcde;
  const trifr::RunResult res = trifr::run_case(rc);

  std::vector<std::vector<double>> erows;
  for (const auto& r : res.error_rows) erows.push_back({r[0], r[1], r[2]});
  trifr::write_csv(out_path(g, rc.out_prefix + "_errors.csv"), "t,E1,E2", erows);
  std::vector<std::vector<double>> grows;
  for (const auto& r : res.energy_rows) grows.push_back({r[0], r[1]});
  trifr::write_csv(out_path(g, rc.out_prefix + "_energy.csv"), "t,energy", grows);
  std::vector<std::vector<double>> frows;
  for (const auto& r : res.field_rows) frows.push_back({r[0], r[1], r[2]});
  trifr::write_csv(out_path(g, rc.out_prefix + "_field.csv"), "x,y,value", frows);

  if (res.aborted) {
    std::cerr << "ABORTED: " << res.abort_message << "\n";
    return 1;
  }
  const double e0 = res.energy_rows.front()[1], eT = res.energy_rows.back()[1];
  const double m0 = res.energy_rows.front()[2], mT = res.energy_rows.back()[2];
  std::cout << rc.equation << " k = " << rc.k << ", n_x = " << rc.nx << ", "
            << res.energy_rows.size() - 1 << " steps to t = " << fmt("%.6g", rc.t_final) << "\n";
  std::cout << "E1 = " << trifr::format_full(res.E1) << ", E2 = " << trifr::format_full(res.E2)
            << "\n";
  std::cout << "energy " << trifr::format_full(e0) << " -> " << trifr::format_full(eT)
            << ", mass drift = " << fmt("%.3e", std::abs(mT - m0)) << "\n";
  std::cout << "wrote " << out_path(g, rc.out_prefix + "_errors.csv") << ", "
            << out_path(g, rc.out_prefix + "_energy.csv") << ", "
            << out_path(g, rc.out_prefix + "_field.csv") << "\n";
  return 0;
}

int cmd_convergence(const Global& g, const std::string& config, const std::vector<int>& nxs,
                    const std::string& report) {
  trifr::RunConfig rc;
  if (const int rcde = parse_config_file(config, rc); rcde != 0) return rcde;
  if (nxs.size() < 2) return usage_error("convergence: need at least two --nx values");
  std::vector<std::vector<double>> rows;
  std::vector<double> e1s, e2s;
  for (int nx : nxs) {
    trifr::RunConfig c = rc;
    c.nx = nx;
    c.output_every = 0;
    const trifr::RunResult res = trifr::run_case(c);
    if (res.aborted) {
      std::cerr << "ABORTED at n_x = " << nx << ": " << res.abort_message << "\n";
      return 1;
    }
    rows.push_back({static_cast<double>(nx), res.E1, res.E2});
    e1s.push_back(res.E1);
    e2s.push_back(res.E2);
    std::cout << "n_x = " << nx << ": E1 = " << trifr::format_full(res.E1)
              << ", E2 = " << trifr::format_full(res.E2) << "\n";
  }
  trifr::write_csv(out_path(g, report), "n_x,E1,E2", rows);
  std::cout << "order (E1) = " << fmt("%.4f", trifr::convergence_order(nxs, e1s))
            << ", order (E2) = " << fmt("%.4f", trifr::convergence_order(nxs, e2s)) << "\n";
  std::cout << "wrote " << out_path(g, report) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trifr: energy-stable flux reconstruction operators on triangles"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "directory for output files")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random verification draws")->capture_default_str();
  app.add_option("--tolerance-scale", g.tol_scale, "multiplier applied to verification tolerances")
      ->capture_default_str();

  auto* sub_op = app.add_subcommand("operators", "dump reference operators as CSV");
  int op_k = 3;
  bool op_nodal = false, op_vand = false, op_pts = false;
  int op_quad = 0;
  sub_op->add_option("--k", op_k, "polynomial order (1..10)")->required();
  sub_op->add_flag("--nodal", op_nodal, "dump the solution-point (nodal) operators");
  sub_op->add_flag("--vandermonde", op_vand, "also dump the solution-point Vandermonde");
  sub_op->add_option("--quadrature", op_quad, "also dump the volume rule of this strength");
  sub_op->add_flag("--points", op_pts, "also dump solution / flux point tables");
  sub_op->fallthrough();

  auto* sub_verify = app.add_subcommand("verify", "run verification suites, write a report");
  int v_k = 0, v_random = 0;
  std::vector<double> v_q;
  std::string v_report = "verify_report.csv";
  sub_verify->add_option("--k", v_k, "single order (default: 1..4)");
  sub_verify->add_option("--q", v_q, "norm parameters (comma separated)")->delimiter(',');
  sub_verify->add_option("--random", v_random, "random stability draws per order");
  sub_verify->add_option("--report", v_report, "report file name")->capture_default_str();
  sub_verify->fallthrough();

  auto* sub_stab = app.add_subcommand("stability-limit", "single-parameter family limits");
  int s_k = 0;
  bool s_table = false;
  sub_stab->add_option("--k", s_k, "order (1..6)");
  sub_stab->add_flag("--table", s_table, "write the k = 1..6 limit table as CSV");
  sub_stab->fallthrough();

  auto* sub_q = app.add_subcommand("q", "build and examine a norm matrix");
  int q_k = 0;
  std::vector<double> q_q;
  std::string q_dump;
  sub_q->add_option("--k", q_k, "order (1..4)")->required();
  sub_q->add_option("--q", q_q, "norm parameters (comma separated)")->required()->delimiter(',');
  sub_q->add_option("--dump", q_dump, "CSV file name for the matrix");
  sub_q->fallthrough();

  auto* sub_corr = app.add_subcommand("correction", "corrected lifting and correction fields");
  int c_k = 0, c_fp = 0, c_grid = 101;
  std::vector<double> c_q;
  bool c_field = false;
  std::string c_out = "correction_field.csv";
  sub_corr->add_option("--k", c_k, "order (1..4)")->required();
  sub_corr->add_option("--q", c_q, "norm parameters (comma separated)")->required()->delimiter(',');
  sub_corr->add_flag("--field", c_field, "dump the divergence of one correction field");
  sub_corr->add_option("--flux-point", c_fp, "flux point index")->capture_default_str();
  sub_corr->add_option("--grid", c_grid, "barycentric lattice resolution")->capture_default_str();
  sub_corr->add_option("--out", c_out, "CSV file name")->capture_default_str();
  sub_corr->fallthrough();

  auto* sub_sd = app.add_subcommand("sd", "spectral-difference recovery search");
  int sd_dim = 0, sd_k = 0;
  std::string sd_orbit, sd_zgrid, sd_out = "landscape.csv";
  sub_sd->add_option("--dim", sd_dim, "1 (interval) or 2 (triangle)")->required();
  sub_sd->add_option("--k", sd_k, "order")->required();
  sub_sd->add_option("--orbit", sd_orbit, "interior orbit: collocated, 020, 001");
  sub_sd->add_option("--z-grid", sd_zgrid, "scan grid start:stop:step");
  sub_sd->add_option("--out", sd_out, "landscape CSV file name")->capture_default_str();
  sub_sd->fallthrough();

  auto* sub_run = app.add_subcommand("run", "run one advection or Euler case");
  std::string run_cfg;
  sub_run->add_option("--config", run_cfg, "flat key = value config file")->required();
  sub_run->fallthrough();

  auto* sub_conv = app.add_subcommand("convergence", "mesh refinement study");
  std::string conv_cfg, conv_report = "order.csv";
  std::vector<int> conv_nx;
  sub_conv->add_option("--config", conv_cfg, "base config file")->required();
  sub_conv->add_option("--nx", conv_nx, "mesh sizes (comma separated)")
      ->required()
      ->delimiter(',');
  sub_conv->add_option("--report", conv_report, "report CSV file name")->capture_default_str();
  sub_conv->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sub_op->parsed()) {
      if (op_k < 1 || op_k > 10) return usage_error("operators: --k must be in 1..10");
      return cmd_operators(g, op_k, op_nodal, op_vand, op_quad, op_pts);
    }
    if (sub_verify->parsed()) {
      if (v_k != 0 && (v_k < 1 || v_k > 4)) return usage_error("verify: --k must be in 1..4");
      return cmd_verify(g, v_k, v_q, v_random, v_report);
    }
    if (sub_stab->parsed()) {
      if (!s_table && (s_k < 1 || s_k > 6))
        return usage_error("stability-limit: --k must be in 1..6 (or use --table)");
      return cmd_stability_limit(g, s_k, s_table);
    }
    if (sub_q->parsed()) {
      if (q_k < 1 || q_k > 4) return usage_error("q: --k must be in 1..4");
      return cmd_q(g, q_k, q_q, q_dump);
    }
    if (sub_corr->parsed()) {
      if (c_k < 1 || c_k > 4) return usage_error("correction: --k must be in 1..4");
      return cmd_correction(g, c_k, c_q, c_field, c_fp, c_grid, c_out);
    }
    if (sub_sd->parsed()) {
      if (sd_dim == 1) return cmd_sd1(sd_k);
      if (sd_dim == 2) return cmd_sd2(g, sd_k, sd_orbit, sd_zgrid, sd_out);
      return usage_error("sd: --dim must be 1 or 2");
    }
    if (sub_run->parsed()) return cmd_run(g, run_cfg);
    if (sub_conv->parsed()) return cmd_convergence(g, conv_cfg, conv_nx, conv_report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
