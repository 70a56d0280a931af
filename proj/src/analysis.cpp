// SPDX-License-Identifier: Apache-2.0
#include "stdg/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "stdg/common.hpp"

namespace stdg {

namespace {

// Field values of a coefficient vector at the volume quadrature points of
// one element; out is (#pts x 8).
void fields_at_quad(const DiscreteSpace& space, const Eigen::VectorXd& coeffs, int elem,
                    Eigen::MatrixXd& out) {
  const auto& vq = space.volume_quad();
  const int nl = space.nloc();
  out.resize(static_cast<int>(vq.points.size()), kNumFields);
  Eigen::VectorXd block(nl);
  for (int c = 0; c < kNumFields; ++c) {
    for (int i = 0; i < nl; ++i) block(i) = coeffs(space.dof(elem, c, i));
    out.col(c) = vq.n * block;
  }
}

double weighted_error_sq(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                         const DiscreteSpace::FieldFunction& f,
                         const std::array<double, kNumFields>* diag_weights,
                         const Eigen::Matrix3d* stress_form) {
  const Mesh& mesh = space.mesh();
  const auto& vq = space.volume_quad();
  Eigen::MatrixXd uh;
  double sum = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeom& el = mesh.elements[e];
    const double detj = 0.25 * el.hx * el.hy;
    fields_at_quad(space, coeffs, e, uh);
    for (std::size_t q = 0; q < vq.points.size(); ++q) {
      const double x = el.x0 + 0.5 * (vq.points[q][0] + 1.0) * el.hx;
      const double y = el.y0 + 0.5 * (vq.points[q][1] + 1.0) * el.hy;
      const std::array<double, kNumFields> fe = f(x, y);
      double val = 0.0;
      std::array<double, kNumFields> err;
      for (int c = 0; c < kNumFields; ++c) err[c] = fe[c] - uh(q, c);
      if (diag_weights) {
        for (int c = 0; c < kNumFields; ++c) val += (*diag_weights)[c] * err[c] * err[c];
      }
      if (stress_form) {
        const Eigen::Vector3d s(err[kSxx], err[kSyy], err[kSxy]);
        val += s.dot(*stress_form * s);
      }
      sum += detj * vq.weights[q] * val;
    }
  }
  return sum;
}

}  // namespace

double h_error_sq(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                  const DiscreteSpace::FieldFunction& f) {
  return weighted_error_sq(space, coeffs, f, &kHWeight, nullptr);
}

double m0_error_sq(const DiscreteSpace& space, const MaterialParams& material,
                   const Eigen::VectorXd& coeffs, const DiscreteSpace::FieldFunction& f) {
  const std::array<double, kNumFields> diag = {material.rho, material.rho, 0, 0,
                                               0,            material.c0,  0, 0};
  const Eigen::Matrix3d s = material.compliance_form();
  return weighted_error_sq(space, coeffs, f, &diag, &s);
}

DiscreteErrors discrete_error(const Trajectory& trajectory, const ManufacturedCase& mcase,
                              const TemporalRule& rule, const DiscreteSpace& space) {
  if (trajectory.space != &space || trajectory.rule != &rule) {
    throw InputError("discrete_error: trajectory does not match the given discretization");
  }
  const TimeMesh& tm = rule.time_mesh();
  const MaterialParams& material = mcase.material();

  // || . ||_{tau,nu}: exact solution sampled at the Radau nodes, where the
  // trajectory values are stored coefficient blocks.
  std::vector<std::vector<double>> samples(tm.slabs());
  double sup_energy = m0_error_sq(space, material, trajectory.initial, mcase.state_at(0.0));
  for (int n = 0; n < tm.slabs(); ++n) {
    samples[n].resize(rule.points());
    for (int mu = 0; mu < rule.points(); ++mu) {
      const double t = rule.nodes(n)[mu];
      samples[n][mu] = h_error_sq(space, trajectory.blocks[n][mu], mcase.state_at(t));
      sup_energy = std::max(
          sup_energy, m0_error_sq(space, material, trajectory.blocks[n][mu], mcase.state_at(t)));
    }
  }
  DiscreteErrors errs;
  errs.err_tau_nu = std::sqrt(rule.weighted_norm_sq(samples));
  errs.err_sup_energy = std::sqrt(sup_energy);

  // || . ||_nu by an over-resolved per-slab Gauss rule (k + 5 points).
  const QuadratureRule1D gl = gauss_legendre(rule.k() + 5);
  double nu_sq = 0.0;
  for (int n = 0; n < tm.slabs(); ++n) {
    const double t0 = tm.endpoints[n], tau = tm.tau(n);
    for (int q = 0; q < gl.size(); ++q) {
      const double t = t0 + 0.5 * (gl.points[q] + 1.0) * tau;
      const Eigen::VectorXd uh = trajectory.at_time(t);
      const double e2 = h_error_sq(space, uh, mcase.state_at(t));
      nu_sq += 0.5 * tau * gl.weights[q] * std::exp(-2.0 * rule.nu() * t) * e2;
    }
  }
  errs.err_nu = std::sqrt(nu_sq);
  return errs;
}

namespace {

struct RunResult {
  DiscreteErrors errors;
  double h, tau;
};

RunResult run_level(const ManufacturedCase& mcase, const StudyConfig& cfg, int nx, int ny,
                    int slabs) {
  const Mesh mesh = build_mesh(cfg.domain, nx, ny);
  const DiscreteSpace space(mesh, cfg.degree);
  const MaterialParams& material = mcase.material();
  PenaltyParams penalty = cfg.penalty;
  if (!(penalty.gamma_v > 0.0)) penalty = PenaltyParams::default_for_degree(cfg.degree);
  const OperatorSet ops = assemble_operators(material, space, penalty);
  const double nu = cfg.nu > 0.0 ? cfg.nu : compute_nu0(material, 0.1) + 0.1;
  const TemporalRule rule(TimeMesh::uniform(cfg.final_time, slabs), cfg.time_degree, nu);
  const Eigen::VectorXd u0h = initial_state(space, mcase.initial_fields());
  const Trajectory traj = march(space, ops, rule, mcase.source(), u0h);
  return {discrete_error(traj, mcase, rule, space), mesh.h, rule.time_mesh().tau_max()};
}

}  // namespace

ConvergenceReport convergence_study(const ManufacturedCase& mcase, StudyAxis axis, int levels,
                                    const StudyConfig& config) {
  if (levels < 3) throw InputError("convergence_study: need at least 3 levels for a rate fit");
  ConvergenceReport report;
  report.axis = axis;
  std::vector<double> xs, e_tau, e_sup, e_nu;
  for (int l = 0; l < levels; ++l) {
    const int factor = 1 << l;
    const int nx = axis == StudyAxis::kSpace ? config.nx * factor : config.nx;
    const int ny = axis == StudyAxis::kSpace ? config.ny * factor : config.ny;
    const int slabs = axis == StudyAxis::kTime ? config.slabs * factor : config.slabs;
    const RunResult res = run_level(mcase, config, nx, ny, slabs);
    StudyRow row;
    row.level = l;
    row.h = res.h;
    row.tau = res.tau;
    row.k = config.time_degree;
    row.r = config.degree;
    row.err_tau_nu = res.errors.err_tau_nu;
    row.err_sup_energy = res.errors.err_sup_energy;
    row.err_nu = res.errors.err_nu;
    const double x = axis == StudyAxis::kTime ? res.tau : res.h;
    if (l == 0) {
      row.rate_tau_nu = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.rate_tau_nu = std::log(e_tau.back() / row.err_tau_nu) / std::log(xs.back() / x);
    }
    xs.push_back(x);
    e_tau.push_back(row.err_tau_nu);
    e_sup.push_back(row.err_sup_energy);
    e_nu.push_back(row.err_nu);
    report.rows.push_back(row);
  }
  report.fitted_rate_tau_nu = fit_loglog_rate(xs, e_tau);
  report.fitted_rate_sup_energy = fit_loglog_rate(xs, e_sup);
  report.fitted_rate_nu = fit_loglog_rate(xs, e_nu);
  report.monotone = true;
  for (std::size_t i = 1; i < e_tau.size(); ++i) {
    if (e_tau[i] >= e_tau[i - 1]) report.monotone = false;
  }
  return report;
}

void ConvergenceReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("ConvergenceReport: cannot open " + path);
  out << "level,h,tau,k,r,err_tau_nu,err_sup_energy,err_nu,rate_tau_nu\n";
  char buf[256];
  for (const StudyRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%d,%.17g,%.17g,%.17g,%.17g\n", r.level, r.h,
                  r.tau, r.k, r.r, r.err_tau_nu, r.err_sup_energy, r.err_nu, r.rate_tau_nu);
    out << buf;
  }
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

// Boundary sums of the identity for <A_h Y, Y>, evaluated independently of
// the assembled matrices through pointwise traces and face quadrature.
double boundary_identity_sum(const DiscreteSpace& space, const Eigen::VectorXd& y) {
  const Mesh& mesh = space.mesh();
  double sum = 0.0;
  for (const Face& f : mesh.boundary_faces) {
    const int e = f.plus_elem;
    for (const auto& [pt, w] : face_quadrature(f, space.degree() + 2)) {
      const double v1 = space.evaluate(y, kVx, e, pt[0], pt[1]);
      const double v2 = space.evaluate(y, kVy, e, pt[0], pt[1]);
      const double s11 = space.evaluate(y, kSxx, e, pt[0], pt[1]);
      const double s22 = space.evaluate(y, kSyy, e, pt[0], pt[1]);
      const double s12 = space.evaluate(y, kSxy, e, pt[0], pt[1]);
      const double p = space.evaluate(y, kP, e, pt[0], pt[1]);
      const double q1 = space.evaluate(y, kQx, e, pt[0], pt[1]);
      const double q2 = space.evaluate(y, kQy, e, pt[0], pt[1]);
      const double sn1 = s11 * f.normal[0] + s12 * f.normal[1];
      const double sn2 = s12 * f.normal[0] + s22 * f.normal[1];
      sum += w * ((v1 * sn1 + v2 * sn2) - p * (q1 * f.normal[0] + q2 * f.normal[1]));
    }
  }
  return sum;
}

}  // namespace

IdentityReport verify_identities(const std::vector<int>& mesh_sizes,
                                 const std::vector<int>& degrees, int trials,
                                 bool flip_jpartial_sign) {
  IdentityReport report;
  std::mt19937 rng(20240811u);
  std::normal_distribution<double> dist(0.0, 1.0);

  double worst_skew = 0.0, worst_bd = 0.0, worst_jd = 0.0, worst_dual = 0.0;
  const MaterialParams material{};  // unit coefficients; the identities are material-free
  for (int m : mesh_sizes) {
    for (int r : degrees) {
      const Mesh mesh = build_mesh(Rect{}, m, m);
      const DiscreteSpace space(mesh, r);
      const SparseMat mass = assemble_mass(space);
      const SparseMat ah = assemble_ah(space);
      SparseMat jp = assemble_jpartial(space);
      if (flip_jpartial_sign) jp = SparseMat(-jp);
      const SparseMat skew = ah + jp;

      for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXd y(space.ndof());
        for (int i = 0; i < y.size(); ++i) y(i) = dist(rng);
        const double norm_y = h_norm(space, mass, y);
        const Eigen::VectorXd ah_y = ah * y;
        const double norm_ah_y = riesz_norm(space, ah_y);

        const double skew_defect = std::abs(y.dot(skew * y)) / (norm_y * (norm_ah_y + 1.0));
        worst_skew = std::max(worst_skew, skew_defect);

        const double bd = boundary_identity_sum(space, y);
        const double bd_defect = std::abs(y.dot(ah_y) - bd) / (norm_y * (norm_ah_y + 1.0));
        worst_bd = std::max(worst_bd, bd_defect);

        const double jd_defect =
            std::abs(y.dot(jp * y) + y.dot(ah_y)) / (norm_y * (norm_ah_y + 1.0));
        worst_jd = std::max(worst_jd, jd_defect);
      }

      // Conditional duality: scalar pair (p, q) with zero boundary traces of p.
      for (int trial = 0; trial < std::min(trials, 20); ++trial) {
        Eigen::VectorXd yp = Eigen::VectorXd::Zero(space.ndof());
        Eigen::VectorXd zq = Eigen::VectorXd::Zero(space.ndof());
        Eigen::VectorXd yv = Eigen::VectorXd::Zero(space.ndof());
        Eigen::VectorXd zs = Eigen::VectorXd::Zero(space.ndof());
        for (int e = 0; e < mesh.n_elements(); ++e) {
          const ElementGeom& el = mesh.elements[e];
          const bool interior =
              el.ix > 0 && el.ix < mesh.nx - 1 && el.iy > 0 && el.iy < mesh.ny - 1;
          for (int i = 0; i < space.nloc(); ++i) {
            if (interior) {
              yp(space.dof(e, kP, i)) = dist(rng);
              yv(space.dof(e, kVx, i)) = dist(rng);
              yv(space.dof(e, kVy, i)) = dist(rng);
            }
            zq(space.dof(e, kQx, i)) = dist(rng);
            zq(space.dof(e, kQy, i)) = dist(rng);
            zs(space.dof(e, kSxx, i)) = dist(rng);
            zs(space.dof(e, kSyy, i)) = dist(rng);
            zs(space.dof(e, kSxy, i)) = dist(rng);
          }
        }
        if (m < 3) continue;  // no fully interior elements
        // <grad_dg p, q> + <div_dg q, p> = 0 when p vanishes on the boundary.
        const double grad_pair = zq.dot(ah * yp);
        const double div_pair = yp.dot(ah * zq);
        const double scale_pq = h_norm(space, mass, yp) * h_norm(space, mass, zq) + 1.0;
        worst_dual = std::max(worst_dual, std::abs(grad_pair + div_pair) / scale_pq);
        // Vector case: -<Div_dg s, v> and -<Grad_dg v, s> rows carry minus signs.
        const double grad_v = -(zs.dot(ah * yv));
        const double div_s = -(yv.dot(ah * zs));
        const double scale_vs = h_norm(space, mass, yv) * h_norm(space, mass, zs) + 1.0;
        worst_dual = std::max(worst_dual, std::abs(grad_v + div_s) / scale_vs);
      }
    }
  }
  report.checks.push_back({"skew_symmetry_ah_plus_jpartial", worst_skew, 1e-12, worst_skew <= 1e-12});
  report.checks.push_back({"boundary_identity_ah", worst_bd, 1e-12, worst_bd <= 1e-12});
  report.checks.push_back({"jpartial_cancels_ah_diagonal", worst_jd, 1e-12, worst_jd <= 1e-12});
  report.checks.push_back({"conditional_duality_zero_traces", worst_dual, 1e-12, worst_dual <= 1e-12});

  // Weighted Gauss-Radau exactness against an over-resolved plain Gauss rule.
  {
    std::mt19937 qrng(77u);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const QuadratureRule1D ref = gauss_legendre(32);
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k) {
      for (double c : {0.0, 1e-6, 0.1, 1.0, 5.0}) {
        const QuadratureRule1D rule = weighted_gauss_radau(k, c);
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<double> a(2 * k + 1);
          for (double& v : a) v = coef(qrng);
          const auto poly = [&](double x) {
            double out = 0.0;
            for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) out = out * x + a[j];
            return out;
          };
          double qr = 0.0;
          for (int i = 0; i < rule.size(); ++i) qr += rule.weights[i] * poly(rule.points[i]);
          double exact = 0.0;
          for (int i = 0; i < ref.size(); ++i) {
            exact += ref.weights[i] * std::exp(-c * (ref.points[i] + 1.0)) * poly(ref.points[i]);
          }
          const double scale = std::max(1.0, std::abs(exact));
          worst = std::max(worst, std::abs(qr - exact) / scale);
        }
      }
    }
    report.checks.push_back({"weighted_radau_exactness", worst, 1e-12, worst <= 1e-12});
  }

  // Positivity of nu M0 + M1 relative to the mass matrix for nu > nu0.
  {
    const double gamma = 0.1;
    const double nu = compute_nu0(material, gamma) + 0.1;
    const Mesh mesh = build_mesh(Rect{}, 2, 2);
    const DiscreteSpace space(mesh, 1);
    const Eigen::MatrixXd m0 = Eigen::MatrixXd(assemble_m0(material, space));
    const Eigen::MatrixXd m1 = Eigen::MatrixXd(assemble_m1(material, space));
    const Eigen::MatrixXd mass = Eigen::MatrixXd(assemble_mass(space));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(nu * m0 + m1, mass);
    const double lmin = eig.eigenvalues().minCoeff();
    const double defect = std::max(0.0, gamma - lmin);
    report.checks.push_back({"coercivity_nu_m0_plus_m1", defect, 1e-8, defect <= 1e-8});
  }
  return report;
}

std::vector<TrajectorySummaryRow> summarize_trajectory(const Trajectory& trajectory,
                                                       const DiscreteSpace& space,
                                                       const OperatorSet& ops) {
  std::vector<TrajectorySummaryRow> rows;
  const TimeMesh& tm = trajectory.rule->time_mesh();
  const auto field_norm = [&](const Eigen::VectorXd& u, int first, int count) {
    Eigen::VectorXd masked = Eigen::VectorXd::Zero(u.size());
    for (int e = 0; e < space.mesh().n_elements(); ++e) {
      for (int c = first; c < first + count; ++c) {
        for (int i = 0; i < space.nloc(); ++i) {
          masked(space.dof(e, c, i)) = u(space.dof(e, c, i));
        }
      }
    }
    return std::sqrt(masked.dot(ops.mass * masked));
  };
  for (int n = 0; n <= tm.slabs(); ++n) {
    const Eigen::VectorXd& u = trajectory.trace(n);
    TrajectorySummaryRow row;
    row.t = tm.endpoints[n];
    row.norm_v = field_norm(u, kVx, 2);
    row.norm_sigma = field_norm(u, kSxx, 3);
    row.norm_p = field_norm(u, kP, 1);
    row.norm_q = field_norm(u, kQx, 2);
    row.energy = u.dot(ops.m0 * u);
    rows.push_back(row);
  }
  return rows;
}

void write_summary_csv(const std::vector<TrajectorySummaryRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("write_summary_csv: cannot open " + path);
  out << "t,norm_v,norm_sigma,norm_p,norm_q,energy\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.norm_v,
                  r.norm_sigma, r.norm_p, r.norm_q, r.energy);
    out << buf;
  }
}

}  // namespace stdg
