// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stdg/manufactured.hpp"
#include "stdg/operators.hpp"
#include "stdg/solver.hpp"
#include "stdg/timeslab.hpp"

namespace stdg {

/// Error values of the fully discrete trajectory against the exact solution.
struct DiscreteErrors {
  double err_tau_nu;      // || U - U_th ||_{tau,nu} (weighted Radau norm)
  double err_sup_energy;  // sup_t sqrt(<M0 (U-U_th), (U-U_th)>)
  double err_nu;          // || U - U_th ||_nu by over-resolved quadrature
};

DiscreteErrors discrete_error(const Trajectory& trajectory, const ManufacturedCase& mcase,
                              const TemporalRule& rule, const DiscreteSpace& space);

/// ||f - U_h||_H^2 at fixed time for spatial coefficients.
double h_error_sq(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                  const DiscreteSpace::FieldFunction& f);
/// <M0 (f - U_h), (f - U_h)> at fixed time.
double m0_error_sq(const DiscreteSpace& space, const MaterialParams& material,
                   const Eigen::VectorXd& coeffs, const DiscreteSpace::FieldFunction& f);

enum class StudyAxis { kTime, kSpace };

struct StudyConfig {
  Rect domain;
  int nx = 4, ny = 4;
  int degree = 1;       // r
  double final_time = 1.0;
  int slabs = 4;        // N
  int time_degree = 1;  // k
  double nu = -1.0;     // < 0 selects nu0(gamma = 0.1) + 0.1
  PenaltyParams penalty{};  // zero values select the degree default
};

struct StudyRow {
  int level;
  double h, tau;
  int k, r;
  double err_tau_nu, err_sup_energy, err_nu;
  double rate_tau_nu;  // pairwise rate against the previous level (nan on level 0)
};

struct ConvergenceReport {
  StudyAxis axis;
  std::vector<StudyRow> rows;
  double fitted_rate_tau_nu;   // least-squares log-log fit over all levels
  double fitted_rate_sup_energy;
  double fitted_rate_nu;
  bool monotone;  // warning flag: error sequence decreased at every level
  void write_csv(const std::string& path) const;
};

ConvergenceReport convergence_study(const ManufacturedCase& mcase, StudyAxis axis, int levels,
                                    const StudyConfig& config);

/// One structural check with its worst observed defect.
struct IdentityCheck {
  std::string name;
  double worst;  // largest relative defect observed
  double tol;
  bool pass;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

/// Runs the structure-preservation suite: skew-symmetry of A_h + J_d,
/// the boundary identity for <A_h Y, Y>, conditional duality with vanishing
/// boundary traces, weighted quadrature exactness and the positivity of
/// nu M0 + M1. `flip_jpartial_sign` is a fault-injection hook for the CLI.
IdentityReport verify_identities(const std::vector<int>& mesh_sizes,
                                 const std::vector<int>& degrees, int trials,
                                 bool flip_jpartial_sign = false);

/// Summary rows written by simulation runs: slab end, field L2 norms, energy.
struct TrajectorySummaryRow {
  double t;
  double norm_v, norm_sigma, norm_p, norm_q;
  double energy;  // <M0 U, U>
};

std::vector<TrajectorySummaryRow> summarize_trajectory(const Trajectory& trajectory,
                                                       const DiscreteSpace& space,
                                                       const OperatorSet& ops);

void write_summary_csv(const std::vector<TrajectorySummaryRow>& rows, const std::string& path);

}  // namespace stdg
