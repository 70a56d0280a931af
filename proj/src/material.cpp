// SPDX-License-Identifier: Apache-2.0
#include "stdg/material.hpp"

#include <cmath>

#include "stdg/common.hpp"

namespace stdg {

void MaterialParams::validate() const {
  if (!(rho > 0.0)) throw InputError("material: rho must be positive");
  if (!(alpha >= 0.0)) throw InputError("material: alpha must be nonnegative");
  if (!(c0 > 0.0)) throw InputError("material: c0 must be positive");
  if (!(mu > 0.0)) throw InputError("material: mu must be positive");
  if (!(lambda >= 0.0)) throw InputError("material: lambda must be nonnegative");
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-14 * K.norm()) {
    throw InputError("material: permeability K must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(K);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw InputError("material: permeability K must be positive definite");
  }
}

Eigen::Matrix2d MaterialParams::K_inverse() const {
  const double det = K(0, 0) * K(1, 1) - K(0, 1) * K(1, 0);
  Eigen::Matrix2d inv;
  inv << K(1, 1), -K(0, 1), -K(1, 0), K(0, 0);
  return inv / det;
}

std::array<double, 3> MaterialParams::apply_elasticity(const std::array<double, 3>& eps) const {
  const double tr = eps[0] + eps[1];
  return {2.0 * mu * eps[0] + lambda * tr, 2.0 * mu * eps[1] + lambda * tr, 2.0 * mu * eps[2]};
}

std::array<double, 3> MaterialParams::apply_compliance(const std::array<double, 3>& sig) const {
  // S sigma = sigma/(2 mu) - lambda/(2 mu (2 mu + d lambda)) tr(sigma) I, d = 2.
  const double beta = lambda / (2.0 * mu * (2.0 * mu + 2.0 * lambda));
  const double tr = sig[0] + sig[1];
  return {sig[0] / (2.0 * mu) - beta * tr, sig[1] / (2.0 * mu) - beta * tr, sig[2] / (2.0 * mu)};
}

Eigen::Matrix3d MaterialParams::compliance_form() const {
  const double beta = lambda / (2.0 * mu * (2.0 * mu + 2.0 * lambda));
  const double a = 1.0 / (2.0 * mu) - beta;
  const double b = -beta;
  Eigen::Matrix3d s;
  s << a, b, 0.0, b, a, 0.0, 0.0, 0.0, 1.0 / mu;
  return s;
}

Eigen::Matrix<double, 8, 8> MaterialParams::pointwise_m0() const {
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  m(0, 0) = rho;
  m(1, 1) = rho;
  // S in orthonormal stress coordinates (s11, s22, sqrt(2) s12).
  const double beta = lambda / (2.0 * mu * (2.0 * mu + 2.0 * lambda));
  const double a = 1.0 / (2.0 * mu) - beta;
  m(2, 2) = a;
  m(3, 3) = a;
  m(2, 3) = -beta;
  m(3, 2) = -beta;
  m(4, 4) = 1.0 / (2.0 * mu);
  m(5, 5) = c0;
  return m;
}

Eigen::Matrix<double, 8, 8> MaterialParams::pointwise_m1() const {
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  const Eigen::Matrix2d kinv = K_inverse();
  m.block<2, 2>(0, 0) = -alpha * alpha * kinv;
  m.block<2, 2>(0, 6) = -alpha * kinv;
  m.block<2, 2>(6, 0) = -alpha * kinv;
  m.block<2, 2>(6, 6) = kinv;
  return m;
}

double compute_nu0(const MaterialParams& params, double gamma) {
  params.validate();
  if (!(gamma > 0.0)) throw InputError("compute_nu0: gamma must be positive");

  // The flux block of nu*M0 + M1 does not depend on nu: feasibility requires
  // lambda_min(K^{-1}) > gamma (>= gamma when alpha = 0).
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> kinv_eig(params.K_inverse());
  const double dmin = kinv_eig.eigenvalues().minCoeff();
  const bool feasible = (params.alpha > 0.0) ? (dmin > gamma) : (dmin >= gamma);
  if (!feasible) {
    throw InputError(
        "compute_nu0: no nu satisfies the uniform positivity bound for gamma = " +
        std::to_string(gamma) + "; the flux block requires lambda_min(K^{-1}) = " +
        std::to_string(dmin) + (params.alpha > 0.0 ? " > gamma" : " >= gamma"));
  }

  const Eigen::Matrix<double, 8, 8> m0 = params.pointwise_m0();
  const Eigen::Matrix<double, 8, 8> m1 = params.pointwise_m1();
  const auto feasible_at = [&](double nu) {
    Eigen::Matrix<double, 8, 8> m = nu * m0 + m1;
    for (int i = 0; i < 8; ++i) m(i, i) -= gamma;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 8, 8>> eig(m);
    return eig.eigenvalues().minCoeff() >= -1e-13 * (1.0 + m.norm());
  };

  double hi = 1.0;
  while (!feasible_at(hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("compute_nu0: bisection bracket search failed");
  }
  double lo = 0.0;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (feasible_at(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace stdg
