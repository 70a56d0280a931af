// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>

namespace stdg {

/// Constant coefficients of the coupled hyperbolic-parabolic system:
/// mass density rho, coupling alpha, storage c0, isotropic Lame pair
/// (lambda, mu) defining the elasticity tensor C and its inverse S,
/// and the symmetric positive definite permeability K.
struct MaterialParams {
  double rho = 1.0;
  double alpha = 1.0;
  double c0 = 1.0;
  double lambda = 1.0;
  double mu = 1.0;
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();

  void validate() const;  // throws InputError on violated positivity
  Eigen::Matrix2d K_inverse() const;

  /// Elasticity C eps = 2 mu eps + lambda tr(eps) I on Voigt (e11,e22,e12).
  std::array<double, 3> apply_elasticity(const std::array<double, 3>& eps) const;
  /// Compliance S sigma (inverse of C) on Voigt (s11,s22,s12).
  std::array<double, 3> apply_compliance(const std::array<double, 3>& sig) const;

  /// 3x3 bilinear form matrix of <S sigma, tau> in Voigt coordinates with
  /// the Frobenius pairing weight included (off-diagonal counted twice).
  Eigen::Matrix3d compliance_form() const;

  /// Smallest eigenvalue of S acting on symmetric tensors.
  double compliance_min_eigenvalue() const { return 1.0 / (2.0 * mu + 2.0 * lambda); }

  /// Pointwise 8x8 matrices of M0 and M1 in coordinates orthonormal for
  /// the product-space inner product: (vx, vy, s11, s22, sqrt(2) s12, p, qx, qy).
  Eigen::Matrix<double, 8, 8> pointwise_m0() const;
  Eigen::Matrix<double, 8, 8> pointwise_m1() const;
};

/// Smallest nu (bisection tolerance 1e-8) such that the pointwise matrix
/// nu*M0 + M1 - gamma*I is positive semidefinite; with constant
/// coefficients this is the uniform positivity bound of the weighted
/// operator. Throws InputError when no such nu exists for the given gamma
/// (the flux block is independent of nu).
double compute_nu0(const MaterialParams& params, double gamma);

}  // namespace stdg
