// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>
#include <string>

#include "stdg/fespace.hpp"
#include "stdg/material.hpp"

namespace stdg {

using SparseMat = Eigen::SparseMatrix<double>;

/// Boundary penalty strengths for the velocity and pressure traces.
struct PenaltyParams {
  double gamma_v = 0.0;
  double gamma_p = 0.0;
  static PenaltyParams default_for_degree(int r) {
    const double g = 10.0 * (r + 1) * (r + 1);
    return {g, g};
  }
};

/// Sparse bilinear-form matrices on the global DoF space. Entry (i, j) is
/// the form value with trial function j and test function i, so
/// <A_h Y, Z> = Z^T * ah * Y in coefficients.
struct OperatorSet {
  SparseMat mass;      // product-space L2 inner product
  SparseMat m0;        // block-diag(rho, S, c0, 0)
  SparseMat m1;        // (v, q) coupling through K^{-1}
  SparseMat ah;        // DG first-order operator
  SparseMat jpartial;  // boundary correction restoring skew-symmetry
  SparseMat jgamma;    // boundary penalty on v and p traces

  /// m1 + ah + jpartial + jgamma, the spatial part of the slab system.
  SparseMat spatial() const;
};

SparseMat assemble_mass(const DiscreteSpace& space);
SparseMat assemble_m0(const MaterialParams& params, const DiscreteSpace& space);
SparseMat assemble_m1(const MaterialParams& params, const DiscreteSpace& space);
SparseMat assemble_ah(const DiscreteSpace& space);
SparseMat assemble_jpartial(const DiscreteSpace& space);
SparseMat assemble_jgamma(const DiscreteSpace& space, double gamma_v, double gamma_p);

OperatorSet assemble_operators(const MaterialParams& params, const DiscreteSpace& space,
                               const PenaltyParams& penalty);

/// Riesz representative norm ||w||_H of a load vector w (i.e. of the
/// functional <w, .> in coefficients): sqrt(w^T mass^{-1} w), computed
/// with the block-diagonal structure of the broken mass matrix.
double riesz_norm(const DiscreteSpace& space, const Eigen::VectorXd& load);

/// H-norm of a coefficient vector: sqrt(y^T mass y).
double h_norm(const DiscreteSpace& space, const SparseMat& mass, const Eigen::VectorXd& y);

/// Coordinate-format (row col value) text export.
void export_matrix_coo(const SparseMat& m, const std::string& path);

}  // namespace stdg
