// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "stdg/geometry.hpp"
#include "stdg/quadrature.hpp"

namespace stdg {

/// Scalar components of the four-field unknown U = (v, sigma, p, q),
/// with the symmetric stress stored Voigt-style and q the total flux.
enum Field : int { kVx = 0, kVy, kSxx, kSyy, kSxy, kP, kQx, kQy };
inline constexpr int kNumFields = 8;

/// Component weights of the L2 inner product on the product space:
/// the Frobenius pairing counts the off-diagonal stress entry twice.
inline constexpr std::array<double, kNumFields> kHWeight = {1, 1, 1, 1, 2, 1, 1, 1};

/// Tensor-product Lagrange basis of degree r on [-1,1]^2 with
/// Gauss-Lobatto nodal points. Local index = iy*(r+1) + ix.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return n1d_ * n1d_; }
  const std::vector<std::array<double, 2>>& nodes() const { return nodes_; }

  void values(double xi, double eta, std::span<double> out) const;
  /// Reference gradients; out_dxi/out_deta hold d/dxi and d/deta of each basis.
  void gradients(double xi, double eta, std::span<double> out_dxi, std::span<double> out_deta) const;

 private:
  int degree_;
  int n1d_;
  Lagrange1D lag_;
  std::vector<std::array<double, 2>> nodes_;
};

/// Broken tensor-product space on a quad mesh holding all eight scalar
/// fields per element; DoF layout (elem, field, local) -> global is
/// (elem * 8 + field) * nloc + local. Immutable after construction.
class DiscreteSpace {
 public:
  DiscreteSpace(const Mesh& mesh, int degree, int volume_quad_points = -1);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int nloc() const { return basis_.size(); }
  int ndof() const { return kNumFields * nloc() * mesh_->n_elements(); }
  const ReferenceBasis& basis() const { return basis_; }

  int dof(int elem, int field, int loc) const {
    return (elem * kNumFields + field) * nloc() + loc;
  }

  /// Cached volume quadrature on the reference square (tensor Gauss-Legendre;
  /// default 2r+2 points per axis) with basis values/gradients at the points.
  struct VolumeQuad {
    std::vector<std::array<double, 2>> points;  // reference coordinates
    std::vector<double> weights;                // reference weights
    Eigen::MatrixXd n;                          // (#pts x nloc) values
    Eigen::MatrixXd dxi, deta;                  // (#pts x nloc) reference gradients
  };
  const VolumeQuad& volume_quad() const { return vq_; }

  /// Trace values of all local basis functions along a local edge at the
  /// 1D reference points of `edge_points()`; layout (#pts x nloc).
  const Eigen::MatrixXd& edge_trace(int local_edge) const { return edge_trace_[local_edge]; }
  const QuadratureRule1D& edge_points() const { return edge_rule_; }

  /// Local (per-element, per-scalar-field) reference mass matrix and its solver.
  const Eigen::MatrixXd& reference_mass() const { return mass_ref_; }

  /// Closed-form field over the domain: (x, y) -> 8 component values.
  using FieldFunction = std::function<std::array<double, kNumFields>(double, double)>;

  /// L2-orthogonal projection of f onto the broken product space.
  Eigen::VectorXd project_l2(const FieldFunction& f) const;

  /// L2 load vector <f, phi>_H (component weights included).
  Eigen::VectorXd load(const FieldFunction& f) const;

  /// Point value of one field of a coefficient vector inside element `elem`
  /// (one-sided trace on faces; the element id selects the side).
  double evaluate(const Eigen::VectorXd& coeffs, int field, int elem, double x, double y) const;

  /// Physical gradient of one field at a point inside `elem`.
  std::array<double, 2> evaluate_gradient(const Eigen::VectorXd& coeffs, int field, int elem,
                                          double x, double y) const;

  /// Map a physical point in element `elem` to reference coordinates.
  std::array<double, 2> to_reference(int elem, double x, double y) const;

  /// Per-element nodal dump: element id, node coordinates, 8 field values.
  void dump_fields_csv(const Eigen::VectorXd& coeffs, const std::string& path) const;

 private:
  const Mesh* mesh_;
  int degree_;
  ReferenceBasis basis_;
  VolumeQuad vq_;
  QuadratureRule1D edge_rule_;
  std::array<Eigen::MatrixXd, 4> edge_trace_;
  Eigen::MatrixXd mass_ref_;
  Eigen::LLT<Eigen::MatrixXd> mass_ref_llt_;
};

}  // namespace stdg
