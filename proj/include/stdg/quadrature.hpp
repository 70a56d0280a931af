// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace stdg {

struct QuadratureRule1D {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [-1,1], exact for degree <= 2n-1.
QuadratureRule1D gauss_legendre(int n);

/// n-point Gauss-Lobatto rule on [-1,1] (includes +-1 for n >= 2).
/// n == 1 returns the midpoint. Used for nodal basis points.
QuadratureRule1D gauss_lobatto(int n);

/// (k+1)-point right-sided Gauss-Radau rule on (-1,1] for the weight
/// exp(-c*(x+1)), c >= 0. The last node is fixed at +1 and the rule
/// integrates exp(-c*(x+1)) * p(x) exactly for p of degree <= 2k.
QuadratureRule1D weighted_gauss_radau(int k, double c);

/// Lagrange basis on a given set of distinct nodes (barycentric form).
class Lagrange1D {
 public:
  Lagrange1D() = default;
  explicit Lagrange1D(std::vector<double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Values of all basis polynomials at x.
  void values(double x, std::span<double> out) const;
  /// First derivatives of all basis polynomials at x.
  void derivatives(double x, std::span<double> out) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> bary_;
  double span_ = 1.0;
};

}  // namespace stdg
