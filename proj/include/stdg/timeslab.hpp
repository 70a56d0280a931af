// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "stdg/quadrature.hpp"

namespace stdg {

/// Partition of (0, T] into slabs I_n = (t_{n-1}, t_n].
struct TimeMesh {
  std::vector<double> endpoints;  // t_0 = 0 < t_1 < ... < t_N = T

  static TimeMesh uniform(double T, int slabs);
  static TimeMesh from_endpoints(std::vector<double> endpoints);

  int slabs() const { return static_cast<int>(endpoints.size()) - 1; }
  double final_time() const { return endpoints.back(); }
  double tau(int n) const { return endpoints[n + 1] - endpoints[n]; }
  double tau_max() const;
  /// Slab index n with t in (t_n, t_{n+1}]; t <= 0 maps to slab 0.
  int slab_of(double t) const;
};

/// Exponentially weighted right Gauss-Radau data per slab: nodes
/// t_{n,mu} in (t_{n-1}, t_n] with the last node at t_n, and weights
/// scaled so that sum_mu w_mu f(t_mu) approximates
/// int_{I_n} exp(-2 nu (t - t_{n-1})) f(t) dt (exactly for degree <= 2k).
class TemporalRule {
 public:
  TemporalRule(TimeMesh mesh, int k, double nu);

  const TimeMesh& time_mesh() const { return mesh_; }
  int k() const { return k_; }
  double nu() const { return nu_; }
  int points() const { return k_ + 1; }

  const std::vector<double>& nodes(int n) const { return slab_[n].nodes; }
  const std::vector<double>& weights(int n) const { return slab_[n].weights; }
  /// Temporal Lagrange basis on slab n (nodal at the Radau points).
  const Lagrange1D& lagrange(int n) const { return slab_[n].lagrange; }
  /// D(j, i) = l_i'(t_{n,j}).
  const Eigen::MatrixXd& node_derivatives(int n) const { return slab_[n].deriv; }
  /// a(j) = l_j(t_{n-1}^+), the left-endpoint values of the nodal basis.
  const Eigen::VectorXd& left_values(int n) const { return slab_[n].left_vals; }

  /// Weighted quadrature of samples given at the slab's Radau nodes.
  double slab_quadrature(int n, const std::vector<double>& samples) const;

  /// ||w||_{tau,nu}^2 from samples[n][mu] = <w, w>_H(t_{n,mu}).
  double weighted_norm_sq(const std::vector<std::vector<double>>& pair_samples) const;
  /// |w|_{tau,nu}^2 from samples of a nonnegative scalar; throws on
  /// negative samples.
  double weighted_value_seminorm_sq(const std::vector<std::vector<double>>& samples) const;

 private:
  struct SlabData {
    std::vector<double> nodes;    // physical Radau nodes
    std::vector<double> weights;  // physical weights ((tau/2) * reference)
    Lagrange1D lagrange;
    Eigen::MatrixXd deriv;
    Eigen::VectorXd left_vals;
  };
  TimeMesh mesh_;
  int k_;
  double nu_;
  std::vector<SlabData> slab_;
};

/// Piecewise polynomial in time, left-discontinuous at slab boundaries,
/// stored by nodal values at the slab Radau points plus the value at t = 0.
class RadauInterpolant {
 public:
  RadauInterpolant(const TemporalRule& rule, const std::function<double(double)>& f);
  /// From precomputed samples: value0 = f(0), samples[n][mu] = f(t_{n,mu}).
  RadauInterpolant(const TemporalRule& rule, double value0,
                   std::vector<std::vector<double>> samples);

  double operator()(double t) const;

 private:
  const TemporalRule* rule_;
  double value0_;
  std::vector<std::vector<double>> samples_;
};

/// Continuous piecewise polynomial of degree k+1 interpolating at the
/// Radau points and both slab endpoints (t_{n-1} matched from both sides).
class RadauPlusInterpolant {
 public:
  RadauPlusInterpolant(const TemporalRule& rule, const std::function<double(double)>& f);

  double operator()(double t) const;
  double derivative(double t) const;

 private:
  const TemporalRule* rule_;
  std::vector<Lagrange1D> lagrange_;             // per slab, k+2 nodes
  std::vector<std::vector<double>> samples_;     // per slab, k+2 values
};

}  // namespace stdg
