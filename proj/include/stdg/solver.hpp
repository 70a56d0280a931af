// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>
#include <vector>

#include "stdg/operators.hpp"
#include "stdg/timeslab.hpp"

namespace stdg {

/// Source term of the evolutionary system at a point in space-time,
/// as eight component values.
using SpaceTimeField = std::function<std::array<double, kNumFields>(double x, double y, double t)>;

/// Per-slab space-time block system coupling the k+1 temporal Lagrange
/// coefficients at the slab's Radau nodes; identical for all slabs when
/// the slab widths are uniform, so the factorization is reused.
class SlabSystem {
 public:
  SlabSystem(const DiscreteSpace& space, const OperatorSet& ops, const TemporalRule& rule, int n);

  const SparseMat& matrix() const { return matrix_; }
  int slab() const { return slab_; }

  /// Right-hand side from the source (evaluated at the slab Radau nodes)
  /// and the jump load carrying the previous slab-end trace.
  Eigen::VectorXd rhs(const SpaceTimeField& source, const Eigen::VectorXd& prev_trace) const;

  /// Solves the block system; relative residual <= 1e-10 or NumericError.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  const DiscreteSpace* space_;
  const OperatorSet* ops_;
  const TemporalRule* rule_;
  int slab_;
  SparseMat matrix_;
  std::shared_ptr<Eigen::SparseLU<SparseMat>> lu_;
  double matrix_norm_ = 0.0;
};

/// Fully discrete trajectory: per-slab nodal coefficient blocks (the
/// Lagrange values at the Radau nodes), the initial datum and slab-end
/// traces for the jump terms.
struct Trajectory {
  const DiscreteSpace* space = nullptr;
  const TemporalRule* rule = nullptr;
  Eigen::VectorXd initial;                            // U_{0,h}
  std::vector<std::vector<Eigen::VectorXd>> blocks;   // [slab][node]
  std::vector<Eigen::VectorXd> traces;                // U^-(t_n), n = 1..N

  /// Trace U^-(t_n); n = 0 gives the initial datum.
  const Eigen::VectorXd& trace(int n) const { return n == 0 ? initial : traces[n - 1]; }
  /// Spatial coefficients at time t (left-continuous at slab ends).
  Eigen::VectorXd at_time(double t) const;
};

/// L2 projection of the four-field initial state built from
/// (u1, C eps(u0), p0, -K grad p0 + alpha u1).
Eigen::VectorXd initial_state(const DiscreteSpace& space, const DiscreteSpace::FieldFunction& u0);

/// March over all slabs: slab n consumes the trace U^-(t_{n-1}).
Trajectory march(const DiscreteSpace& space, const OperatorSet& ops, const TemporalRule& rule,
                 const SpaceTimeField& source, const Eigen::VectorXd& u0h);

/// Cheap 1-norm condition estimate of the factored slab matrix.
double condition_estimate(const SparseMat& m, Eigen::SparseLU<SparseMat>& lu);

}  // namespace stdg
