// SPDX-License-Identifier: Apache-2.0
#include "stdg/solver.hpp"

#include <cmath>

#include "stdg/common.hpp"

namespace stdg {

SlabSystem::SlabSystem(const DiscreteSpace& space, const OperatorSet& ops,
                       const TemporalRule& rule, int n)
    : space_(&space), ops_(&ops), rule_(&rule), slab_(n) {
  const int nh = space.ndof();
  const int np = rule.points();
  const SparseMat spatial = ops.spatial();
  const Eigen::MatrixXd& deriv = rule.node_derivatives(n);
  const Eigen::VectorXd& left = rule.left_values(n);
  const std::vector<double>& w = rule.weights(n);

  // Block (j, i) = w_j D(j,i) M0 + delta_ji w_j (M1 + A_h + J_d + J_g)
  //             + a_j a_i M0   (jump pairing at t_{n-1}^+).
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(np) * np * ops.m0.nonZeros() +
               static_cast<std::size_t>(np) * spatial.nonZeros());
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      const double c_m0 = w[j] * deriv(j, i) + left(j) * left(i);
      if (c_m0 != 0.0) {
        for (int outer = 0; outer < ops.m0.outerSize(); ++outer) {
          for (SparseMat::InnerIterator it(ops.m0, outer); it; ++it) {
            trip.emplace_back(j * nh + static_cast<int>(it.row()),
                              i * nh + static_cast<int>(it.col()), c_m0 * it.value());
          }
        }
      }
      if (i == j) {
        for (int outer = 0; outer < spatial.outerSize(); ++outer) {
          for (SparseMat::InnerIterator it(spatial, outer); it; ++it) {
            trip.emplace_back(j * nh + static_cast<int>(it.row()),
                              i * nh + static_cast<int>(it.col()), w[j] * it.value());
          }
        }
      }
    }
  }
  matrix_.resize(np * nh, np * nh);
  matrix_.setFromTriplets(trip.begin(), trip.end());
  matrix_.makeCompressed();
  matrix_norm_ =
      Eigen::Map<const Eigen::VectorXd>(matrix_.valuePtr(), matrix_.nonZeros()).cwiseAbs().sum() /
      matrix_.rows();

  lu_ = std::make_shared<Eigen::SparseLU<SparseMat>>();
  lu_->compute(matrix_);
  if (lu_->info() != Eigen::Success) {
    throw NumericError("SlabSystem: factorization failed on slab " + std::to_string(n) +
                       " (matrix reported singular)");
  }
}

namespace {

Eigen::VectorXd slab_rhs(const DiscreteSpace& space, const OperatorSet& ops,
                         const TemporalRule& rule, int n, const SpaceTimeField& source,
                         const Eigen::VectorXd& prev_trace) {
  const int nh = space.ndof();
  const Eigen::VectorXd& left = rule.left_values(n);
  const std::vector<double>& w = rule.weights(n);
  Eigen::VectorXd out(rule.points() * nh);
  const Eigen::VectorXd jump_load = ops.m0 * prev_trace;
  for (int j = 0; j < rule.points(); ++j) {
    const double t = rule.nodes(n)[j];
    const Eigen::VectorXd f = space.load([&](double x, double y) { return source(x, y, t); });
    out.segment(j * nh, nh) = w[j] * f + left(j) * jump_load;
  }
  return out;
}

}  // namespace

Eigen::VectorXd SlabSystem::rhs(const SpaceTimeField& source,
                                const Eigen::VectorXd& prev_trace) const {
  return slab_rhs(*space_, *ops_, *rule_, slab_, source, prev_trace);
}

Eigen::VectorXd SlabSystem::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = lu_->solve(rhs);
  const double res = (matrix_ * x - rhs).norm();
  const double scale = std::max(rhs.norm(), matrix_norm_ * x.norm());
  if (scale > 0.0 && res > 1e-10 * scale) {
    throw NumericError("SlabSystem: solve on slab " + std::to_string(slab_) +
                       " reached relative residual " + std::to_string(res / scale) +
                       ", condition estimate " +
                       std::to_string(condition_estimate(matrix_, *lu_)));
  }
  return x;
}

Eigen::VectorXd Trajectory::at_time(double t) const {
  if (t <= 0.0) return initial;
  const int n = rule->time_mesh().slab_of(t);
  std::vector<double> v(rule->points());
  rule->lagrange(n).values(t, v);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space->ndof());
  for (int mu = 0; mu < rule->points(); ++mu) out += v[mu] * blocks[n][mu];
  return out;
}

Eigen::VectorXd initial_state(const DiscreteSpace& space,
                              const DiscreteSpace::FieldFunction& u0) {
  return space.project_l2(u0);
}

Trajectory march(const DiscreteSpace& space, const OperatorSet& ops, const TemporalRule& rule,
                 const SpaceTimeField& source, const Eigen::VectorXd& u0h) {
  const TimeMesh& tm = rule.time_mesh();
  Trajectory traj;
  traj.space = &space;
  traj.rule = &rule;
  traj.initial = u0h;
  traj.blocks.resize(tm.slabs());
  traj.traces.reserve(tm.slabs());

  const bool uniform = [&] {
    for (int n = 1; n < tm.slabs(); ++n) {
      if (std::abs(tm.tau(n) - tm.tau(0)) > 1e-14 * tm.tau(0)) return false;
    }
    return true;
  }();

  std::unique_ptr<SlabSystem> shared;
  if (uniform) shared = std::make_unique<SlabSystem>(space, ops, rule, 0);

  const int nh = space.ndof();
  Eigen::VectorXd trace = u0h;
  for (int n = 0; n < tm.slabs(); ++n) {
    std::unique_ptr<SlabSystem> own;
    const SlabSystem* sys;
    if (uniform) {
      sys = shared.get();
    } else {
      own = std::make_unique<SlabSystem>(space, ops, rule, n);
      sys = own.get();
    }
    // The factored blocks depend only on tau_n; the rhs carries the slab index.
    const Eigen::VectorXd x = sys->solve(slab_rhs(space, ops, rule, n, source, trace));
    traj.blocks[n].resize(rule.points());
    for (int mu = 0; mu < rule.points(); ++mu) traj.blocks[n][mu] = x.segment(mu * nh, nh);
    trace = traj.blocks[n].back();  // last Radau node is the slab end
    traj.traces.push_back(trace);
  }
  return traj;
}

double condition_estimate(const SparseMat& m, Eigen::SparseLU<SparseMat>& lu) {
  // Hager-style 1-norm estimate of ||A^{-1}|| with two refinement sweeps.
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double est = 0.0;
  for (int it = 0; it < 3; ++it) {
    const Eigen::VectorXd y = lu.solve(x);
    est = y.lpNorm<1>();
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) xi(i) = (y(i) >= 0.0) ? 1.0 : -1.0;
    const Eigen::VectorXd z = lu.adjoint().solve(xi);
    int jmax = 0;
    z.cwiseAbs().maxCoeff(&jmax);
    if (std::abs(z(jmax)) <= z.dot(x)) break;
    x.setZero();
    x(jmax) = 1.0;
  }
  double norm1 = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMat::InnerIterator it(m, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  return norm1 * est;
}

}  // namespace stdg
