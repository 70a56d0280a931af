// SPDX-License-Identifier: Apache-2.0
#include "stdg/timeslab.hpp"

#include <algorithm>
#include <cmath>

#include "stdg/common.hpp"

namespace stdg {

TimeMesh TimeMesh::uniform(double T, int slabs) {
  if (!(T > 0.0)) throw InputError("TimeMesh: final time must be positive");
  if (slabs < 1) throw InputError("TimeMesh: need at least one slab");
  TimeMesh mesh;
  mesh.endpoints.resize(slabs + 1);
  for (int n = 0; n <= slabs; ++n) mesh.endpoints[n] = T * n / slabs;
  mesh.endpoints.front() = 0.0;
  mesh.endpoints.back() = T;
  return mesh;
}

TimeMesh TimeMesh::from_endpoints(std::vector<double> endpoints) {
  if (endpoints.size() < 2) throw InputError("TimeMesh: need at least two endpoints");
  if (endpoints.front() != 0.0) throw InputError("TimeMesh: endpoints must start at 0");
  for (std::size_t n = 1; n < endpoints.size(); ++n) {
    if (!(endpoints[n] > endpoints[n - 1])) {
      throw InputError("TimeMesh: endpoints must be strictly increasing");
    }
  }
  TimeMesh mesh;
  mesh.endpoints = std::move(endpoints);
  return mesh;
}

double TimeMesh::tau_max() const {
  double t = 0.0;
  for (int n = 0; n < slabs(); ++n) t = std::max(t, tau(n));
  return t;
}

int TimeMesh::slab_of(double t) const {
  if (t <= endpoints.front()) return 0;
  const auto it = std::lower_bound(endpoints.begin() + 1, endpoints.end(), t);
  const int n = static_cast<int>(it - endpoints.begin()) - 1;
  return std::min(n, slabs() - 1);
}

TemporalRule::TemporalRule(TimeMesh mesh, int k, double nu)
    : mesh_(std::move(mesh)), k_(k), nu_(nu) {
  if (k < 0) throw InputError("TemporalRule: polynomial degree must be >= 0");
  if (!(nu >= 0.0)) throw InputError("TemporalRule: weight nu must be >= 0");
  slab_.resize(mesh_.slabs());
  QuadratureRule1D cached;
  double cached_c = -1.0;
  for (int n = 0; n < mesh_.slabs(); ++n) {
    const double tau = mesh_.tau(n);
    const double c = nu * tau;
    if (c != cached_c) {
      cached = weighted_gauss_radau(k, c);
      cached_c = c;
    }
    SlabData& s = slab_[n];
    s.nodes.resize(k + 1);
    s.weights.resize(k + 1);
    const double mid = 0.5 * (mesh_.endpoints[n] + mesh_.endpoints[n + 1]);
    for (int mu = 0; mu <= k; ++mu) {
      s.nodes[mu] = mid + 0.5 * tau * cached.points[mu];
      s.weights[mu] = 0.5 * tau * cached.weights[mu];
    }
    s.nodes.back() = mesh_.endpoints[n + 1];  // right-sided: last node is t_n
    s.lagrange = Lagrange1D(s.nodes);
    s.deriv.resize(k + 1, k + 1);
    std::vector<double> d(k + 1);
    for (int j = 0; j <= k; ++j) {
      s.lagrange.derivatives(s.nodes[j], d);
      for (int i = 0; i <= k; ++i) s.deriv(j, i) = d[i];
    }
    s.left_vals.resize(k + 1);
    std::vector<double> v(k + 1);
    s.lagrange.values(mesh_.endpoints[n], v);
    for (int i = 0; i <= k; ++i) s.left_vals(i) = v[i];
  }
}

double TemporalRule::slab_quadrature(int n, const std::vector<double>& samples) const {
  if (static_cast<int>(samples.size()) != points()) {
    throw InputError("TemporalRule: sample count does not match quadrature points");
  }
  double q = 0.0;
  for (int mu = 0; mu <= k_; ++mu) q += slab_[n].weights[mu] * samples[mu];
  return q;
}

double TemporalRule::weighted_norm_sq(const std::vector<std::vector<double>>& pair_samples) const {
  if (static_cast<int>(pair_samples.size()) != mesh_.slabs()) {
    throw InputError("TemporalRule: need samples for every slab");
  }
  double sum = 0.0;
  for (int n = 0; n < mesh_.slabs(); ++n) {
    sum += std::exp(-2.0 * nu_ * mesh_.endpoints[n]) * slab_quadrature(n, pair_samples[n]);
  }
  return sum;
}

double TemporalRule::weighted_value_seminorm_sq(
    const std::vector<std::vector<double>>& samples) const {
  for (const auto& slab : samples) {
    for (double v : slab) {
      if (v < 0.0) {
        throw InputError("TemporalRule: value seminorm requires nonnegative samples");
      }
    }
  }
  return weighted_norm_sq(samples);
}

RadauInterpolant::RadauInterpolant(const TemporalRule& rule, const std::function<double(double)>& f)
    : rule_(&rule), value0_(f(0.0)) {
  samples_.resize(rule.time_mesh().slabs());
  for (int n = 0; n < rule.time_mesh().slabs(); ++n) {
    samples_[n].resize(rule.points());
    for (int mu = 0; mu < rule.points(); ++mu) samples_[n][mu] = f(rule.nodes(n)[mu]);
  }
}

RadauInterpolant::RadauInterpolant(const TemporalRule& rule, double value0,
                                   std::vector<std::vector<double>> samples)
    : rule_(&rule), value0_(value0), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != rule.time_mesh().slabs()) {
    throw InputError("RadauInterpolant: need node values for every slab");
  }
  for (const auto& s : samples_) {
    if (static_cast<int>(s.size()) != rule.points()) {
      throw InputError("RadauInterpolant: wrong number of node values in a slab");
    }
  }
}

double RadauInterpolant::operator()(double t) const {
  if (t <= rule_->time_mesh().endpoints.front()) return value0_;
  const int n = rule_->time_mesh().slab_of(t);
  std::vector<double> v(rule_->points());
  rule_->lagrange(n).values(t, v);
  double out = 0.0;
  for (int mu = 0; mu < rule_->points(); ++mu) out += v[mu] * samples_[n][mu];
  return out;
}

RadauPlusInterpolant::RadauPlusInterpolant(const TemporalRule& rule,
                                           const std::function<double(double)>& f)
    : rule_(&rule) {
  const int slabs = rule.time_mesh().slabs();
  lagrange_.reserve(slabs);
  samples_.resize(slabs);
  for (int n = 0; n < slabs; ++n) {
    std::vector<double> nodes;
    nodes.reserve(rule.points() + 1);
    nodes.push_back(rule.time_mesh().endpoints[n]);
    nodes.insert(nodes.end(), rule.nodes(n).begin(), rule.nodes(n).end());
    lagrange_.emplace_back(nodes);
    samples_[n].resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) samples_[n][i] = f(nodes[i]);
  }
}

double RadauPlusInterpolant::operator()(double t) const {
  const int n = rule_->time_mesh().slab_of(t);
  std::vector<double> v(lagrange_[n].size());
  lagrange_[n].values(t, v);
  double out = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) out += v[i] * samples_[n][i];
  return out;
}

double RadauPlusInterpolant::derivative(double t) const {
  const int n = rule_->time_mesh().slab_of(t);
  std::vector<double> d(lagrange_[n].size());
  lagrange_[n].derivatives(t, d);
  double out = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) out += d[i] * samples_[n][i];
  return out;
}

}  // namespace stdg
