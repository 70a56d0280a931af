// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <string>

#include "stdg/fespace.hpp"
#include "stdg/material.hpp"
#include "stdg/solver.hpp"

namespace stdg {

/// Closed-form space-time solution of the four-field system together with
/// everything the solver and the error norms need: the exact fields
/// U = (v, sigma, p, q_total), the initial state, and the source of the
/// evolutionary system. Built from closed forms u(x,t), p(x,t) that vanish
/// on the boundary of the unit square.
class ManufacturedCase {
 public:
  struct Point {
    double x, y, t;
  };

  virtual ~ManufacturedCase() = default;
  virtual std::string name() const = 0;

  virtual std::array<double, 2> displacement(const Point& p) const = 0;
  virtual std::array<double, 2> velocity(const Point& p) const = 0;         // v = dt u
  virtual std::array<double, 2> velocity_dt(const Point& p) const = 0;      // dt v
  virtual std::array<double, 4> velocity_grad(const Point& p) const = 0;    // dv_i/dx_j row-major
  virtual std::array<double, 3> stress(const Point& p) const = 0;           // C eps(u), Voigt
  virtual std::array<double, 2> stress_div(const Point& p) const = 0;       // Div sigma
  virtual double pressure(const Point& p) const = 0;
  virtual double pressure_dt(const Point& p) const = 0;
  virtual std::array<double, 2> pressure_grad(const Point& p) const = 0;
  virtual double pressure_laplacian_k(const Point& p) const = 0;  // div(K grad p)

  const MaterialParams& material() const { return material_; }

  /// Exact U = (v, sigma, p, q + alpha v) at a space-time point.
  std::array<double, kNumFields> exact_state(const Point& p) const;
  /// Darcy flux q = -K grad p.
  std::array<double, 2> darcy_flux(const Point& p) const;

  /// Source F = (dt M0 + M1 + A) U of the evolutionary system evaluated on
  /// the exact fields. Rows 2 and 4 vanish identically by construction.
  std::array<double, kNumFields> evolutionary_source(const Point& p) const;

  /// Momentum and mass sources of the second-order formulation
  /// (rho dt v - Div sigma + alpha grad p = rho f and
  ///  c0 dt p + alpha div v + div q = g).
  std::array<double, 2> momentum_source(const Point& p) const;
  double mass_source(const Point& p) const;

  /// Initial four-field state (u1, C eps(u0), p0, -K grad p0 + alpha u1).
  DiscreteSpace::FieldFunction initial_fields() const;
  /// Exact state as a spatial field at fixed time.
  DiscreteSpace::FieldFunction state_at(double t) const;
  /// Solver right-hand side.
  SpaceTimeField source() const;

  /// Max residual of the first-order system (rows with the Darcy flux q)
  /// over `samples` quasi-random space-time points in (0,1)^2 x (0, tmax],
  /// with all derivatives replaced by central finite differences of the
  /// closed forms; independent check of the hand-derived fields.
  double first_order_residual(int samples, double tmax) const;

 protected:
  explicit ManufacturedCase(MaterialParams material) : material_(std::move(material)) {}
  MaterialParams material_;
};

/// u = scale * sin(pi x) sin(pi y) (sin t, cos t), p = sin(pi x) sin(pi y) sin(2t).
std::unique_ptr<ManufacturedCase> make_trig_case(const MaterialParams& material,
                                                 double scale = 1.0);

/// Polynomial bubble case: u = scale * B(x,y) (P1(t), P2(t)), p = B(x,y) P3(t)
/// with B = x(1-x)y(1-y) and P given by monomial coefficients; spatially in
/// Q_2, so it is exactly representable for degree >= 2.
std::unique_ptr<ManufacturedCase> make_bubble_case(const MaterialParams& material,
                                                   std::vector<double> p1_coeffs,
                                                   std::vector<double> p2_coeffs,
                                                   std::vector<double> p3_coeffs,
                                                   double scale = 1.0);

/// Identically zero data (zero source, zero initial state).
std::unique_ptr<ManufacturedCase> make_zero_case(const MaterialParams& material);

std::unique_ptr<ManufacturedCase> make_case(const std::string& id, const MaterialParams& material);

}  // namespace stdg
