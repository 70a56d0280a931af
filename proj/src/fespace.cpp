// SPDX-License-Identifier: Apache-2.0
#include "stdg/fespace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "stdg/common.hpp"

namespace stdg {

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree), n1d_(degree + 1) {
  if (degree < 0) throw InputError("ReferenceBasis: degree must be >= 0");
  lag_ = Lagrange1D(gauss_lobatto(n1d_).points);
  nodes_.reserve(size());
  for (int iy = 0; iy < n1d_; ++iy) {
    for (int ix = 0; ix < n1d_; ++ix) {
      nodes_.push_back({lag_.nodes()[ix], lag_.nodes()[iy]});
    }
  }
}

void ReferenceBasis::values(double xi, double eta, std::span<double> out) const {
  std::vector<double> vx(n1d_), vy(n1d_);
  lag_.values(xi, vx);
  lag_.values(eta, vy);
  for (int iy = 0; iy < n1d_; ++iy) {
    for (int ix = 0; ix < n1d_; ++ix) out[iy * n1d_ + ix] = vx[ix] * vy[iy];
  }
}

void ReferenceBasis::gradients(double xi, double eta, std::span<double> out_dxi,
                               std::span<double> out_deta) const {
  std::vector<double> vx(n1d_), vy(n1d_), dx(n1d_), dy(n1d_);
  lag_.values(xi, vx);
  lag_.values(eta, vy);
  lag_.derivatives(xi, dx);
  lag_.derivatives(eta, dy);
  for (int iy = 0; iy < n1d_; ++iy) {
    for (int ix = 0; ix < n1d_; ++ix) {
      out_dxi[iy * n1d_ + ix] = dx[ix] * vy[iy];
      out_deta[iy * n1d_ + ix] = vx[ix] * dy[iy];
    }
  }
}

DiscreteSpace::DiscreteSpace(const Mesh& mesh, int degree, int volume_quad_points)
    : mesh_(&mesh), degree_(degree), basis_(degree) {
  const int nq1 = volume_quad_points > 0 ? volume_quad_points : 2 * degree + 2;
  const QuadratureRule1D gl = gauss_legendre(nq1);
  const int nloc = basis_.size();

  vq_.points.reserve(nq1 * nq1);
  vq_.weights.reserve(nq1 * nq1);
  vq_.n.resize(nq1 * nq1, nloc);
  vq_.dxi.resize(nq1 * nq1, nloc);
  vq_.deta.resize(nq1 * nq1, nloc);
  std::vector<double> val(nloc), gxi(nloc), geta(nloc);
  for (int qy = 0; qy < nq1; ++qy) {
    for (int qx = 0; qx < nq1; ++qx) {
      const double xi = gl.points[qx], eta = gl.points[qy];
      vq_.points.push_back({xi, eta});
      vq_.weights.push_back(gl.weights[qx] * gl.weights[qy]);
      basis_.values(xi, eta, val);
      basis_.gradients(xi, eta, gxi, geta);
      const int q = static_cast<int>(vq_.points.size()) - 1;
      for (int i = 0; i < nloc; ++i) {
        vq_.n(q, i) = val[i];
        vq_.dxi(q, i) = gxi[i];
        vq_.deta(q, i) = geta[i];
      }
    }
  }

  edge_rule_ = gauss_legendre(nq1);
  for (int edge = 0; edge < 4; ++edge) {
    edge_trace_[edge].resize(edge_rule_.size(), nloc);
    for (int q = 0; q < edge_rule_.size(); ++q) {
      const double s = edge_rule_.points[q];
      double xi = 0, eta = 0;
      switch (edge) {
        case 0: xi = -1.0; eta = s; break;
        case 1: xi = 1.0; eta = s; break;
        case 2: xi = s; eta = -1.0; break;
        case 3: xi = s; eta = 1.0; break;
      }
      basis_.values(xi, eta, val);
      for (int i = 0; i < nloc; ++i) edge_trace_[edge](q, i) = val[i];
    }
  }

  mass_ref_.setZero(nloc, nloc);
  for (std::size_t q = 0; q < vq_.points.size(); ++q) {
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) mass_ref_(i, j) += vq_.weights[q] * vq_.n(q, i) * vq_.n(q, j);
    }
  }
  mass_ref_llt_.compute(mass_ref_);
  if (mass_ref_llt_.info() != Eigen::Success) {
    throw NumericError("DiscreteSpace: reference mass matrix is not SPD");
  }
}

Eigen::VectorXd DiscreteSpace::project_l2(const FieldFunction& f) const {
  // The Jacobian of the affine map is constant, so the detJ factor cancels
  // between the local mass matrix and the local load.
  const int nl = nloc();
  Eigen::VectorXd coeffs(ndof());
  Eigen::MatrixXd rhs(nl, kNumFields);
  for (int e = 0; e < mesh_->n_elements(); ++e) {
    const ElementGeom& el = mesh_->elements[e];
    rhs.setZero();
    for (std::size_t q = 0; q < vq_.points.size(); ++q) {
      const double x = el.x0 + 0.5 * (vq_.points[q][0] + 1.0) * el.hx;
      const double y = el.y0 + 0.5 * (vq_.points[q][1] + 1.0) * el.hy;
      const std::array<double, kNumFields> fv = f(x, y);
      for (int c = 0; c < kNumFields; ++c) {
        if (fv[c] == 0.0) continue;
        const double s = vq_.weights[q] * fv[c];
        for (int i = 0; i < nl; ++i) rhs(i, c) += s * vq_.n(q, i);
      }
    }
    const Eigen::MatrixXd sol = mass_ref_llt_.solve(rhs);
    for (int c = 0; c < kNumFields; ++c) {
      for (int i = 0; i < nl; ++i) coeffs(dof(e, c, i)) = sol(i, c);
    }
  }
  return coeffs;
}

Eigen::VectorXd DiscreteSpace::load(const FieldFunction& f) const {
  const int nl = nloc();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ndof());
  for (int e = 0; e < mesh_->n_elements(); ++e) {
    const ElementGeom& el = mesh_->elements[e];
    const double detj = 0.25 * el.hx * el.hy;
    for (std::size_t q = 0; q < vq_.points.size(); ++q) {
      const double x = el.x0 + 0.5 * (vq_.points[q][0] + 1.0) * el.hx;
      const double y = el.y0 + 0.5 * (vq_.points[q][1] + 1.0) * el.hy;
      const std::array<double, kNumFields> fv = f(x, y);
      for (int c = 0; c < kNumFields; ++c) {
        if (fv[c] == 0.0) continue;
        const double s = detj * vq_.weights[q] * fv[c] * kHWeight[c];
        for (int i = 0; i < nl; ++i) out(dof(e, c, i)) += s * vq_.n(q, i);
      }
    }
  }
  return out;
}

std::array<double, 2> DiscreteSpace::to_reference(int elem, double x, double y) const {
  const ElementGeom& el = mesh_->elements[elem];
  if (!el.contains(x, y, 1e-10)) {
    throw InputError("DiscreteSpace::evaluate: point lies outside the requested element");
  }
  return {2.0 * (x - el.x0) / el.hx - 1.0, 2.0 * (y - el.y0) / el.hy - 1.0};
}

double DiscreteSpace::evaluate(const Eigen::VectorXd& coeffs, int field, int elem, double x,
                               double y) const {
  const auto [xi, eta] = to_reference(elem, x, y);
  std::vector<double> val(nloc());
  basis_.values(xi, eta, val);
  double out = 0.0;
  for (int i = 0; i < nloc(); ++i) out += coeffs(dof(elem, field, i)) * val[i];
  return out;
}

std::array<double, 2> DiscreteSpace::evaluate_gradient(const Eigen::VectorXd& coeffs, int field,
                                                       int elem, double x, double y) const {
  const auto [xi, eta] = to_reference(elem, x, y);
  std::vector<double> gxi(nloc()), geta(nloc());
  basis_.gradients(xi, eta, gxi, geta);
  const ElementGeom& el = mesh_->elements[elem];
  double dx = 0.0, dy = 0.0;
  for (int i = 0; i < nloc(); ++i) {
    const double c = coeffs(dof(elem, field, i));
    dx += c * gxi[i];
    dy += c * geta[i];
  }
  return {dx * 2.0 / el.hx, dy * 2.0 / el.hy};
}

void DiscreteSpace::dump_fields_csv(const Eigen::VectorXd& coeffs, const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("dump_fields_csv: cannot open " + path);
  out << "element,x,y,vx,vy,sxx,syy,sxy,p,qx,qy\n";
  char buf[64];
  for (int e = 0; e < mesh_->n_elements(); ++e) {
    const ElementGeom& el = mesh_->elements[e];
    for (int i = 0; i < nloc(); ++i) {
      const auto& node = basis_.nodes()[i];
      const double x = el.x0 + 0.5 * (node[0] + 1.0) * el.hx;
      const double y = el.y0 + 0.5 * (node[1] + 1.0) * el.hy;
      out << e;
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", x, y);
      out << buf;
      for (int c = 0; c < kNumFields; ++c) {
        std::snprintf(buf, sizeof buf, ",%.17g", coeffs(dof(e, c, i)));
        out << buf;
      }
      out << "\n";
    }
  }
}

}  // namespace stdg
