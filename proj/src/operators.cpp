// SPDX-License-Identifier: Apache-2.0
#include "stdg/operators.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "stdg/common.hpp"

namespace stdg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMat from_triplets(int n, Triplets& trip) {
  SparseMat m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

// Element matrices D(i,j) = int_K d(phi_j)/dx_c * phi_i for the affine map
// onto [x0,x0+hx] x [y0,y0+hy]; detJ cancels against the derivative scaling.
void element_derivative_matrices(const DiscreteSpace& space, const ElementGeom& el,
                                 Eigen::MatrixXd& dx, Eigen::MatrixXd& dy) {
  const auto& vq = space.volume_quad();
  const int nl = space.nloc();
  dx.setZero(nl, nl);
  dy.setZero(nl, nl);
  const double cx = 0.5 * el.hy;  // detJ * (2/hx)
  const double cy = 0.5 * el.hx;  // detJ * (2/hy)
  for (std::size_t q = 0; q < vq.points.size(); ++q) {
    const double w = vq.weights[q];
    for (int i = 0; i < nl; ++i) {
      for (int j = 0; j < nl; ++j) {
        dx(i, j) += cx * w * vq.dxi(q, j) * vq.n(q, i);
        dy(i, j) += cy * w * vq.deta(q, j) * vq.n(q, i);
      }
    }
  }
}

void add_block(Triplets& trip, const DiscreteSpace& space, int elem_test, int field_test,
               int elem_trial, int field_trial, const Eigen::MatrixXd& local, double scale) {
  if (scale == 0.0) return;
  const int nl = space.nloc();
  for (int i = 0; i < nl; ++i) {
    const int row = space.dof(elem_test, field_test, i);
    for (int j = 0; j < nl; ++j) {
      const double v = scale * local(i, j);
      if (v != 0.0) trip.emplace_back(row, space.dof(elem_trial, field_trial, j), v);
    }
  }
}

struct FaceSide {
  int elem;
  int local_edge;
  double jump_sign;  // +1 plus element, -1 minus element
};

// One face contribution <jump-or-trace(trial), avg-or-trace(test)>_e times
// `coef`: the trial trace carries the jump sign, the test trace the 1/2
// average factor on interior faces; boundary faces use the plain traces.
void add_face_term(Triplets& trip, const DiscreteSpace& space, const Face& face, int field_test,
                   int field_trial, double coef) {
  if (coef == 0.0) return;
  const auto& rule = space.edge_points();
  const int nl = space.nloc();
  const double wscale = 0.5 * face.measure;

  FaceSide sides[2] = {{face.plus_elem, face.plus_local, 1.0},
                       {face.minus_elem, face.minus_local, -1.0}};
  const int nsides = face.is_boundary() ? 1 : 2;
  const double avg = face.is_boundary() ? 1.0 : 0.5;

  for (int sa = 0; sa < nsides; ++sa) {
    const FaceSide& test = sides[sa];
    const Eigen::MatrixXd& tr_test = space.edge_trace(test.local_edge);
    for (int sb = 0; sb < nsides; ++sb) {
      const FaceSide& trial = sides[sb];
      const Eigen::MatrixXd& tr_trial = space.edge_trace(trial.local_edge);
      const double factor = coef * avg * (face.is_boundary() ? 1.0 : trial.jump_sign);
      for (int q = 0; q < rule.size(); ++q) {
        const double w = factor * wscale * rule.weights[q];
        for (int i = 0; i < nl; ++i) {
          const double ti = w * tr_test(q, i);
          if (ti == 0.0) continue;
          const int row = space.dof(test.elem, field_test, i);
          for (int j = 0; j < nl; ++j) {
            const double v = ti * tr_trial(q, j);
            if (v != 0.0) trip.emplace_back(row, space.dof(trial.elem, field_trial, j), v);
          }
        }
      }
    }
  }
}

}  // namespace

SparseMat assemble_mass(const DiscreteSpace& space) {
  const Mesh& mesh = space.mesh();
  Triplets trip;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double detj = 0.25 * mesh.elements[e].hx * mesh.elements[e].hy;
    for (int c = 0; c < kNumFields; ++c) {
      add_block(trip, space, e, c, e, c, space.reference_mass(), kHWeight[c] * detj);
    }
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat assemble_m0(const MaterialParams& params, const DiscreteSpace& space) {
  params.validate();
  const Mesh& mesh = space.mesh();
  const Eigen::Matrix3d s = params.compliance_form();
  Triplets trip;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double detj = 0.25 * mesh.elements[e].hx * mesh.elements[e].hy;
    add_block(trip, space, e, kVx, e, kVx, space.reference_mass(), params.rho * detj);
    add_block(trip, space, e, kVy, e, kVy, space.reference_mass(), params.rho * detj);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        add_block(trip, space, e, kSxx + a, e, kSxx + b, space.reference_mass(), s(a, b) * detj);
      }
    }
    add_block(trip, space, e, kP, e, kP, space.reference_mass(), params.c0 * detj);
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat assemble_m1(const MaterialParams& params, const DiscreteSpace& space) {
  params.validate();
  const Mesh& mesh = space.mesh();
  const Eigen::Matrix2d kinv = params.K_inverse();
  const double a = params.alpha;
  Triplets trip;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double detj = 0.25 * mesh.elements[e].hx * mesh.elements[e].hy;
    for (int c = 0; c < 2; ++c) {
      for (int d = 0; d < 2; ++d) {
        const double k = kinv(c, d) * detj;
        add_block(trip, space, e, kVx + c, e, kVx + d, space.reference_mass(), -a * a * k);
        add_block(trip, space, e, kVx + c, e, kQx + d, space.reference_mass(), -a * k);
        add_block(trip, space, e, kQx + c, e, kVx + d, space.reference_mass(), -a * k);
        add_block(trip, space, e, kQx + c, e, kQx + d, space.reference_mass(), k);
      }
    }
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat assemble_ah(const DiscreteSpace& space) {
  const Mesh& mesh = space.mesh();
  Triplets trip;

  // Broken derivatives, element by element.
  Eigen::MatrixXd dx, dy;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    element_derivative_matrices(space, mesh.elements[e], dx, dy);
    // -(Div_h sigma, w)
    add_block(trip, space, e, kVx, e, kSxx, dx, -1.0);
    add_block(trip, space, e, kVx, e, kSxy, dy, -1.0);
    add_block(trip, space, e, kVy, e, kSxy, dx, -1.0);
    add_block(trip, space, e, kVy, e, kSyy, dy, -1.0);
    // -(Grad_h v, tau), Frobenius pairing
    add_block(trip, space, e, kSxx, e, kVx, dx, -1.0);
    add_block(trip, space, e, kSyy, e, kVy, dy, -1.0);
    add_block(trip, space, e, kSxy, e, kVx, dy, -1.0);
    add_block(trip, space, e, kSxy, e, kVy, dx, -1.0);
    // +(div_h q, p-test)
    add_block(trip, space, e, kP, e, kQx, dx, 1.0);
    add_block(trip, space, e, kP, e, kQy, dy, 1.0);
    // +(grad_h p, q-test)
    add_block(trip, space, e, kQx, e, kP, dx, 1.0);
    add_block(trip, space, e, kQy, e, kP, dy, 1.0);
  }

  // Interior faces: jump of the differentiated (trial) function against the
  // average of the test trace.
  for (const Face& f : mesh.interior_faces) {
    const double n1 = f.normal[0], n2 = f.normal[1];
    // -Div_dg: +<[sigma] n, {w}>
    add_face_term(trip, space, f, kVx, kSxx, n1);
    add_face_term(trip, space, f, kVx, kSxy, n2);
    add_face_term(trip, space, f, kVy, kSxy, n1);
    add_face_term(trip, space, f, kVy, kSyy, n2);
    // -Grad_dg: +<[v], {tau} n>
    add_face_term(trip, space, f, kSxx, kVx, n1);
    add_face_term(trip, space, f, kSxy, kVx, n2);
    add_face_term(trip, space, f, kSxy, kVy, n1);
    add_face_term(trip, space, f, kSyy, kVy, n2);
    // +div_dg: -<[q] . n, {p-test}>
    add_face_term(trip, space, f, kP, kQx, -n1);
    add_face_term(trip, space, f, kP, kQy, -n2);
    // +grad_dg: -<[p], {q-test} . n>
    add_face_term(trip, space, f, kQx, kP, -n1);
    add_face_term(trip, space, f, kQy, kP, -n2);
  }

  // Boundary faces: plain traces.
  for (const Face& f : mesh.boundary_faces) {
    const double n1 = f.normal[0], n2 = f.normal[1];
    add_face_term(trip, space, f, kVx, kSxx, n1);
    add_face_term(trip, space, f, kVx, kSxy, n2);
    add_face_term(trip, space, f, kVy, kSxy, n1);
    add_face_term(trip, space, f, kVy, kSyy, n2);
    add_face_term(trip, space, f, kSxx, kVx, n1);
    add_face_term(trip, space, f, kSxy, kVx, n2);
    add_face_term(trip, space, f, kSxy, kVy, n1);
    add_face_term(trip, space, f, kSyy, kVy, n2);
    add_face_term(trip, space, f, kP, kQx, -n1);
    add_face_term(trip, space, f, kP, kQy, -n2);
    add_face_term(trip, space, f, kQx, kP, -n1);
    add_face_term(trip, space, f, kQy, kP, -n2);
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat assemble_jpartial(const DiscreteSpace& space) {
  const Mesh& mesh = space.mesh();
  Triplets trip;
  for (const Face& f : mesh.boundary_faces) {
    const double n1 = f.normal[0], n2 = f.normal[1];
    // -<sigma . n, w>
    add_face_term(trip, space, f, kVx, kSxx, -n1);
    add_face_term(trip, space, f, kVx, kSxy, -n2);
    add_face_term(trip, space, f, kVy, kSxy, -n1);
    add_face_term(trip, space, f, kVy, kSyy, -n2);
    // +<q . n, p-test>
    add_face_term(trip, space, f, kP, kQx, n1);
    add_face_term(trip, space, f, kP, kQy, n2);
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat assemble_jgamma(const DiscreteSpace& space, double gamma_v, double gamma_p) {
  if (!(gamma_v > 0.0) || !(gamma_p > 0.0)) {
    throw InputError("assemble_jgamma: penalties must be positive");
  }
  const Mesh& mesh = space.mesh();
  const double inv_h = 1.0 / mesh.h;  // global meshsize scaling
  Triplets trip;
  for (const Face& f : mesh.boundary_faces) {
    add_face_term(trip, space, f, kVx, kVx, gamma_v * inv_h);
    add_face_term(trip, space, f, kVy, kVy, gamma_v * inv_h);
    add_face_term(trip, space, f, kP, kP, gamma_p * inv_h);
  }
  return from_triplets(space.ndof(), trip);
}

SparseMat OperatorSet::spatial() const {
  SparseMat out = m1 + ah;
  out += jpartial;
  out += jgamma;
  out.makeCompressed();
  return out;
}

OperatorSet assemble_operators(const MaterialParams& params, const DiscreteSpace& space,
                               const PenaltyParams& penalty) {
  OperatorSet ops;
  ops.mass = assemble_mass(space);
  ops.m0 = assemble_m0(params, space);
  ops.m1 = assemble_m1(params, space);
  ops.ah = assemble_ah(space);
  ops.jpartial = assemble_jpartial(space);
  ops.jgamma = assemble_jgamma(space, penalty.gamma_v, penalty.gamma_p);
  return ops;
}

double riesz_norm(const DiscreteSpace& space, const Eigen::VectorXd& load) {
  const Mesh& mesh = space.mesh();
  const int nl = space.nloc();
  Eigen::LLT<Eigen::MatrixXd> llt(space.reference_mass());
  double sq = 0.0;
  Eigen::VectorXd block(nl);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double detj = 0.25 * mesh.elements[e].hx * mesh.elements[e].hy;
    for (int c = 0; c < kNumFields; ++c) {
      for (int i = 0; i < nl; ++i) block(i) = load(space.dof(e, c, i));
      sq += block.dot(llt.solve(block)) / (kHWeight[c] * detj);
    }
  }
  return std::sqrt(sq);
}

double h_norm(const DiscreteSpace& /*space*/, const SparseMat& mass, const Eigen::VectorXd& y) {
  return std::sqrt(y.dot(mass * y));
}

void export_matrix_coo(const SparseMat& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("export_matrix_coo: cannot open " + path);
  char buf[96];
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value());
      out << buf;
    }
  }
}

}  // namespace stdg
