// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

namespace stdg {

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct ElementGeom {
  double x0, y0;  // lower-left corner
  double hx, hy;  // edge lengths
  int ix, iy;     // lattice position
  double diameter() const;
  bool contains(double x, double y, double tol = 1e-12) const;
};

/// Local edge ids within an element: 0 = left, 1 = right, 2 = bottom, 3 = top.
struct Face {
  std::array<double, 2> a;       // first endpoint (lower / left)
  std::array<double, 2> b;       // second endpoint
  double measure;                // length
  std::array<double, 2> normal;  // unit; outward normal of the plus element
  int plus_elem;                 // smaller element id on interior faces
  int minus_elem;                // -1 on boundary faces
  int plus_local;                // local edge id within plus element
  int minus_local;               // local edge id within minus element (-1 on boundary)
  bool is_boundary() const { return minus_elem < 0; }
};

/// Uniform conforming quadrilateral mesh of an axis-aligned rectangle.
/// Element ids are row-major: e = iy * nx + ix. Immutable after build.
struct Mesh {
  Rect domain;
  int nx = 0, ny = 0;
  std::vector<ElementGeom> elements;
  std::vector<Face> interior_faces;
  std::vector<Face> boundary_faces;
  double h = 0.0;  // max element diameter

  int n_elements() const { return static_cast<int>(elements.size()); }
  int elem_index(int ix, int iy) const { return iy * nx + ix; }
};

Mesh build_mesh(const Rect& rect, int nx, int ny);

/// Gauss-Legendre rule mapped onto a straight face; `order` points,
/// exact for polynomials of degree <= 2*order-1 along the face.
/// Weights sum to the face measure.
std::vector<std::pair<std::array<double, 2>, double>> face_quadrature(const Face& face, int order);

}  // namespace stdg
