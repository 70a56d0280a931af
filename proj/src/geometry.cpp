// SPDX-License-Identifier: Apache-2.0
#include "stdg/geometry.hpp"

#include <cmath>

#include "stdg/common.hpp"
#include "stdg/quadrature.hpp"

namespace stdg {

double ElementGeom::diameter() const { return std::hypot(hx, hy); }

bool ElementGeom::contains(double x, double y, double tol) const {
  const double s = tol * std::max(hx, hy);
  return x >= x0 - s && x <= x0 + hx + s && y >= y0 - s && y <= y0 + hy + s;
}

Mesh build_mesh(const Rect& rect, int nx, int ny) {
  if (nx < 1 || ny < 1) throw InputError("build_mesh: element counts must be >= 1");
  if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) {
    throw InputError("build_mesh: rectangle must have positive extent in both directions");
  }
  Mesh mesh;
  mesh.domain = rect;
  mesh.nx = nx;
  mesh.ny = ny;
  const double hx = rect.width() / nx;
  const double hy = rect.height() / ny;
  mesh.h = std::hypot(hx, hy);

  mesh.elements.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      mesh.elements.push_back({rect.x0 + ix * hx, rect.y0 + iy * hy, hx, hy, ix, iy});
    }
  }

  // Interior faces: vertical (between ix and ix+1), then horizontal.
  // The plus element is always the one with the smaller id, so vertical
  // normals are +x and horizontal normals are +y.
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double x = rect.x0 + (ix + 1) * hx;
      const double y = rect.y0 + iy * hy;
      mesh.interior_faces.push_back({{x, y},
                                     {x, y + hy},
                                     hy,
                                     {1.0, 0.0},
                                     mesh.elem_index(ix, iy),
                                     mesh.elem_index(ix + 1, iy),
                                     /*plus_local=*/1,
                                     /*minus_local=*/0});
    }
  }
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double x = rect.x0 + ix * hx;
      const double y = rect.y0 + (iy + 1) * hy;
      mesh.interior_faces.push_back({{x, y},
                                     {x + hx, y},
                                     hx,
                                     {0.0, 1.0},
                                     mesh.elem_index(ix, iy),
                                     mesh.elem_index(ix, iy + 1),
                                     /*plus_local=*/3,
                                     /*minus_local=*/2});
    }
  }

  // Boundary faces with outward normals: left, right, bottom, top.
  for (int iy = 0; iy < ny; ++iy) {
    const double y = rect.y0 + iy * hy;
    mesh.boundary_faces.push_back(
        {{rect.x0, y}, {rect.x0, y + hy}, hy, {-1.0, 0.0}, mesh.elem_index(0, iy), -1, 0, -1});
    mesh.boundary_faces.push_back(
        {{rect.x1, y}, {rect.x1, y + hy}, hy, {1.0, 0.0}, mesh.elem_index(nx - 1, iy), -1, 1, -1});
  }
  for (int ix = 0; ix < nx; ++ix) {
    const double x = rect.x0 + ix * hx;
    mesh.boundary_faces.push_back(
        {{x, rect.y0}, {x + hx, rect.y0}, hx, {0.0, -1.0}, mesh.elem_index(ix, 0), -1, 2, -1});
    mesh.boundary_faces.push_back(
        {{x, rect.y1}, {x + hx, rect.y1}, hx, {0.0, 1.0}, mesh.elem_index(ix, ny - 1), -1, 3, -1});
  }
  return mesh;
}

std::vector<std::pair<std::array<double, 2>, double>> face_quadrature(const Face& face, int order) {
  if (order < 1) throw InputError("face_quadrature: order must be >= 1");
  const QuadratureRule1D gl = gauss_legendre(order);
  std::vector<std::pair<std::array<double, 2>, double>> rule;
  rule.reserve(gl.size());
  for (int q = 0; q < gl.size(); ++q) {
    const double s = 0.5 * (gl.points[q] + 1.0);
    rule.push_back({{face.a[0] + s * (face.b[0] - face.a[0]), face.a[1] + s * (face.b[1] - face.a[1])},
                    0.5 * face.measure * gl.weights[q]});
  }
  return rule;
}

}  // namespace stdg
