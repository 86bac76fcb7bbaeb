#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specgeo/geometry.hpp"
#include "specgeo/spectrogram.hpp"

namespace specgeo {

/// An n x n grid of surface samples, row-major by frequency row:
/// index = iy * n + ix, position x = ix/(n-1), y = iy/(n-1).
struct VertexGrid {
    int n = 0;
    std::vector<Vec3> points;
};

/// Triangle mesh of a sampled surface: vertices in 3-space, counterclockwise
/// triangles in the (x, y) projection, and the ordered boundary loop.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<int> boundary;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
};

/// Samples the surface on the uniform n x n grid over the unit square; z by
/// bilinear interpolation of the power grid.
VertexGrid sample_surface(const SpectrogramSurface& surface, int n);

/// Delaunay-triangulates the grid's (x, y) projection. z rides along as
/// vertex data. The cocircular grid quads get one consistent diagonal from
/// the lexicographic perturbation rule.
TriangleMesh triangulate(const VertexGrid& grid);

/// Builds a mesh from explicit vertices and triangles, deriving the boundary
/// loop. Used for meshes that do not come from a grid.
TriangleMesh make_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

/// Area of triangle t as embedded in 3-space.
double triangle_area(const TriangleMesh& mesh, int t);

/// Normalized frequency of triangle t: the mean y of its corners.
double triangle_frequency(const TriangleMesh& mesh, int t);

/// Verifies the full disc-topology contract: valid indices, counterclockwise
/// orientation with nonzero projected area, interior edges shared by exactly
/// two triangles and boundary edges by one, a single connected component,
/// Euler characteristic 1, and a single boundary loop.
void validate_mesh(const TriangleMesh& mesh);

/// ASCII OBJ export (v/f records), floats at 9 significant digits.
void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_obj(const TriangleMesh& mesh, const std::string& path);

}  // namespace specgeo
