#pragma once

#include <vector>

#include "specgeo/geometry.hpp"

namespace specgeo {

/// Delaunay triangulation of a planar point set. Triangles reference input
/// indices, wind counterclockwise, and are returned in a canonical order
/// (smallest vertex first within a triangle, triangles sorted), so equal
/// inputs produce equal outputs. Exact cocircular ties are broken by the
/// lexicographic perturbation rule of incircle_perturbed.
///
/// Throws a data error on duplicate points or an all-collinear set.
std::vector<Triangle> delaunay_triangulate(const std::vector<Vec2>& points);

}  // namespace specgeo
