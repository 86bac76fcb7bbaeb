#pragma once

#include "specgeo/geometry.hpp"

namespace specgeo {

/// Sign of the orientation determinant: +1 if (a, b, c) wind counterclockwise,
/// -1 clockwise, 0 collinear. Exact (floating-point filter with a rational
/// fallback), so the zero case is reliable.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// Sign of the lifted in-circle determinant for a counterclockwise triangle
/// (a, b, c): +1 if d lies strictly inside the circumcircle, -1 strictly
/// outside, 0 exactly on it. Exact.
int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// In-circle test that never returns 0 for a non-degenerate triangle: exact
/// cocircularity is resolved by an infinitesimal downward perturbation of the
/// paraboloid lift, ordered by the points' (x, y) lexicographic rank. The
/// lexicographically smallest of the four points carries the dominant
/// perturbation, which on uniform grids selects one consistent quad diagonal
/// (the one through the lexicographically smallest corner).
int incircle_perturbed(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

}  // namespace specgeo
