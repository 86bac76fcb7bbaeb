#pragma once

#include <iosfwd>
#include <vector>

#include "specgeo/distortion.hpp"
#include "specgeo/geometry.hpp"
#include "specgeo/mesh.hpp"

namespace specgeo {

/// Planar image of a mesh under a simplicial map: one (u, v) per vertex.
struct PlanarEmbedding {
    std::vector<Vec2> positions;
};

/// The 2x2 linear part of one triangle's affine map, expressed in the
/// triangle's isometric local frame, with its singular values (both reported
/// positive; orientation is carried in det).
struct TriangleJacobian {
    double m[2][2];
    double sigma1 = 0.0;  // larger
    double sigma2 = 0.0;
    double det = 0.0;     // signed
};

/// Convex-combination embedding: the boundary loop is laid out in order on
/// the unit circle with arc length proportional to 3D boundary edge length;
/// interior vertices solve the uniform-weight average condition. The output
/// is injective with all triangle determinants positive.
PlanarEmbedding tutte_embed(const TriangleMesh& mesh);

/// Jacobian of the map on triangle t. The source triangle is unfolded
/// isometrically into 2D and the matrix takes its local edge vectors to the
/// embedded edge vectors. Throws a geometry error on degenerate sources.
TriangleJacobian local_jacobian(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                                int t);

/// Signed determinant of the map on triangle t (cheaper than the full
/// Jacobian when only orientation is needed).
double embedding_min_det(const TriangleMesh& mesh, const PlanarEmbedding& embedding);

struct SolveOptions {
    DistortionMeasure energy = DistortionMeasure::sd;
    int max_iters = 200;   // vertex sweeps
    double tol = 1e-6;     // relative energy decrease per sweep
};

struct SolveTraceRow {
    int iteration;   // 0 is the initial state
    double energy;   // area-weighted mean energy
    double min_det;  // over all triangles
};

struct SolveResult {
    PlanarEmbedding embedding;
    std::vector<SolveTraceRow> trace;
    int iterations = 0;
    bool converged = false;

    double initial_energy() const { return trace.front().energy; }
    double final_energy() const { return trace.back().energy; }
};

/// Minimizes the chosen distortion energy by per-vertex damped-Newton
/// coordinate descent with a line search capped below the step length at
/// which any incident triangle determinant would vanish. The energy sequence
/// is non-increasing and every accepted iterate keeps all determinants
/// positive. Requires an initialization with positive determinants.
SolveResult minimize_distortion(const TriangleMesh& mesh, const PlanarEmbedding& init,
                                const SolveOptions& options = {});

/// Area-weighted mean of the local distortion over all triangles.
double embedding_energy(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                        DistortionMeasure energy);

/// Trace as CSV rows "iteration,energy,min_det".
void write_trace_csv(const std::vector<SolveTraceRow>& trace, std::ostream& out);

}  // namespace specgeo
