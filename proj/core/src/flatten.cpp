#include "specgeo/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

#include <Eigen/Sparse>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

constexpr double kSigmaFloor = 1e-300;

struct LocalFrame {
    // Inverse of the unfolded source edge matrix (upper triangular source).
    double inv[2][2];
    double area;  // 3D triangle area
};

// Isometric unfold of a source triangle: edge p1-p0 on the +x axis, p2 above.
// Returns false when the triangle is degenerate.
bool unfold(const Vec3& p0, const Vec3& p1, const Vec3& p2, double s[2][2]) {
    const Vec3 e1 = p1 - p0;
    const Vec3 e2 = p2 - p0;
    const double len1 = e1.norm();
    const double cross = e1.cross(e2).norm();
    if (!(cross > 1e-14 * len1 * e2.norm()) || !(len1 > 0.0)) return false;
    const double proj = e1.dot(e2) / len1;
    const double height = cross / len1;
    s[0][0] = len1;
    s[0][1] = proj;
    s[1][0] = 0.0;
    s[1][1] = height;
    return true;
}

void invert_upper(const double s[2][2], double inv[2][2]) {
    inv[0][0] = 1.0 / s[0][0];
    inv[0][1] = -s[0][1] / (s[0][0] * s[1][1]);
    inv[1][0] = 0.0;
    inv[1][1] = 1.0 / s[1][1];
}

void singular_values(const double j[2][2], double& s1, double& s2) {
    const double e = 0.5 * (j[0][0] + j[1][1]);
    const double f = 0.5 * (j[0][0] - j[1][1]);
    const double g = 0.5 * (j[1][0] + j[0][1]);
    const double h = 0.5 * (j[1][0] - j[0][1]);
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    s1 = q + r;
    s2 = std::abs(q - r);
}

// Optimization workspace with cached source frames and vertex stencils.
class Solver {
public:
    Solver(const TriangleMesh& mesh, const PlanarEmbedding& init, const SolveOptions& options)
        : mesh_(mesh), options_(options), pos_(init.positions) {
        const int nt = mesh.n_triangles();
        frames_.resize(static_cast<std::size_t>(nt));
        total_area_ = 0.0;
        for (int t = 0; t < nt; ++t) {
            const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
            double s[2][2];
            if (!unfold(mesh.vertices[static_cast<std::size_t>(tri[0])],
                        mesh.vertices[static_cast<std::size_t>(tri[1])],
                        mesh.vertices[static_cast<std::size_t>(tri[2])], s)) {
                raise(ErrorCode::geometry, "degenerate source triangle in optimization");
            }
            invert_upper(s, frames_[static_cast<std::size_t>(t)].inv);
            frames_[static_cast<std::size_t>(t)].area = 0.5 * s[0][0] * s[1][1];
            total_area_ += frames_[static_cast<std::size_t>(t)].area;
        }

        stencil_offsets_.assign(static_cast<std::size_t>(mesh.n_vertices()) + 1, 0);
        for (const auto& tri : mesh.triangles) {
            for (int k = 0; k < 3; ++k) {
                ++stencil_offsets_[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)]) + 1];
            }
        }
        for (std::size_t i = 1; i < stencil_offsets_.size(); ++i) {
            stencil_offsets_[i] += stencil_offsets_[i - 1];
        }
        stencil_tris_.resize(stencil_offsets_.back());
        std::vector<int> cursor(stencil_offsets_.begin(), stencil_offsets_.end() - 1);
        for (int t = 0; t < nt; ++t) {
            const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
            for (int k = 0; k < 3; ++k) {
                stencil_tris_[static_cast<std::size_t>(
                    cursor[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])]++)] = t;
            }
        }
    }

    SolveResult run() {
        SolveResult result;
        result.trace.push_back({0, total_energy(), min_det()});
        if (!(result.trace.front().min_det > 0.0)) {
            raise(ErrorCode::precondition, "initial embedding has non-positive determinants");
        }

        double prev = result.trace.front().energy;
        int sweep = 0;
        while (sweep < options_.max_iters) {
            ++sweep;
            for (int v = 0; v < mesh_.n_vertices(); ++v) relax_vertex(v);
            const double cur = total_energy();
            const double md = min_det();
            result.trace.push_back({sweep, cur, md});
            if (!(md > 0.0)) raise(ErrorCode::internal, "determinant scan failed after sweep");
            const double rel = (prev - cur) / std::max(std::abs(prev), 1e-30);
            prev = cur;
            if (rel < options_.tol) {
                result.converged = true;
                break;
            }
        }
        result.iterations = sweep;
        result.embedding.positions = pos_;
        return result;
    }

    double total_energy() const {
        double acc = 0.0;
        for (int t = 0; t < mesh_.n_triangles(); ++t) {
            acc += frames_[static_cast<std::size_t>(t)].area * triangle_energy(t, -1, {});
        }
        return acc / total_area_;
    }

    double min_det() const {
        double md = std::numeric_limits<double>::infinity();
        for (int t = 0; t < mesh_.n_triangles(); ++t) md = std::min(md, triangle_det(t, -1, {}));
        return md;
    }

private:
    // Jacobian entries of triangle t with vertex `subst` (if >= 0) moved to `at`.
    void jacobian(int t, int subst, const Vec2& at, double j[2][2]) const {
        const auto& tri = mesh_.triangles[static_cast<std::size_t>(t)];
        Vec2 q0 = pos_[static_cast<std::size_t>(tri[0])];
        Vec2 q1 = pos_[static_cast<std::size_t>(tri[1])];
        Vec2 q2 = pos_[static_cast<std::size_t>(tri[2])];
        if (subst == tri[0]) q0 = at;
        if (subst == tri[1]) q1 = at;
        if (subst == tri[2]) q2 = at;
        const double t00 = q1.x - q0.x, t01 = q2.x - q0.x;
        const double t10 = q1.y - q0.y, t11 = q2.y - q0.y;
        const auto& inv = frames_[static_cast<std::size_t>(t)].inv;
        j[0][0] = t00 * inv[0][0] + t01 * inv[1][0];
        j[0][1] = t00 * inv[0][1] + t01 * inv[1][1];
        j[1][0] = t10 * inv[0][0] + t11 * inv[1][0];
        j[1][1] = t10 * inv[0][1] + t11 * inv[1][1];
    }

    double triangle_energy(int t, int subst, const Vec2& at) const {
        double j[2][2];
        jacobian(t, subst, at, j);
        double s1, s2;
        singular_values(j, s1, s2);
        return local_distortion(options_.energy, std::max(s1, kSigmaFloor),
                                std::max(s2, kSigmaFloor));
    }

    double triangle_det(int t, int subst, const Vec2& at) const {
        double j[2][2];
        jacobian(t, subst, at, j);
        return j[0][0] * j[1][1] - j[0][1] * j[1][0];
    }

    double stencil_energy(int v, const Vec2& at) const {
        double acc = 0.0;
        for (std::size_t k = stencil_offsets_[static_cast<std::size_t>(v)];
             k < stencil_offsets_[static_cast<std::size_t>(v) + 1]; ++k) {
            const int t = stencil_tris_[k];
            acc += frames_[static_cast<std::size_t>(t)].area * triangle_energy(t, v, at);
        }
        return acc;
    }

    double stencil_scale(int v) const {
        double acc = 0.0;
        int count = 0;
        const Vec2 p = pos_[static_cast<std::size_t>(v)];
        for (std::size_t k = stencil_offsets_[static_cast<std::size_t>(v)];
             k < stencil_offsets_[static_cast<std::size_t>(v) + 1]; ++k) {
            const auto& tri = mesh_.triangles[static_cast<std::size_t>(stencil_tris_[k])];
            for (int i = 0; i < 3; ++i) {
                if (tri[static_cast<std::size_t>(i)] == v) continue;
                acc += (pos_[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])] - p).norm();
                ++count;
            }
        }
        return count > 0 ? acc / count : 1.0;
    }

    // Largest step along d keeping every stencil determinant positive.
    // A single moving vertex makes each determinant affine in the step.
    double det_safe_step(int v, const Vec2& d) const {
        double s_max = std::numeric_limits<double>::infinity();
        const Vec2 p = pos_[static_cast<std::size_t>(v)];
        for (std::size_t k = stencil_offsets_[static_cast<std::size_t>(v)];
             k < stencil_offsets_[static_cast<std::size_t>(v) + 1]; ++k) {
            const int t = stencil_tris_[k];
            const double d0 = triangle_det(t, -1, {});
            const double d1 = triangle_det(t, v, p + d);
            const double slope = d1 - d0;
            if (slope < 0.0) s_max = std::min(s_max, d0 / -slope);
        }
        return s_max;
    }

    void relax_vertex(int v) {
        if (stencil_offsets_[static_cast<std::size_t>(v)] ==
            stencil_offsets_[static_cast<std::size_t>(v) + 1]) {
            return;  // isolated vertex; nothing to do
        }
        const Vec2 p = pos_[static_cast<std::size_t>(v)];
        const double e0 = stencil_energy(v, p);
        const double scale = stencil_scale(v);
        const double h = 1e-5 * scale;
        if (!(h > 0.0)) return;

        const double e_xp = stencil_energy(v, {p.x + h, p.y});
        const double e_xm = stencil_energy(v, {p.x - h, p.y});
        const double e_yp = stencil_energy(v, {p.x, p.y + h});
        const double e_ym = stencil_energy(v, {p.x, p.y - h});
        const double e_pp = stencil_energy(v, {p.x + h, p.y + h});
        const double e_pm = stencil_energy(v, {p.x + h, p.y - h});
        const double e_mp = stencil_energy(v, {p.x - h, p.y + h});
        const double e_mm = stencil_energy(v, {p.x - h, p.y - h});

        const double gx = (e_xp - e_xm) / (2 * h);
        const double gy = (e_yp - e_ym) / (2 * h);
        const double gnorm = std::hypot(gx, gy);
        if (!(gnorm > 1e-13 * (std::abs(e0) + 1e-30) / scale)) return;

        const double hxx = (e_xp - 2 * e0 + e_xm) / (h * h);
        const double hyy = (e_yp - 2 * e0 + e_ym) / (h * h);
        const double hxy = (e_pp - e_pm - e_mp + e_mm) / (4 * h * h);

        Vec2 d;
        const double hdet = hxx * hyy - hxy * hxy;
        if (hxx > 0.0 && hdet > 0.0) {
            d = {(-gx * hyy + gy * hxy) / hdet, (-gy * hxx + gx * hxy) / hdet};
        } else {
            d = {-gx / gnorm * 0.25 * scale, -gy / gnorm * 0.25 * scale};
        }

        double step = 1.0;
        const double s_max = det_safe_step(v, d);
        if (s_max < std::numeric_limits<double>::infinity()) {
            step = std::min(step, 0.8 * s_max);
        }
        if (!(step > 0.0)) return;

        for (int iter = 0; iter < 40; ++iter) {
            const Vec2 cand{p.x + step * d.x, p.y + step * d.y};
            const double e = stencil_energy(v, cand);
            if (e < e0) {
                pos_[static_cast<std::size_t>(v)] = cand;
                return;
            }
            step *= 0.5;
        }
    }

    const TriangleMesh& mesh_;
    const SolveOptions& options_;
    std::vector<Vec2> pos_;
    std::vector<LocalFrame> frames_;
    std::vector<std::size_t> stencil_offsets_;
    std::vector<int> stencil_tris_;
    double total_area_ = 0.0;
};

}  // namespace

PlanarEmbedding tutte_embed(const TriangleMesh& mesh) {
    validate_mesh(mesh);
    const int nv = mesh.n_vertices();
    const auto& loop = mesh.boundary;
    const auto nb = loop.size();

    // Boundary on the unit circle, arc length proportional to edge length.
    std::vector<double> cumulative(nb + 1, 0.0);
    for (std::size_t i = 0; i < nb; ++i) {
        const Vec3& a = mesh.vertices[static_cast<std::size_t>(loop[i])];
        const Vec3& b = mesh.vertices[static_cast<std::size_t>(loop[(i + 1) % nb])];
        cumulative[i + 1] = cumulative[i] + (b - a).norm();
    }
    const double total = cumulative[nb];
    if (!(total > 0.0)) raise(ErrorCode::geometry, "boundary has zero length");

    PlanarEmbedding embedding;
    embedding.positions.assign(static_cast<std::size_t>(nv), Vec2{0.0, 0.0});
    std::vector<char> is_boundary(static_cast<std::size_t>(nv), 0);
    for (std::size_t i = 0; i < nb; ++i) {
        const double angle = 2.0 * std::numbers::pi * cumulative[i] / total;
        embedding.positions[static_cast<std::size_t>(loop[i])] = {std::cos(angle),
                                                                  std::sin(angle)};
        is_boundary[static_cast<std::size_t>(loop[i])] = 1;
    }

    // Uniform-weight convex combination system for interior vertices.
    std::vector<int> interior_index(static_cast<std::size_t>(nv), -1);
    int m = 0;
    for (int v = 0; v < nv; ++v) {
        if (!is_boundary[static_cast<std::size_t>(v)]) interior_index[static_cast<std::size_t>(v)] = m++;
    }

    if (m > 0) {
        std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(nv));
        for (const auto& tri : mesh.triangles) {
            for (int k = 0; k < 3; ++k) {
                const int u = tri[static_cast<std::size_t>(k)];
                const int w = tri[static_cast<std::size_t>((k + 1) % 3)];
                neighbors[static_cast<std::size_t>(u)].push_back(w);
                neighbors[static_cast<std::size_t>(w)].push_back(u);
            }
        }
        for (auto& list : neighbors) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }

        Eigen::SparseMatrix<double> laplacian(m, m);
        std::vector<Eigen::Triplet<double>> entries;
        Eigen::VectorXd rhs_u = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd rhs_v = Eigen::VectorXd::Zero(m);
        for (int v = 0; v < nv; ++v) {
            const int row = interior_index[static_cast<std::size_t>(v)];
            if (row < 0) continue;
            const auto& nbrs = neighbors[static_cast<std::size_t>(v)];
            entries.emplace_back(row, row, static_cast<double>(nbrs.size()));
            for (int w : nbrs) {
                const int col = interior_index[static_cast<std::size_t>(w)];
                if (col >= 0) {
                    entries.emplace_back(row, col, -1.0);
                } else {
                    rhs_u(row) += embedding.positions[static_cast<std::size_t>(w)].x;
                    rhs_v(row) += embedding.positions[static_cast<std::size_t>(w)].y;
                }
            }
        }
        laplacian.setFromTriplets(entries.begin(), entries.end());

        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(1e-10);
        cg.setMaxIterations(std::max(1000, 40 * m));
        cg.compute(laplacian);
        const Eigen::VectorXd sol_u = cg.solve(rhs_u);
        if (cg.info() != Eigen::Success) raise(ErrorCode::internal, "convex combination solve failed");
        const Eigen::VectorXd sol_v = cg.solve(rhs_v);
        if (cg.info() != Eigen::Success) raise(ErrorCode::internal, "convex combination solve failed");

        for (int v = 0; v < nv; ++v) {
            const int row = interior_index[static_cast<std::size_t>(v)];
            if (row >= 0) embedding.positions[static_cast<std::size_t>(v)] = {sol_u(row), sol_v(row)};
        }
    }

    if (!(embedding_min_det(mesh, embedding) > 0.0)) {
        raise(ErrorCode::internal, "convex combination embedding produced a flipped triangle");
    }
    return embedding;
}

TriangleJacobian local_jacobian(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                                int t) {
    if (t < 0 || t >= mesh.n_triangles()) raise(ErrorCode::parameter, "triangle index out of range");
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    double s[2][2];
    if (!unfold(mesh.vertices[static_cast<std::size_t>(tri[0])],
                mesh.vertices[static_cast<std::size_t>(tri[1])],
                mesh.vertices[static_cast<std::size_t>(tri[2])], s)) {
        raise(ErrorCode::geometry, "degenerate source triangle");
    }
    double inv[2][2];
    invert_upper(s, inv);

    const Vec2& q0 = embedding.positions[static_cast<std::size_t>(tri[0])];
    const Vec2& q1 = embedding.positions[static_cast<std::size_t>(tri[1])];
    const Vec2& q2 = embedding.positions[static_cast<std::size_t>(tri[2])];
    const double t00 = q1.x - q0.x, t01 = q2.x - q0.x;
    const double t10 = q1.y - q0.y, t11 = q2.y - q0.y;

    TriangleJacobian jac;
    jac.m[0][0] = t00 * inv[0][0] + t01 * inv[1][0];
    jac.m[0][1] = t00 * inv[0][1] + t01 * inv[1][1];
    jac.m[1][0] = t10 * inv[0][0] + t11 * inv[1][0];
    jac.m[1][1] = t10 * inv[0][1] + t11 * inv[1][1];
    jac.det = jac.m[0][0] * jac.m[1][1] - jac.m[0][1] * jac.m[1][0];
    singular_values(jac.m, jac.sigma1, jac.sigma2);
    return jac;
}

double embedding_min_det(const TriangleMesh& mesh, const PlanarEmbedding& embedding) {
    double md = std::numeric_limits<double>::infinity();
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        const Vec3& p0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
        const Vec3& p1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
        const Vec3& p2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
        const double area2 = (p1 - p0).cross(p2 - p0).norm();
        if (!(area2 > 0.0)) raise(ErrorCode::geometry, "degenerate source triangle");
        const Vec2& q0 = embedding.positions[static_cast<std::size_t>(tri[0])];
        const Vec2& q1 = embedding.positions[static_cast<std::size_t>(tri[1])];
        const Vec2& q2 = embedding.positions[static_cast<std::size_t>(tri[2])];
        const double target2 = (q1 - q0).cross(q2 - q0);
        md = std::min(md, target2 / area2);
    }
    return md;
}

SolveResult minimize_distortion(const TriangleMesh& mesh, const PlanarEmbedding& init,
                                const SolveOptions& options) {
    if (init.positions.size() != static_cast<std::size_t>(mesh.n_vertices())) {
        raise(ErrorCode::precondition, "embedding size does not match mesh");
    }
    if (options.max_iters < 0 || !(options.tol >= 0.0)) {
        raise(ErrorCode::parameter, "invalid solver options");
    }
    Solver solver(mesh, init, options);
    return solver.run();
}

double embedding_energy(const TriangleMesh& mesh, const PlanarEmbedding& embedding,
                        DistortionMeasure energy) {
    double acc = 0.0, total = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const TriangleJacobian jac = local_jacobian(mesh, embedding, t);
        const double area = triangle_area(mesh, t);
        acc += area * local_distortion(energy, std::max(jac.sigma1, kSigmaFloor),
                                       std::max(jac.sigma2, kSigmaFloor));
        total += area;
    }
    if (!(total > 0.0)) raise(ErrorCode::geometry, "mesh has zero total area");
    return acc / total;
}

void write_trace_csv(const std::vector<SolveTraceRow>& trace, std::ostream& out) {
    out << "iteration,energy,min_det\n";
    char line[96];
    for (const auto& row : trace) {
        std::snprintf(line, sizeof(line), "%d,%.9g,%.9g\n", row.iteration, row.energy,
                      row.min_det);
        out << line;
    }
}

}  // namespace specgeo
