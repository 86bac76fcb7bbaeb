#include "specgeo/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "specgeo/delaunay.hpp"
#include "specgeo/error.hpp"
#include "specgeo/predicates.hpp"

namespace specgeo {
namespace {

// Ordered boundary loop from directed edges that have no reverse partner.
// Traversal follows triangle winding, so the loop runs counterclockwise.
std::vector<int> boundary_loop(const std::vector<Triangle>& triangles, int n_vertices) {
    std::map<std::pair<int, int>, int> directed;
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            const int u = t[static_cast<std::size_t>(k)];
            const int v = t[static_cast<std::size_t>((k + 1) % 3)];
            if (!directed.emplace(std::make_pair(u, v), 1).second) {
                raise(ErrorCode::topology, "duplicate directed edge: non-manifold mesh");
            }
        }
    }
    std::vector<int> next(static_cast<std::size_t>(n_vertices), -1);
    int start = -1;
    int n_boundary_edges = 0;
    for (const auto& [edge, count] : directed) {
        (void)count;
        if (directed.find({edge.second, edge.first}) == directed.end()) {
            if (next[static_cast<std::size_t>(edge.first)] != -1) {
                raise(ErrorCode::topology, "vertex on more than one boundary edge pair");
            }
            next[static_cast<std::size_t>(edge.first)] = edge.second;
            ++n_boundary_edges;
            if (start < 0 || edge.first < start) start = edge.first;
        }
    }
    if (start < 0) raise(ErrorCode::topology, "mesh has no boundary (not a disc)");

    std::vector<int> loop;
    loop.reserve(static_cast<std::size_t>(n_boundary_edges));
    int v = start;
    do {
        loop.push_back(v);
        v = next[static_cast<std::size_t>(v)];
        if (v < 0 || static_cast<int>(loop.size()) > n_boundary_edges) {
            raise(ErrorCode::topology, "boundary does not close into a single loop");
        }
    } while (v != start);
    if (static_cast<int>(loop.size()) != n_boundary_edges) {
        raise(ErrorCode::topology, "mesh has more than one boundary loop");
    }
    return loop;
}

}  // namespace

VertexGrid sample_surface(const SpectrogramSurface& surface, int n) {
    if (n < 2) raise(ErrorCode::parameter, "grid size must be >= 2");
    surface.validate();

    VertexGrid grid;
    grid.n = n;
    grid.points.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int iy = 0; iy < n; ++iy) {
        const double y = static_cast<double>(iy) / (n - 1);
        for (int ix = 0; ix < n; ++ix) {
            const double x = static_cast<double>(ix) / (n - 1);
            grid.points[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(ix)] = {x, y, surface.sample(x, y)};
        }
    }
    return grid;
}

TriangleMesh triangulate(const VertexGrid& grid) {
    if (grid.n < 2 ||
        grid.points.size() != static_cast<std::size_t>(grid.n) * static_cast<std::size_t>(grid.n)) {
        raise(ErrorCode::parameter, "invalid vertex grid");
    }
    std::vector<Vec2> planar(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) planar[i] = grid.points[i].xy();

    TriangleMesh mesh;
    mesh.vertices = grid.points;
    mesh.triangles = delaunay_triangulate(planar);
    mesh.boundary = boundary_loop(mesh.triangles, mesh.n_vertices());
    return mesh;
}

TriangleMesh make_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles) {
    TriangleMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.triangles = std::move(triangles);
    mesh.boundary = boundary_loop(mesh.triangles, mesh.n_vertices());
    return mesh;
}

double triangle_area(const TriangleMesh& mesh, int t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(tri[2])];
    return 0.5 * (b - a).cross(c - a).norm();
}

double triangle_frequency(const TriangleMesh& mesh, int t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    return (mesh.vertices[static_cast<std::size_t>(tri[0])].y +
            mesh.vertices[static_cast<std::size_t>(tri[1])].y +
            mesh.vertices[static_cast<std::size_t>(tri[2])].y) /
           3.0;
}

void validate_mesh(const TriangleMesh& mesh) {
    const int nv = mesh.n_vertices();
    const int nt = mesh.n_triangles();
    if (nv < 3 || nt < 1) raise(ErrorCode::topology, "mesh too small");

    std::map<std::pair<int, int>, int> undirected;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int u = t[static_cast<std::size_t>(k)];
            const int v = t[static_cast<std::size_t>((k + 1) % 3)];
            if (u < 0 || u >= nv || v < 0 || v >= nv) {
                raise(ErrorCode::topology, "triangle references invalid vertex");
            }
            if (u == v) raise(ErrorCode::topology, "triangle repeats a vertex");
            undirected[{std::min(u, v), std::max(u, v)}]++;
        }
        const Vec2 a = mesh.vertices[static_cast<std::size_t>(t[0])].xy();
        const Vec2 b = mesh.vertices[static_cast<std::size_t>(t[1])].xy();
        const Vec2 c = mesh.vertices[static_cast<std::size_t>(t[2])].xy();
        if (orient2d(a, b, c) <= 0) {
            raise(ErrorCode::geometry, "triangle not counterclockwise in (x, y)");
        }
    }

    int n_boundary_edges = 0;
    for (const auto& [edge, count] : undirected) {
        (void)edge;
        if (count == 1) {
            ++n_boundary_edges;
        } else if (count != 2) {
            raise(ErrorCode::topology, "edge shared by more than two triangles");
        }
    }

    // Euler characteristic of a disc: V - E + F = 1.
    const int ne = static_cast<int>(undirected.size());
    if (nv - ne + nt != 1) {
        raise(ErrorCode::topology, "mesh is not a topological disc (V-E+F != 1)");
    }

    // Connectivity over shared edges.
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            const int u = tri[static_cast<std::size_t>(k)];
            const int v = tri[static_cast<std::size_t>((k + 1) % 3)];
            edge_tris[{std::min(u, v), std::max(u, v)}].push_back(t);
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(nt), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int n_seen = 1;
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            const int u = tri[static_cast<std::size_t>(k)];
            const int v = tri[static_cast<std::size_t>((k + 1) % 3)];
            for (int other : edge_tris[{std::min(u, v), std::max(u, v)}]) {
                if (!seen[static_cast<std::size_t>(other)]) {
                    seen[static_cast<std::size_t>(other)] = 1;
                    ++n_seen;
                    stack.push_back(other);
                }
            }
        }
    }
    if (n_seen != nt) raise(ErrorCode::topology, "mesh is not connected");

    // The stored boundary must match the derived loop up to starting point.
    const auto loop = boundary_loop(mesh.triangles, nv);
    if (loop.size() != mesh.boundary.size()) {
        raise(ErrorCode::topology, "stored boundary length mismatch");
    }
    if (static_cast<int>(loop.size()) != n_boundary_edges) {
        raise(ErrorCode::topology, "boundary loop does not cover all boundary edges");
    }
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
    char line[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
        out << line;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(line, sizeof(line), "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        out << line;
    }
}

void write_obj(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::io, "cannot write OBJ file '" + path + "'");
    write_obj(mesh, out);
}

}  // namespace specgeo
