#include "specgeo/delaunay.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "specgeo/error.hpp"
#include "specgeo/predicates.hpp"

namespace specgeo {
namespace {

// Triangle record with per-edge adjacency. Edge k runs from v[k] to
// v[(k+1)%3]; nbr[k] is the triangle across that edge, or -1 on the hull.
struct TriRec {
    int v[3];
    int nbr[3];
    bool alive = true;
};

class Builder {
public:
    explicit Builder(const std::vector<Vec2>& points)
        : pts_(points), next_(points.size(), -1), prev_(points.size(), -1),
          hull_tri_(points.size(), -1) {}

    std::vector<Triangle> run() {
        const int n = static_cast<int>(pts_.size());
        std::vector<int> order(pts_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            const Vec2& p = pts_[static_cast<std::size_t>(i)];
            const Vec2& q = pts_[static_cast<std::size_t>(j)];
            return p.x < q.x || (p.x == q.x && p.y < q.y);
        });
        for (int i = 1; i < n; ++i) {
            const Vec2& p = pts_[static_cast<std::size_t>(order[i - 1])];
            const Vec2& q = pts_[static_cast<std::size_t>(order[i])];
            if (p.x == q.x && p.y == q.y) {
                raise(ErrorCode::data, "duplicate point at index " + std::to_string(order[i]));
            }
        }

        // Leading lex-sorted points may be collinear; find the first that is not.
        int seed_end = -1;
        for (int i = 2; i < n; ++i) {
            if (orient2d(at(order[0]), at(order[1]), at(order[i])) != 0) {
                seed_end = i;
                break;
            }
        }
        if (seed_end < 0) raise(ErrorCode::data, "all points are collinear");

        // order[0..seed_end-1] all lie on one line; order[seed_end] is the apex.
        seed_fan(order, seed_end + 1);
        for (int i = seed_end + 1; i < n; ++i) insert_point(order[static_cast<std::size_t>(i)]);

        return finish();
    }

private:
    const Vec2& at(int i) const { return pts_[static_cast<std::size_t>(i)]; }

    int add_tri(int a, int b, int c, int na, int nb, int nc) {
        tris_.push_back(TriRec{{a, b, c}, {na, nb, nc}, true});
        return static_cast<int>(tris_.size()) - 1;
    }

    void set_nbr(int t, int from, int to) {
        if (t < 0) return;
        for (int k = 0; k < 3; ++k) {
            if (tris_[static_cast<std::size_t>(t)].nbr[k] == from) {
                tris_[static_cast<std::size_t>(t)].nbr[k] = to;
                return;
            }
        }
    }

    // Sets the neighbor across the specific directed edge (u, w) of t.
    void set_nbr_edge(int t, int u, int w, int to) {
        if (t < 0) return;
        auto& tri = tris_[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            if (tri.v[k] == u && tri.v[(k + 1) % 3] == w) {
                tri.nbr[k] = to;
                return;
            }
        }
        raise(ErrorCode::internal, "edge not found in triangle");
    }

    // Builds the initial fan: chain[0..m-2] are collinear in lex order,
    // chain[m-1] (= apex) is off their line.
    void seed_fan(const std::vector<int>& order, int count) {
        const int apex = order[static_cast<std::size_t>(count - 1)];
        const int m = count - 1;
        const int side = orient2d(at(order[0]), at(order[1]), at(apex));

        std::vector<int> chain(order.begin(), order.begin() + m);
        if (side < 0) std::reverse(chain.begin(), chain.end());
        // Now apex is to the left of the chain direction: triangles
        // (chain[j], chain[j+1], apex) wind counterclockwise.
        int prev_tri = -1;
        for (int j = 0; j + 1 < m; ++j) {
            int t = add_tri(chain[static_cast<std::size_t>(j)],
                            chain[static_cast<std::size_t>(j) + 1], apex, -1, -1, prev_tri);
            if (prev_tri >= 0) tris_[static_cast<std::size_t>(prev_tri)].nbr[1] = t;
            prev_tri = t;
        }

        // Counterclockwise hull: chain then apex.
        for (int j = 0; j + 1 < m; ++j) {
            link(chain[static_cast<std::size_t>(j)], chain[static_cast<std::size_t>(j) + 1]);
            hull_tri_[static_cast<std::size_t>(chain[static_cast<std::size_t>(j)])] = j;
        }
        link(chain[static_cast<std::size_t>(m - 1)], apex);
        link(apex, chain[0]);
        hull_tri_[static_cast<std::size_t>(chain[static_cast<std::size_t>(m - 1)])] =
            static_cast<int>(tris_.size()) - 1;  // edge (last chain vertex, apex)
        hull_tri_[static_cast<std::size_t>(apex)] = 0;  // edge (apex, chain[0])
        last_ = apex;

        for (std::size_t t = 0; t < tris_.size(); ++t) flush_edges(static_cast<int>(t));
    }

    void link(int u, int v) {
        next_[static_cast<std::size_t>(u)] = v;
        prev_[static_cast<std::size_t>(v)] = u;
    }

    bool strictly_visible(int u, int p) const {
        const int v = next_[static_cast<std::size_t>(u)];
        return orient2d(at(u), at(v), at(p)) < 0;
    }

    void insert_point(int p) {
        // Find one strictly visible hull edge, preferring those at the most
        // recently inserted vertex; fall back to a full hull scan.
        int start = -1;
        if (strictly_visible(last_, p)) {
            start = last_;
        } else if (strictly_visible(prev_[static_cast<std::size_t>(last_)], p)) {
            start = prev_[static_cast<std::size_t>(last_)];
        } else {
            for (int u = next_[static_cast<std::size_t>(last_)]; u != last_;
                 u = next_[static_cast<std::size_t>(u)]) {
                if (strictly_visible(u, p)) {
                    start = u;
                    break;
                }
            }
        }
        if (start < 0) raise(ErrorCode::internal, "no visible hull edge for inserted point");

        // Extend to the maximal contiguous visible chain.
        int first = start;
        while (strictly_visible(prev_[static_cast<std::size_t>(first)], p)) {
            first = prev_[static_cast<std::size_t>(first)];
        }
        int last_edge = start;
        while (strictly_visible(next_[static_cast<std::size_t>(last_edge)], p)) {
            last_edge = next_[static_cast<std::size_t>(last_edge)];
        }

        // One new counterclockwise triangle (w, u, p) per visible edge (u, w).
        int prev_new = -1;
        int u = first;
        std::vector<int> created;
        while (true) {
            const int w = next_[static_cast<std::size_t>(u)];
            const int inner = hull_tri_[static_cast<std::size_t>(u)];
            const int t = add_tri(w, u, p, inner, prev_new, -1);
            set_nbr_edge(inner, u, w, t);
            if (prev_new >= 0) tris_[static_cast<std::size_t>(prev_new)].nbr[2] = t;
            created.push_back(t);
            prev_new = t;
            if (u == last_edge) break;
            u = w;
        }
        const int chain_end = next_[static_cast<std::size_t>(last_edge)];

        // Replace the visible chain by (first -> p -> chain_end).
        link(first, p);
        link(p, chain_end);
        hull_tri_[static_cast<std::size_t>(first)] = created.front();
        hull_tri_[static_cast<std::size_t>(p)] = created.back();
        last_ = p;

        for (int t : created) flush_edges(t);
        flip_until_done();
    }

    // Queue all internal edges of a triangle for Delaunay testing.
    void flush_edges(int t) {
        for (int k = 0; k < 3; ++k) {
            if (tris_[static_cast<std::size_t>(t)].nbr[k] >= 0) stack_.push_back({t, k});
        }
    }

    void flip_until_done() {
        while (!stack_.empty()) {
            auto [t, k] = stack_.back();
            stack_.pop_back();
            if (!tris_[static_cast<std::size_t>(t)].alive) continue;
            const int nb = tris_[static_cast<std::size_t>(t)].nbr[k];
            if (nb < 0 || !tris_[static_cast<std::size_t>(nb)].alive) continue;

            const int u = tris_[static_cast<std::size_t>(t)].v[k];
            const int v = tris_[static_cast<std::size_t>(t)].v[(k + 1) % 3];
            const int w = tris_[static_cast<std::size_t>(t)].v[(k + 2) % 3];
            // Locate the shared edge (v, u) in the neighbor.
            int j = -1;
            for (int i = 0; i < 3; ++i) {
                if (tris_[static_cast<std::size_t>(nb)].v[i] == v &&
                    tris_[static_cast<std::size_t>(nb)].v[(i + 1) % 3] == u) {
                    j = i;
                    break;
                }
            }
            if (j < 0) raise(ErrorCode::internal, "inconsistent triangle adjacency");
            const int x = tris_[static_cast<std::size_t>(nb)].v[(j + 2) % 3];

            if (incircle_perturbed(at(u), at(v), at(w), at(x)) <= 0) continue;

            // Flip the diagonal (u, v) to (w, x).
            const int A = tris_[static_cast<std::size_t>(t)].nbr[(k + 1) % 3];   // across (v, w)
            const int B = tris_[static_cast<std::size_t>(t)].nbr[(k + 2) % 3];   // across (w, u)
            const int C = tris_[static_cast<std::size_t>(nb)].nbr[(j + 1) % 3];  // across (u, x)
            const int D = tris_[static_cast<std::size_t>(nb)].nbr[(j + 2) % 3];  // across (x, v)

            tris_[static_cast<std::size_t>(t)].alive = false;
            tris_[static_cast<std::size_t>(nb)].alive = false;
            const int t2 = add_tri(u, x, w, C, -1, B);  // edges (u,x), (x,w), (w,u)
            const int t3 = add_tri(x, v, w, D, A, t2);  // edges (x,v), (v,w), (w,x)
            tris_[static_cast<std::size_t>(t2)].nbr[1] = t3;

            set_nbr(A, t, t3);
            set_nbr(B, t, t2);
            set_nbr(C, nb, t2);
            set_nbr(D, nb, t3);
            if (C < 0) hull_tri_[static_cast<std::size_t>(u)] = t2;
            if (B < 0) hull_tri_[static_cast<std::size_t>(w)] = t2;
            if (D < 0) hull_tri_[static_cast<std::size_t>(x)] = t3;
            if (A < 0) hull_tri_[static_cast<std::size_t>(v)] = t3;

            stack_.push_back({t2, 0});
            stack_.push_back({t2, 2});
            stack_.push_back({t3, 0});
            stack_.push_back({t3, 1});
        }
    }

    std::vector<Triangle> finish() const {
        std::vector<Triangle> out;
        out.reserve(tris_.size());
        for (const auto& t : tris_) {
            if (!t.alive) continue;
            Triangle tri{t.v[0], t.v[1], t.v[2]};
            int lo = 0;
            for (int k = 1; k < 3; ++k) {
                if (tri[static_cast<std::size_t>(k)] < tri[static_cast<std::size_t>(lo)]) lo = k;
            }
            std::rotate(tri.begin(), tri.begin() + lo, tri.end());
            out.push_back(tri);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::vector<Vec2>& pts_;
    std::vector<TriRec> tris_;
    std::vector<int> next_, prev_, hull_tri_;
    std::vector<std::pair<int, int>> stack_;
    int last_ = -1;
};

}  // namespace

std::vector<Triangle> delaunay_triangulate(const std::vector<Vec2>& points) {
    if (points.size() < 3) {
        raise(ErrorCode::input_size, "need at least 3 points to triangulate");
    }
    Builder builder(points);
    return builder.run();
}

}  // namespace specgeo
