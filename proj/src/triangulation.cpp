#include "navspace/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace navspace::geometry {

namespace {

double orient(const Point2& a, const Point2& b, const Point2& c) {
    return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

// Exact in-circle for coordinates on the half-integer grid (pixel positions
// and bottom-border anchors). Doubling the coordinates makes every value an
// integer, so the determinant is computed without rounding.
bool half_integer_grid(const Point2& p) {
    const double u2 = p.u * 2.0, v2 = p.v * 2.0;
    return std::abs(p.u) <= 4096.0 && std::abs(p.v) <= 4096.0 &&
           u2 == std::floor(u2) && v2 == std::floor(v2);
}

double incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int64_t ax = static_cast<int64_t>(a.u * 2.0) - static_cast<int64_t>(d.u * 2.0);
    const int64_t ay = static_cast<int64_t>(a.v * 2.0) - static_cast<int64_t>(d.v * 2.0);
    const int64_t bx = static_cast<int64_t>(b.u * 2.0) - static_cast<int64_t>(d.u * 2.0);
    const int64_t by = static_cast<int64_t>(b.v * 2.0) - static_cast<int64_t>(d.v * 2.0);
    const int64_t cx = static_cast<int64_t>(c.u * 2.0) - static_cast<int64_t>(d.u * 2.0);
    const int64_t cy = static_cast<int64_t>(c.v * 2.0) - static_cast<int64_t>(d.v * 2.0);
    const __int128 al = static_cast<__int128>(ax) * ax + static_cast<__int128>(ay) * ay;
    const __int128 bl = static_cast<__int128>(bx) * bx + static_cast<__int128>(by) * by;
    const __int128 cl = static_cast<__int128>(cx) * cx + static_cast<__int128>(cy) * cy;
    const __int128 det = al * (static_cast<__int128>(bx) * cy - static_cast<__int128>(by) * cx) -
                         bl * (static_cast<__int128>(ax) * cy - static_cast<__int128>(ay) * cx) +
                         cl * (static_cast<__int128>(ax) * by - static_cast<__int128>(ay) * bx);
    // Doubled coordinates scale the degree-4 determinant by 16.
    return static_cast<double>(det) / 16.0;
}

struct Tri {
    int a, b, c;
};

struct EdgeUse {
    int tri = -1;
    int opposite = -1;
};

using EdgeMap = std::map<std::pair<int, int>, std::vector<EdgeUse>>;

EdgeMap build_edge_map(const std::vector<Tri>& tris) {
    EdgeMap edges;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        const Tri& tri = tris[t];
        const int idx[3] = {tri.a, tri.b, tri.c};
        for (int e = 0; e < 3; ++e) {
            int i = idx[e], j = idx[(e + 1) % 3], k = idx[(e + 2) % 3];
            if (i > j) std::swap(i, j);
            edges[{i, j}].push_back({t, k});
        }
    }
    return edges;
}

}  // namespace

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return 0.5 * orient(a, b, c);
}

double incircle_determinant(const Point2& a, const Point2& b, const Point2& c,
                            const Point2& d) {
    // The caller guarantees (a, b, c) is positively oriented.
    if (half_integer_grid(a) && half_integer_grid(b) && half_integer_grid(c) &&
        half_integer_grid(d))
        return incircle_exact(a, b, c, d);
    const double ax = a.u - d.u, ay = a.v - d.v;
    const double bx = b.u - d.u, by = b.v - d.v;
    const double cx = c.u - d.u, cy = c.v - d.v;
    const double al = ax * ax + ay * ay;
    const double bl = bx * bx + by * by;
    const double cl = cx * cx + cy * cy;
    return al * (bx * cy - by * cx) - bl * (ax * cy - ay * cx) + cl * (ax * by - ay * bx);
}

bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    const double d1 = orient(a, b, p);
    const double d2 = orient(b, c, p);
    const double d3 = orient(c, a, p);
    const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(has_neg && has_pos);
}

namespace {

class Triangulator {
public:
    explicit Triangulator(const std::vector<Point2>& points) : pts_(points) {}

    std::vector<Tri> run() {
        sort_and_dedupe();
        build_initial();
        lawson_flips();
        canonicalize_cocircular();
        return std::move(tris_);
    }

private:
    const std::vector<Point2>& pts_;
    std::vector<int> order_;
    std::vector<Tri> tris_;
    std::vector<int> hull_;  // CCW ring once the first triangle exists

    const Point2& at(int i) const { return pts_[i]; }

    void sort_and_dedupe() {
        order_.resize(pts_.size());
        for (size_t i = 0; i < pts_.size(); ++i) order_[i] = static_cast<int>(i);
        std::sort(order_.begin(), order_.end(), [&](int l, int r) {
            if (pts_[l].u != pts_[r].u) return pts_[l].u < pts_[r].u;
            if (pts_[l].v != pts_[r].v) return pts_[l].v < pts_[r].v;
            return l < r;
        });
        order_.erase(std::unique(order_.begin(), order_.end(),
                                 [&](int l, int r) {
                                     return pts_[l].u == pts_[r].u && pts_[l].v == pts_[r].v;
                                 }),
                     order_.end());
        if (order_.size() < 3) throw std::runtime_error("degenerate point set");
    }

    void add_triangle(int i, int j, int k) {
        if (orient(at(i), at(j), at(k)) > 0)
            tris_.push_back({i, j, k});
        else
            tris_.push_back({i, k, j});
    }

    void build_initial() {
        std::vector<int> chain;  // leading collinear run, in sorted order
        size_t next = 0;
        chain.push_back(order_[next++]);
        chain.push_back(order_[next++]);
        while (next < order_.size()) {
            const int p = order_[next];
            if (orient(at(chain.front()), at(chain.back()), at(p)) != 0) break;
            chain.push_back(p);
            ++next;
        }
        if (next == order_.size()) throw std::runtime_error("degenerate point set");

        const int first = order_[next++];
        for (size_t i = 0; i + 1 < chain.size(); ++i)
            add_triangle(chain[i], chain[i + 1], first);
        if (orient(at(chain.front()), at(chain.back()), at(first)) > 0) {
            hull_ = chain;
            hull_.push_back(first);
        } else {
            hull_.assign(chain.rbegin(), chain.rend());
            hull_.push_back(first);
        }

        for (; next < order_.size(); ++next) insert_point(order_[next]);
    }

    void insert_point(int p) {
        const int n = static_cast<int>(hull_.size());
        std::vector<bool> vis(n);
        int first_vis = -1;
        for (int i = 0; i < n; ++i) {
            vis[i] = orient(at(hull_[i]), at(hull_[(i + 1) % n]), at(p)) < 0;
        }
        for (int i = 0; i < n; ++i) {
            if (vis[i] && !vis[(i + n - 1) % n]) { first_vis = i; break; }
        }
        if (first_vis < 0) throw std::logic_error("no visible hull edge");

        int last_vis = first_vis;
        while (vis[(last_vis + 1) % n]) last_vis = (last_vis + 1) % n;

        for (int i = first_vis;; i = (i + 1) % n) {
            add_triangle(hull_[(i + 1) % n], hull_[i], p);
            if (i == last_vis) break;
        }

        // Keep the invisible arc from the end of the fan back to its start,
        // then append p.
        std::vector<int> new_hull;
        new_hull.reserve(n + 1);
        for (int i = (last_vis + 1) % n;; i = (i + 1) % n) {
            new_hull.push_back(hull_[i]);
            if (i == first_vis) break;
        }
        new_hull.push_back(p);
        hull_ = std::move(new_hull);
    }

    bool quad_convex(int i, int j, int d1, int d2) const {
        const double s1 = orient(at(d1), at(d2), at(i));
        const double s2 = orient(at(d1), at(d2), at(j));
        return (s1 > 0 && s2 < 0) || (s1 < 0 && s2 > 0);
    }

    void flip_edge(int t1, int t2, int i, int j, int d1, int d2) {
        const Tri keep1{d1, d2, i}, keep2{d1, d2, j};
        tris_[t1] = orient(at(keep1.a), at(keep1.b), at(keep1.c)) > 0
                        ? keep1
                        : Tri{keep1.a, keep1.c, keep1.b};
        tris_[t2] = orient(at(keep2.a), at(keep2.b), at(keep2.c)) > 0
                        ? keep2
                        : Tri{keep2.a, keep2.c, keep2.b};
    }

    // Opposite vertex of the second triangle is inside the first triangle's
    // circumcircle beyond the tolerance: flip.
    void lawson_flips() {
        const size_t max_rounds = 64 + tris_.size() * tris_.size() * 8 + 1024;
        size_t rounds = 0;
        bool flipped = true;
        while (flipped) {
            if (++rounds > max_rounds) throw std::logic_error("delaunay flip loop diverged");
            flipped = false;
            EdgeMap edges = build_edge_map(tris_);
            for (const auto& [edge, uses] : edges) {
                if (uses.size() != 2) continue;
                const int t1 = uses[0].tri, t2 = uses[1].tri;
                const int d1 = uses[0].opposite, d2 = uses[1].opposite;
                const Tri& tri = tris_[t1];
                const double det = incircle_determinant(at(tri.a), at(tri.b), at(tri.c), at(d2));
                if (det > kInCircleTol && quad_convex(edge.first, edge.second, d1, d2)) {
                    flip_edge(t1, t2, edge.first, edge.second, d1, d2);
                    flipped = true;
                    break;
                }
            }
        }
    }

    // Cocircular quads are flipped toward the diagonal with the lowest
    // vertex index so the result does not depend on insertion order.
    void canonicalize_cocircular() {
        const size_t max_rounds = 64 + tris_.size() * tris_.size() * 8 + 1024;
        size_t rounds = 0;
        bool flipped = true;
        while (flipped) {
            if (++rounds > max_rounds) throw std::logic_error("cocircular pass diverged");
            flipped = false;
            EdgeMap edges = build_edge_map(tris_);
            for (const auto& [edge, uses] : edges) {
                if (uses.size() != 2) continue;
                const int t1 = uses[0].tri, t2 = uses[1].tri;
                const int d1 = uses[0].opposite, d2 = uses[1].opposite;
                const Tri& tri = tris_[t1];
                const double det = incircle_determinant(at(tri.a), at(tri.b), at(tri.c), at(d2));
                if (std::abs(det) <= kInCircleTol &&
                    std::min(d1, d2) < std::min(edge.first, edge.second) &&
                    quad_convex(edge.first, edge.second, d1, d2)) {
                    flip_edge(t1, t2, edge.first, edge.second, d1, d2);
                    flipped = true;
                    break;
                }
            }
        }
    }
};

}  // namespace

TriangleSet delaunay_triangulate(const std::vector<Point2>& points) {
    Triangulator tri(points);
    std::vector<Tri> raw = tri.run();

    TriangleSet out;
    out.points = points;
    out.triangles.reserve(raw.size());
    for (const Tri& t : raw) {
        if (std::abs(signed_area(points[t.a], points[t.b], points[t.c])) > 1e-9)
            out.triangles.push_back({t.a, t.b, t.c});
    }
    return out;
}

TriangleSet delaunay_triangulate(const std::vector<AnchoredPoint>& points) {
    std::vector<Point2> raw;
    raw.reserve(points.size());
    for (const AnchoredPoint& p : points) raw.push_back(p.pos);
    return delaunay_triangulate(raw);
}

namespace {

// Intersection of the closed triangle with the vertical line u = x, as a
// v-interval. Returns false when they do not meet.
bool vertical_slice(const Point2& a, const Point2& b, const Point2& c, double x, double& lo,
                    double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::infinity();
    const Point2 pts[3] = {a, b, c};
    for (int e = 0; e < 3; ++e) {
        const Point2& p = pts[e];
        const Point2& q = pts[(e + 1) % 3];
        if (p.u == x) {
            lo = std::min(lo, p.v);
            hi = std::max(hi, p.v);
        }
        if ((p.u < x && q.u > x) || (p.u > x && q.u < x)) {
            const double t = (x - p.u) / (q.u - p.u);
            const double v = p.v + t * (q.v - p.v);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return lo <= hi;
}

}  // namespace

TriangleSet select_triangles(const TriangleSet& tris, const Polyline& polyline, int height) {
    const double bottom = height - 1;
    // A triangle whose contact with a drop segment is only the segment's top
    // endpoint sits above the boundary and is discarded; the intersection
    // must extend strictly below the vertex. Bottom-row points (the anchors
    // and any border vertices) act as zero-length drops: touching them keeps
    // the triangle.
    const double below_tol = 1e-9;

    TriangleSet out;
    out.points = tris.points;
    for (const auto& t : tris.triangles) {
        const Point2& a = tris.points[t[0]];
        const Point2& b = tris.points[t[1]];
        const Point2& c = tris.points[t[2]];
        bool keep = false;
        for (const Point2& vtx : polyline.vertices) {
            double lo, hi;
            if (!vertical_slice(a, b, c, vtx.u, lo, hi)) continue;
            lo = std::max(lo, vtx.v);
            hi = std::min(hi, bottom);
            if (lo > hi) continue;
            if (hi > vtx.v + below_tol || (vtx.v == bottom && hi >= vtx.v)) {
                keep = true;
                break;
            }
        }
        if (!keep) {
            for (const Point2& p : tris.points) {
                if (std::abs(p.v - bottom) > below_tol) continue;
                if (point_in_triangle(p, a, b, c)) {
                    keep = true;
                    break;
                }
            }
        }
        if (keep) out.triangles.push_back(t);
    }
    return out;
}

SegMask rasterize_triangles(const TriangleSet& tris, int width, int height) {
    // Geometry lives on the pixel-center lattice: the point (a, b) names the
    // center of pixel (a, b), so the center test reduces to the lattice
    // point itself.
    SegMask mask(width, height, false);
    for (const auto& t : tris.triangles) {
        const Point2& a = tris.points[t[0]];
        const Point2& b = tris.points[t[1]];
        const Point2& c = tris.points[t[2]];
        const double lo_u = std::min({a.u, b.u, c.u});
        const double hi_u = std::max({a.u, b.u, c.u});
        const double lo_v = std::min({a.v, b.v, c.v});
        const double hi_v = std::max({a.v, b.v, c.v});
        const int u0 = std::max(0, static_cast<int>(std::ceil(lo_u)));
        const int u1 = std::min(width - 1, static_cast<int>(std::floor(hi_u)));
        const int v0 = std::max(0, static_cast<int>(std::ceil(lo_v)));
        const int v1 = std::min(height - 1, static_cast<int>(std::floor(hi_v)));
        for (int v = v0; v <= v1; ++v) {
            for (int u = u0; u <= u1; ++u) {
                if (mask.at(u, v)) continue;
                const Point2 center{static_cast<double>(u), static_cast<double>(v)};
                if (point_in_triangle(center, a, b, c)) mask.set(u, v, true);
            }
        }
    }
    return mask;
}

}  // namespace navspace::geometry
