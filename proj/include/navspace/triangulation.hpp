#pragma once

// Delaunay triangulation of boundary vertex sets, drop-line triangle
// selection and a deterministic pixel-center rasterizer.

#include <array>
#include <cstdint>
#include <vector>

#include "navspace/mask_geometry.hpp"

namespace navspace::geometry {

struct TriangleSet {
    std::vector<Point2> points;
    std::vector<std::array<int, 3>> triangles;  // CCW index triples
};

// Tolerance applied to the in-circle determinant; quads cocircular within
// this tolerance are canonicalized to the diagonal with the lowest vertex
// index.
inline constexpr double kInCircleTol = 1e-9;

double signed_area(const Point2& a, const Point2& b, const Point2& c);

// > 0 when d lies strictly inside the circumcircle of CCW triangle (a,b,c).
double incircle_determinant(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Delaunay triangulation whose union is the convex hull of the input.
// Throws std::runtime_error("degenerate point set") for fewer than three
// distinct points or an all-collinear input.
TriangleSet delaunay_triangulate(const std::vector<Point2>& points);
TriangleSet delaunay_triangulate(const std::vector<AnchoredPoint>& points);

// Keeps exactly the triangles whose closed region intersects at least one
// vertical drop segment from a polyline vertex to the bottom image row.
TriangleSet select_triangles(const TriangleSet& tris, const Polyline& polyline, int height);

// Pixel (u, v) is navigable iff its center lies inside or on the boundary
// of any triangle. Point coordinates name pixel centers, so the test is the
// lattice point (u, v) itself. Order-independent.
SegMask rasterize_triangles(const TriangleSet& tris, int width, int height);

// Closed point-in-triangle test used by the rasterizer.
bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c);

}  // namespace navspace::geometry
