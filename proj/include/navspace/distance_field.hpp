#pragma once

// Scaled Euclidean Distance Field pipeline: edge-map extraction from a
// navigability mask, strong-obstacle-boundary row filtering, exact integer
// squared Euclidean distance transform and the alpha-clamped field.

#include <cstdint>
#include <vector>

#include "navspace/mask_geometry.hpp"

namespace navspace::field {

struct PixelCoord {
    int u = 0;
    int v = 0;

    bool operator==(const PixelCoord&) const = default;
};

struct ObstacleBoundarySet {
    std::vector<PixelCoord> points;

    bool empty() const { return points.empty(); }
    size_t size() const { return points.size(); }
};

struct DistanceField {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, pixel units

    DistanceField() = default;
    DistanceField(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

    double at(int u, int v) const { return values[static_cast<size_t>(v) * width + u]; }
    double& at(int u, int v) { return values[static_cast<size_t>(v) * width + u]; }
};

struct SedfConfig {
    double alpha = 0.25;    // clamp scale in [0, 1]
    double v_thres = 0.0;   // SOB row threshold, pixels
};

// Non-navigable pixels with at least one navigable 4-neighbor.
ObstacleBoundarySet compute_edge_map(const navspace::geometry::SegMask& mask);

// Keeps edge pixels with v > max(v_thres, 0): rows near the robot.
ObstacleBoundarySet filter_sob(const ObstacleBoundarySet& edges, double v_thres);

// Exact integer squared distances to the nearest boundary point
// (two-pass separable transform). Empty sets yield (width+height)^2.
std::vector<int64_t> squared_edt(const ObstacleBoundarySet& omega, int width, int height);

// sqrt of squared_edt; empty sets yield the finite sentinel width+height.
DistanceField exact_edt(const ObstacleBoundarySet& omega, int width, int height);

double field_max(const DistanceField& field);

// E'[p] = min(E[p], alpha * max(E)).
DistanceField apply_scale(const DistanceField& field, double alpha);

// Distance field with its clamp level, the unit the planner charges
// out-of-view poses at.
struct ScaledField {
    DistanceField field;
    double alpha_dmax = 0.0;
};

// Full SEDF construction. An empty boundary set produces a uniformly zero
// field with alpha_dmax = 0 so that no collision cost exists anywhere.
// In literal mode (Eq-style cost = raw clamped distance) the caller reads
// field values directly instead of the inverted potential.
ScaledField build_sedf(const ObstacleBoundarySet& omega, int width, int height, double alpha);

// Bilinear sample of the field at a real-valued pixel position.
// Throws std::out_of_range outside [0, W-1] x [0, H-1].
double sample_field(const DistanceField& field, double u, double v);

// Inverted obstacle potential alpha_dmax - E'[u, v]: zero beyond the clamp
// radius, maximal on the boundary set itself.
double collision_potential(const DistanceField& sedf, double alpha_dmax, double u, double v);

}  // namespace navspace::field
