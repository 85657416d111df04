#pragma once

// Binary navigability masks and their compact polyline boundary
// representation: column-wise boundary extraction, vertex sampling,
// bottom-border anchor augmentation and pixel-level segmentation metrics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace navspace::geometry {

// Row-major binary grid, true = navigable. Row 0 is the top image row;
// navigable space is the bottom region (near the robot).
struct SegMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> cells;  // width*height, 0 or 1

    SegMask() = default;
    SegMask(int w, int h, bool fill = false);

    bool at(int u, int v) const { return cells[static_cast<size_t>(v) * width + u] != 0; }
    void set(int u, int v, bool navigable) {
        cells[static_cast<size_t>(v) * width + u] = navigable ? 1 : 0;
    }
    bool in_bounds(int u, int v) const { return u >= 0 && u < width && v >= 0 && v < height; }
};

// Throws std::invalid_argument if the mask violates its invariants
// (width/height >= 2, cells sized width*height).
void validate(const SegMask& mask);

// Per-column boundary row v_b(u). A column is valid when it has a nonempty
// bottom-connected navigable run; v_b is the topmost row of that run.
// Invalid columns carry v_b = height.
struct BoundaryFunction {
    int width = 0;
    int height = 0;
    std::vector<int> values;   // length width
    std::vector<uint8_t> valid;  // length width

    int valid_count() const;
};

// Ordered boundary vertices (u, v) in real-valued pixel units,
// strictly increasing in u.
struct Point2 {
    double u = 0.0;
    double v = 0.0;
};

struct Polyline {
    std::vector<Point2> vertices;
};

// Polyline vertices plus flagged auxiliary bottom-border anchors.
struct AnchoredPoint {
    Point2 pos;
    bool anchor = false;  // true for the auxiliary bottom-border points
};

struct ConfusionCounts {
    int64_t n_tp = 0;
    int64_t n_tn = 0;
    int64_t n_fp = 0;
    int64_t n_fn = 0;

    int64_t total() const { return n_tp + n_tn + n_fp + n_fn; }
};

// Metrics with zero denominators are reported as nullopt, distinct from 0.
struct SegMetrics {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f_score;
    std::optional<double> iou;
};

BoundaryFunction extract_boundary(const SegMask& mask);

// k vertices spread uniformly over the valid columns (both endpoints
// included). Throws std::runtime_error("insufficient boundary support")
// when fewer than k valid columns exist.
Polyline sample_vertices(const BoundaryFunction& boundary, int k);

// Appends the three bottom-border anchors (0, h-1), ((w-1)/2, h-1) and
// (w-1, h-1). A polyline vertex exactly at an anchor position suppresses
// the duplicate anchor.
std::vector<AnchoredPoint> augment_with_anchors(const Polyline& polyline, int width, int height);

ConfusionCounts confusion_counts(const SegMask& pred, const SegMask& gt);
SegMetrics segmentation_metrics(const SegMask& pred, const SegMask& gt);

double iou_or_zero(const SegMetrics& m);

}  // namespace navspace::geometry
