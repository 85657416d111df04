#include "navspace/mask_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace navspace::geometry {

SegMask::SegMask(int w, int h, bool fill)
    : width(w), height(h), cells(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

void validate(const SegMask& mask) {
    if (mask.width < 2 || mask.height < 2)
        throw std::invalid_argument("mask dimensions must be at least 2x2");
    if (mask.cells.size() != static_cast<size_t>(mask.width) * mask.height)
        throw std::invalid_argument("mask cell count does not match dimensions");
}

int BoundaryFunction::valid_count() const {
    return static_cast<int>(std::count(valid.begin(), valid.end(), uint8_t{1}));
}

BoundaryFunction extract_boundary(const SegMask& mask) {
    validate(mask);
    BoundaryFunction b;
    b.width = mask.width;
    b.height = mask.height;
    b.values.assign(mask.width, mask.height);
    b.valid.assign(mask.width, 0);
    for (int u = 0; u < mask.width; ++u) {
        int v = mask.height;
        while (v > 0 && mask.at(u, v - 1)) --v;
        // v is now the top of the bottom-connected navigable run; a column
        // whose bottom pixel is blocked has no run and stays invalid.
        if (v < mask.height) {
            b.values[u] = v;
            b.valid[u] = 1;
        }
    }
    return b;
}

Polyline sample_vertices(const BoundaryFunction& boundary, int k) {
    if (k < 2) throw std::invalid_argument("vertex count must be at least 2");
    std::vector<int> cols;
    cols.reserve(boundary.width);
    for (int u = 0; u < boundary.width; ++u)
        if (boundary.valid[u]) cols.push_back(u);
    const int m = static_cast<int>(cols.size());
    if (m < k) throw std::runtime_error("insufficient boundary support");

    Polyline poly;
    poly.vertices.reserve(k);
    for (int i = 0; i < k; ++i) {
        const double pos = static_cast<double>(i) * (m - 1) / (k - 1);
        const int idx = static_cast<int>(std::llround(pos));
        const int u = cols[idx];
        poly.vertices.push_back({static_cast<double>(u),
                                 static_cast<double>(boundary.values[u])});
    }
    return poly;
}

std::vector<AnchoredPoint> augment_with_anchors(const Polyline& polyline, int width,
                                                int height) {
    std::vector<AnchoredPoint> out;
    out.reserve(polyline.vertices.size() + 3);
    for (const Point2& p : polyline.vertices) out.push_back({p, false});

    const double bottom = height - 1;
    const Point2 anchors[3] = {{0.0, bottom}, {(width - 1) / 2.0, bottom},
                               {static_cast<double>(width - 1), bottom}};
    for (const Point2& a : anchors) {
        bool duplicate = false;
        for (const AnchoredPoint& p : out)
            if (p.pos.u == a.u && p.pos.v == a.v) { duplicate = true; break; }
        if (!duplicate) out.push_back({a, true});
    }
    return out;
}

ConfusionCounts confusion_counts(const SegMask& pred, const SegMask& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("mask dimension mismatch");
    ConfusionCounts c;
    for (size_t i = 0; i < pred.cells.size(); ++i) {
        const bool p = pred.cells[i] != 0;
        const bool g = gt.cells[i] != 0;
        if (p && g) ++c.n_tp;
        else if (!p && !g) ++c.n_tn;
        else if (p && !g) ++c.n_fp;
        else ++c.n_fn;
    }
    return c;
}

namespace {

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

}  // namespace

SegMetrics segmentation_metrics(const SegMask& pred, const SegMask& gt) {
    const ConfusionCounts c = confusion_counts(pred, gt);
    const double tp = static_cast<double>(c.n_tp);
    const double tn = static_cast<double>(c.n_tn);
    const double fp = static_cast<double>(c.n_fp);
    const double fn = static_cast<double>(c.n_fn);

    SegMetrics m;
    m.accuracy = ratio(tp + tn, tp + tn + fp + fn);
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f_score = ratio(2.0 * tp * tp, 2.0 * tp * tp + tp * (fp + fn));
    m.iou = ratio(tp, tp + fp + fn);
    return m;
}

double iou_or_zero(const SegMetrics& m) { return m.iou.value_or(0.0); }

}  // namespace navspace::geometry
