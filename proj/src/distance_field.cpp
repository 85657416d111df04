#include "navspace/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace navspace::field {

using navspace::geometry::SegMask;

ObstacleBoundarySet compute_edge_map(const SegMask& mask) {
    navspace::geometry::validate(mask);
    ObstacleBoundarySet out;
    for (int v = 0; v < mask.height; ++v) {
        for (int u = 0; u < mask.width; ++u) {
            if (mask.at(u, v)) continue;
            const bool touches_navigable =
                (u > 0 && mask.at(u - 1, v)) || (u + 1 < mask.width && mask.at(u + 1, v)) ||
                (v > 0 && mask.at(u, v - 1)) || (v + 1 < mask.height && mask.at(u, v + 1));
            if (touches_navigable) out.points.push_back({u, v});
        }
    }
    return out;
}

ObstacleBoundarySet filter_sob(const ObstacleBoundarySet& edges, double v_thres) {
    const double vt = std::max(v_thres, 0.0);
    ObstacleBoundarySet out;
    out.points.reserve(edges.points.size());
    for (const PixelCoord& p : edges.points)
        if (p.v > vt) out.points.push_back(p);
    return out;
}

namespace {

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::vector<int64_t> squared_edt(const ObstacleBoundarySet& omega, int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("field dimensions must be positive");
    const int64_t sentinel = width + height;
    std::vector<int64_t> out(static_cast<size_t>(width) * height, sentinel * sentinel);
    if (omega.empty()) return out;

    // Column pass: vertical distance to the nearest boundary pixel in the
    // same column ("inf" exceeds any in-image distance).
    const int64_t inf = width + height;
    std::vector<int64_t> g(static_cast<size_t>(width) * height, inf);
    for (const PixelCoord& p : omega.points) {
        if (p.u < 0 || p.u >= width || p.v < 0 || p.v >= height)
            throw std::invalid_argument("boundary point outside the field");
        g[static_cast<size_t>(p.v) * width + p.u] = 0;
    }
    for (int u = 0; u < width; ++u) {
        for (int v = 1; v < height; ++v) {
            auto& cur = g[static_cast<size_t>(v) * width + u];
            cur = std::min(cur, g[static_cast<size_t>(v - 1) * width + u] + 1);
        }
        for (int v = height - 2; v >= 0; --v) {
            auto& cur = g[static_cast<size_t>(v) * width + u];
            cur = std::min(cur, g[static_cast<size_t>(v + 1) * width + u] + 1);
        }
    }

    // Row pass: lower envelope of the parabolas f(u, i) = (u-i)^2 + g_i^2,
    // all in exact integer arithmetic.
    std::vector<int> s(width), t(width);
    for (int v = 0; v < height; ++v) {
        const int64_t* gv = &g[static_cast<size_t>(v) * width];
        auto f = [&](int64_t x, int64_t i) { return (x - i) * (x - i) + gv[i] * gv[i]; };
        auto sep = [&](int64_t i, int64_t u) {
            return floor_div(u * u - i * i + gv[u] * gv[u] - gv[i] * gv[i], 2 * (u - i));
        };

        int q = 0;
        s[0] = 0;
        t[0] = 0;
        for (int u = 1; u < width; ++u) {
            while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
            if (q < 0) {
                q = 0;
                s[0] = u;
                t[0] = 0;
            } else {
                const int64_t w = 1 + sep(s[q], u);
                if (w < width) {
                    ++q;
                    s[q] = u;
                    t[q] = static_cast<int>(w);
                }
            }
        }
        int64_t* row = &out[static_cast<size_t>(v) * width];
        for (int u = width - 1; u >= 0; --u) {
            row[u] = f(u, s[q]);
            if (u == t[q]) --q;
        }
    }
    return out;
}

DistanceField exact_edt(const ObstacleBoundarySet& omega, int width, int height) {
    const std::vector<int64_t> sq = squared_edt(omega, width, height);
    DistanceField field(width, height);
    for (size_t i = 0; i < sq.size(); ++i)
        field.values[i] = std::sqrt(static_cast<double>(sq[i]));
    return field;
}

double field_max(const DistanceField& field) {
    double m = 0.0;
    for (double v : field.values) m = std::max(m, v);
    return m;
}

DistanceField apply_scale(const DistanceField& field, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
    const double clamp = alpha * field_max(field);
    DistanceField out = field;
    for (double& v : out.values) v = std::min(v, clamp);
    return out;
}

ScaledField build_sedf(const ObstacleBoundarySet& omega, int width, int height, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
    ScaledField out;
    if (omega.empty()) {
        // No boundaries: no obstacle influence at all, in or out of view.
        out.field = DistanceField(width, height, 0.0);
        out.alpha_dmax = 0.0;
        return out;
    }
    DistanceField edt = exact_edt(omega, width, height);
    out.alpha_dmax = alpha * field_max(edt);
    out.field = apply_scale(edt, alpha);
    return out;
}

double sample_field(const DistanceField& field, double u, double v) {
    if (!(u >= 0.0 && u <= field.width - 1 && v >= 0.0 && v <= field.height - 1))
        throw std::out_of_range("sample point outside the field");
    const int u0 = std::clamp(static_cast<int>(std::floor(u)), 0, field.width - 1);
    const int v0 = std::clamp(static_cast<int>(std::floor(v)), 0, field.height - 1);
    const int u1 = std::min(u0 + 1, field.width - 1);
    const int v1 = std::min(v0 + 1, field.height - 1);
    const double fu = u - u0;
    const double fv = v - v0;
    return (1.0 - fu) * (1.0 - fv) * field.at(u0, v0) + fu * (1.0 - fv) * field.at(u1, v0) +
           (1.0 - fu) * fv * field.at(u0, v1) + fu * fv * field.at(u1, v1);
}

double collision_potential(const DistanceField& sedf, double alpha_dmax, double u, double v) {
    const double value = sample_field(sedf, u, v);
    return std::max(alpha_dmax - value, 0.0);
}

}  // namespace navspace::field
