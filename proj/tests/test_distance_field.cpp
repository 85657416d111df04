#include <doctest.h>

#include <algorithm>
#include <random>

#include "navspace/distance_field.hpp"
#include "test_util.hpp"

using namespace navspace::field;
using navspace::geometry::SegMask;

TEST_CASE("compute_edge_map on uniform masks is empty") {
    CHECK(compute_edge_map(SegMask(8, 6, true)).empty());
    CHECK(compute_edge_map(SegMask(8, 6, false)).empty());
}

TEST_CASE("compute_edge_map half-plane split") {
    // Rows 4.. navigable; the blocked row 3 adjoins the transition.
    SegMask mask(10, 8, false);
    for (int v = 4; v < 8; ++v)
        for (int u = 0; u < 10; ++u) mask.set(u, v, true);
    const ObstacleBoundarySet edges = compute_edge_map(mask);
    REQUIRE(edges.size() == 10);
    for (const auto& p : edges.points) CHECK(p.v == 3);
}

TEST_CASE("compute_edge_map single blocked pixel") {
    SegMask mask(5, 5, true);
    mask.set(2, 3, false);
    const ObstacleBoundarySet edges = compute_edge_map(mask);
    REQUIRE(edges.size() == 1);
    CHECK(edges.points[0] == PixelCoord{2, 3});
}

TEST_CASE("compute_edge_map matches a neighborhood-scan oracle") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const SegMask mask = testutil::random_mask(rng, 14, 11, 0.55);
        const ObstacleBoundarySet edges = compute_edge_map(mask);
        std::vector<uint8_t> flagged(mask.cells.size(), 0);
        for (const auto& p : edges.points) flagged[p.v * mask.width + p.u] = 1;
        for (int v = 0; v < mask.height; ++v) {
            for (int u = 0; u < mask.width; ++u) {
                bool expect = false;
                if (!mask.at(u, v)) {
                    const int du[4] = {1, -1, 0, 0};
                    const int dv[4] = {0, 0, 1, -1};
                    for (int d = 0; d < 4; ++d) {
                        const int nu = u + du[d], nv = v + dv[d];
                        if (mask.in_bounds(nu, nv) && mask.at(nu, nv)) expect = true;
                    }
                }
                CHECK(flagged[v * mask.width + u] == (expect ? 1 : 0));
            }
        }
    }
}

TEST_CASE("filter_sob keeps rows strictly below the threshold row") {
    ObstacleBoundarySet edges;
    edges.points = {{3, 10}, {4, 40}};
    const ObstacleBoundarySet kept = filter_sob(edges, 20.0);
    REQUIRE(kept.size() == 1);
    CHECK(kept.points[0] == PixelCoord{4, 40});
}

TEST_CASE("filter_sob boundary behavior") {
    ObstacleBoundarySet edges;
    for (int v = 0; v < 6; ++v) edges.points.push_back({1, v});

    CHECK(filter_sob(edges, 6.0).empty());  // v_thres = height

    // Negative thresholds clamp to zero: everything below row 0 is kept.
    const ObstacleBoundarySet kept = filter_sob(edges, -1.0);
    REQUIRE(kept.size() == 5);
    for (const auto& p : kept.points) CHECK(p.v > 0);
}

TEST_CASE("filter_sob is idempotent and commutes with union") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        ObstacleBoundarySet a, b;
        for (int i = 0; i < 15; ++i) {
            a.points.push_back({static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)});
            b.points.push_back({static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)});
        }
        const double vt = testutil::uniform(rng, 0.0, 20.0);
        const auto once = filter_sob(a, vt);
        CHECK(filter_sob(once, vt).points == once.points);

        ObstacleBoundarySet both = a;
        both.points.insert(both.points.end(), b.points.begin(), b.points.end());
        auto filtered_union = filter_sob(both, vt);
        auto union_filtered = filter_sob(a, vt);
        const auto fb = filter_sob(b, vt);
        union_filtered.points.insert(union_filtered.points.end(), fb.points.begin(),
                                     fb.points.end());
        CHECK(filtered_union.points == union_filtered.points);
    }
}

TEST_CASE("exact_edt single point 3-4-5") {
    ObstacleBoundarySet omega;
    omega.points = {{0, 0}};
    const DistanceField field = exact_edt(omega, 8, 8);
    CHECK(field.at(3, 4) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(field.at(0, 0) == 0.0);
}

TEST_CASE("exact_edt with every pixel in omega is zero") {
    ObstacleBoundarySet omega;
    for (int v = 0; v < 5; ++v)
        for (int u = 0; u < 6; ++u) omega.points.push_back({u, v});
    const DistanceField field = exact_edt(omega, 6, 5);
    for (double v : field.values) CHECK(v == 0.0);
}

TEST_CASE("exact_edt empty omega yields the finite sentinel") {
    const DistanceField field = exact_edt({}, 10, 6);
    for (double v : field.values) CHECK(v == 16.0);
}

TEST_CASE("squared_edt equals the brute-force oracle exactly") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 2 + static_cast<int>(rng() % 63);
        const int h = 2 + static_cast<int>(rng() % 63);
        ObstacleBoundarySet omega;
        const int count = static_cast<int>(rng() % 51);
        for (int i = 0; i < count; ++i)
            omega.points.push_back({static_cast<int>(rng() % w), static_cast<int>(rng() % h)});
        const auto got = squared_edt(omega, w, h);
        const auto expected = testutil::brute_force_edt_squared(omega, w, h);
        CHECK(got == expected);
    }
}

TEST_CASE("distance field is 1-Lipschitz between neighbors") {
    std::mt19937_64 rng(53);
    const SegMask mask = testutil::random_mask(rng, 32, 24, 0.8);
    const auto omega = compute_edge_map(mask);
    if (omega.empty()) return;
    const DistanceField field = exact_edt(omega, 32, 24);
    const double sqrt2 = std::sqrt(2.0);
    for (int v = 0; v + 1 < 24; ++v) {
        for (int u = 0; u + 1 < 32; ++u) {
            CHECK(std::abs(field.at(u, v) - field.at(u + 1, v)) <= 1.0 + 1e-12);
            CHECK(std::abs(field.at(u, v) - field.at(u, v + 1)) <= 1.0 + 1e-12);
            CHECK(std::abs(field.at(u, v) - field.at(u + 1, v + 1)) <= sqrt2 + 1e-12);
        }
    }
}

TEST_CASE("apply_scale endpoints and monotonicity") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        DistanceField field(12, 9);
        for (double& v : field.values) v = testutil::uniform(rng, 0.0, 30.0);

        const DistanceField unclamped = apply_scale(field, 1.0);
        CHECK(unclamped.values == field.values);

        const DistanceField zero = apply_scale(field, 0.0);
        for (double v : zero.values) CHECK(v == 0.0);

        const double a1 = testutil::uniform01(rng);
        const double a2 = testutil::uniform01(rng);
        const double lo = std::min(a1, a2), hi = std::max(a1, a2);
        const DistanceField flo = apply_scale(field, lo);
        const DistanceField fhi = apply_scale(field, hi);
        for (size_t i = 0; i < field.values.size(); ++i)
            CHECK(flo.values[i] <= fhi.values[i]);
    }
}

TEST_CASE("collision_potential endpoints") {
    // Row of boundary pixels at v = 5 on a 16x12 field.
    ObstacleBoundarySet omega;
    for (int u = 0; u < 16; ++u) omega.points.push_back({u, 5});
    const double alpha = 0.5;
    const ScaledField sedf = build_sedf(omega, 16, 12, alpha);
    CHECK(sedf.alpha_dmax > 0.0);

    // On the boundary set the clamped field is zero: maximal potential.
    CHECK(collision_potential(sedf.field, sedf.alpha_dmax, 3.0, 5.0) ==
          doctest::Approx(sedf.alpha_dmax).epsilon(1e-12));

    // Far region (clamp active): zero potential. d_max is attained at the
    // corners (0,11)/(15,11); distance 6 at v=11 exceeds alpha*d_max there.
    CHECK(collision_potential(sedf.field, sedf.alpha_dmax, 8.0, 11.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("collision_potential mid-field arithmetic") {
    DistanceField field(4, 4);
    const double alpha_dmax = 10.0;
    field.at(1, 1) = 4.0;  // 0.4 * alpha_dmax
    for (int v = 0; v < 4; ++v)
        for (int u = 0; u < 4; ++u)
            if (!(u == 1 && v == 1)) field.at(u, v) = 10.0;
    CHECK(collision_potential(field, alpha_dmax, 1.0, 1.0) ==
          doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(collision_potential(field, alpha_dmax, -1.0, 0.0), std::out_of_range);
}

TEST_CASE("collision_potential is non-increasing in the field value") {
    std::mt19937_64 rng(67);
    const SegMask mask = testutil::piecewise_linear_mask(rng, 40, 30, 5);
    const auto omega = filter_sob(compute_edge_map(mask), 15.0);
    if (omega.empty()) return;
    const ScaledField sedf = build_sedf(omega, 40, 30, 0.6);
    const DistanceField edt = exact_edt(omega, 40, 30);
    for (int trial = 0; trial < 500; ++trial) {
        const int u1 = static_cast<int>(rng() % 40), v1 = static_cast<int>(rng() % 30);
        const int u2 = static_cast<int>(rng() % 40), v2 = static_cast<int>(rng() % 30);
        const double p1 = collision_potential(sedf.field, sedf.alpha_dmax, u1, v1);
        const double p2 = collision_potential(sedf.field, sedf.alpha_dmax, u2, v2);
        if (edt.at(u1, v1) <= edt.at(u2, v2))
            CHECK(p1 >= p2 - 1e-12);
        else
            CHECK(p2 >= p1 - 1e-12);
    }
}

TEST_CASE("build_sedf with empty omega has no influence anywhere") {
    const ScaledField sedf = build_sedf({}, 20, 15, 0.8);
    CHECK(sedf.alpha_dmax == 0.0);
    for (double v : sedf.field.values) CHECK(v == 0.0);
}

TEST_CASE("sample_field interpolates bilinearly") {
    DistanceField field(2, 2);
    field.at(0, 0) = 1.0;
    field.at(1, 0) = 2.0;
    field.at(0, 1) = 3.0;
    field.at(1, 1) = 4.0;
    CHECK(sample_field(field, 0.5, 0.5) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(sample_field(field, 1.0, 1.0) == 4.0);
}
