// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "navspace/cli.hpp"
#include "navspace/config.hpp"
#include "navspace/distance_field.hpp"
#include "navspace/learning.hpp"
#include "navspace/mask_geometry.hpp"
#include "navspace/planner.hpp"
#include "navspace/sim.hpp"
#include "navspace/triangulation.hpp"
#include "test_util.hpp"

namespace {

using namespace navspace;
using geometry::Point2;
using geometry::SegMask;
constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome edt_oracle_equivalence() {
    std::mt19937_64 rng(1001);
    const auto t0 = std::chrono::steady_clock::now();
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int w = 2 + static_cast<int>(rng() % 63);
        const int h = 2 + static_cast<int>(rng() % 63);
        const double density = trial % 5 == 0 ? 0.0 : testutil::uniform(rng, 0.05, 0.95);
        const SegMask mask = testutil::random_mask(rng, w, h, density);
        auto omega = field::compute_edge_map(mask);
        if (trial % 3 == 0) omega = field::filter_sob(omega, testutil::uniform(rng, 0.0, h));
        const auto got = field::squared_edt(omega, w, h);
        const auto expected = testutil::brute_force_edt_squared(omega, w, h);
        if (got != expected)
            return {false, "mismatch on trial " + std::to_string(trial)};
        ++compared;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 10.0) return {false, "took " + std::to_string(secs) + " s (budget 10 s)"};
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d masks exact in %.2f s", compared, secs);
    return {true, buf};
}

Outcome sedf_algebra() {
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 50; ++trial) {
        field::DistanceField f(2 + static_cast<int>(rng() % 40),
                               2 + static_cast<int>(rng() % 40));
        for (double& v : f.values) v = testutil::uniform(rng, 0.0, 50.0);

        const auto identity = field::apply_scale(f, 1.0);
        if (identity.values != f.values) return {false, "alpha = 1 is not the identity"};

        const auto zero = field::apply_scale(f, 0.0);
        for (double v : zero.values)
            if (v != 0.0) return {false, "alpha = 0 does not annihilate"};

        const double a1 = testutil::uniform01(rng);
        const double a2 = testutil::uniform01(rng);
        const auto lo = field::apply_scale(f, std::min(a1, a2));
        const auto hi = field::apply_scale(f, std::max(a1, a2));
        for (size_t i = 0; i < f.values.size(); ++i)
            if (lo.values[i] > hi.values[i]) return {false, "not monotone in alpha"};
    }
    return {true, "identity, annihilation and monotonicity on 50 fields"};
}

Outcome delaunay_property() {
    std::mt19937_64 rng(1003);
    const double tol = 1e-9;
    for (int seed = 0; seed < 100; ++seed) {
        const int n = 4 + static_cast<int>(rng() % 9);
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({testutil::uniform(rng, 0.0, 8.0), testutil::uniform(rng, 0.0, 8.0)});
        const geometry::TriangleSet tris = geometry::delaunay_triangulate(pts);
        for (const auto& t : tris.triangles) {
            Point2 a = tris.points[t[0]];
            Point2 b = tris.points[t[1]];
            Point2 c = tris.points[t[2]];
            if (geometry::signed_area(a, b, c) < 0) std::swap(b, c);
            for (int p = 0; p < n; ++p) {
                if (p == t[0] || p == t[1] || p == t[2]) continue;
                if (geometry::incircle_determinant(a, b, c, tris.points[p]) > tol)
                    return {false, "in-circle violation in set " + std::to_string(seed)};
            }
        }
    }
    return {true, "empty circumcircle on 100 random sets (tol 1e-9)"};
}

Outcome geometry_roundtrip() {
    std::mt19937_64 rng(1004);
    double worst = 1.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SegMask mask = testutil::piecewise_linear_mask(rng, 128, 128, 7);
        const auto boundary = geometry::extract_boundary(mask);
        const auto poly = geometry::sample_vertices(boundary, 16);
        const auto anchored = geometry::augment_with_anchors(poly, 128, 128);
        const auto tris = geometry::delaunay_triangulate(anchored);
        const auto kept = geometry::select_triangles(tris, poly, 128);
        const SegMask recon = geometry::rasterize_triangles(kept, 128, 128);
        const double iou = geometry::iou_or_zero(geometry::segmentation_metrics(recon, mask));
        worst = std::min(worst, iou);
        if (iou < 0.98)
            return {false, "IoU " + std::to_string(iou) + " on fixture " + std::to_string(trial)};
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "20 fixtures, worst IoU %.4f", worst);
    return {true, buf};
}

Outcome loss_kernel_suite() {
    std::mt19937_64 rng(1005);

    for (int i = 0; i < 1000; ++i) {
        const auto q = testutil::random_simplex(rng, 5);
        const auto p = testutil::random_simplex(rng, 5);
        if (learning::categorical_kl(q, p) < 0.0) return {false, "KL negative"};
        if (learning::categorical_kl(q, q) > 1e-12) return {false, "KL(q, q) above 1e-12"};
        if (learning::categorical_kl(q, p) <= 1e-12) return {false, "KL zero on distinct pair"};
    }

    const std::vector<double> logits = {1.0, 0.3, -0.5};
    for (int i = 0; i < 10000; ++i) {
        const auto s = learning::gumbel_softmax_sample(logits, 0.4, rng);
        double sum = 0.0;
        for (double x : s) {
            if (!(x > 0.0)) return {false, "gumbel sample not strictly positive"};
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) return {false, "gumbel sample off the simplex"};
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l);
    std::vector<int> hits(3, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto s = learning::gumbel_softmax_sample(logits, 0.4, rng);
        hits[static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin())] += 1;
    }
    for (int c = 0; c < 3; ++c) {
        const double expected = std::exp(logits[c]) / z;
        if (std::abs(hits[c] / 100000.0 - expected) > 0.02)
            return {false, "gumbel argmax frequency off by more than 0.02"};
    }

    learning::Image a(13, 11), b(13, 11);
    for (auto& p : a.pixels) p = testutil::uniform01(rng);
    for (auto& p : b.pixels) p = testutil::uniform01(rng);
    if (std::abs(learning::ssim(a, a, 7) - 1.0) > 1e-12) return {false, "ssim(a, a) != 1"};
    if (std::abs(learning::ssim(a, b, 7) - learning::ssim(b, a, 7)) > 1e-12)
        return {false, "ssim asymmetric"};

    // Hand-derived single-pixel fixtures.
    learning::Image x(1, 1), xh(1, 1);
    x.pixels = {0.0};
    xh.pixels = {2.0};
    learning::CategoricalField q;
    q.categories = 2;
    q.probs = {0.5, 0.5};
    const learning::ProbVector prior = {0.5, 0.5};
    const double l1 = learning::net1_loss(x, {xh}, q, prior, {1.0, 1, 1});
    if (std::abs(l1 - 2.0) > 1e-10) return {false, "net1 fixture (sigma^2 = 1) off"};
    const double e2 = std::exp(2.0);
    const double l2 = learning::net1_loss(x, {xh}, q, prior, {e2, 1, 1});
    if (std::abs(l2 - (4.0 / (2.0 * e2) + 1.0)) > 1e-10)
        return {false, "net1 fixture (sigma^2 = e^2) off"};

    std::vector<Eigen::VectorXd> f(3);
    for (int i = 0; i < 3; ++i) f[i] = Eigen::VectorXd::Constant(1, i + 1.0);
    learning::GcnLayerParams layer;
    layer.w0 = Eigen::MatrixXd::Constant(1, 1, 2.0);
    layer.w1 = Eigen::MatrixXd::Constant(1, 1, 1.0);
    const auto out = learning::gcn_layer_forward(learning::make_chain_graph(f), layer);
    if (out[0][0] != 4.0 || out[1][0] != 8.0 || out[2][0] != 8.0)
        return {false, "GCN chain fixture not (4, 8, 8)"};

    return {true, "KL, Gumbel-Softmax, SSIM, VAE loss fixtures, GCN fixture"};
}

Outcome se3_cost() {
    std::mt19937_64 rng(1006);
    auto random_rotation = [&] {
        Eigen::Quaterniond q(testutil::uniform(rng, -1.0, 1.0),
                             testutil::uniform(rng, -1.0, 1.0),
                             testutil::uniform(rng, -1.0, 1.0),
                             testutil::uniform(rng, -1.0, 1.0));
        q.normalize();
        return q.toRotationMatrix();
    };
    for (int i = 0; i < 500; ++i) {
        const Eigen::Matrix3d r1 = random_rotation();
        const Eigen::Matrix3d r2 = random_rotation();
        const Eigen::Quaterniond q1(r1), q2(r2);
        const double oracle = 2.0 * std::acos(std::min(std::abs(q1.dot(q2)), 1.0));
        if (std::abs(planner::rotation_geodesic(r1, r2) - oracle) > 1e-9)
            return {false, "quaternion oracle disagreement beyond 1e-9"};
    }

    const planner::TargetCostParams params{1.3, 0.6};
    for (int i = 0; i < 1000; ++i) {
        auto rand_pose = [&] {
            return planner::Pose2{testutil::uniform(rng, -5.0, 5.0),
                                  testutil::uniform(rng, -5.0, 5.0),
                                  testutil::uniform(rng, -kPi, kPi)};
        };
        const auto x = rand_pose(), y = rand_pose(), zp = rand_pose();
        const double dxy = planner::target_cost(x, y, params);
        if (std::abs(dxy - planner::target_cost(y, x, params)) > 1e-9)
            return {false, "target cost asymmetric"};
        if (planner::target_cost(x, zp, params) >
            dxy + planner::target_cost(y, zp, params) + 1e-9)
            return {false, "triangle inequality violated"};
    }
    return {true, "500 rotation pairs vs quaternion oracle, 1000 metric triples"};
}

Outcome planner_sanity() {
    std::mt19937_64 rng(1007);
    const planner::CameraModel cam;
    const auto lib = planner::generate_primitives(15, 10, 1.0, 1.2);

    const auto free_field = field::build_sedf({}, cam.width, cam.height, 0.5);
    const auto straight = planner::select_primitive(lib, free_field, cam, {0, 0, 0},
                                                    {5.0, 0.0, 0.0}, 0.5, 0.5,
                                                    planner::TargetCostParams{});
    if (lib.primitives[straight.index].curvature != 0.0)
        return {false, "straight primitive not selected toward a clear goal"};

    for (int scene = 0; scene < 100; ++scene) {
        field::ObstacleBoundarySet omega;
        const int blobs = static_cast<int>(rng() % 4);
        for (int b = 0; b < blobs; ++b) {
            const int cu = static_cast<int>(rng() % cam.width);
            const int cv = 61 + static_cast<int>(rng() % 59);
            for (int du = -8; du <= 8; ++du)
                if (cu + du >= 0 && cu + du < cam.width) omega.points.push_back({cu + du, cv});
        }
        const auto sedf = field::build_sedf(omega, cam.width, cam.height,
                                            testutil::uniform(rng, 0.05, 1.0));
        const planner::Pose2 goal{testutil::uniform(rng, 1.0, 6.0),
                                  testutil::uniform(rng, -3.0, 3.0),
                                  testutil::uniform(rng, -kPi, kPi)};
        const double w1 = testutil::uniform(rng, 0.05, 3.0);
        const double w2 = testutil::uniform(rng, 0.05, 3.0);
        const auto base = planner::select_primitive(lib, sedf, cam, {0, 0, 0}, goal, w1, w2,
                                                    planner::TargetCostParams{});
        for (double scale : {0.02, 5.0, 430.0}) {
            const auto scaled = planner::select_primitive(lib, sedf, cam, {0, 0, 0}, goal,
                                                          scale * w1, scale * w2,
                                                          planner::TargetCostParams{});
            if (scaled.index != base.index)
                return {false, "selection changed under joint rescaling"};
        }
    }
    return {true, "straight-ahead selection and scale invariance on 100 scenes"};
}

struct TrendData {
    sim::SweepResult sweep;
    double elapsed_s = 0.0;
};

Outcome fig8_trends() {
    const RunConfig cfg;  // library defaults: 3 envs x 11 alphas x 10 trials
    const auto t0 = std::chrono::steady_clock::now();
    const sim::SweepResult result = sim::sweep_alpha(cfg.envs, cfg.alphas, cfg.trials,
                                                     cfg.episode_config(), cfg.seed,
                                                     cfg.env_params(), 0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 300.0)
        return {false, "default sweep took " + std::to_string(secs) + " s (budget 300 s)"};

    const auto aggs = result.aggregate();
    auto cell = [&](int env, double alpha) -> const sim::SweepAggregate* {
        for (const auto& a : aggs)
            if (a.env == env && a.alpha == alpha) return &a;
        return nullptr;
    };

    // (a) success rate vs alpha over [0.03, 0.35] in the most cluttered env.
    std::vector<double> window_alpha, window_rate;
    for (double alpha : cfg.alphas) {
        if (alpha < 0.03 - 1e-12 || alpha > 0.35 + 1e-12) continue;
        const auto* a = cell(3, alpha);
        if (!a) return {false, "missing sweep cell"};
        window_alpha.push_back(alpha);
        window_rate.push_back(a->success_rate);
    }
    const double rho_success = testutil::spearman(window_alpha, window_rate);
    if (rho_success <= 0.5) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "env3 success-vs-alpha Spearman %.3f <= 0.5",
                      rho_success);
        return {false, buf};
    }

    // (b) mean action steps among successes vs alpha, every env.
    double worst_steps_rho = 1.0;
    for (int env : cfg.envs) {
        std::vector<double> xs, ys;
        for (double alpha : cfg.alphas) {
            const auto* a = cell(env, alpha);
            if (!a || a->successes == 0) continue;
            xs.push_back(alpha);
            ys.push_back(a->steps_mean);
        }
        if (xs.size() < 3) return {false, "too few successful cells in env " + std::to_string(env)};
        const double rho = testutil::spearman(xs, ys);
        worst_steps_rho = std::min(worst_steps_rho, rho);
        if (rho <= 0.5) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "env%d steps-vs-alpha Spearman %.3f <= 0.5", env,
                          rho);
            return {false, buf};
        }
    }

    // (c) env1 at least as successful as env3 at every alpha, 30 seeds.
    const sim::SweepResult wide = sim::sweep_alpha({1, 3}, cfg.alphas, 30,
                                                   cfg.episode_config(), cfg.seed,
                                                   cfg.env_params(), 0);
    const auto wide_aggs = wide.aggregate();
    for (double alpha : cfg.alphas) {
        double rate1 = -1.0, rate3 = -1.0;
        for (const auto& a : wide_aggs) {
            if (a.alpha == alpha && a.env == 1) rate1 = a.success_rate;
            if (a.alpha == alpha && a.env == 3) rate3 = a.success_rate;
        }
        if (rate1 < rate3) {
            char buf[96];
            std::snprintf(buf, sizeof(buf),
                          "env1 rate %.2f < env3 rate %.2f at alpha %.2f over 30 seeds", rate1,
                          rate3, alpha);
            return {false, buf};
        }
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "sweep %.0f s; env3 success rho %.2f; worst steps rho %.2f; env1 >= env3",
                  secs, rho_success, worst_steps_rho);
    return {true, buf};
}

Outcome sweep_determinism() {
    RunConfig cfg;
    cfg.envs = {1, 3};
    cfg.alphas = {0.05, 0.2, 0.55};
    cfg.trials = 2;
    const auto run = [&] {
        const sim::SweepResult r = sim::sweep_alpha(cfg.envs, cfg.alphas, cfg.trials,
                                                    cfg.episode_config(), cfg.seed,
                                                    cfg.env_params(), 0);
        return sim::sweep_to_csv(r);
    };
    const std::string first = run();
    const std::string second = run();
    if (first != second) return {false, "CSV outputs differ between identical runs"};
    return {true, "byte-identical CSVs across two runs"};
}

Outcome metrics_exact() {
    std::mt19937_64 rng(1009);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 2 + static_cast<int>(rng() % 14);
        const int h = 2 + static_cast<int>(rng() % 14);
        const SegMask pred = testutil::random_mask(rng, w, h, testutil::uniform01(rng));
        const SegMask gt = testutil::random_mask(rng, w, h, testutil::uniform01(rng));

        // Hand-counted confusion matrix.
        double tp = 0, tn = 0, fp = 0, fn = 0;
        for (int v = 0; v < h; ++v)
            for (int u = 0; u < w; ++u) {
                const bool p = pred.at(u, v), g = gt.at(u, v);
                tp += p && g;
                tn += !p && !g;
                fp += p && !g;
                fn += !p && g;
            }
        const auto m = geometry::segmentation_metrics(pred, gt);
        const double total = tp + tn + fp + fn;
        if (m.accuracy.value() != (tp + tn) / total) return {false, "accuracy mismatch"};
        if (tp + fp > 0 && m.precision.value() != tp / (tp + fp))
            return {false, "precision mismatch"};
        if (tp + fn > 0 && m.recall.value() != tp / (tp + fn)) return {false, "recall mismatch"};
        if (tp > 0 &&
            m.f_score.value() != (2.0 * tp * tp) / (2.0 * tp * tp + tp * (fp + fn)))
            return {false, "f-score mismatch"};
        if (tp + fp + fn > 0 && m.iou.value() != tp / (tp + fp + fn))
            return {false, "iou mismatch"};
        if (tp == 0 && (fp + fn) == 0 && m.f_score.has_value())
            return {false, "f-score should be undefined"};
    }
    return {true, "50 random confusion matrices, exact equality"};
}

}  // namespace

int main() {
    using Entry = std::pair<std::string, std::function<Outcome()>>;
    const std::vector<Entry> criteria = {
        {"edt-oracle-equivalence", edt_oracle_equivalence},
        {"sedf-algebra", sedf_algebra},
        {"delaunay-property-suite", delaunay_property},
        {"geometry-round-trip", geometry_roundtrip},
        {"loss-kernel-suite", loss_kernel_suite},
        {"se3-cost", se3_cost},
        {"planner-sanity", planner_sanity},
        {"fig8-trend-reproduction", fig8_trends},
        {"sweep-determinism", sweep_determinism},
        {"metrics-functions", metrics_exact},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name;
        if (!outcome.detail.empty()) std::cout << ": " << outcome.detail;
        std::cout << std::endl;
        if (!outcome.pass) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
