#include "navspace/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "navspace/io.hpp"
#include "navspace/learning.hpp"
#include "navspace/triangulation.hpp"

namespace navspace::cli {

namespace {

std::string format_polyline(const geometry::Polyline& poly) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& v : poly.vertices) out << v.u << " " << v.v << "\n";
    return out.str();
}

std::string format_triangles(const geometry::TriangleSet& tris) {
    std::ostringstream out;
    out.precision(17);
    out << "points " << tris.points.size() << "\n";
    for (const auto& p : tris.points) out << p.u << " " << p.v << "\n";
    out << "triangles " << tris.triangles.size() << "\n";
    for (const auto& t : tris.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    return out.str();
}

}  // namespace

int cmd_geometry(const std::string& mask_path, int k, const std::string& out_prefix,
                 std::ostream& out, std::ostream& err) {
    try {
        const geometry::SegMask mask = io::load_pgm(mask_path);
        const geometry::BoundaryFunction boundary = geometry::extract_boundary(mask);
        const geometry::Polyline poly = geometry::sample_vertices(boundary, k);
        const auto anchored = geometry::augment_with_anchors(poly, mask.width, mask.height);
        const geometry::TriangleSet tris = geometry::delaunay_triangulate(anchored);
        const geometry::TriangleSet kept = geometry::select_triangles(tris, poly, mask.height);
        const geometry::SegMask recon =
            geometry::rasterize_triangles(kept, mask.width, mask.height);

        io::write_file(out_prefix + "_polyline.txt", format_polyline(poly));
        io::write_file(out_prefix + "_triangles.txt", format_triangles(kept));
        io::save_pgm(recon, out_prefix + "_mask.pgm");

        const geometry::SegMetrics metrics = geometry::segmentation_metrics(recon, mask);
        out << "IoU: " << geometry::iou_or_zero(metrics) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "geometry: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sedf(const std::string& mask_path, double alpha, double v_thres, double v_thres_frac,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
    try {
        const geometry::SegMask mask = io::load_pgm(mask_path);
        const double vt = v_thres >= 0.0 ? v_thres : v_thres_frac * mask.height;
        const auto edges = field::compute_edge_map(mask);
        const auto omega = field::filter_sob(edges, vt);
        const field::DistanceField edt = field::exact_edt(omega, mask.width, mask.height);
        const field::DistanceField sedf = field::apply_scale(edt, alpha);

        io::save_ppm_heatmap(sedf, out_path + ".ppm");
        io::write_file(out_path + ".txt", io::write_text_matrix(sedf));
        out << "sob_points: " << omega.size() << "\n";
        out << "d_max: " << field::field_max(edt) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "sedf: " << e.what() << "\n";
        return 1;
    }
}

int cmd_episode(const RunConfig& cfg, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    try {
        const sim::WorldMap world = sim::build_env(cfg.env, cfg.seed, cfg.env_params());
        const sim::EpisodeResult result = sim::run_episode(world, cfg.episode_config());
        out << "outcome: " << sim::outcome_name(result.outcome) << "\n";
        out << "steps: " << result.steps << "\n";
        if (!out_path.empty()) {
            std::ostringstream traj;
            traj.precision(17);
            for (const auto& p : result.trajectory)
                traj << p.x << " " << p.y << " " << p.psi << "\n";
            io::write_file(out_path, traj.str());
        }
        return 0;
    } catch (const std::exception& e) {
        err << "episode: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_csv, std::ostream& out,
              std::ostream& err) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const sim::SweepResult result =
            sim::sweep_alpha(cfg.envs, cfg.alphas, cfg.trials, cfg.episode_config(), cfg.seed,
                             cfg.env_params(), cfg.threads);
        const auto t1 = std::chrono::steady_clock::now();

        io::write_file(out_csv, sim::sweep_to_csv(result));
        const auto aggs = result.aggregate();
        io::write_file(out_csv + ".summary.csv", sim::aggregates_to_csv(aggs));

        out << "episodes: " << result.rows.size() << "\n";
        out << "elapsed_s: "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0
            << "\n";
        out << sim::aggregates_to_csv(aggs);
        return 0;
    } catch (const std::exception& e) {
        err << "sweep: " << e.what() << "\n";
        return 1;
    }
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    try {
        std::mt19937_64 rng(7);
        auto simplex = [&](int n) {
            std::vector<double> p(n);
            double sum = 0.0;
            for (double& x : p) {
                x = -std::log(std::max(static_cast<double>(rng() >> 11) * 0x1.0p-53, 1e-300));
                sum += x;
            }
            for (double& x : p) x /= sum;
            return p;
        };

        bool kl_ok = true;
        for (int i = 0; i < 1000; ++i) {
            const auto q = simplex(4);
            const auto p = simplex(4);
            const double kl = learning::categorical_kl(q, p);
            if (!(kl >= 0.0)) kl_ok = false;
            if (learning::categorical_kl(q, q) > 1e-12) kl_ok = false;
        }
        check(kl_ok, "categorical_kl nonnegative, zero on identical inputs");

        bool simplex_ok = true;
        const std::vector<double> logits = {2.0, 0.0, -1.0};
        for (int i = 0; i < 1000; ++i) {
            const auto s = learning::gumbel_softmax_sample(logits, 0.5, rng);
            if (!learning::is_prob_vector(s)) simplex_ok = false;
            for (double x : s)
                if (!(x > 0.0)) simplex_ok = false;
        }
        check(simplex_ok, "gumbel_softmax samples lie strictly inside the simplex");

        std::vector<int> hits(3, 0);
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const auto s = learning::gumbel_softmax_sample(logits, 0.1, rng);
            hits[static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin())] += 1;
        }
        double z = 0.0;
        for (double l : logits) z += std::exp(l);
        bool freq_ok = true;
        for (int c = 0; c < 3; ++c) {
            const double expected = std::exp(logits[c]) / z;
            if (std::abs(static_cast<double>(hits[c]) / draws - expected) > 0.02) freq_ok = false;
        }
        check(freq_ok, "gumbel argmax frequencies match softmax within 0.02");

        learning::Image a(16, 16), b(16, 16);
        for (size_t i = 0; i < a.size(); ++i) {
            a.pixels[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            b.pixels[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
        const double sab = learning::ssim(a, b);
        check(std::abs(learning::ssim(a, a) - 1.0) < 1e-12, "ssim(a, a) = 1");
        check(std::abs(sab - learning::ssim(b, a)) < 1e-12, "ssim symmetry");
        check(sab >= -1.0 && sab <= 1.0, "ssim within [-1, 1]");
    } catch (const std::exception& e) {
        err << "selftest: " << e.what() << "\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace navspace::cli
