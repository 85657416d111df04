#include <CLI11.hpp>
#include <iostream>

#include "navspace/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"navigable-space geometry, distance fields and receding-horizon planning"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file")
        ->configurable(false);

    // geometry
    auto* geo = app.add_subcommand("geometry", "mask -> polyline -> triangulation round trip");
    std::string geo_mask, geo_prefix = "geometry_out";
    int geo_k = 16;
    geo->add_option("mask", geo_mask, "input PGM mask")->required();
    geo->add_option("--k", geo_k, "polyline vertex count");
    geo->add_option("--out", geo_prefix, "output file prefix");

    // sedf
    auto* sedf = app.add_subcommand("sedf", "scaled distance field heatmap from a mask");
    std::string sedf_mask, sedf_out = "sedf_out";
    double sedf_alpha = 0.25;
    double sedf_vthres = -1.0;
    sedf->add_option("mask", sedf_mask, "input PGM mask")->required();
    sedf->add_option("--alpha", sedf_alpha, "clamp scale in [0, 1]");
    sedf->add_option("--v-thres", sedf_vthres,
                     "SOB row threshold in pixels (default: half the image height)");
    sedf->add_option("--out", sedf_out, "output path prefix (.ppm and .txt)");

    // episode
    auto* episode = app.add_subcommand("episode", "run one navigation episode");
    std::string episode_out;
    episode->add_option("--out", episode_out, "write the trajectory to this file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "alpha sweep over environments");
    std::string sweep_out = "sweep.csv";
    sweep->add_option("--out", sweep_out, "output CSV path");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "loss-kernel property checks");

    uint64_t seed_override = 0;
    bool have_seed = false;
    app.add_option_function<uint64_t>(
           "--seed", [&](uint64_t s) { seed_override = s; have_seed = true; },
           "override the config seed")
        ->configurable(false);

    CLI11_PARSE(app, argc, argv);

    navspace::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = navspace::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    if (have_seed) cfg.seed = seed_override;

    if (geo->parsed())
        return navspace::cli::cmd_geometry(geo_mask, geo_k, geo_prefix, std::cout, std::cerr);
    if (sedf->parsed())
        return navspace::cli::cmd_sedf(sedf_mask, sedf_alpha, sedf_vthres, cfg.v_thres_frac,
                                       sedf_out, std::cout, std::cerr);
    if (episode->parsed())
        return navspace::cli::cmd_episode(cfg, episode_out, std::cout, std::cerr);
    if (sweep->parsed()) return navspace::cli::cmd_sweep(cfg, sweep_out, std::cout, std::cerr);
    if (selftest->parsed()) return navspace::cli::cmd_selftest(std::cout, std::cerr);
    return 1;
}
