#pragma once

// Plain key=value run configuration. Unknown keys are rejected and every
// value is range-checked at parse time.

#include <cstdint>
#include <string>
#include <vector>

#include "navspace/sim.hpp"

namespace navspace {

struct RunConfig {
    // distance field
    double alpha = 0.25;
    double v_thres_frac = 0.5;
    std::string cost_mode = "inverted";  // inverted | literal

    // planner
    double w1 = 0.5;
    double w2 = 0.5;
    double a = 1.0;
    double b = 1.0;
    int n_curvatures = 15;
    int m_poses = 10;
    double arc_length = 1.0;
    double kappa_max = 1.2;
    int commit = 1;

    // camera
    int img_width = 240;
    int img_height = 120;
    double fx = 120.0;
    double fy = 120.0;
    double cx = 120.0;
    double cy = 60.0;
    double cam_height = 0.5;
    double pitch_deg = 15.0;

    // environment
    int env = 3;
    std::vector<int> envs = {1, 2, 3};
    double obstacle_half_extent = 0.3;
    int obstacles_env1 = 4;
    int obstacles_env2 = 11;
    int obstacles_env3 = 22;
    double robot_radius = 0.15;
    double goal_tolerance = 0.3;
    int max_steps_factor = 60;

    // sweep
    std::vector<double> alphas = {0.01, 0.03, 0.05, 0.07, 0.10,
                                  0.15, 0.20, 0.25, 0.35, 0.55, 1.00};
    int trials = 10;
    uint64_t seed = 7;
    int threads = 0;

    navspace::planner::CameraModel camera() const;
    navspace::sim::EnvParams env_params() const;
    navspace::sim::EpisodeConfig episode_config() const;
};

// Parses "key = value" lines; '#' starts a comment, blank lines are
// ignored. Throws std::runtime_error on unknown keys, malformed values or
// out-of-range settings.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace navspace
