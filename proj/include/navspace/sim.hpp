#pragma once

// Desk-scale 2D world simulator and experiment harness: seeded environment
// generation, synthetic segmentation-mask rendering by ground-ray casting,
// receding-horizon episode execution and the alpha-sweep study.

#include <cstdint>
#include <string>
#include <vector>

#include "navspace/planner.hpp"

namespace navspace::sim {

struct Box {
    double cx = 0.0;
    double cy = 0.0;
    double hx = 0.0;  // half extent, meters
    double hy = 0.0;
};

struct WorldMap {
    double size = 0.0;  // square side, meters
    std::vector<Box> obstacles;
    planner::Pose2 start;
    planner::Pose2 goal;
};

// Obstacle counts grow with map area so the constant-density "larger map,
// more cluttered journey" ordering holds.
struct EnvParams {
    double obstacle_half_extent = 0.3;
    int obstacles_env1 = 4;
    int obstacles_env2 = 11;
    int obstacles_env3 = 22;
    double start_goal_clearance = 0.65;  // obstacle-free radius around endpoints
    double corner_offset = 0.35;         // start/goal inset from the corners
};

// Deterministic per (kind, seed): env 1/2/3 are 3/5/7 m squares with
// obstacle counts proportional to area, placed by seeded rejection
// sampling. Throws std::runtime_error("environment too dense") when
// placement fails after bounded retries.
WorldMap build_env(int kind, uint64_t seed, const EnvParams& params = {});

double env_size_for_kind(int kind);
int obstacle_count_for_kind(int kind, const EnvParams& params);

// Distance from a point to a box (0 inside).
double box_distance(const Box& box, double px, double py);

// True iff the robot disc touches any obstacle box or leaves the map.
// Closed contact counts.
bool check_collision(const WorldMap& world, const planner::Pose2& robot, double radius);

// Per-pixel ground-ray render: a pixel is navigable iff its back-projected
// ground point lies inside the map and the straight ground segment from
// the robot to it is obstacle-free.
navspace::geometry::SegMask render_mask(const WorldMap& world, const planner::Pose2& robot,
                                        const planner::CameraModel& cam);

// Precomputed per-pixel back-projection table for a fixed camera.
struct RenderCache {
    planner::CameraModel cam;
    // For each pixel (row-major): body-frame ground point, or valid=false
    // above the horizon.
    std::vector<double> gx;
    std::vector<double> gy;
    std::vector<uint8_t> valid;

    explicit RenderCache(const planner::CameraModel& cam);
};

navspace::geometry::SegMask render_mask(const WorldMap& world, const planner::Pose2& robot,
                                        const RenderCache& cache);

// Advances the world pose by the commit-th primitive pose (clamped to the
// final pose).
planner::Pose2 step_dynamics(const planner::Pose2& robot, const planner::MotionPrimitive& prim,
                             int commit);

enum class Outcome { success, collision, timeout };

const char* outcome_name(Outcome o);

struct EpisodeConfig {
    double alpha = 0.25;
    double v_thres_frac = 0.5;  // SOB row threshold as a fraction of image height
    double w1 = 0.5;
    double w2 = 0.5;
    planner::TargetCostParams target_params;
    planner::CameraModel cam;
    int n_curvatures = 15;
    int m_poses = 10;
    double arc_length = 1.0;
    double kappa_max = 1.2;
    int commit = 1;
    int max_steps = 0;            // 0 = max_steps_factor * world size
    int max_steps_factor = 60;
    double robot_radius = 0.15;
    double goal_tolerance = 0.3;
    uint64_t seed = 0;
    planner::CollisionCostMode cost_mode = planner::CollisionCostMode::inverted_potential;
};

struct EpisodeResult {
    Outcome outcome = Outcome::timeout;
    int steps = 0;
    std::vector<planner::Pose2> trajectory;  // start pose plus each committed pose
};

EpisodeResult run_episode(const WorldMap& world, const EpisodeConfig& cfg);

// Same loop with a camera back-projection cache shared across episodes.
EpisodeResult run_episode_cached(const WorldMap& world, const EpisodeConfig& cfg,
                                 const RenderCache& cache);

struct SweepRow {
    int env = 0;
    double alpha = 0.0;
    int trial = 0;
    Outcome outcome = Outcome::timeout;
    int steps = 0;
    uint64_t seed = 0;
};

struct SweepAggregate {
    int env = 0;
    double alpha = 0.0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double steps_mean = 0.0;  // over successes; 0 when none
    double steps_std = 0.0;   // sample stddev over successes; 0 when < 2
};

struct SweepResult {
    std::vector<SweepRow> rows;

    std::vector<SweepAggregate> aggregate() const;
};

// Per-trial world seeds are derived from (base seed, env kind, trial) so
// every alpha sees the same sequence of worlds. Episodes may run on
// `threads` workers (0 = hardware concurrency); the row order and all
// results are independent of the schedule.
SweepResult sweep_alpha(const std::vector<int>& env_kinds, const std::vector<double>& alphas,
                        int trials, const EpisodeConfig& base_cfg, uint64_t base_seed,
                        const EnvParams& env_params = {}, int threads = 0);

uint64_t derive_trial_seed(uint64_t base_seed, int env_kind, int trial);

// CSV with header env,alpha,trial,outcome,steps,seed.
std::string sweep_to_csv(const SweepResult& result);
std::string aggregates_to_csv(const std::vector<SweepAggregate>& aggs);

}  // namespace navspace::sim
