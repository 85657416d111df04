#include "navspace/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace navspace::sim {

using navspace::geometry::SegMask;
using navspace::planner::CameraModel;
using navspace::planner::Pose2;

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double env_size_for_kind(int kind) {
    switch (kind) {
        case 1: return 3.0;
        case 2: return 5.0;
        case 3: return 7.0;
    }
    throw std::invalid_argument("environment kind must be 1, 2 or 3");
}

int obstacle_count_for_kind(int kind, const EnvParams& params) {
    switch (kind) {
        case 1: return params.obstacles_env1;
        case 2: return params.obstacles_env2;
        case 3: return params.obstacles_env3;
    }
    throw std::invalid_argument("environment kind must be 1, 2 or 3");
}

double box_distance(const Box& box, double px, double py) {
    const double dx = std::max(std::abs(px - box.cx) - box.hx, 0.0);
    const double dy = std::max(std::abs(py - box.cy) - box.hy, 0.0);
    return std::hypot(dx, dy);
}

WorldMap build_env(int kind, uint64_t seed, const EnvParams& params) {
    const double size = env_size_for_kind(kind);
    const int count = obstacle_count_for_kind(kind, params);
    const double he = params.obstacle_half_extent;

    WorldMap world;
    world.size = size;
    world.start = {params.corner_offset, params.corner_offset, kPi / 4.0};
    world.goal = {size - params.corner_offset, size - params.corner_offset, kPi / 4.0};

    std::mt19937_64 rng(splitmix64(seed ^ (static_cast<uint64_t>(kind) << 32)));
    const double lo = he + 0.05;
    const double hi = size - he - 0.05;
    if (hi <= lo) throw std::runtime_error("environment too dense");

    for (int i = 0; i < count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Box box{lo + (hi - lo) * uniform01(rng), lo + (hi - lo) * uniform01(rng), he, he};
            if (box_distance(box, world.start.x, world.start.y) < params.start_goal_clearance)
                continue;
            if (box_distance(box, world.goal.x, world.goal.y) < params.start_goal_clearance)
                continue;
            world.obstacles.push_back(box);
            placed = true;
            break;
        }
        if (!placed) throw std::runtime_error("environment too dense");
    }
    return world;
}

bool check_collision(const WorldMap& world, const Pose2& robot, double radius) {
    if (robot.x < radius || robot.y < radius || robot.x > world.size - radius ||
        robot.y > world.size - radius)
        return true;
    for (const Box& box : world.obstacles)
        if (box_distance(box, robot.x, robot.y) <= radius) return true;
    return false;
}

RenderCache::RenderCache(const CameraModel& camera) : cam(camera) {
    const size_t n = static_cast<size_t>(cam.width) * cam.height;
    gx.assign(n, 0.0);
    gy.assign(n, 0.0);
    valid.assign(n, 0);
    for (int v = 0; v < cam.height; ++v) {
        for (int u = 0; u < cam.width; ++u) {
            const auto ground = planner::back_project_pixel(u, v, cam);
            if (!ground) continue;
            const size_t i = static_cast<size_t>(v) * cam.width + u;
            gx[i] = ground->x();
            gy[i] = ground->y();
            valid[i] = 1;
        }
    }
}

namespace {

// Closed segment vs axis-aligned box, slab method.
bool segment_hits_box(double x0, double y0, double x1, double y1, const Box& box) {
    const double dx = x1 - x0;
    const double dy = y1 - y0;
    double tmin = 0.0, tmax = 1.0;

    if (dx == 0.0) {
        if (x0 < box.cx - box.hx || x0 > box.cx + box.hx) return false;
    } else {
        double ta = (box.cx - box.hx - x0) / dx;
        double tb = (box.cx + box.hx - x0) / dx;
        if (ta > tb) std::swap(ta, tb);
        tmin = std::max(tmin, ta);
        tmax = std::min(tmax, tb);
        if (tmin > tmax) return false;
    }
    if (dy == 0.0) {
        if (y0 < box.cy - box.hy || y0 > box.cy + box.hy) return false;
    } else {
        double ta = (box.cy - box.hy - y0) / dy;
        double tb = (box.cy + box.hy - y0) / dy;
        if (ta > tb) std::swap(ta, tb);
        tmin = std::max(tmin, ta);
        tmax = std::min(tmax, tb);
        if (tmin > tmax) return false;
    }
    return true;
}

}  // namespace

SegMask render_mask(const WorldMap& world, const Pose2& robot, const RenderCache& cache) {
    const CameraModel& cam = cache.cam;
    SegMask mask(cam.width, cam.height, false);
    const double c = std::cos(robot.psi);
    const double s = std::sin(robot.psi);

    for (size_t i = 0; i < cache.valid.size(); ++i) {
        if (!cache.valid[i]) continue;
        const double wx = robot.x + c * cache.gx[i] - s * cache.gy[i];
        const double wy = robot.y + s * cache.gx[i] + c * cache.gy[i];
        if (wx < 0.0 || wx > world.size || wy < 0.0 || wy > world.size) continue;
        bool blocked = false;
        for (const Box& box : world.obstacles) {
            if (segment_hits_box(robot.x, robot.y, wx, wy, box)) { blocked = true; break; }
        }
        if (!blocked) mask.cells[i] = 1;
    }
    return mask;
}

SegMask render_mask(const WorldMap& world, const Pose2& robot, const CameraModel& cam) {
    return render_mask(world, robot, RenderCache(cam));
}

Pose2 step_dynamics(const Pose2& robot, const planner::MotionPrimitive& prim, int commit) {
    const int m = static_cast<int>(prim.poses.size());
    if (commit < 1 || commit > m) throw std::invalid_argument("commit count out of range");
    // poses[0] is the origin; a full commit lands on the final pose.
    const int idx = std::min(commit, m - 1);
    return planner::compose(robot, prim.poses[idx]);
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::success: return "success";
        case Outcome::collision: return "collision";
        case Outcome::timeout: return "timeout";
    }
    return "unknown";
}

EpisodeResult run_episode(const WorldMap& world, const EpisodeConfig& cfg) {
    const RenderCache cache(cfg.cam);
    return run_episode_cached(world, cfg, cache);
}

EpisodeResult run_episode_cached(const WorldMap& world, const EpisodeConfig& cfg,
                                 const RenderCache& cache) {
    const planner::PrimitiveLibrary lib =
        planner::generate_primitives(cfg.n_curvatures, cfg.m_poses, cfg.arc_length,
                                     cfg.kappa_max);
    const int max_steps =
        cfg.max_steps > 0 ? cfg.max_steps
                          : static_cast<int>(std::lround(cfg.max_steps_factor * world.size));
    const double v_thres = cfg.v_thres_frac * cfg.cam.height;

    EpisodeResult result;
    Pose2 robot = world.start;
    result.trajectory.push_back(robot);

    if (check_collision(world, robot, cfg.robot_radius)) {
        result.outcome = Outcome::collision;
        return result;
    }

    for (int step = 0; step < max_steps; ++step) {
        const double gdx = robot.x - world.goal.x;
        const double gdy = robot.y - world.goal.y;
        if (std::hypot(gdx, gdy) <= cfg.goal_tolerance) {
            result.outcome = Outcome::success;
            return result;
        }

        const SegMask mask = render_mask(world, robot, cache);
        const auto edges = field::compute_edge_map(mask);
        const auto omega = field::filter_sob(edges, v_thres);
        const field::ScaledField sedf =
            field::build_sedf(omega, mask.width, mask.height, cfg.alpha);

        const auto pick = planner::select_primitive(lib, sedf, cfg.cam, robot, world.goal,
                                                    cfg.w1, cfg.w2, cfg.target_params,
                                                    cfg.cost_mode, &mask);
        robot = step_dynamics(robot, lib.primitives[pick.index], cfg.commit);
        result.trajectory.push_back(robot);
        result.steps = step + 1;

        if (check_collision(world, robot, cfg.robot_radius)) {
            result.outcome = Outcome::collision;
            return result;
        }
    }

    const double gdx = robot.x - world.goal.x;
    const double gdy = robot.y - world.goal.y;
    result.outcome = std::hypot(gdx, gdy) <= cfg.goal_tolerance ? Outcome::success
                                                                : Outcome::timeout;
    return result;
}

uint64_t derive_trial_seed(uint64_t base_seed, int env_kind, int trial) {
    uint64_t s = splitmix64(base_seed);
    s = splitmix64(s ^ static_cast<uint64_t>(env_kind));
    s = splitmix64(s ^ static_cast<uint64_t>(trial));
    return s;
}

SweepResult sweep_alpha(const std::vector<int>& env_kinds, const std::vector<double>& alphas,
                        int trials, const EpisodeConfig& base_cfg, uint64_t base_seed,
                        const EnvParams& env_params, int threads) {
    if (env_kinds.empty() || alphas.empty() || trials < 1)
        throw std::invalid_argument("sweep requires environments, alphas and trials");

    struct Job {
        int env;
        double alpha;
        int trial;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    jobs.reserve(env_kinds.size() * alphas.size() * trials);
    for (int kind : env_kinds)
        for (double alpha : alphas)
            for (int trial = 0; trial < trials; ++trial)
                jobs.push_back({kind, alpha, trial, derive_trial_seed(base_seed, kind, trial)});

    SweepResult result;
    result.rows.resize(jobs.size());

    int n_workers = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::clamp(n_workers, 1, 16);

    const RenderCache cache(base_cfg.cam);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            const WorldMap world = build_env(job.env, job.seed, env_params);
            EpisodeConfig cfg = base_cfg;
            cfg.alpha = job.alpha;
            cfg.seed = job.seed;
            const EpisodeResult ep = run_episode_cached(world, cfg, cache);
            result.rows[i] = {job.env, job.alpha, job.trial, ep.outcome, ep.steps, job.seed};
        }
    };

    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return result;
}

std::vector<SweepAggregate> SweepResult::aggregate() const {
    std::vector<SweepAggregate> out;
    auto find = [&](int env, double alpha) -> SweepAggregate& {
        for (SweepAggregate& a : out)
            if (a.env == env && a.alpha == alpha) return a;
        out.push_back({env, alpha, 0, 0, 0.0, 0.0, 0.0});
        return out.back();
    };
    for (const SweepRow& row : rows) {
        SweepAggregate& agg = find(row.env, row.alpha);
        agg.trials += 1;
        if (row.outcome == Outcome::success) {
            agg.successes += 1;
            agg.steps_mean += row.steps;  // accumulate, normalized below
        }
    }
    for (SweepAggregate& agg : out) {
        agg.success_rate = agg.trials > 0 ? static_cast<double>(agg.successes) / agg.trials : 0.0;
        if (agg.successes > 0) agg.steps_mean /= agg.successes;
    }
    // Second pass for the sample standard deviation.
    for (SweepAggregate& agg : out) {
        if (agg.successes < 2) continue;
        double ss = 0.0;
        for (const SweepRow& row : rows) {
            if (row.env == agg.env && row.alpha == agg.alpha && row.outcome == Outcome::success) {
                const double d = row.steps - agg.steps_mean;
                ss += d * d;
            }
        }
        agg.steps_std = std::sqrt(ss / (agg.successes - 1));
    }
    return out;
}

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "env,alpha,trial,outcome,steps,seed\n";
    for (const SweepRow& row : result.rows) {
        out << row.env << ',' << format_double(row.alpha) << ',' << row.trial << ','
            << outcome_name(row.outcome) << ',' << row.steps << ',' << row.seed << '\n';
    }
    return out.str();
}

std::string aggregates_to_csv(const std::vector<SweepAggregate>& aggs) {
    std::ostringstream out;
    out << "env,alpha,trials,successes,success_rate,steps_mean,steps_std\n";
    for (const SweepAggregate& a : aggs) {
        out << a.env << ',' << format_double(a.alpha) << ',' << a.trials << ',' << a.successes
            << ',' << format_double(a.success_rate) << ',' << format_double(a.steps_mean)
            << ',' << format_double(a.steps_std) << '\n';
    }
    return out.str();
}

}  // namespace navspace::sim
