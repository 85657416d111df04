#include "navspace/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "navspace/io.hpp"

namespace navspace {

planner::CameraModel RunConfig::camera() const {
    planner::CameraModel cam;
    cam.fx = fx;
    cam.fy = fy;
    cam.cx = cx;
    cam.cy = cy;
    cam.cam_height = cam_height;
    cam.pitch = pitch_deg * std::numbers::pi / 180.0;
    cam.width = img_width;
    cam.height = img_height;
    return cam;
}

sim::EnvParams RunConfig::env_params() const {
    sim::EnvParams p;
    p.obstacle_half_extent = obstacle_half_extent;
    p.obstacles_env1 = obstacles_env1;
    p.obstacles_env2 = obstacles_env2;
    p.obstacles_env3 = obstacles_env3;
    return p;
}

sim::EpisodeConfig RunConfig::episode_config() const {
    sim::EpisodeConfig cfg;
    cfg.alpha = alpha;
    cfg.v_thres_frac = v_thres_frac;
    cfg.w1 = w1;
    cfg.w2 = w2;
    cfg.target_params = {a, b};
    cfg.cam = camera();
    cfg.n_curvatures = n_curvatures;
    cfg.m_poses = m_poses;
    cfg.arc_length = arc_length;
    cfg.kappa_max = kappa_max;
    cfg.commit = commit;
    cfg.max_steps = 0;
    cfg.max_steps_factor = max_steps_factor;
    cfg.robot_radius = robot_radius;
    cfg.goal_tolerance = goal_tolerance;
    cfg.seed = seed;
    cfg.cost_mode = cost_mode == "literal" ? planner::CollisionCostMode::literal_field
                                           : planner::CollisionCostMode::inverted_potential;
    return cfg;
}

namespace {

[[noreturn]] void config_fail(const std::string& key, const std::string& what) {
    throw std::runtime_error("config error for '" + key + "': " + what);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) config_fail(key, "trailing characters in number");
        return x;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        config_fail(key, "not a number: " + value);
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double x = to_double(key, value);
    if (x != std::floor(x)) config_fail(key, "expected an integer");
    return static_cast<int>(x);
}

uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const unsigned long long x = std::stoull(value, &used);
        if (used != value.size()) config_fail(key, "trailing characters in number");
        return x;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        config_fail(key, "not an unsigned integer: " + value);
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) config_fail(key, what);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     " is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "alpha") {
            cfg.alpha = to_double(key, value);
            require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, key, "must be in [0, 1]");
        } else if (key == "v_thres_frac") {
            cfg.v_thres_frac = to_double(key, value);
            require(cfg.v_thres_frac >= 0.0 && cfg.v_thres_frac <= 1.0, key, "must be in [0, 1]");
        } else if (key == "cost_mode") {
            require(value == "inverted" || value == "literal", key,
                    "must be 'inverted' or 'literal'");
            cfg.cost_mode = value;
        } else if (key == "w1") {
            cfg.w1 = to_double(key, value);
            require(cfg.w1 >= 0.0, key, "must be nonnegative");
        } else if (key == "w2") {
            cfg.w2 = to_double(key, value);
            require(cfg.w2 >= 0.0, key, "must be nonnegative");
        } else if (key == "a") {
            cfg.a = to_double(key, value);
            require(cfg.a > 0.0, key, "must be positive");
        } else if (key == "b") {
            cfg.b = to_double(key, value);
            require(cfg.b > 0.0, key, "must be positive");
        } else if (key == "n_curvatures") {
            cfg.n_curvatures = to_int(key, value);
            require(cfg.n_curvatures >= 1 && cfg.n_curvatures % 2 == 1, key,
                    "must be odd and positive");
        } else if (key == "m_poses") {
            cfg.m_poses = to_int(key, value);
            require(cfg.m_poses >= 2, key, "must be at least 2");
        } else if (key == "arc_length") {
            cfg.arc_length = to_double(key, value);
            require(cfg.arc_length > 0.0, key, "must be positive");
        } else if (key == "kappa_max") {
            cfg.kappa_max = to_double(key, value);
            require(cfg.kappa_max > 0.0, key, "must be positive");
        } else if (key == "commit") {
            cfg.commit = to_int(key, value);
            require(cfg.commit >= 1, key, "must be at least 1");
        } else if (key == "img_width") {
            cfg.img_width = to_int(key, value);
            require(cfg.img_width >= 2, key, "must be at least 2");
        } else if (key == "img_height") {
            cfg.img_height = to_int(key, value);
            require(cfg.img_height >= 2, key, "must be at least 2");
        } else if (key == "fx") {
            cfg.fx = to_double(key, value);
            require(cfg.fx > 0.0, key, "must be positive");
        } else if (key == "fy") {
            cfg.fy = to_double(key, value);
            require(cfg.fy > 0.0, key, "must be positive");
        } else if (key == "cx") {
            cfg.cx = to_double(key, value);
        } else if (key == "cy") {
            cfg.cy = to_double(key, value);
        } else if (key == "cam_height") {
            cfg.cam_height = to_double(key, value);
            require(cfg.cam_height > 0.0, key, "must be positive");
        } else if (key == "pitch_deg") {
            cfg.pitch_deg = to_double(key, value);
            require(cfg.pitch_deg >= 0.0 && cfg.pitch_deg < 90.0, key, "must be in [0, 90)");
        } else if (key == "env") {
            cfg.env = to_int(key, value);
            require(cfg.env >= 1 && cfg.env <= 3, key, "must be 1, 2 or 3");
        } else if (key == "envs") {
            cfg.envs.clear();
            for (const std::string& part : split_list(value)) {
                const int kind = to_int(key, trim(part));
                require(kind >= 1 && kind <= 3, key, "entries must be 1, 2 or 3");
                cfg.envs.push_back(kind);
            }
            require(!cfg.envs.empty(), key, "must not be empty");
        } else if (key == "obstacle_half_extent") {
            cfg.obstacle_half_extent = to_double(key, value);
            require(cfg.obstacle_half_extent > 0.0, key, "must be positive");
        } else if (key == "obstacles_env1") {
            cfg.obstacles_env1 = to_int(key, value);
            require(cfg.obstacles_env1 >= 0, key, "must be nonnegative");
        } else if (key == "obstacles_env2") {
            cfg.obstacles_env2 = to_int(key, value);
            require(cfg.obstacles_env2 >= 0, key, "must be nonnegative");
        } else if (key == "obstacles_env3") {
            cfg.obstacles_env3 = to_int(key, value);
            require(cfg.obstacles_env3 >= 0, key, "must be nonnegative");
        } else if (key == "robot_radius") {
            cfg.robot_radius = to_double(key, value);
            require(cfg.robot_radius > 0.0, key, "must be positive");
        } else if (key == "goal_tolerance") {
            cfg.goal_tolerance = to_double(key, value);
            require(cfg.goal_tolerance > 0.0, key, "must be positive");
        } else if (key == "max_steps_factor") {
            cfg.max_steps_factor = to_int(key, value);
            require(cfg.max_steps_factor >= 1, key, "must be at least 1");
        } else if (key == "alphas") {
            cfg.alphas.clear();
            for (const std::string& part : split_list(value)) {
                const double a = to_double(key, trim(part));
                require(a >= 0.0 && a <= 1.0, key, "entries must be in [0, 1]");
                cfg.alphas.push_back(a);
            }
            require(!cfg.alphas.empty(), key, "must not be empty");
        } else if (key == "trials") {
            cfg.trials = to_int(key, value);
            require(cfg.trials >= 1, key, "must be at least 1");
        } else if (key == "seed") {
            cfg.seed = to_u64(key, value);
        } else if (key == "threads") {
            cfg.threads = to_int(key, value);
            require(cfg.threads >= 0, key, "must be nonnegative");
        } else {
            throw std::runtime_error("unknown config key '" + key + "'");
        }
    }
    require(std::abs(cfg.w1 + cfg.w2) > 0.0, "w1", "w1 and w2 must not both be zero");
    require(cfg.commit <= cfg.m_poses, "commit", "must not exceed m_poses");
    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(io::read_file(path)); }

}  // namespace navspace
