#include "navspace/planner.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace navspace::planner {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double psi) {
    double a = std::remainder(psi, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

Pose2 compose(const Pose2& world, const Pose2& body) {
    const double c = std::cos(world.psi);
    const double s = std::sin(world.psi);
    return {world.x + c * body.x - s * body.y, world.y + s * body.x + c * body.y,
            wrap_angle(world.psi + body.psi)};
}

PrimitiveLibrary generate_primitives(int n_curvatures, int m_poses, double arc_length,
                                     double kappa_max) {
    if (n_curvatures < 1 || n_curvatures % 2 == 0)
        throw std::invalid_argument("curvature count must be odd and positive");
    if (m_poses < 2) throw std::invalid_argument("pose count must be at least 2");
    if (!(arc_length > 0.0)) throw std::invalid_argument("arc length must be positive");
    if (!(kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be positive");

    PrimitiveLibrary lib;
    lib.primitives.reserve(n_curvatures);
    const int mid = (n_curvatures - 1) / 2;
    for (int i = 0; i < n_curvatures; ++i) {
        // Symmetric around the exact-zero straight primitive.
        const double kappa = mid == 0 ? 0.0 : (i - mid) * (kappa_max / mid);
        MotionPrimitive prim;
        prim.curvature = kappa;
        prim.poses.reserve(m_poses);
        for (int j = 0; j < m_poses; ++j) {
            const double s = arc_length * j / (m_poses - 1);
            if (kappa == 0.0) {
                prim.poses.push_back({s, 0.0, 0.0});
            } else {
                prim.poses.push_back({std::sin(kappa * s) / kappa,
                                      (1.0 - std::cos(kappa * s)) / kappa,
                                      wrap_angle(kappa * s)});
            }
        }
        lib.primitives.push_back(std::move(prim));
    }
    return lib;
}

std::string serialize_library(const PrimitiveLibrary& lib) {
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    for (const MotionPrimitive& prim : lib.primitives) {
        if (!first) out << "\n";
        first = false;
        for (const Pose2& p : prim.poses) out << p.x << " " << p.y << " " << p.psi << "\n";
    }
    return out.str();
}

PrimitiveLibrary parse_library(const std::string& text) {
    PrimitiveLibrary lib;
    MotionPrimitive current;
    std::istringstream in(text);
    std::string line;
    auto flush = [&] {
        if (!current.poses.empty()) {
            lib.primitives.push_back(std::move(current));
            current = MotionPrimitive{};
        }
    };
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush();
            continue;
        }
        std::istringstream ls(line);
        Pose2 p;
        if (!(ls >> p.x >> p.y >> p.psi))
            throw std::runtime_error("malformed primitive pose line: " + line);
        current.poses.push_back(p);
    }
    flush();
    return lib;
}

std::optional<PixelPoint> project_pose(const Pose2& pose, const CameraModel& cam) {
    const double ct = std::cos(cam.pitch);
    const double st = std::sin(cam.pitch);
    // Body frame: x forward, y left, z up; camera at (0, 0, cam_height)
    // pitched down, image x right, image y down.
    const double xc = -pose.y;
    const double yc = -pose.x * st + cam.cam_height * ct;
    const double zc = pose.x * ct + cam.cam_height * st;
    if (zc <= 1e-12) return std::nullopt;
    const double u = cam.cx + cam.fx * xc / zc;
    const double v = cam.cy + cam.fy * yc / zc;
    if (!(u >= 0.0 && u <= cam.width - 1 && v >= 0.0 && v <= cam.height - 1))
        return std::nullopt;
    return PixelPoint{u, v};
}

std::optional<Eigen::Vector2d> back_project_pixel(double u, double v, const CameraModel& cam) {
    const double ct = std::cos(cam.pitch);
    const double st = std::sin(cam.pitch);
    const double xn = (u - cam.cx) / cam.fx;
    const double yn = (v - cam.cy) / cam.fy;
    // Ray direction in the body frame: xn * x_c + yn * y_c + z_c.
    const double dx = -yn * st + ct;
    const double dy = -xn;
    const double dz = -yn * ct - st;
    if (dz >= -1e-12) return std::nullopt;  // at or above the horizon
    const double t = cam.cam_height / -dz;
    return Eigen::Vector2d(t * dx, t * dy);
}

double primitive_collision_cost(const MotionPrimitive& prim,
                                const navspace::field::ScaledField& sedf,
                                const CameraModel& cam, CollisionCostMode mode,
                                const navspace::geometry::SegMask* navigable) {
    double total = 0.0;
    for (const Pose2& pose : prim.poses) {
        const auto px = project_pose(pose, cam);
        bool max_charge = !px;
        if (px && navigable) {
            const int u = static_cast<int>(std::lround(px->u));
            const int v = static_cast<int>(std::lround(px->v));
            if (!navigable->in_bounds(u, v) || !navigable->at(u, v)) max_charge = true;
        }
        if (max_charge) {
            // Blind spots and occluded ground cost the maximum.
            total += sedf.alpha_dmax;
        } else if (mode == CollisionCostMode::inverted_potential) {
            total += navspace::field::collision_potential(sedf.field, sedf.alpha_dmax, px->u,
                                                          px->v);
        } else {
            // Literal reading: the cost at a pose is the clamped distance
            // itself.
            total += navspace::field::sample_field(sedf.field, px->u, px->v);
        }
    }
    return total;
}

Eigen::Matrix3d yaw_rotation(double psi) {
    Eigen::Matrix3d r;
    const double c = std::cos(psi), s = std::sin(psi);
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

double rotation_geodesic(const Eigen::Matrix3d& r1, const Eigen::Matrix3d& r2) {
    const double tol = 1e-9;
    auto check = [&](const Eigen::Matrix3d& r) {
        const Eigen::Matrix3d delta = r.transpose() * r - Eigen::Matrix3d::Identity();
        if (delta.cwiseAbs().maxCoeff() > tol || std::abs(r.determinant() - 1.0) > tol)
            throw std::invalid_argument("input is not a rotation matrix");
    };
    check(r1);
    check(r2);
    const double trace = (r1.transpose() * r2).trace();
    const double arg = std::clamp((trace - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(arg);
}

double target_cost(const Pose2& pose_world, const Pose2& goal_world,
                   const TargetCostParams& params) {
    if (!(params.a > 0.0) || !(params.b > 0.0))
        throw std::invalid_argument("target cost scaling factors must be positive");
    const double d_rot = std::abs(wrap_angle(pose_world.psi - goal_world.psi));
    const double dx = pose_world.x - goal_world.x;
    const double dy = pose_world.y - goal_world.y;
    return std::sqrt(params.a * d_rot * d_rot + params.b * (dx * dx + dy * dy));
}

Selection select_primitive(const PrimitiveLibrary& lib,
                           const navspace::field::ScaledField& sedf, const CameraModel& cam,
                           const Pose2& robot_world, const Pose2& goal_world, double w1,
                           double w2, const TargetCostParams& params, CollisionCostMode mode,
                           const navspace::geometry::SegMask* navigable) {
    if (lib.primitives.empty()) throw std::invalid_argument("empty primitive library");
    if (w1 < 0.0 || w2 < 0.0 || (w1 == 0.0 && w2 == 0.0))
        throw std::invalid_argument("weights must be nonnegative and not both zero");

    Selection best;
    bool have_best = false;
    for (int i = 0; i < static_cast<int>(lib.primitives.size()); ++i) {
        const MotionPrimitive& prim = lib.primitives[i];
        const double cc = primitive_collision_cost(prim, sedf, cam, mode, navigable);
        double ct = 0.0;
        for (const Pose2& body : prim.poses)
            ct += target_cost(compose(robot_world, body), goal_world, params);
        const double total = w1 * cc + w2 * ct;
        if (!have_best || total < best.total_cost) {
            best = {i, total, cc, ct};
            have_best = true;
        }
    }
    return best;
}

}  // namespace navspace::planner
