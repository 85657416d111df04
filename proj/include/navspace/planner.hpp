#pragma once

// Receding-horizon primitive selection: constant-curvature primitive
// library, ground-plane camera projection, collision-cost accumulation on
// the scaled distance field and the SE(3)-style target cost.

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "navspace/distance_field.hpp"

namespace navspace::planner {

// Wraps an angle into (-pi, pi].
double wrap_angle(double psi);

struct Pose2 {
    double x = 0.0;   // meters
    double y = 0.0;   // meters
    double psi = 0.0; // heading, radians, wrapped to (-pi, pi]
};

// Rigid composition: body-frame pose applied at a world pose.
Pose2 compose(const Pose2& world, const Pose2& body);

// Body-frame pose sequence; poses[0] is the origin with zero heading.
struct MotionPrimitive {
    std::vector<Pose2> poses;
    double curvature = 0.0;
};

struct PrimitiveLibrary {
    std::vector<MotionPrimitive> primitives;

    size_t size() const { return primitives.size(); }
    int poses_per_primitive() const {
        return primitives.empty() ? 0 : static_cast<int>(primitives[0].poses.size());
    }
};

// Constant-curvature unicycle arcs, curvatures uniformly spaced in
// [-kappa_max, kappa_max], m equal arc-length stations starting at the
// origin. n_curvatures must be odd so the straight primitive is included.
PrimitiveLibrary generate_primitives(int n_curvatures, int m_poses, double arc_length,
                                     double kappa_max = 1.2);

// Plain-text serialization: one primitive per block, one "x y psi" line per
// pose, blocks separated by a blank line.
std::string serialize_library(const PrimitiveLibrary& lib);
PrimitiveLibrary parse_library(const std::string& text);

// Pinhole camera rigidly mounted at the body origin, cam_height above the
// ground, pitched down, facing +x. Image x right, image y down. The default
// spans a 90-degree horizontal field of view; anything narrower starves the
// planner of the lateral context its sharpest primitives sweep through.
struct CameraModel {
    double fx = 120.0;
    double fy = 120.0;
    double cx = 120.0;
    double cy = 60.0;
    double cam_height = 0.5;  // meters
    double pitch = 0.2617993877991494;  // radians, 15 degrees
    int width = 240;
    int height = 120;
};

struct PixelPoint {
    double u = 0.0;
    double v = 0.0;
};

// Projects the ground point under a body-frame pose. Returns nullopt when
// the point is behind the camera or projects outside the bilinear-safe
// image rectangle [0, W-1] x [0, H-1].
std::optional<PixelPoint> project_pose(const Pose2& pose, const CameraModel& cam);

// Ground intersection of the camera ray through image position (u, v),
// in the body frame. Returns nullopt for rays at or above the horizon.
std::optional<Eigen::Vector2d> back_project_pixel(double u, double v, const CameraModel& cam);

enum class CollisionCostMode {
    inverted_potential,  // alpha_dmax - E' (default)
    literal_field,       // raw clamped distance E'
};

// Sum of per-pose collision potentials along a body-frame primitive.
// Out-of-view poses are charged the maximal potential alpha_dmax. When a
// navigability mask is supplied, poses projecting onto non-navigable pixels
// carry the same maximal charge: the clamped distance field is blind inside
// occlusion shadows, where remoteness from the boundary set does not mean
// free ground.
double primitive_collision_cost(const MotionPrimitive& prim,
                                const navspace::field::ScaledField& sedf,
                                const CameraModel& cam,
                                CollisionCostMode mode = CollisionCostMode::inverted_potential,
                                const navspace::geometry::SegMask* navigable = nullptr);

// Riemannian distance on SO(3): acos((trace(R1^T R2) - 1)/2), clamped.
// Throws std::invalid_argument when an input is not orthonormal within 1e-9.
double rotation_geodesic(const Eigen::Matrix3d& r1, const Eigen::Matrix3d& r2);

Eigen::Matrix3d yaw_rotation(double psi);

struct TargetCostParams {
    double a = 1.0;  // rotation weight, > 0
    double b = 1.0;  // translation weight, > 0
};

// sqrt(a * d_rot^2 + b * d_trans^2) with the yaw geodesic and planar
// Euclidean translation distance.
double target_cost(const Pose2& pose_world, const Pose2& goal_world,
                   const TargetCostParams& params);

struct Selection {
    int index = 0;
    double total_cost = 0.0;
    double collision_cost = 0.0;
    double target_cost = 0.0;
};

// argmin over the library of w1 * C_c + w2 * C_t with C_t summed over all
// world-frame poses. Ties break toward the lowest index. Throws on an
// empty library or w1 = w2 = 0.
Selection select_primitive(const PrimitiveLibrary& lib,
                           const navspace::field::ScaledField& sedf, const CameraModel& cam,
                           const Pose2& robot_world, const Pose2& goal_world, double w1,
                           double w2, const TargetCostParams& params,
                           CollisionCostMode mode = CollisionCostMode::inverted_potential,
                           const navspace::geometry::SegMask* navigable = nullptr);

}  // namespace navspace::planner
