#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "objloc/geometry.hpp"

namespace objloc::sim {

struct Segment {
    Point2 a;
    Point2 b;
};

struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// A circular body following a scripted path, one pose per tick.
struct DynamicObstacle {
    double radius = 0.0;
    std::vector<Pose2> path;

    [[nodiscard]] Circle footprint(std::size_t tick) const { return {path.at(tick).position(), radius}; }
};

/// Axis-aligned arena [0, width] x [0, height] with static walls and moving discs.
struct WorldMap {
    double width = 0.0;
    double height = 0.0;
    std::vector<Segment> static_obstacles;
    std::vector<DynamicObstacle> dynamic_obstacles;

    [[nodiscard]] bool contains(const Point2& p) const noexcept {
        return p.x() >= 0.0 && p.x() <= width && p.y() >= 0.0 && p.y() <= height;
    }

    /// Throws ConfigError if geometry leaves the bounds or a dynamic path
    /// does not cover exactly `ticks` ticks.
    void validate(std::size_t ticks) const;
};

/// Distance along a unit-direction ray to the first intersection with `s`.
[[nodiscard]] std::optional<double> ray_segment_distance(const Point2& origin, double dir_x, double dir_y,
                                                         const Segment& s) noexcept;

/// Distance along a unit-direction ray to the entry point of `c`. Origins
/// inside the disc never hit it.
[[nodiscard]] std::optional<double> ray_circle_distance(const Point2& origin, double dir_x, double dir_y,
                                                        const Circle& c) noexcept;

/// Closed-segment intersection test between p-q and s.
[[nodiscard]] bool segments_intersect(const Point2& p, const Point2& q, const Segment& s) noexcept;

/// True when no static segment crosses the straight path from a to b.
[[nodiscard]] bool line_of_sight(const WorldMap& world, const Point2& a, const Point2& b) noexcept;

// Scripted trajectories ------------------------------------------------------

struct StaticPath {
    Pose2 pose;
};

/// Unicycle that drives through waypoints at constant speed, turning at a
/// bounded rate. Forward speed scales with cos(heading error), so large
/// heading errors turn the agent nearly in place.
struct WaypointPath {
    std::vector<Point2> points;
    double speed = 0.3;
    double max_turn_rate = 1.0;
    double arrival_radius = 0.25;
    bool loop = true;
    std::optional<double> initial_heading;
};

using TrajectorySpec = std::variant<StaticPath, WaypointPath>;

/// Materializes `ticks` poses sampled every `dt` seconds.
[[nodiscard]] std::vector<Pose2> generate_trajectory(const TrajectorySpec& spec, std::size_t ticks, double dt);

}  // namespace objloc::sim
