#include "objloc/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "objloc/errors.hpp"

namespace objloc::sim {

namespace {

double cross(double ax, double ay, double bx, double by) noexcept { return ax * by - ay * bx; }

int orientation(const Point2& p, const Point2& q, const Point2& r) noexcept {
    const double v = cross(q.x() - p.x(), q.y() - p.y(), r.x() - p.x(), r.y() - p.y());
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(const Point2& p, const Point2& q, const Point2& r) noexcept {
    // r collinear with p-q; is it inside the bounding box?
    return r.x() >= std::min(p.x(), q.x()) && r.x() <= std::max(p.x(), q.x()) &&
           r.y() >= std::min(p.y(), q.y()) && r.y() <= std::max(p.y(), q.y());
}

}  // namespace

void WorldMap::validate(std::size_t ticks) const {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw ConfigError("world bounds must be positive");
    }
    for (std::size_t i = 0; i < static_obstacles.size(); ++i) {
        const auto& s = static_obstacles[i];
        if (!contains(s.a) || !contains(s.b)) {
            throw ConfigError("static obstacle " + std::to_string(i) + " lies outside the world bounds");
        }
    }
    for (std::size_t i = 0; i < dynamic_obstacles.size(); ++i) {
        const auto& d = dynamic_obstacles[i];
        if (!(d.radius > 0.0)) {
            throw ConfigError("dynamic obstacle " + std::to_string(i) + " needs a positive radius");
        }
        if (d.path.size() != ticks) {
            throw ConfigError("dynamic obstacle " + std::to_string(i) + " path covers " +
                              std::to_string(d.path.size()) + " ticks, expected " + std::to_string(ticks));
        }
        for (const auto& pose : d.path) {
            if (pose.x() - d.radius < 0.0 || pose.x() + d.radius > width || pose.y() - d.radius < 0.0 ||
                pose.y() + d.radius > height) {
                throw ConfigError("dynamic obstacle " + std::to_string(i) + " leaves the world bounds");
            }
        }
    }
}

std::optional<double> ray_segment_distance(const Point2& origin, double dir_x, double dir_y,
                                           const Segment& s) noexcept {
    const double ex = s.b.x() - s.a.x();
    const double ey = s.b.y() - s.a.y();
    const double denom = cross(dir_x, dir_y, ex, ey);
    if (std::abs(denom) < 1e-15) {
        return std::nullopt;  // parallel or degenerate
    }
    const double wx = s.a.x() - origin.x();
    const double wy = s.a.y() - origin.y();
    const double t = cross(wx, wy, ex, ey) / denom;
    const double u = cross(wx, wy, dir_x, dir_y) / denom;
    if (t < 0.0 || u < 0.0 || u > 1.0) {
        return std::nullopt;
    }
    return t;
}

std::optional<double> ray_circle_distance(const Point2& origin, double dir_x, double dir_y,
                                          const Circle& c) noexcept {
    const double fx = origin.x() - c.center.x();
    const double fy = origin.y() - c.center.y();
    const double b = fx * dir_x + fy * dir_y;
    const double cc = fx * fx + fy * fy - c.radius * c.radius;
    if (cc <= 0.0) {
        return std::nullopt;
    }
    const double disc = b * b - cc;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double t = -b - std::sqrt(disc);
    if (t < 0.0) {
        return std::nullopt;
    }
    return t;
}

bool segments_intersect(const Point2& p, const Point2& q, const Segment& s) noexcept {
    const int o1 = orientation(p, q, s.a);
    const int o2 = orientation(p, q, s.b);
    const int o3 = orientation(s.a, s.b, p);
    const int o4 = orientation(s.a, s.b, q);
    if (o1 != o2 && o3 != o4) {
        return true;
    }
    return (o1 == 0 && on_segment(p, q, s.a)) || (o2 == 0 && on_segment(p, q, s.b)) ||
           (o3 == 0 && on_segment(s.a, s.b, p)) || (o4 == 0 && on_segment(s.a, s.b, q));
}

bool line_of_sight(const WorldMap& world, const Point2& a, const Point2& b) noexcept {
    return std::none_of(world.static_obstacles.begin(), world.static_obstacles.end(),
                        [&](const Segment& s) { return segments_intersect(a, b, s); });
}

namespace {

std::vector<Pose2> follow_waypoints(const WaypointPath& spec, std::size_t ticks, double dt) {
    if (spec.points.empty()) {
        throw ConfigError("waypoint trajectory needs at least one point");
    }
    if (spec.speed < 0.0 || spec.max_turn_rate <= 0.0 || spec.arrival_radius <= 0.0) {
        throw ConfigError("waypoint trajectory needs speed >= 0, turn rate > 0 and arrival radius > 0");
    }
    std::vector<Pose2> poses;
    poses.reserve(ticks);

    const std::size_t n = spec.points.size();
    std::size_t target = n > 1 ? 1 : 0;
    double heading = 0.0;
    if (spec.initial_heading) {
        heading = *spec.initial_heading;
    } else if (n > 1) {
        const Point2 d = spec.points[1] - spec.points[0];
        heading = std::atan2(d.y(), d.x());
    }
    Pose2 pose(spec.points[0], heading);
    bool finished = n == 1;

    const double max_turn = spec.max_turn_rate * dt;
    for (std::size_t t = 0; t < ticks; ++t) {
        poses.push_back(pose);
        if (finished) {
            continue;
        }
        if (distance(pose.position(), spec.points[target]) < spec.arrival_radius) {
            if (target + 1 < n) {
                ++target;
            } else if (spec.loop) {
                target = 0;
            } else {
                finished = true;
                continue;
            }
        }
        const Point2 to_target = spec.points[target] - pose.position();
        const double error = angle_diff(std::atan2(to_target.y(), to_target.x()), pose.theta());
        const double turn = std::clamp(error, -max_turn, max_turn);
        const double step = spec.speed * dt * std::max(0.0, std::cos(error));
        const double new_heading = pose.theta() + turn;
        pose = Pose2(pose.x() + step * std::cos(new_heading), pose.y() + step * std::sin(new_heading),
                     new_heading);
    }
    return poses;
}

}  // namespace

std::vector<Pose2> generate_trajectory(const TrajectorySpec& spec, std::size_t ticks, double dt) {
    if (!(dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
    return std::visit(
        [&](const auto& s) -> std::vector<Pose2> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StaticPath>) {
                return std::vector<Pose2>(ticks, s.pose);
            } else {
                return follow_waypoints(s, ticks, dt);
            }
        },
        spec);
}

}  // namespace objloc::sim
