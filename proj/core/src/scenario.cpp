#include "objloc/sim/scenario.hpp"

#include <string>

#include "objloc/errors.hpp"

namespace objloc::sim {

SensorLog run_scenario(const WorldMap& world, const AgentTrajectory& robot, const AgentTrajectory& object,
                       const SensorConfig& cfg, double dt) {
    if (robot.poses.empty()) {
        throw ConfigError("scenario needs at least one tick");
    }
    if (robot.poses.size() != object.poses.size()) {
        throw ConfigError("robot trajectory has " + std::to_string(robot.poses.size()) +
                          " ticks but object trajectory has " + std::to_string(object.poses.size()));
    }
    if (!(dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
    const std::size_t ticks = robot.poses.size();
    world.validate(ticks);
    cfg.validate();

    // The LiDAR sees the object as one more moving disc.
    WorldMap scan_world = world;
    if (object.footprint_radius > 0.0) {
        scan_world.dynamic_obstacles.push_back({object.footprint_radius, object.poses});
    }

    SensorLog log;
    log.ticks = ticks;
    log.dt = dt;
    log.robot_initial = robot.poses.front();
    log.object_initial = object.poses.front();
    log.truth.reserve(ticks);
    log.robot_odometry.reserve(ticks - 1);
    log.object_odometry.reserve(ticks - 1);

    for (std::size_t i = 0; i < ticks; ++i) {
        const auto t = static_cast<Tick>(i);
        const Pose2& rp = robot.poses[i];
        const Pose2& op = object.poses[i];
        log.truth.push_back({t, rp, op});

        if (i > 0) {
            auto robot_rng = make_engine(cfg.rng_seed, NoiseStream::robot_odometry, t);
            auto object_rng = make_engine(cfg.rng_seed, NoiseStream::object_odometry, t);
            log.robot_odometry.push_back(sample_odometry(robot.poses[i - 1], rp, cfg, robot_rng, t));
            log.object_odometry.push_back(sample_odometry(object.poses[i - 1], op, cfg, object_rng, t));
        }
        if (t % cfg.uwb_rate_divisor == 0) {
            log.ranges.push_back(sample_uwb(world, rp, op, cfg, t));
        }
        if (t % cfg.lidar_rate_divisor == 0) {
            log.scans.push_back(raycast_scan(scan_world, rp, cfg, t));
        }
    }
    return log;
}

}  // namespace objloc::sim
