#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "objloc/sensor_types.hpp"
#include "objloc/sim/sensors.hpp"
#include "objloc/sim/world.hpp"

namespace objloc::sim {

/// Per-tick poses of one agent. A positive footprint makes the agent visible
/// to the robot's LiDAR.
struct AgentTrajectory {
    std::vector<Pose2> poses;
    double footprint_radius = 0.0;
};

struct GroundTruth {
    Tick t = 0;
    Pose2 robot;
    Pose2 object;

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

/// Everything the sensors produced over a run, plus simulator truth.
///
/// Streams are ordered by tick. Odometry starts at tick 1; scans and ranges
/// appear on ticks divisible by their rate divisor.
struct SensorLog {
    std::size_t ticks = 0;
    double dt = 0.0;
    Pose2 robot_initial;
    Pose2 object_initial;
    std::vector<GroundTruth> truth;
    std::vector<PointCloud> scans;
    std::vector<RangeMeasurement> ranges;
    std::vector<OdomIncrement> robot_odometry;
    std::vector<OdomIncrement> object_odometry;

    [[nodiscard]] bool has_ground_truth() const noexcept { return ticks > 0 && truth.size() == ticks; }

    friend bool operator==(const SensorLog&, const SensorLog&) = default;
};

/// Simulates all sensor streams. Throws ConfigError when the trajectories do
/// not have the same non-zero length or the world/config are invalid.
[[nodiscard]] SensorLog run_scenario(const WorldMap& world, const AgentTrajectory& robot,
                                     const AgentTrajectory& object, const SensorConfig& cfg, double dt = 0.1);

}  // namespace objloc::sim
