#pragma once

#include <cstdint>
#include <random>

#include "objloc/sensor_types.hpp"
#include "objloc/sim/world.hpp"

namespace objloc::sim {

struct SensorConfig {
    double lidar_angular_resolution = 0.5 * kPi / 180.0;
    double lidar_max_range = 15.0;
    double lidar_range_noise_sigma = 0.01;
    std::int64_t lidar_rate_divisor = 1;
    double uwb_noise_sigma = 0.05;
    double uwb_nlos_bias = 0.5;
    std::int64_t uwb_rate_divisor = 1;
    double odom_trans_noise_sigma = 0.01;
    double odom_rot_noise_sigma = 0.005;
    std::uint64_t rng_seed = 1;
    /// An agent that did not move reports an exact identity increment, like
    /// wheel encoders that did not turn.
    bool exact_stationary_odometry = true;

    /// Throws ConfigError on a non-positive resolution, range or divisor, or a negative sigma.
    void validate() const;

    /// A zero-noise copy (no Gaussian noise, no NLOS bias).
    [[nodiscard]] SensorConfig noise_free() const;
};

/// Independent random streams derived from the scenario seed.
enum class NoiseStream : std::uint64_t {
    lidar = 1,
    uwb = 2,
    robot_odometry = 3,
    object_odometry = 4,
};

/// Engine for one (seed, stream, tick) triple, so every sample is
/// reproducible on its own regardless of which other sensors ran.
[[nodiscard]] std::mt19937_64 make_engine(std::uint64_t seed, NoiseStream stream, Tick t);

/// One ray every `lidar_angular_resolution` over a full turn, starting at the
/// sensor heading. Missed rays produce no point.
[[nodiscard]] PointCloud raycast_scan(const WorldMap& world, const Pose2& sensor_pose, const SensorConfig& cfg,
                                      Tick t);

[[nodiscard]] RangeMeasurement sample_uwb(const WorldMap& world, const Pose2& robot_pose, const Pose2& object_pose,
                                          const SensorConfig& cfg, Tick t);

[[nodiscard]] OdomIncrement sample_odometry(const Pose2& true_prev, const Pose2& true_curr, const SensorConfig& cfg,
                                            std::mt19937_64& rng, Tick t);

}  // namespace objloc::sim
