#include "objloc/sim/sensors.hpp"

#include <algorithm>
#include <cmath>

#include "objloc/errors.hpp"

namespace objloc::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double gaussian(std::mt19937_64& rng, double sigma) {
    if (sigma <= 0.0) {
        return 0.0;
    }
    return std::normal_distribution<double>(0.0, sigma)(rng);
}

}  // namespace

void SensorConfig::validate() const {
    if (!(lidar_angular_resolution > 0.0)) throw ConfigError("lidar_angular_resolution must be > 0");
    if (!(lidar_max_range > 0.0)) throw ConfigError("lidar_max_range must be > 0");
    if (lidar_rate_divisor < 1) throw ConfigError("lidar_rate_divisor must be >= 1");
    if (uwb_rate_divisor < 1) throw ConfigError("uwb_rate_divisor must be >= 1");
    if (lidar_range_noise_sigma < 0.0 || uwb_noise_sigma < 0.0 || odom_trans_noise_sigma < 0.0 ||
        odom_rot_noise_sigma < 0.0) {
        throw ConfigError("noise sigmas must be >= 0");
    }
    if (uwb_nlos_bias < 0.0) throw ConfigError("uwb_nlos_bias must be >= 0");
}

SensorConfig SensorConfig::noise_free() const {
    SensorConfig c = *this;
    c.lidar_range_noise_sigma = 0.0;
    c.uwb_noise_sigma = 0.0;
    c.uwb_nlos_bias = 0.0;
    c.odom_trans_noise_sigma = 0.0;
    c.odom_rot_noise_sigma = 0.0;
    return c;
}

std::mt19937_64 make_engine(std::uint64_t seed, NoiseStream stream, Tick t) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    h = splitmix64(h ^ static_cast<std::uint64_t>(t));
    return std::mt19937_64(h);
}

PointCloud raycast_scan(const WorldMap& world, const Pose2& sensor_pose, const SensorConfig& cfg, Tick t) {
    PointCloud cloud;
    cloud.t = t;

    std::vector<Circle> discs;
    discs.reserve(world.dynamic_obstacles.size());
    for (const auto& d : world.dynamic_obstacles) {
        discs.push_back(d.footprint(static_cast<std::size_t>(t)));
    }
    if (world.static_obstacles.empty() && discs.empty()) {
        return cloud;
    }

    auto rng = make_engine(cfg.rng_seed, NoiseStream::lidar, t);
    const auto rays = static_cast<std::size_t>(std::llround(kTwoPi / cfg.lidar_angular_resolution));
    const Point2 origin = sensor_pose.position();
    cloud.points.reserve(rays);

    for (std::size_t i = 0; i < rays; ++i) {
        const double bearing = static_cast<double>(i) * cfg.lidar_angular_resolution;
        const double world_angle = sensor_pose.theta() + bearing;
        const double dx = std::cos(world_angle);
        const double dy = std::sin(world_angle);

        double nearest = cfg.lidar_max_range;
        bool hit = false;
        for (const auto& s : world.static_obstacles) {
            if (auto d = ray_segment_distance(origin, dx, dy, s); d && *d <= nearest) {
                nearest = *d;
                hit = true;
            }
        }
        for (const auto& c : discs) {
            if (auto d = ray_circle_distance(origin, dx, dy, c); d && *d <= nearest) {
                nearest = *d;
                hit = true;
            }
        }
        if (!hit) {
            continue;
        }
        const double range = std::clamp(nearest + gaussian(rng, cfg.lidar_range_noise_sigma), 0.0,
                                        cfg.lidar_max_range);
        cloud.points.emplace_back(range * std::cos(bearing), range * std::sin(bearing));
    }
    return cloud;
}

RangeMeasurement sample_uwb(const WorldMap& world, const Pose2& robot_pose, const Pose2& object_pose,
                            const SensorConfig& cfg, Tick t) {
    auto rng = make_engine(cfg.rng_seed, NoiseStream::uwb, t);
    const bool los = line_of_sight(world, robot_pose.position(), object_pose.position());
    double range = distance(robot_pose.position(), object_pose.position()) + gaussian(rng, cfg.uwb_noise_sigma);
    if (!los) {
        range += cfg.uwb_nlos_bias;
    }
    return {t, std::max(range, 0.0), los};
}

OdomIncrement sample_odometry(const Pose2& true_prev, const Pose2& true_curr, const SensorConfig& cfg,
                              std::mt19937_64& rng, Tick t) {
    const Pose2 delta = between(true_prev, true_curr);
    if (cfg.exact_stationary_odometry && true_prev == true_curr) return {t, delta};
    const double nx = gaussian(rng, cfg.odom_trans_noise_sigma);
    const double ny = gaussian(rng, cfg.odom_trans_noise_sigma);
    const double nth = gaussian(rng, cfg.odom_rot_noise_sigma);
    return {t, Pose2(delta.x() + nx, delta.y() + ny, delta.theta() + nth)};
}

}  // namespace objloc::sim
