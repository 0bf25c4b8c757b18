#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "objloc/detect/identify.hpp"
#include "objloc/direction.hpp"
#include "objloc/graph/optimizer.hpp"
#include "objloc/graph/pose_graph.hpp"
#include "objloc/sim/scenario.hpp"

namespace objloc::eval {

enum class Approach {
    pure_odom,
    odom_uwb,
    odom_lidar,
    odom_uwb_lidar_no_direction,
    odom_uwb_lidar_no_rejection,
    full,
};

inline constexpr Approach kAllApproaches[] = {
    Approach::pure_odom,
    Approach::odom_uwb,
    Approach::odom_lidar,
    Approach::odom_uwb_lidar_no_direction,
    Approach::odom_uwb_lidar_no_rejection,
    Approach::full,
};

[[nodiscard]] std::string_view to_string(Approach a) noexcept;
[[nodiscard]] std::optional<Approach> approach_from_string(std::string_view s) noexcept;

/// Which constraint types an approach puts into the graph.
struct ApproachSpec {
    Approach name = Approach::full;
    bool uwb = true;
    bool lidar_position = true;
    bool lidar_direction = true;
    /// Gate directions against the current orientation estimate; otherwise
    /// every direction gets the full weight.
    bool rejection = true;

    [[nodiscard]] static ApproachSpec make(Approach a) noexcept;
    /// True when the toggles match what `name` prescribes.
    [[nodiscard]] bool consistent() const noexcept { return *this == make(name); }

    friend bool operator==(const ApproachSpec&, const ApproachSpec&) = default;
};

/// Unit information for every constraint except the gated directions.
struct GraphParams {
    double odom_trans_information = 1.0;  // x and y of both odometry chains
    double odom_rot_information = 1.0;
    double uwb_information = 1.0;
    double lidar_position_information = 1.0;
    /// Sliding window of the per-tick re-optimization; unbounded when empty.
    std::optional<Tick> window = 50;
    int iterations_per_tick = 10;
    /// Re-optimize the whole graph once all ticks are in.
    bool final_batch = true;
    int final_iterations = 100;
    double convergence_tol = 1e-9;
    std::optional<double> huber_delta;

    void validate() const;
};

struct PipelineParams {
    detect::IdentificationParams identification;
    GateParams gate;
    GraphParams graph;

    void validate() const;
};

/// Per-tick LiDAR detections of a log (empty where nothing was identified).
/// Independent of the approach, so it can be shared across runs.
using DetectionTrack = std::vector<std::optional<detect::ObjectDetection>>;

[[nodiscard]] DetectionTrack detect_objects(const sim::SensorLog& log, const detect::IdentificationParams& params);

struct PipelineResult {
    graph::PoseGraph graph;
    std::vector<Pose2> robot_estimates;   // one per tick
    std::vector<Pose2> object_estimates;  // one per tick
    std::vector<LidarObjectPose> lidar_poses;
    std::size_t directions_accepted = 0;
    std::size_t directions_rejected = 0;
    graph::OptimizeReport final_report;
};

/// Runs the localization pipeline tick by tick: odometry-propagated nodes,
/// the approach's constraints, a windowed re-optimization per tick that
/// supplies the orientation used by the direction gate, and a final batch
/// solve. The first robot and object nodes are fixed at the log's initial
/// poses.
[[nodiscard]] PipelineResult run_pipeline(const sim::SensorLog& log, const DetectionTrack& detections,
                                          const ApproachSpec& approach, const PipelineParams& params);

[[nodiscard]] PipelineResult run_pipeline(const sim::SensorLog& log, const ApproachSpec& approach,
                                          const PipelineParams& params);

}  // namespace objloc::eval
