#include "objloc/eval/pipeline.hpp"

#include <string>

#include "objloc/errors.hpp"

namespace objloc::eval {

using graph::Agent;
using graph::Edge;
using graph::NodeId;

std::string_view to_string(Approach a) noexcept {
    switch (a) {
        case Approach::pure_odom: return "pure_odom";
        case Approach::odom_uwb: return "odom_uwb";
        case Approach::odom_lidar: return "odom_lidar";
        case Approach::odom_uwb_lidar_no_direction: return "odom_uwb_lidar_no_direction";
        case Approach::odom_uwb_lidar_no_rejection: return "odom_uwb_lidar_no_rejection";
        case Approach::full: return "full";
    }
    return "unknown";
}

std::optional<Approach> approach_from_string(std::string_view s) noexcept {
    for (const Approach a : kAllApproaches) {
        if (to_string(a) == s) return a;
    }
    return std::nullopt;
}

ApproachSpec ApproachSpec::make(Approach a) noexcept {
    ApproachSpec s;
    s.name = a;
    switch (a) {
        case Approach::pure_odom:
            s.uwb = s.lidar_position = s.lidar_direction = s.rejection = false;
            break;
        case Approach::odom_uwb:
            s.lidar_position = s.lidar_direction = s.rejection = false;
            break;
        case Approach::odom_lidar:
            s.uwb = false;
            break;
        case Approach::odom_uwb_lidar_no_direction:
            s.lidar_direction = s.rejection = false;
            break;
        case Approach::odom_uwb_lidar_no_rejection:
            s.rejection = false;
            break;
        case Approach::full:
            break;
    }
    return s;
}

void GraphParams::validate() const {
    if (!(odom_trans_information >= 0.0) || !(odom_rot_information >= 0.0) || !(uwb_information >= 0.0) ||
        !(lidar_position_information >= 0.0)) {
        throw ConfigError("information values must be >= 0");
    }
    if (window && *window < 1) throw ConfigError("window must be >= 1");
    if (iterations_per_tick < 0 || final_iterations < 0) throw ConfigError("iteration counts must be >= 0");
    if (!(convergence_tol >= 0.0)) throw ConfigError("convergence_tol must be >= 0");
    if (huber_delta && !(*huber_delta > 0.0)) throw ConfigError("huber_delta must be > 0");
}

void PipelineParams::validate() const {
    identification.validate();
    gate.validate();
    graph.validate();
}

namespace {

/// Odometry increments indexed by tick; throws if a tick is missing.
std::vector<Pose2> index_odometry(const std::vector<OdomIncrement>& stream, std::size_t ticks, const char* who) {
    std::vector<Pose2> out(ticks);
    std::vector<bool> seen(ticks, false);
    for (const auto& inc : stream) {
        if (inc.t >= 1 && static_cast<std::size_t>(inc.t) < ticks) {
            out[static_cast<std::size_t>(inc.t)] = inc.delta;
            seen[static_cast<std::size_t>(inc.t)] = true;
        }
    }
    for (std::size_t t = 1; t < ticks; ++t) {
        if (!seen[t]) throw ConfigError(std::string(who) + " odometry missing at tick " + std::to_string(t));
    }
    return out;
}

}  // namespace

DetectionTrack detect_objects(const sim::SensorLog& log, const detect::IdentificationParams& params) {
    DetectionTrack track(log.ticks);
    if (log.ticks == 0) return track;
    const auto robot_odom = index_odometry(log.robot_odometry, log.ticks, "robot");

    std::vector<const RangeMeasurement*> latest_range(log.ticks, nullptr);
    {
        std::size_t k = 0;
        const RangeMeasurement* latest = nullptr;
        for (std::size_t t = 0; t < log.ticks; ++t) {
            for (; k < log.ranges.size() && log.ranges[k].t <= static_cast<Tick>(t); ++k) latest = &log.ranges[k];
            latest_range[t] = latest;
        }
    }

    detect::ObjectIdentifier identifier(params);
    std::optional<Tick> previous_scan;
    for (const auto& scan : log.scans) {
        if (scan.t < 0 || static_cast<std::size_t>(scan.t) >= log.ticks) continue;
        Pose2 motion;
        if (previous_scan) {
            for (Tick t = *previous_scan + 1; t <= scan.t; ++t) {
                motion = compose(motion, robot_odom[static_cast<std::size_t>(t)]);
            }
        }
        auto detection = identifier.process(scan, latest_range[static_cast<std::size_t>(scan.t)], motion);
        track[static_cast<std::size_t>(scan.t)] = detection;
        previous_scan = scan.t;
    }
    return track;
}

PipelineResult run_pipeline(const sim::SensorLog& log, const DetectionTrack& detections, const ApproachSpec& approach,
                            const PipelineParams& params) {
    params.validate();
    if (log.ticks == 0) throw ConfigError("log has no ticks");
    if (detections.size() != log.ticks) throw ConfigError("detection track length does not match the log");

    const auto robot_odom = index_odometry(log.robot_odometry, log.ticks, "robot");
    const auto object_odom = index_odometry(log.object_odometry, log.ticks, "object");
    std::vector<const RangeMeasurement*> ranges(log.ticks, nullptr);
    for (const auto& r : log.ranges) {
        if (r.t >= 0 && static_cast<std::size_t>(r.t) < log.ticks) ranges[static_cast<std::size_t>(r.t)] = &r;
    }
    std::vector<bool> scanned(log.ticks, false);
    for (const auto& s : log.scans) {
        if (s.t >= 0 && static_cast<std::size_t>(s.t) < log.ticks) scanned[static_cast<std::size_t>(s.t)] = true;
    }

    const GraphParams& gp = params.graph;
    const Eigen::Matrix3d odom_info =
        Eigen::Vector3d(gp.odom_trans_information, gp.odom_trans_information, gp.odom_rot_information).asDiagonal();
    const Eigen::Matrix2d position_info = gp.lidar_position_information * Eigen::Matrix2d::Identity();

    graph::OptimizeOptions tick_options;
    tick_options.max_iterations = gp.iterations_per_tick;
    tick_options.convergence_tol = gp.convergence_tol;
    tick_options.huber_delta = gp.huber_delta;

    PipelineResult result;
    auto& g = result.graph;
    g.add_node({Agent::robot, 0}, log.robot_initial);
    g.add_node({Agent::object, 0}, log.object_initial);
    g.fix({Agent::robot, 0});
    g.fix({Agent::object, 0});

    // Last scan tick and its detection, for the direction estimate.
    std::optional<Tick> last_scan;
    std::optional<detect::ObjectDetection> last_detection;

    for (std::size_t i = 0; i < log.ticks; ++i) {
        const auto t = static_cast<Tick>(i);
        std::vector<std::pair<NodeId, Pose2>> nodes;
        std::vector<Edge> edges;
        if (i > 0) {
            const NodeId r_prev{Agent::robot, t - 1};
            const NodeId o_prev{Agent::object, t - 1};
            nodes.emplace_back(NodeId{Agent::robot, t}, compose(g.estimate(r_prev), robot_odom[i]));
            nodes.emplace_back(NodeId{Agent::object, t}, compose(g.estimate(o_prev), object_odom[i]));
            edges.push_back(Edge::odometry(Agent::robot, t, robot_odom[i], odom_info));
            edges.push_back(Edge::odometry(Agent::object, t, object_odom[i], odom_info));
        }
        if (approach.uwb && ranges[i] != nullptr) {
            edges.push_back(Edge::uwb_range(t, ranges[i]->range, gp.uwb_information));
        }
        const auto& detection = detections[i];
        if (approach.lidar_position && detection) {
            edges.push_back(Edge::lidar_position(t, detection->position, position_info));
        }

        if (i > 0) {
            graph::incremental_update(g, nodes, edges, gp.window, tick_options);
        } else {
            for (const auto& e : edges) g.add_edge(e);
            graph::optimize(g, tick_options);
        }

        if (detection) {
            LidarObjectPose lp;
            lp.t = t;
            lp.position = detection->position;
            if (approach.lidar_direction && last_detection && last_scan) {
                // Previous detection moved into the current body frame with the
                // odometry since that scan, then rotated into the world by the
                // current robot estimate.
                Pose2 motion;
                for (Tick k = *last_scan + 1; k <= t; ++k) motion = compose(motion, robot_odom[static_cast<std::size_t>(k)]);
                const Point2 prev_body = inverse_transform_point(motion, last_detection->position);
                const auto body = moving_direction(prev_body, detection->position, params.gate.min_displacement);
                if (body) {
                    const double robot_theta = g.estimate({Agent::robot, t}).theta();
                    lp.direction = wrap_angle(*body + robot_theta);
                    const double theta_pgo = g.estimate({Agent::object, t}).theta();
                    lp.direction_weight = approach.rejection ? gate(*lp.direction, theta_pgo, params.gate)
                                                             : params.gate.omega;
                    (lp.direction_weight > 0.0 ? result.directions_accepted : result.directions_rejected) += 1;
                    g.add_edge(Edge::lidar_direction(t, *body, lp.direction_weight));
                }
            }
            result.lidar_poses.push_back(lp);
        }
        if (scanned[i]) {
            last_scan = t;
            last_detection = detection;
        }
    }

    if (gp.final_batch) {
        graph::OptimizeOptions final_options = tick_options;
        final_options.max_iterations = gp.final_iterations;
        result.final_report = graph::optimize(g, final_options);
    }

    result.robot_estimates.reserve(log.ticks);
    result.object_estimates.reserve(log.ticks);
    for (std::size_t i = 0; i < log.ticks; ++i) {
        const auto t = static_cast<Tick>(i);
        result.robot_estimates.push_back(g.estimate({Agent::robot, t}));
        result.object_estimates.push_back(g.estimate({Agent::object, t}));
    }
    return result;
}

PipelineResult run_pipeline(const sim::SensorLog& log, const ApproachSpec& approach, const PipelineParams& params) {
    return run_pipeline(log, detect_objects(log, params.identification), approach, params);
}

}  // namespace objloc::eval
