#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "objloc/geometry.hpp"
#include "objloc/sensor_types.hpp"

namespace objloc::graph {

enum class Agent : std::uint8_t { robot, object };

[[nodiscard]] std::string_view to_string(Agent a) noexcept;

/// Pose node of one agent at one tick. Ordered by tick first so solver
/// variables of the two agents interleave.
struct NodeId {
    Agent agent = Agent::robot;
    Tick t = 0;

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) noexcept {
        if (auto c = a.t <=> b.t; c != 0) return c;
        return a.agent <=> b.agent;
    }
};

enum class EdgeKind : std::uint8_t { robot_odom, object_odom, uwb_range, lidar_position, lidar_direction };

[[nodiscard]] std::string_view to_string(EdgeKind k) noexcept;
[[nodiscard]] std::optional<EdgeKind> edge_kind_from_string(std::string_view s) noexcept;

/// Residual size of each edge kind: 3, 3, 1, 2, 1.
[[nodiscard]] int residual_dimension(EdgeKind k) noexcept;

/// One constraint. Endpoint and measurement layout per kind:
///
///   robot_odom / object_odom  first = pose at t-1, second = pose at t, measurement (dx, dy, dtheta)
///   uwb_range                 first = robot_t, second = object_t, measurement (r)
///   lidar_position            first = robot_t, second = object_t, measurement (x, y) in robot frame
///   lidar_direction           first = robot_t, second = object_t, measurement (theta) heading of
///                             the object relative to the robot
///
/// Only the leading dim x dim block of `measurement` / `information` is used.
struct Edge {
    EdgeKind kind = EdgeKind::robot_odom;
    NodeId first;
    std::optional<NodeId> second;
    Eigen::Vector3d measurement = Eigen::Vector3d::Zero();
    Eigen::Matrix3d information = Eigen::Matrix3d::Zero();

    [[nodiscard]] int dimension() const noexcept { return residual_dimension(kind); }

    static Edge odometry(Agent agent, Tick t, const Pose2& delta, const Eigen::Matrix3d& information);
    static Edge uwb_range(Tick t, double range, double information);
    static Edge lidar_position(Tick t, const Point2& position, const Eigen::Matrix2d& information);
    static Edge lidar_direction(Tick t, double direction, double information);

    /// Throws std::invalid_argument unless the used information block is
    /// symmetric positive semidefinite.
    void validate() const;
};

/// Robot and object pose nodes joined by measurement edges.
class PoseGraph {
  public:
    /// Throws std::invalid_argument if the node exists.
    void add_node(const NodeId& id, const Pose2& estimate);
    /// Throws std::invalid_argument if an endpoint is missing.
    void add_edge(Edge edge);
    void fix(const NodeId& id);
    void unfix(const NodeId& id);

    [[nodiscard]] bool has_node(const NodeId& id) const { return nodes_.contains(id); }
    [[nodiscard]] bool is_fixed(const NodeId& id) const { return fixed_.contains(id); }
    [[nodiscard]] const Pose2& estimate(const NodeId& id) const;
    void set_estimate(const NodeId& id, const Pose2& pose);

    [[nodiscard]] const std::map<NodeId, Pose2>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::set<NodeId>& fixed() const noexcept { return fixed_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] Edge& edge(std::size_t i) { return edges_.at(i); }

    /// Latest tick that has a node, or nothing for an empty graph.
    [[nodiscard]] std::optional<Tick> last_tick() const;

  private:
    std::map<NodeId, Pose2> nodes_;
    std::set<NodeId> fixed_;
    std::vector<Edge> edges_;
};

/// Residual of one edge and its Jacobians w.r.t. the (x, y, theta) of each
/// endpoint. Rows beyond `dimension` are zero.
struct EdgeJacobian {
    int dimension = 0;
    Eigen::Vector3d error = Eigen::Vector3d::Zero();
    Eigen::Matrix3d d_first = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d d_second = Eigen::Matrix3d::Zero();
};

/// Norm floor for the range Jacobian at coincident positions.
inline constexpr double kRangeNormFloor = 1e-9;

/// Residual only; every kind needs `second`.
[[nodiscard]] Eigen::VectorXd residual(const Edge& edge, const Pose2& first, const Pose2* second = nullptr);
[[nodiscard]] Eigen::VectorXd residual(const Edge& edge, const PoseGraph& graph);

[[nodiscard]] EdgeJacobian linearize_edge(const Edge& edge, const Pose2& first, const Pose2* second = nullptr);

/// e^T Omega e of one edge.
[[nodiscard]] double edge_chi2(const Edge& edge, const PoseGraph& graph);

/// Sum of e^T Omega e over all edges.
[[nodiscard]] double objective(const PoseGraph& graph);

}  // namespace objloc::graph
