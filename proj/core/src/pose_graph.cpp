#include "objloc/graph/pose_graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace objloc::graph {

std::string_view to_string(Agent a) noexcept { return a == Agent::robot ? "robot" : "object"; }

std::string_view to_string(EdgeKind k) noexcept {
    switch (k) {
        case EdgeKind::robot_odom: return "robot_odom";
        case EdgeKind::object_odom: return "object_odom";
        case EdgeKind::uwb_range: return "uwb_range";
        case EdgeKind::lidar_position: return "lidar_position";
        case EdgeKind::lidar_direction: return "lidar_direction";
    }
    return "unknown";
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view s) noexcept {
    for (auto k : {EdgeKind::robot_odom, EdgeKind::object_odom, EdgeKind::uwb_range, EdgeKind::lidar_position,
                   EdgeKind::lidar_direction}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

int residual_dimension(EdgeKind k) noexcept {
    switch (k) {
        case EdgeKind::robot_odom:
        case EdgeKind::object_odom: return 3;
        case EdgeKind::uwb_range: return 1;
        case EdgeKind::lidar_position: return 2;
        case EdgeKind::lidar_direction: return 1;
    }
    return 0;
}

Edge Edge::odometry(Agent agent, Tick t, const Pose2& delta, const Eigen::Matrix3d& information) {
    Edge e;
    e.kind = agent == Agent::robot ? EdgeKind::robot_odom : EdgeKind::object_odom;
    e.first = {agent, t - 1};
    e.second = NodeId{agent, t};
    e.measurement << delta.x(), delta.y(), delta.theta();
    e.information = information;
    e.validate();
    return e;
}

Edge Edge::uwb_range(Tick t, double range, double information) {
    Edge e;
    e.kind = EdgeKind::uwb_range;
    e.first = {Agent::robot, t};
    e.second = NodeId{Agent::object, t};
    e.measurement(0) = range;
    e.information(0, 0) = information;
    e.validate();
    return e;
}

Edge Edge::lidar_position(Tick t, const Point2& position, const Eigen::Matrix2d& information) {
    Edge e;
    e.kind = EdgeKind::lidar_position;
    e.first = {Agent::robot, t};
    e.second = NodeId{Agent::object, t};
    e.measurement << position.x(), position.y(), 0.0;
    e.information.topLeftCorner<2, 2>() = information;
    e.validate();
    return e;
}

Edge Edge::lidar_direction(Tick t, double direction, double information) {
    Edge e;
    e.kind = EdgeKind::lidar_direction;
    e.first = {Agent::robot, t};
    e.second = NodeId{Agent::object, t};
    e.measurement(0) = wrap_angle(direction);
    e.information(0, 0) = information;
    e.validate();
    return e;
}

void Edge::validate() const {
    const int d = dimension();
    const Eigen::MatrixXd info = information.topLeftCorner(d, d);
    if (!info.allFinite() || !measurement.allFinite()) {
        throw std::invalid_argument("edge has non-finite measurement or information");
    }
    const double scale = std::max(1.0, info.cwiseAbs().maxCoeff());
    if ((info - info.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("edge information must be symmetric");
    }
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(info).eigenvalues().minCoeff();
    if (min_eig < -1e-12 * scale) {
        throw std::invalid_argument("edge information must be positive semidefinite");
    }
    if (!second.has_value()) {
        throw std::invalid_argument("edge needs two endpoints");
    }
}

void PoseGraph::add_node(const NodeId& id, const Pose2& estimate) {
    if (!nodes_.emplace(id, estimate).second) {
        throw std::invalid_argument("duplicate node " + std::string(to_string(id.agent)) + " " +
                                    std::to_string(id.t));
    }
}

void PoseGraph::add_edge(Edge edge) {
    edge.validate();
    if (!has_node(edge.first) || (edge.second && !has_node(*edge.second))) {
        throw std::invalid_argument(std::string("edge ") + std::string(to_string(edge.kind)) +
                                    " references a missing node");
    }
    edges_.push_back(std::move(edge));
}

void PoseGraph::fix(const NodeId& id) {
    if (!has_node(id)) throw std::invalid_argument("cannot fix a missing node");
    fixed_.insert(id);
}

void PoseGraph::unfix(const NodeId& id) { fixed_.erase(id); }

const Pose2& PoseGraph::estimate(const NodeId& id) const {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::out_of_range("no such node");
    return it->second;
}

void PoseGraph::set_estimate(const NodeId& id, const Pose2& pose) {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::out_of_range("no such node");
    it->second = pose;
}

std::optional<Tick> PoseGraph::last_tick() const {
    if (nodes_.empty()) return std::nullopt;
    return nodes_.rbegin()->first.t;
}

EdgeJacobian linearize_edge(const Edge& edge, const Pose2& a, const Pose2* b) {
    EdgeJacobian out;
    out.dimension = edge.dimension();
    const auto& z = edge.measurement;

    if (b == nullptr) {
        throw std::invalid_argument("edge needs a second endpoint");
    }
    if (edge.kind == EdgeKind::lidar_direction) {
        out.error(0) = angle_diff(b->theta() - a.theta(), z(0));
        out.d_first(0, 2) = -1.0;
        out.d_second(0, 2) = 1.0;
        return out;
    }

    const double c = std::cos(a.theta());
    const double s = std::sin(a.theta());
    const double dx = b->x() - a.x();
    const double dy = b->y() - a.y();

    switch (edge.kind) {
        case EdgeKind::robot_odom:
        case EdgeKind::object_odom: {
            // (inverse(a) ⊕ b) ⊖ z, componentwise with a wrapped angle.
            const double rx = c * dx + s * dy;
            const double ry = -s * dx + c * dy;
            out.error << rx - z(0), ry - z(1), angle_diff(b->theta() - a.theta(), z(2));
            out.d_first << -c, -s, ry,  //
                s, -c, -rx,             //
                0.0, 0.0, -1.0;
            out.d_second << c, s, 0.0,  //
                -s, c, 0.0,             //
                0.0, 0.0, 1.0;
            break;
        }
        case EdgeKind::uwb_range: {
            const double dist = std::hypot(dx, dy);
            const double n = std::max(dist, kRangeNormFloor);
            out.error(0) = dist - z(0);
            out.d_first.row(0) << -dx / n, -dy / n, 0.0;
            out.d_second.row(0) << dx / n, dy / n, 0.0;
            break;
        }
        case EdgeKind::lidar_position: {
            const double rx = c * dx + s * dy;
            const double ry = -s * dx + c * dy;
            out.error.head<2>() << rx - z(0), ry - z(1);
            out.d_first.topRows<2>() << -c, -s, ry,  //
                s, -c, -rx;
            out.d_second.topRows<2>() << c, s, 0.0,  //
                -s, c, 0.0;
            break;
        }
        case EdgeKind::lidar_direction: break;
    }
    return out;
}

Eigen::VectorXd residual(const Edge& edge, const Pose2& first, const Pose2* second) {
    return linearize_edge(edge, first, second).error.head(edge.dimension());
}

Eigen::VectorXd residual(const Edge& edge, const PoseGraph& graph) {
    const Pose2& a = graph.estimate(edge.first);
    const Pose2* b = edge.second ? &graph.estimate(*edge.second) : nullptr;
    return residual(edge, a, b);
}

double edge_chi2(const Edge& edge, const PoseGraph& graph) {
    const int d = edge.dimension();
    const Pose2& a = graph.estimate(edge.first);
    const Pose2* b = edge.second ? &graph.estimate(*edge.second) : nullptr;
    const Eigen::Vector3d e = linearize_edge(edge, a, b).error;
    return e.head(d).dot(edge.information.topLeftCorner(d, d) * e.head(d));
}

double objective(const PoseGraph& graph) {
    double total = 0.0;
    for (const auto& e : graph.edges()) {
        total += edge_chi2(e, graph);
    }
    return total;
}

}  // namespace objloc::graph
