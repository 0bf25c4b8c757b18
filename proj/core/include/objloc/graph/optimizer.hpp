#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "objloc/graph/pose_graph.hpp"

namespace objloc::graph {

struct OptimizeOptions {
    int max_iterations = 100;
    /// Stop when an accepted step lowers the objective by less than this fraction.
    double convergence_tol = 1e-9;
    /// Stop when the largest gradient component falls below this.
    double gradient_tol = 1e-10;
    double initial_damping = 1e-4;
    /// Only nodes within the last `window` ticks are optimized; older ones are
    /// held at their current estimates. Unbounded when empty.
    std::optional<Tick> window;
    /// Huber kernel width on sqrt(chi2). Plain least squares when empty.
    std::optional<double> huber_delta;
};

struct OptimizeReport {
    int iterations = 0;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    bool converged = false;
};

/// Gauss-Newton system over the free (non-fixed) nodes.
struct LinearSystem {
    std::vector<NodeId> free_nodes;  // column block k covers variables 3k..3k+2
    Eigen::SparseMatrix<double> hessian;
    Eigen::VectorXd gradient;
    double objective = 0.0;

    [[nodiscard]] Eigen::MatrixXd dense_hessian() const { return Eigen::MatrixXd(hessian); }
};

/// Builds J^T Omega J and J^T Omega e over every edge with analytic
/// Jacobians, dropping the blocks of fixed nodes. Throws DegenerateGraphError
/// when no node is fixed.
[[nodiscard]] LinearSystem linearize(const PoseGraph& graph);

/// Levenberg-Marquardt on (x, y, theta) of every free node. Estimates are
/// updated in place. Throws DegenerateGraphError when no node is fixed or
/// the system is rank deficient.
OptimizeReport optimize(PoseGraph& graph, const OptimizeOptions& options = {});
OptimizeReport optimize(PoseGraph& graph, int max_iterations, double convergence_tol);

/// Adds nodes and edges, then re-optimizes (over the last `window` ticks when
/// given). New nodes should already carry odometry-propagated guesses.
OptimizeReport incremental_update(PoseGraph& graph, const std::vector<std::pair<NodeId, Pose2>>& new_nodes,
                                  const std::vector<Edge>& new_edges, std::optional<Tick> window,
                                  OptimizeOptions options = {});

}  // namespace objloc::graph
