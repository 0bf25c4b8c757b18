#include "objloc/graph/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/SparseCholesky>

#include "objloc/errors.hpp"

namespace objloc::graph {

namespace {

/// Free nodes and the edges touching them for one solve.
struct Problem {
    std::vector<NodeId> free_nodes;
    std::map<NodeId, int> index;
    std::vector<std::size_t> active_edges;
};

Problem select_problem(const PoseGraph& graph, std::optional<Tick> window) {
    Problem p;
    Tick cutoff = std::numeric_limits<Tick>::min();
    if (window && graph.last_tick()) {
        cutoff = *graph.last_tick() - std::max<Tick>(*window, 1) + 1;
    }
    for (const auto& [id, pose] : graph.nodes()) {
        if (!graph.is_fixed(id) && id.t >= cutoff) {
            p.index.emplace(id, static_cast<int>(p.free_nodes.size()));
            p.free_nodes.push_back(id);
        }
    }
    const auto& edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const bool first_free = p.index.contains(edges[i].first);
        const bool second_free = edges[i].second && p.index.contains(*edges[i].second);
        if (first_free || second_free) {
            p.active_edges.push_back(i);
        }
    }
    return p;
}

double robust_cost(double chi2, const std::optional<double>& delta) {
    if (!delta || chi2 <= *delta * *delta) return chi2;
    return 2.0 * *delta * std::sqrt(chi2) - *delta * *delta;
}

double robust_weight(double chi2, const std::optional<double>& delta) {
    if (!delta || chi2 <= *delta * *delta) return 1.0;
    return *delta / std::sqrt(chi2);
}

double edge_cost(const Edge& edge, const PoseGraph& graph, const std::optional<double>& huber) {
    return robust_cost(edge_chi2(edge, graph), huber);
}

double total_objective(const PoseGraph& graph, const std::optional<double>& huber) {
    double total = 0.0;
    for (const auto& e : graph.edges()) total += edge_cost(e, graph, huber);
    return total;
}

double active_objective(const PoseGraph& graph, const Problem& p, const std::optional<double>& huber) {
    double total = 0.0;
    for (const std::size_t i : p.active_edges) total += edge_cost(graph.edges()[i], graph, huber);
    return total;
}

struct Assembled {
    Eigen::SparseMatrix<double> hessian;
    Eigen::VectorXd gradient;
    double objective = 0.0;
};

Assembled assemble(const PoseGraph& graph, const Problem& p, const std::optional<double>& huber) {
    const auto n = static_cast<Eigen::Index>(3 * p.free_nodes.size());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(p.active_edges.size() * 36 + static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        triplets.emplace_back(i, i, 0.0);  // keep the diagonal structurally present
    }
    Eigen::VectorXd gradient = Eigen::VectorXd::Zero(n);
    double objective = 0.0;

    for (const std::size_t ei : p.active_edges) {
        const Edge& edge = graph.edges()[ei];
        const Pose2& a = graph.estimate(edge.first);
        const Pose2* b = edge.second ? &graph.estimate(*edge.second) : nullptr;
        const EdgeJacobian lin = linearize_edge(edge, a, b);
        const int d = lin.dimension;

        // Rows past the residual dimension are zero in the error and Jacobians.
        Eigen::Matrix3d info = Eigen::Matrix3d::Zero();
        info.topLeftCorner(d, d) = edge.information.topLeftCorner(d, d);
        const Eigen::Vector3d& e = lin.error;
        const double chi2 = e.dot(info * e);
        objective += robust_cost(chi2, huber);
        const Eigen::Matrix3d weighted = robust_weight(chi2, huber) * info;

        const int blocks[2] = {
            p.index.contains(edge.first) ? p.index.at(edge.first) : -1,
            edge.second && p.index.contains(*edge.second) ? p.index.at(*edge.second) : -1,
        };
        const Eigen::Matrix3d* jac[2] = {&lin.d_first, &lin.d_second};

        for (int u = 0; u < 2; ++u) {
            if (blocks[u] < 0) continue;
            const Eigen::Matrix3d jt_w = jac[u]->transpose() * weighted;
            gradient.segment<3>(3 * blocks[u]) += jt_w * e;
            for (int v = 0; v < 2; ++v) {
                if (blocks[v] < 0) continue;
                const Eigen::Matrix3d h = jt_w * *jac[v];
                for (int r = 0; r < 3; ++r) {
                    for (int c = 0; c < 3; ++c) {
                        if (h(r, c) != 0.0) triplets.emplace_back(3 * blocks[u] + r, 3 * blocks[v] + c, h(r, c));
                    }
                }
            }
        }
    }

    Eigen::SparseMatrix<double> hessian(n, n);
    hessian.setFromTriplets(triplets.begin(), triplets.end());
    return {std::move(hessian), std::move(gradient), objective};
}

void check_gauge(const PoseGraph& graph) {
    if (graph.fixed().empty()) {
        throw DegenerateGraphError("pose graph has no fixed node; fix at least one to remove gauge freedom");
    }
}

void check_rank(const Eigen::SparseMatrix<double>& hessian) {
    if (hessian.rows() == 0) return;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(hessian);
    if (ldlt.info() != Eigen::Success) {
        throw DegenerateGraphError("pose graph system could not be factorized");
    }
    const Eigen::VectorXd d = ldlt.vectorD();
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) <= 1e-12 * scale) {
            throw DegenerateGraphError("pose graph is rank deficient after gauge fixing (variable " +
                                       std::to_string(i) + ")");
        }
    }
}

OptimizeReport run_lm(PoseGraph& graph, const OptimizeOptions& options) {
    check_gauge(graph);
    const Problem problem = select_problem(graph, options.window);

    OptimizeReport report;
    report.initial_objective = total_objective(graph, options.huber_delta);
    report.final_objective = report.initial_objective;
    if (problem.free_nodes.empty()) {
        report.converged = true;
        return report;
    }

    double lambda = options.initial_damping;
    double current = active_objective(graph, problem, options.huber_delta);
    const double inactive = report.initial_objective - current;
    std::vector<Pose2> saved(problem.free_nodes.size());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        Assembled sys = assemble(graph, problem, options.huber_delta);
        if (iter == 0) {
            check_rank(sys.hessian);
        }
        if (current == 0.0 || sys.gradient.cwiseAbs().maxCoeff() < options.gradient_tol) {
            report.converged = true;
            break;
        }
        report.iterations = iter + 1;

        bool accepted = false;
        bool stalled = false;
        solver.analyzePattern(sys.hessian);
        while (!accepted) {
            Eigen::SparseMatrix<double> damped = sys.hessian;
            for (Eigen::Index i = 0; i < damped.rows(); ++i) damped.coeffRef(i, i) += lambda;
            solver.factorize(damped);
            if (solver.info() != Eigen::Success) {
                lambda *= 10.0;
                if (lambda > 1e12) { stalled = true; break; }
                continue;
            }
            const Eigen::VectorXd step = solver.solve(-sys.gradient);

            for (std::size_t k = 0; k < problem.free_nodes.size(); ++k) {
                const NodeId& id = problem.free_nodes[k];
                const Pose2& p = graph.estimate(id);
                saved[k] = p;
                const auto o = static_cast<Eigen::Index>(3 * k);
                graph.set_estimate(id, Pose2(p.x() + step(o), p.y() + step(o + 1), p.theta() + step(o + 2)));
            }
            const double candidate = active_objective(graph, problem, options.huber_delta);
            if (candidate <= current) {
                accepted = true;
                const double decrease = current - candidate;
                current = candidate;
                lambda = std::max(lambda / 10.0, 1e-12);
                if (decrease <= options.convergence_tol * std::max(current + decrease, 1e-300)) {
                    report.converged = true;
                }
            } else {
                for (std::size_t k = 0; k < problem.free_nodes.size(); ++k) {
                    graph.set_estimate(problem.free_nodes[k], saved[k]);
                }
                lambda *= 10.0;
                if (lambda > 1e12) { stalled = true; break; }
            }
        }
        if (stalled) {
            // No damping produces a decrease: we are at a minimum to machine precision.
            report.converged = true;
            break;
        }
        if (report.converged) break;
    }
    report.final_objective = inactive + current;
    return report;
}

}  // namespace

LinearSystem linearize(const PoseGraph& graph) {
    check_gauge(graph);
    const Problem problem = select_problem(graph, std::nullopt);
    Assembled sys = assemble(graph, problem, std::nullopt);
    return {problem.free_nodes, std::move(sys.hessian), std::move(sys.gradient), objective(graph)};
}

OptimizeReport optimize(PoseGraph& graph, const OptimizeOptions& options) { return run_lm(graph, options); }

OptimizeReport optimize(PoseGraph& graph, int max_iterations, double convergence_tol) {
    OptimizeOptions options;
    options.max_iterations = max_iterations;
    options.convergence_tol = convergence_tol;
    return run_lm(graph, options);
}

OptimizeReport incremental_update(PoseGraph& graph, const std::vector<std::pair<NodeId, Pose2>>& new_nodes,
                                  const std::vector<Edge>& new_edges, std::optional<Tick> window,
                                  OptimizeOptions options) {
    for (const auto& [id, pose] : new_nodes) graph.add_node(id, pose);
    for (const auto& e : new_edges) graph.add_edge(e);
    options.window = window;
    return run_lm(graph, options);
}

}  // namespace objloc::graph
