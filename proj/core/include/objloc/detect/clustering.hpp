#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "objloc/geometry.hpp"
#include "objloc/sensor_types.hpp"

namespace objloc::detect {

/// Default range-band edges in meters. A point at range r falls in the first
/// band whose upper edge is >= r; that edge is the band's cluster range.
inline constexpr double kDefaultBandEdges[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};

struct Cluster {
    Point2 centroid;
    std::vector<Point2> members;

    [[nodiscard]] std::size_t point_count() const noexcept { return members.size(); }
    [[nodiscard]] double range() const noexcept { return centroid.norm(); }
};

/// Upper edge of the band containing `range`. Ranges past the last edge use
/// the last edge.
[[nodiscard]] double band_upper_edge(double range, std::span<const double> band_edges);

/// Adaptive link distance d* = 2 * cr * tan(angular_resolution / 2) for the
/// band containing `range`.
[[nodiscard]] double link_distance(double range, double angular_resolution, std::span<const double> band_edges);

/// Single-linkage clustering. Two points link when their separation is at
/// most link_distance() evaluated at the nearer point's range. Clusters with
/// fewer than `min_cluster_size` points are dropped. Members are sorted
/// lexicographically and clusters by centroid range, so the result does not
/// depend on input order.
///
/// Throws std::invalid_argument if angular_resolution <= 0 or the band edges
/// are not strictly increasing from 0.
[[nodiscard]] std::vector<Cluster> adaptive_cluster(const PointCloud& cloud, double angular_resolution,
                                                    std::span<const double> band_edges = kDefaultBandEdges,
                                                    std::size_t min_cluster_size = 3);

/// Re-expresses clusters in a new frame: `frame` is the old frame's pose
/// seen from the new one.
[[nodiscard]] std::vector<Cluster> transform_clusters(const std::vector<Cluster>& clusters, const Pose2& frame);

}  // namespace objloc::detect
