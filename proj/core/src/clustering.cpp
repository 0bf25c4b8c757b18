#include "objloc/detect/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace objloc::detect {

namespace {

void check_bands(std::span<const double> band_edges) {
    if (band_edges.size() < 2 || band_edges.front() != 0.0) {
        throw std::invalid_argument("band edges must start at 0 and contain at least one band");
    }
    for (std::size_t i = 1; i < band_edges.size(); ++i) {
        if (!(band_edges[i] > band_edges[i - 1])) {
            throw std::invalid_argument("band edges must be strictly increasing");
        }
    }
}

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) noexcept {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
}

bool lex_less(const Point2& a, const Point2& b) noexcept {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

}  // namespace

double band_upper_edge(double range, std::span<const double> band_edges) {
    check_bands(band_edges);
    const auto it = std::lower_bound(band_edges.begin() + 1, band_edges.end(), range);
    return it == band_edges.end() ? band_edges.back() : *it;
}

double link_distance(double range, double angular_resolution, std::span<const double> band_edges) {
    return 2.0 * band_upper_edge(range, band_edges) * std::tan(angular_resolution / 2.0);
}

std::vector<Cluster> adaptive_cluster(const PointCloud& cloud, double angular_resolution,
                                      std::span<const double> band_edges, std::size_t min_cluster_size) {
    if (!(angular_resolution > 0.0)) {
        throw std::invalid_argument("angular resolution must be positive");
    }
    check_bands(band_edges);

    const auto& pts = cloud.points;
    const std::size_t n = pts.size();
    if (n == 0) {
        return {};
    }

    // Per-point link distance, and a grid whose cells are at least as wide as
    // the largest one, so every candidate neighbour sits in the 3x3 block.
    std::vector<double> ranges(n);
    std::vector<double> links(n);
    double max_link = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ranges[i] = pts[i].norm();
        links[i] = link_distance(ranges[i], angular_resolution, band_edges);
        max_link = std::max(max_link, links[i]);
    }
    const double cell = max_link;

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    grid.reserve(n);
    std::vector<std::pair<std::int64_t, std::int64_t>> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cx = static_cast<std::int64_t>(std::floor(pts[i].x() / cell));
        const auto cy = static_cast<std::int64_t>(std::floor(pts[i].y() / cell));
        cells[i] = {cx, cy};
        grid[cell_key(cx, cy)].push_back(i);
    }

    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [cx, cy] = cells[i];
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(cell_key(cx + dx, cy + dy));
                if (it == grid.end()) continue;
                for (const std::size_t j : it->second) {
                    if (j <= i) continue;
                    const double threshold = ranges[i] <= ranges[j] ? links[i] : links[j];
                    if (distance(pts[i], pts[j]) <= threshold) {
                        sets.unite(i, j);
                    }
                }
            }
        }
    }

    std::unordered_map<std::size_t, std::vector<Point2>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        groups[sets.find(i)].push_back(pts[i]);
    }

    std::vector<Cluster> clusters;
    for (auto& [root, members] : groups) {
        if (members.size() < std::max<std::size_t>(min_cluster_size, 1)) {
            continue;
        }
        std::sort(members.begin(), members.end(), lex_less);
        double sx = 0.0, sy = 0.0;
        for (const auto& p : members) {
            sx += p.x();
            sy += p.y();
        }
        const double count = static_cast<double>(members.size());
        clusters.push_back({Point2(sx / count, sy / count), std::move(members)});
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        const double ra = a.range();
        const double rb = b.range();
        if (ra != rb) return ra < rb;
        return lex_less(a.centroid, b.centroid);
    });
    return clusters;
}

std::vector<Cluster> transform_clusters(const std::vector<Cluster>& clusters, const Pose2& frame) {
    std::vector<Cluster> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
        Cluster moved;
        moved.centroid = transform_point(frame, c.centroid);
        moved.members.reserve(c.members.size());
        for (const auto& p : c.members) {
            moved.members.push_back(transform_point(frame, p));
        }
        out.push_back(std::move(moved));
    }
    return out;
}

}  // namespace objloc::detect
