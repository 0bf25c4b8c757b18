#include "objloc/detect/identify.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "objloc/errors.hpp"
#include "text_format.hpp"

namespace objloc::detect {

void IdentificationParams::validate() const {
    if (!(angular_resolution > 0.0)) throw ConfigError("identification angular_resolution must be > 0");
    if (band_edges.size() < 2 || band_edges.front() != 0.0) {
        throw ConfigError("band_edges must start at 0 and contain at least one band");
    }
    for (std::size_t i = 1; i < band_edges.size(); ++i) {
        if (!(band_edges[i] > band_edges[i - 1])) throw ConfigError("band_edges must be strictly increasing");
    }
    if (motion_threshold < 0.0) throw ConfigError("motion_threshold must be >= 0");
    if (!(association_radius > 0.0)) throw ConfigError("association_radius must be > 0");
    if (!(match_tolerance > 0.0)) throw ConfigError("match_tolerance must be > 0");
}

std::vector<Cluster> detect_dynamic(const std::vector<Cluster>& prev, const std::vector<Cluster>& curr,
                                    double motion_threshold, double association_radius) {
    std::vector<Cluster> moving;
    for (const auto& c : curr) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : prev) {
            nearest = std::min(nearest, distance(c.centroid, p.centroid));
        }
        const bool associated = nearest <= association_radius;
        if (!associated || nearest >= motion_threshold) {
            moving.push_back(c);
        }
    }
    return moving;
}

std::optional<ObjectDetection> gate_by_uwb(const std::vector<Cluster>& dynamic, const RangeMeasurement& range,
                                           double tolerance) {
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("gate tolerance must be positive");
    }
    std::optional<std::size_t> best;
    double best_gap = std::numeric_limits<double>::infinity();
    double best_range = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dynamic.size(); ++k) {
        const double r = dynamic[k].range();
        const double gap = std::abs(r - range.range);
        // Strict comparisons keep the lower index on a full tie.
        if (gap < best_gap || (gap == best_gap && r < best_range)) {
            best = k;
            best_gap = gap;
            best_range = r;
        }
    }
    if (!best || best_gap > tolerance) {
        return std::nullopt;
    }
    return ObjectDetection{range.t, dynamic[*best].centroid, range.range, best_gap};
}

std::optional<ObjectDetection> identify(const PointCloud& prev_scan, const PointCloud& curr_scan,
                                        const RangeMeasurement& range, const IdentificationParams& params,
                                        const Pose2& robot_motion) {
    ObjectIdentifier identifier(params);
    identifier.process(prev_scan, nullptr, Pose2::identity());
    return identifier.process(curr_scan, &range, robot_motion);
}

ObjectIdentifier::ObjectIdentifier(IdentificationParams params) : params_(std::move(params)) { params_.validate(); }

std::optional<ObjectDetection> ObjectIdentifier::process(const PointCloud& scan, const RangeMeasurement* range,
                                                         const Pose2& robot_motion) {
    auto clusters = adaptive_cluster(scan, params_.angular_resolution, params_.band_edges, params_.min_cluster_size);
    std::optional<ObjectDetection> detection;
    if (previous_ && range != nullptr) {
        // Previous clusters live in the previous body frame; bring them into the current one.
        const auto compensated = transform_clusters(*previous_, inverse(robot_motion));
        const auto moving =
            detect_dynamic(compensated, clusters, params_.motion_threshold, params_.association_radius);
        detection = gate_by_uwb(moving, *range, params_.match_tolerance);
        if (detection) {
            detection->t = scan.t;
        }
    }
    previous_ = std::move(clusters);
    return detection;
}

void write_detections(std::ostream& os, const std::vector<ObjectDetection>& detections) {
    using detail::format_double;
    for (const auto& d : detections) {
        os << "DET " << d.t << ' ' << format_double(d.position.x()) << ' ' << format_double(d.position.y()) << ' '
           << format_double(d.matched_range) << ' ' << format_double(d.range_gap) << '\n';
    }
}

std::vector<ObjectDetection> read_detections(std::istream& is) {
    using detail::parse_double;
    using detail::parse_int;
    std::vector<ObjectDetection> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto f = detail::split_fields(line);
        if (f.empty() || f.front() != "DET") {
            continue;  // other SensorLog records may be interleaved
        }
        if (f.size() != 6) {
            throw ParseError(line_no, "DET record expects 5 fields");
        }
        out.push_back({parse_int(f[1], line_no), Point2(parse_double(f[2], line_no), parse_double(f[3], line_no)),
                       parse_double(f[4], line_no), parse_double(f[5], line_no)});
    }
    return out;
}

}  // namespace objloc::detect
