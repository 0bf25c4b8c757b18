#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "objloc/detect/clustering.hpp"
#include "objloc/sensor_types.hpp"

namespace objloc::detect {

struct IdentificationParams {
    /// LiDAR angular resolution used in the link distance.
    double angular_resolution = 0.5 * kPi / 180.0;
    std::vector<double> band_edges{std::begin(kDefaultBandEdges), std::end(kDefaultBandEdges)};
    std::size_t min_cluster_size = 3;
    /// Minimum centroid displacement between scans for a cluster to count as moving.
    double motion_threshold = 0.05;
    /// Previous clusters farther than this from a current one are not associated.
    double association_radius = 0.5;
    /// Largest accepted | ||centroid|| - UWB range |.
    double match_tolerance = 0.3;

    void validate() const;
};

/// The object's position in the robot frame, picked from the moving clusters
/// by the UWB range.
struct ObjectDetection {
    Tick t = 0;
    Point2 position;
    double matched_range = 0.0;
    double range_gap = 0.0;

    friend bool operator==(const ObjectDetection&, const ObjectDetection&) = default;
};

/// Moving clusters of `curr` relative to `prev` (both in the same frame).
///
/// Each current cluster is matched to its nearest previous centroid within
/// `association_radius`; it is returned when that displacement is at least
/// `motion_threshold`, or when no previous cluster was close enough.
[[nodiscard]] std::vector<Cluster> detect_dynamic(const std::vector<Cluster>& prev, const std::vector<Cluster>& curr,
                                                  double motion_threshold, double association_radius);

/// The dynamic cluster whose range best matches `range`, if its gap is within
/// `tolerance`. Ties go to the nearer cluster, then to the lower index.
[[nodiscard]] std::optional<ObjectDetection> gate_by_uwb(const std::vector<Cluster>& dynamic,
                                                         const RangeMeasurement& range, double tolerance);

/// Clusters both scans, compensates the previous clusters for the robot's own
/// motion between the scans, and gates the moving clusters by the UWB range.
/// `robot_motion` is the current body pose expressed in the previous body frame.
[[nodiscard]] std::optional<ObjectDetection> identify(const PointCloud& prev_scan, const PointCloud& curr_scan,
                                                      const RangeMeasurement& range,
                                                      const IdentificationParams& params,
                                                      const Pose2& robot_motion = Pose2::identity());

/// Streaming form of identify() that clusters every scan only once.
class ObjectIdentifier {
  public:
    explicit ObjectIdentifier(IdentificationParams params);

    /// Feeds the next scan. `robot_motion` is the odometry since the previous
    /// scan. Returns nothing for the first scan or when `range` is absent.
    std::optional<ObjectDetection> process(const PointCloud& scan, const RangeMeasurement* range,
                                           const Pose2& robot_motion);

    void reset() noexcept { previous_.reset(); }

  private:
    IdentificationParams params_;
    std::optional<std::vector<Cluster>> previous_;
};

// DET record lines, compatible with the SensorLog text format:
//   DET <t> <x> <y> <matched_range> <range_gap>
void write_detections(std::ostream& os, const std::vector<ObjectDetection>& detections);
[[nodiscard]] std::vector<ObjectDetection> read_detections(std::istream& is);

}  // namespace objloc::detect
