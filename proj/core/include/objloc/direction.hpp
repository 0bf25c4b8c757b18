#pragma once

#include <optional>

#include "objloc/geometry.hpp"
#include "objloc/sensor_types.hpp"

namespace objloc {

struct GateParams {
    /// Largest accepted |direction - current orientation estimate|, radians.
    double vartheta = 0.3;
    /// Information assigned to an accepted direction measurement.
    double omega = 10000.0;
    /// Shorter displacements between detections yield no direction.
    double min_displacement = 0.02;

    void validate() const;
};

/// Object position and heading derived from LiDAR detections.
struct LidarObjectPose {
    Tick t = 0;
    Point2 position;
    std::optional<double> direction;
    double direction_weight = 0.0;
};

/// Heading of the displacement prev -> curr, or nothing when the displacement
/// is shorter than `min_displacement`.
[[nodiscard]] std::optional<double> moving_direction(const Point2& prev, const Point2& curr,
                                                     double min_displacement = 0.02);

/// omega when the wrapped difference between `direction` and `theta_pgo` is
/// at most vartheta, otherwise 0.
[[nodiscard]] double gate(double direction, double theta_pgo, const GateParams& params);

}  // namespace objloc
