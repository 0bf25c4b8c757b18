#pragma once

#include <cstdint>
#include <vector>

#include "objloc/geometry.hpp"

namespace objloc {

/// Index into the global simulation clock.
using Tick = std::int64_t;

/// One LiDAR sweep in the sensor's body frame.
struct PointCloud {
    Tick t = 0;
    std::vector<Point2> points;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

/// Robot-to-object UWB range. `los` is simulator truth, for analysis only.
struct RangeMeasurement {
    Tick t = 0;
    double range = 0.0;
    bool los = true;

    friend bool operator==(const RangeMeasurement&, const RangeMeasurement&) = default;
};

/// Relative motion from tick t-1 to t, in the agent's body frame at t-1.
struct OdomIncrement {
    Tick t = 0;
    Pose2 delta;

    friend bool operator==(const OdomIncrement&, const OdomIncrement&) = default;
};

}  // namespace objloc
