#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "objloc/eval/pipeline.hpp"

namespace objloc::eval {

struct SeriesStats {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
    double max = 0.0;

    friend bool operator==(const SeriesStats&, const SeriesStats&) = default;
};

[[nodiscard]] SeriesStats summarize(const std::vector<double>& series);

struct ErrorReport {
    std::vector<double> trans_error;  // meters, one per tick
    std::vector<double> rot_error;    // radians, one per tick
    SeriesStats trans;
    SeriesStats rot;

    [[nodiscard]] std::size_t ticks() const noexcept { return trans_error.size(); }
    friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

/// Error of the estimated robot->object relative pose against the true one.
[[nodiscard]] ErrorReport relative_errors(const std::vector<Pose2>& robot_est, const std::vector<Pose2>& object_est,
                                          const std::vector<sim::GroundTruth>& truth);

/// Throws ConfigError when the log carries no ground truth.
[[nodiscard]] ErrorReport evaluate(const sim::SensorLog& log, const ApproachSpec& approach,
                                   const PipelineParams& params);
[[nodiscard]] ErrorReport evaluate(const sim::SensorLog& log, const DetectionTrack& detections,
                                   const ApproachSpec& approach, const PipelineParams& params);

enum class SweepParameter { vartheta, omega };

[[nodiscard]] std::string_view to_string(SweepParameter p) noexcept;

struct SweepRow {
    double value = 0.0;
    ErrorReport report;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
    SweepParameter parameter = SweepParameter::vartheta;
    std::vector<SweepRow> rows;  // in the order of the requested values

    friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

/// One evaluate per value with everything else held fixed. Rows keep the
/// order of `values`. Throws ConfigError on an empty value list.
[[nodiscard]] SweepTable sweep(const sim::SensorLog& log, const ApproachSpec& approach, const PipelineParams& params,
                               SweepParameter parameter, const std::vector<double>& values);

}  // namespace objloc::eval
