#include "objloc/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "objloc/errors.hpp"

namespace objloc::eval {

SeriesStats summarize(const std::vector<double>& series) {
    SeriesStats s;
    if (series.empty()) return s;
    double sum = 0.0;
    for (const double v : series) sum += v;
    s.mean = sum / static_cast<double>(series.size());
    double sq = 0.0;
    for (const double v : series) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(series.size()));
    s.max = *std::max_element(series.begin(), series.end());
    return s;
}

ErrorReport relative_errors(const std::vector<Pose2>& robot_est, const std::vector<Pose2>& object_est,
                            const std::vector<sim::GroundTruth>& truth) {
    if (robot_est.size() != truth.size() || object_est.size() != truth.size()) {
        throw ConfigError("estimate and ground truth lengths differ");
    }
    ErrorReport r;
    r.trans_error.reserve(truth.size());
    r.rot_error.reserve(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const Pose2 est = between(robot_est[i], object_est[i]);
        const Pose2 gt = between(truth[i].robot, truth[i].object);
        r.trans_error.push_back(distance(est.position(), gt.position()));
        r.rot_error.push_back(std::abs(angle_diff(est.theta(), gt.theta())));
    }
    r.trans = summarize(r.trans_error);
    r.rot = summarize(r.rot_error);
    return r;
}

ErrorReport evaluate(const sim::SensorLog& log, const DetectionTrack& detections, const ApproachSpec& approach,
                     const PipelineParams& params) {
    if (!log.has_ground_truth()) throw ConfigError("log has no ground truth to evaluate against");
    const auto result = run_pipeline(log, detections, approach, params);
    return relative_errors(result.robot_estimates, result.object_estimates, log.truth);
}

ErrorReport evaluate(const sim::SensorLog& log, const ApproachSpec& approach, const PipelineParams& params) {
    if (!log.has_ground_truth()) throw ConfigError("log has no ground truth to evaluate against");
    return evaluate(log, detect_objects(log, params.identification), approach, params);
}

std::string_view to_string(SweepParameter p) noexcept {
    return p == SweepParameter::vartheta ? "vartheta" : "omega";
}

SweepTable sweep(const sim::SensorLog& log, const ApproachSpec& approach, const PipelineParams& params,
                 SweepParameter parameter, const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (!log.has_ground_truth()) throw ConfigError("log has no ground truth to evaluate against");
    params.validate();

    // The gate parameters do not touch identification, so detections are shared.
    const DetectionTrack detections = detect_objects(log, params.identification);
    SweepTable table;
    table.parameter = parameter;
    table.rows.reserve(values.size());
    for (const double v : values) {
        PipelineParams p = params;
        if (parameter == SweepParameter::vartheta) {
            p.gate.vartheta = v;
        } else {
            p.gate.omega = v;
        }
        table.rows.push_back({v, evaluate(log, detections, approach, p)});
    }
    return table;
}

}  // namespace objloc::eval
