#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "objloc/eval/pipeline.hpp"
#include "objloc/sim/scenario.hpp"

namespace objloc::eval {

/// A moving disc that is not the tracked object.
struct DistractorSpec {
    double radius = 0.0;
    sim::TrajectorySpec trajectory;
};

struct AgentSpec {
    sim::TrajectorySpec trajectory;
    double footprint_radius = 0.0;
};

/// Everything needed to reproduce a run: world, agents, sensors, pipeline
/// parameters. Loaded from JSON; see docs/formats.md for the schema.
struct ScenarioConfig {
    std::string name;
    std::size_t ticks = 0;
    double dt = 0.1;
    sim::WorldMap world;  // static geometry only
    std::vector<DistractorSpec> distractors;
    AgentSpec robot;
    AgentSpec object;
    sim::SensorConfig sensors;
    PipelineParams params;
};

/// Throws ConfigError on malformed JSON, unknown keys or invalid values.
[[nodiscard]] ScenarioConfig parse_scenario(std::string_view json_text);
[[nodiscard]] ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Materializes the trajectories and runs the sensor simulation.
[[nodiscard]] sim::SensorLog simulate(const ScenarioConfig& config);

}  // namespace objloc::eval
