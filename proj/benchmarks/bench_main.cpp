#include <benchmark/benchmark.h>

#include <random>

#include "objloc/detect/clustering.hpp"
#include "objloc/eval/pipeline.hpp"
#include "objloc/eval/scenario_io.hpp"
#include "objloc/sim/sensors.hpp"

namespace {

using namespace objloc;

sim::WorldMap arena() {
    sim::WorldMap w;
    w.width = 16;
    w.height = 12;
    w.static_obstacles = {{{0, 0}, {16, 0}},  {{16, 0}, {16, 12}},  {{16, 12}, {0, 12}},
                          {{0, 12}, {0, 0}},  {{9, 6.6}, {9.3, 7.3}}, {{13.5, 2}, {13.5, 4}}};
    return w;
}

void BM_Raycast(benchmark::State& state) {
    const auto world = arena();
    sim::SensorConfig cfg;
    Tick t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sim::raycast_scan(world, Pose2(8, 6, 0.1), cfg, t++));
}
BENCHMARK(BM_Raycast);

// Random cloud of a given size around the origin.
void BM_Cluster(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-8, 8);
    PointCloud cloud;
    for (int64_t i = 0; i < state.range(0); ++i) cloud.points.emplace_back(u(rng), u(rng));
    for (auto _ : state) benchmark::DoNotOptimize(detect::adaptive_cluster(cloud, 0.5 * kPi / 180.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Cluster)->RangeMultiplier(2)->Range(90, 2880)->Complexity();

void BM_FullPipeline(benchmark::State& state) {
    const auto config = eval::load_scenario(std::string(OBJLOC_SCENARIO_DIR) + "/static_robot.json");
    const auto log = eval::simulate(config);
    const auto det = eval::detect_objects(log, config.params.identification);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            eval::run_pipeline(log, det, eval::ApproachSpec::make(eval::Approach::full), config.params));
    }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
