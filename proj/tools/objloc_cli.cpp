// objloc command-line harness: simulate scenarios, run approaches, sweep the
// gate parameters and export artifacts.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "objloc/detect/identify.hpp"
#include "objloc/errors.hpp"
#include "objloc/eval/metrics.hpp"
#include "objloc/eval/report_io.hpp"
#include "objloc/eval/scenario_io.hpp"
#include "objloc/graph/graph_io.hpp"
#include "objloc/sim/log_io.hpp"

namespace {

using namespace objloc;

struct Common {
    std::string scenario;
    std::string log;
    std::optional<std::uint64_t> seed;
    std::optional<double> vartheta;
    std::optional<double> omega;
    std::string approach = "full";
    std::string out;
    std::string format = "csv";
};

void add_inputs(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario, "Scenario JSON (parameters, and the log unless --log is given)");
    cmd->add_option("--log", c.log, "Recorded sensor log to use instead of simulating");
    cmd->add_option("--seed", c.seed, "Override the scenario noise seed");
    cmd->add_option("--vartheta", c.vartheta, "Direction gate threshold (rad)");
    cmd->add_option("--omega", c.omega, "Information of accepted directions");
}

struct Inputs {
    eval::ScenarioConfig config;
    sim::SensorLog log;
};

Inputs load_inputs(const Common& c) {
    if (c.scenario.empty() && c.log.empty()) throw ConfigError("need --scenario or --log");
    Inputs in;
    if (!c.scenario.empty()) in.config = eval::load_scenario(c.scenario);
    if (c.seed) in.config.sensors.rng_seed = *c.seed;
    if (c.vartheta) in.config.params.gate.vartheta = *c.vartheta;
    if (c.omega) in.config.params.gate.omega = *c.omega;
    in.config.params.validate();
    in.log = c.log.empty() ? eval::simulate(in.config) : sim::load_log(c.log);
    return in;
}

eval::ApproachSpec parse_approach(const std::string& name) {
    const auto a = eval::approach_from_string(name);
    if (!a) throw ConfigError("unknown approach '" + name + "'");
    return eval::ApproachSpec::make(*a);
}

eval::Format parse_format(const std::string& name) {
    const auto f = eval::format_from_string(name);
    if (!f) throw ConfigError("unknown format '" + name + "' (csv or jsonl)");
    return *f;
}

template <typename Fn>
void emit(const std::string& out, Fn&& write) {
    if (out.empty() || out == "-") {
        write(std::cout);
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw IoError("cannot open " + out + " for writing");
    write(os);
    if (!os) throw IoError("failed writing " + out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moving-object localization from UWB, LiDAR and odometry"};
    app.require_subcommand(1);

    Common sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Simulate a scenario and write its sensor log");
    simulate->add_option("--scenario", sim_opts.scenario, "Scenario JSON")->required();
    simulate->add_option("--seed", sim_opts.seed, "Override the scenario noise seed");
    simulate->add_option("--out,--log-out", sim_opts.out, "Log destination (stdout when omitted)");

    Common run_opts;
    auto* run = app.add_subcommand("run", "Run one approach and report relative errors");
    add_inputs(run, run_opts);
    run->add_option("--approach", run_opts.approach, "Approach name")->capture_default_str();
    run->add_option("--out", run_opts.out, "Report destination (stdout when omitted)");
    run->add_option("--format", run_opts.format, "csv or jsonl")->capture_default_str();

    Common sweep_opts;
    std::string parameter = "vartheta";
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "Evaluate one approach over several gate parameter values");
    add_inputs(sweep, sweep_opts);
    sweep->add_option("--parameter", parameter, "vartheta or omega")->capture_default_str();
    sweep->add_option("--values", values, "Values to evaluate")->required()->delimiter(',');
    sweep->add_option("--approach", sweep_opts.approach, "Approach name")->capture_default_str();
    sweep->add_option("--out", sweep_opts.out, "Table destination (stdout when omitted)");
    sweep->add_option("--format", sweep_opts.format, "csv or jsonl")->capture_default_str();

    Common export_opts;
    std::string what = "graph";
    auto* exp = app.add_subcommand("export", "Write the optimized pose graph or the LiDAR detections");
    add_inputs(exp, export_opts);
    exp->add_option("--what", what, "graph or detections")->capture_default_str();
    exp->add_option("--approach", export_opts.approach, "Approach name")->capture_default_str();
    exp->add_option("--out", export_opts.out, "Destination (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            auto config = eval::load_scenario(sim_opts.scenario);
            if (sim_opts.seed) config.sensors.rng_seed = *sim_opts.seed;
            const auto log = eval::simulate(config);
            emit(sim_opts.out, [&](std::ostream& os) { sim::write_log(os, log); });
        } else if (*run) {
            const auto approach = parse_approach(run_opts.approach);
            const auto format = parse_format(run_opts.format);
            const auto in = load_inputs(run_opts);
            const auto report = eval::evaluate(in.log, approach, in.config.params);
            emit(run_opts.out, [&](std::ostream& os) { eval::write_report(os, report, format); });
            std::cerr << eval::to_string(approach.name) << ": trans " << report.trans.mean << " +/- "
                      << report.trans.std << " m (std), rot " << report.rot.mean << " +/- " << report.rot.std
                      << " rad (std)\n";
        } else if (*sweep) {
            const auto approach = parse_approach(sweep_opts.approach);
            const auto format = parse_format(sweep_opts.format);
            eval::SweepParameter p;
            if (parameter == "vartheta") {
                p = eval::SweepParameter::vartheta;
            } else if (parameter == "omega") {
                p = eval::SweepParameter::omega;
            } else {
                throw ConfigError("unknown sweep parameter '" + parameter + "'");
            }
            const auto in = load_inputs(sweep_opts);
            const auto table = eval::sweep(in.log, approach, in.config.params, p, values);
            emit(sweep_opts.out, [&](std::ostream& os) { eval::write_sweep(os, table, format); });
            for (const auto& row : table.rows) {
                std::cerr << parameter << "=" << row.value << ": trans " << row.report.trans.mean << " rot "
                          << row.report.rot.mean << '\n';
            }
        } else if (*exp) {
            const auto in = load_inputs(export_opts);
            if (what == "graph") {
                const auto approach = parse_approach(export_opts.approach);
                const auto result = eval::run_pipeline(in.log, approach, in.config.params);
                emit(export_opts.out, [&](std::ostream& os) { graph::write_graph(os, result.graph); });
            } else if (what == "detections") {
                const auto track = eval::detect_objects(in.log, in.config.params.identification);
                std::vector<detect::ObjectDetection> dets;
                for (const auto& d : track) {
                    if (d) dets.push_back(*d);
                }
                emit(export_opts.out, [&](std::ostream& os) { detect::write_detections(os, dets); });
            } else {
                throw ConfigError("unknown export target '" + what + "' (graph or detections)");
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const DegenerateGraphError& e) {
        std::cerr << "degenerate graph: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
