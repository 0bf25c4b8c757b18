#include "objloc/eval/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "objloc/errors.hpp"

namespace objloc::eval {

using json = nlohmann::json;

namespace {

constexpr double kDeg = kPi / 180.0;

/// Rejects keys outside `allowed` so typos do not silently fall back to defaults.
void check_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const auto a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get(const json& j, const char* key, std::string_view where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& ex) {
        throw ConfigError(std::string(where) + "." + key + ": " + ex.what());
    }
}

template <typename T>
void maybe(const json& j, const char* key, std::string_view where, T& out) {
    if (j.contains(key)) out = get<T>(j, key, where);
}

Point2 parse_point(const json& j, std::string_view where) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(where) + ": expected [x, y]");
    try {
        return {j[0].get<double>(), j[1].get<double>()};
    } catch (const std::exception& ex) {
        throw ConfigError(std::string(where) + ": " + ex.what());
    }
}

Pose2 parse_pose(const json& j, std::string_view where) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(where) + ": expected [x, y, theta]");
    try {
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    } catch (const std::exception& ex) {
        throw ConfigError(std::string(where) + ": " + ex.what());
    }
}

sim::TrajectorySpec parse_trajectory(const json& j, const std::string& where) {
    const auto type = get<std::string>(j, "type", where);
    if (type == "static") {
        check_keys(j, where, {"type", "pose"});
        return sim::StaticPath{parse_pose(j.at("pose"), where + ".pose")};
    }
    if (type == "waypoints") {
        check_keys(j, where, {"type", "points", "speed", "max_turn_rate", "arrival_radius", "loop", "initial_heading"});
        sim::WaypointPath w;
        const json& pts = j.contains("points") ? j.at("points") : json();
        if (!pts.is_array() || pts.empty()) throw ConfigError(where + ".points: expected a non-empty array");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            w.points.push_back(parse_point(pts[i], where + ".points[" + std::to_string(i) + "]"));
        }
        maybe(j, "speed", where, w.speed);
        maybe(j, "max_turn_rate", where, w.max_turn_rate);
        maybe(j, "arrival_radius", where, w.arrival_radius);
        maybe(j, "loop", where, w.loop);
        if (j.contains("initial_heading")) w.initial_heading = get<double>(j, "initial_heading", where);
        if (!(w.speed >= 0.0) || !(w.max_turn_rate > 0.0) || !(w.arrival_radius > 0.0)) {
            throw ConfigError(where + ": speed must be >= 0, turn rate and arrival radius > 0");
        }
        return w;
    }
    throw ConfigError(where + ".type: unknown trajectory type '" + type + "'");
}

AgentSpec parse_agent(const json& j, const std::string& where) {
    check_keys(j, where, {"trajectory", "footprint_radius"});
    AgentSpec a;
    if (!j.contains("trajectory")) throw ConfigError(where + ": missing trajectory");
    a.trajectory = parse_trajectory(j.at("trajectory"), where + ".trajectory");
    maybe(j, "footprint_radius", where, a.footprint_radius);
    if (!(a.footprint_radius >= 0.0)) throw ConfigError(where + ".footprint_radius must be >= 0");
    return a;
}

void parse_world(const json& j, ScenarioConfig& cfg) {
    check_keys(j, "world", {"width", "height", "boundary_walls", "walls", "distractors"});
    cfg.world.width = get<double>(j, "width", "world");
    cfg.world.height = get<double>(j, "height", "world");
    if (!(cfg.world.width > 0.0) || !(cfg.world.height > 0.0)) throw ConfigError("world: size must be positive");
    bool boundary = true;
    maybe(j, "boundary_walls", "world", boundary);
    if (boundary) {
        const double w = cfg.world.width;
        const double h = cfg.world.height;
        cfg.world.static_obstacles.push_back({{0, 0}, {w, 0}});
        cfg.world.static_obstacles.push_back({{w, 0}, {w, h}});
        cfg.world.static_obstacles.push_back({{w, h}, {0, h}});
        cfg.world.static_obstacles.push_back({{0, h}, {0, 0}});
    }
    if (j.contains("walls")) {
        const json& walls = j.at("walls");
        if (!walls.is_array()) throw ConfigError("world.walls: expected an array");
        for (std::size_t i = 0; i < walls.size(); ++i) {
            const std::string where = "world.walls[" + std::to_string(i) + "]";
            const json& s = walls[i];
            if (!s.is_array() || s.size() != 2) throw ConfigError(where + ": expected [[x, y], [x, y]]");
            cfg.world.static_obstacles.push_back({parse_point(s[0], where), parse_point(s[1], where)});
        }
    }
    if (j.contains("distractors")) {
        const json& ds = j.at("distractors");
        if (!ds.is_array()) throw ConfigError("world.distractors: expected an array");
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const std::string where = "world.distractors[" + std::to_string(i) + "]";
            check_keys(ds[i], where, {"radius", "trajectory"});
            DistractorSpec d;
            d.radius = get<double>(ds[i], "radius", where);
            if (!(d.radius > 0.0)) throw ConfigError(where + ".radius must be > 0");
            if (!ds[i].contains("trajectory")) throw ConfigError(where + ": missing trajectory");
            d.trajectory = parse_trajectory(ds[i].at("trajectory"), where + ".trajectory");
            cfg.distractors.push_back(std::move(d));
        }
    }
}

void parse_sensors(const json& j, sim::SensorConfig& s) {
    const char* w = "sensors";
    check_keys(j, w,
               {"lidar_angular_resolution_deg", "lidar_max_range", "lidar_range_noise_sigma", "lidar_rate_divisor",
                "uwb_noise_sigma", "uwb_nlos_bias", "uwb_rate_divisor", "odom_trans_noise_sigma",
                "odom_rot_noise_sigma", "exact_stationary_odometry", "seed"});
    if (j.contains("lidar_angular_resolution_deg")) {
        s.lidar_angular_resolution = get<double>(j, "lidar_angular_resolution_deg", w) * kDeg;
    }
    maybe(j, "lidar_max_range", w, s.lidar_max_range);
    maybe(j, "lidar_range_noise_sigma", w, s.lidar_range_noise_sigma);
    maybe(j, "lidar_rate_divisor", w, s.lidar_rate_divisor);
    maybe(j, "uwb_noise_sigma", w, s.uwb_noise_sigma);
    maybe(j, "uwb_nlos_bias", w, s.uwb_nlos_bias);
    maybe(j, "uwb_rate_divisor", w, s.uwb_rate_divisor);
    maybe(j, "odom_trans_noise_sigma", w, s.odom_trans_noise_sigma);
    maybe(j, "odom_rot_noise_sigma", w, s.odom_rot_noise_sigma);
    maybe(j, "exact_stationary_odometry", w, s.exact_stationary_odometry);
    maybe(j, "seed", w, s.rng_seed);
}

/// Returns true when the identification angular resolution was set explicitly.
bool parse_params(const json& j, PipelineParams& p) {
    check_keys(j, "params", {"identification", "gate", "graph"});
    bool explicit_resolution = false;
    if (j.contains("identification")) {
        const json& id = j.at("identification");
        const char* w = "params.identification";
        check_keys(id, w,
                   {"angular_resolution_deg", "band_edges", "min_cluster_size", "motion_threshold",
                    "association_radius", "match_tolerance"});
        if (id.contains("angular_resolution_deg")) {
            p.identification.angular_resolution = get<double>(id, "angular_resolution_deg", w) * kDeg;
            explicit_resolution = true;
        }
        maybe(id, "band_edges", w, p.identification.band_edges);
        maybe(id, "min_cluster_size", w, p.identification.min_cluster_size);
        maybe(id, "motion_threshold", w, p.identification.motion_threshold);
        maybe(id, "association_radius", w, p.identification.association_radius);
        maybe(id, "match_tolerance", w, p.identification.match_tolerance);
    }
    if (j.contains("gate")) {
        const json& g = j.at("gate");
        const char* w = "params.gate";
        check_keys(g, w, {"vartheta", "omega", "min_displacement"});
        maybe(g, "vartheta", w, p.gate.vartheta);
        maybe(g, "omega", w, p.gate.omega);
        maybe(g, "min_displacement", w, p.gate.min_displacement);
    }
    if (j.contains("graph")) {
        const json& g = j.at("graph");
        const char* w = "params.graph";
        check_keys(g, w,
                   {"odom_trans_information", "odom_rot_information", "uwb_information",
                    "lidar_position_information", "window", "iterations_per_tick", "final_batch",
                    "final_iterations", "convergence_tol", "huber_delta"});
        maybe(g, "odom_trans_information", w, p.graph.odom_trans_information);
        maybe(g, "odom_rot_information", w, p.graph.odom_rot_information);
        maybe(g, "uwb_information", w, p.graph.uwb_information);
        maybe(g, "lidar_position_information", w, p.graph.lidar_position_information);
        if (g.contains("window")) {
            if (g.at("window").is_null()) {
                p.graph.window.reset();
            } else {
                p.graph.window = get<Tick>(g, "window", w);
            }
        }
        maybe(g, "iterations_per_tick", w, p.graph.iterations_per_tick);
        maybe(g, "final_batch", w, p.graph.final_batch);
        maybe(g, "final_iterations", w, p.graph.final_iterations);
        maybe(g, "convergence_tol", w, p.graph.convergence_tol);
        if (g.contains("huber_delta") && !g.at("huber_delta").is_null()) {
            p.graph.huber_delta = get<double>(g, "huber_delta", w);
        }
    }
    return explicit_resolution;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + ex.what());
    }
    check_keys(root, "scenario", {"name", "ticks", "dt", "world", "robot", "object", "sensors", "params"});

    ScenarioConfig cfg;
    maybe(root, "name", "scenario", cfg.name);
    const auto ticks = get<std::int64_t>(root, "ticks", "scenario");
    if (ticks < 1) throw ConfigError("scenario.ticks must be >= 1");
    cfg.ticks = static_cast<std::size_t>(ticks);
    maybe(root, "dt", "scenario", cfg.dt);
    if (!(cfg.dt > 0.0)) throw ConfigError("scenario.dt must be > 0");

    for (const char* key : {"world", "robot", "object"}) {
        if (!root.contains(key)) throw ConfigError(std::string("scenario: missing '") + key + "'");
    }
    parse_world(root.at("world"), cfg);
    cfg.robot = parse_agent(root.at("robot"), "robot");
    cfg.object = parse_agent(root.at("object"), "object");
    if (root.contains("sensors")) parse_sensors(root.at("sensors"), cfg.sensors);
    cfg.sensors.validate();

    bool explicit_resolution = false;
    if (root.contains("params")) explicit_resolution = parse_params(root.at("params"), cfg.params);
    if (!explicit_resolution) cfg.params.identification.angular_resolution = cfg.sensors.lidar_angular_resolution;
    cfg.params.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_scenario(ss.str());
}

sim::SensorLog simulate(const ScenarioConfig& config) {
    sim::WorldMap world = config.world;
    for (const auto& d : config.distractors) {
        world.dynamic_obstacles.push_back({d.radius, sim::generate_trajectory(d.trajectory, config.ticks, config.dt)});
    }
    const sim::AgentTrajectory robot{sim::generate_trajectory(config.robot.trajectory, config.ticks, config.dt),
                                     config.robot.footprint_radius};
    const sim::AgentTrajectory object{sim::generate_trajectory(config.object.trajectory, config.ticks, config.dt),
                                      config.object.footprint_radius};
    return sim::run_scenario(world, robot, object, config.sensors, config.dt);
}

}  // namespace objloc::eval
