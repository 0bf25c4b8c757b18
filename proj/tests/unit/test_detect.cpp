#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "objloc/detect/clustering.hpp"
#include "objloc/detect/identify.hpp"
#include "objloc/sim/scenario.hpp"
#include "objloc/sim/sensors.hpp"
#include "oracles.hpp"

namespace objloc::detect {
namespace {

using Partition = std::set<std::vector<std::pair<double, double>>>;

Partition as_partition(const std::vector<Cluster>& clusters) {
    Partition out;
    for (const auto& c : clusters) {
        std::vector<std::pair<double, double>> m;
        for (const auto& p : c.members) m.emplace_back(p.x(), p.y());
        std::sort(m.begin(), m.end());
        out.insert(m);
    }
    return out;
}

Partition oracle_partition(const std::vector<Point2>& pts, double res, const std::vector<double>& bands,
                           std::size_t min_size) {
    const auto labels = oracle::union_find_labels(pts, res, bands);
    std::map<int, std::vector<std::pair<double, double>>> groups;
    for (std::size_t i = 0; i < pts.size(); ++i) groups[labels[i]].emplace_back(pts[i].x(), pts[i].y());
    Partition out;
    for (auto& [k, m] : groups) {
        if (m.size() < min_size) continue;
        std::sort(m.begin(), m.end());
        out.insert(m);
    }
    return out;
}

// Scan-like clouds: a few arcs and segments plus scattered noise points.
std::vector<Point2> random_cloud(std::mt19937_64& rng, std::size_t max_points) {
    std::uniform_int_distribution<std::size_t> count(1, max_points);
    std::uniform_real_distribution<double> u(-12, 12), jitter(-0.05, 0.05), unit(0, 1);
    const std::size_t n = count(rng);
    std::vector<Point2> pts;
    while (pts.size() < n) {
        if (unit(rng) < 0.3) {
            pts.emplace_back(u(rng), u(rng));
            continue;
        }
        const Point2 c(u(rng), u(rng));
        const double r = 0.1 + unit(rng) * 0.5;
        const std::size_t k = std::min<std::size_t>(n - pts.size(), 5 + static_cast<std::size_t>(unit(rng) * 40));
        for (std::size_t i = 0; i < k; ++i) {
            const double a = unit(rng) * kTwoPi;
            pts.emplace_back(c.x() + r * std::cos(a) + jitter(rng), c.y() + r * std::sin(a) + jitter(rng));
        }
    }
    return pts;
}

TEST(Clustering, Examples) {
    const std::vector<double> bands(std::begin(kDefaultBandEdges), std::end(kDefaultBandEdges));
    auto one = adaptive_cluster({0, {Point2(1, 2)}}, 0.01, bands, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].centroid, Point2(1, 2));

    const double res = 0.25 * kPi / 180.0;
    const std::vector<double> wide{0.0, 10.0, 20.0};
    EXPECT_NEAR(link_distance(10.0, res, wide), 0.0436, 1e-4);
    auto two = adaptive_cluster({0, {Point2(10, 0), Point2(std::sqrt(99.0), 1.0)}}, res, wide, 1);
    EXPECT_EQ(two.size(), 2u);

    EXPECT_TRUE(adaptive_cluster({}, res).empty());
    EXPECT_THROW((void)adaptive_cluster({0, {Point2(1, 1)}}, 0.0), std::invalid_argument);
    const std::vector<double> bad{0.0, 2.0, 1.0};
    EXPECT_THROW((void)adaptive_cluster({0, {Point2(1, 1)}}, res, bad), std::invalid_argument);
}

TEST(Clustering, MatchesUnionFindOracle) {
    std::mt19937_64 rng(2024);
    const std::vector<double> bands{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_cloud(rng, 2000);
        const double res = (0.2 + 0.1 * (trial % 10)) * kPi / 180.0;
        const std::size_t min_size = 1 + trial % 4;
        const auto got = adaptive_cluster({0, pts}, res, bands, min_size);
        EXPECT_EQ(as_partition(got), oracle_partition(pts, res, bands, min_size)) << "cloud " << trial;
    }
}

TEST(Clustering, InvariantsAndOrderIndependence) {
    std::mt19937_64 rng(5);
    const std::vector<double> bands{0.0, 2.0, 8.0, 16.0};
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_cloud(rng, 600);
        const double res = 0.5 * kPi / 180.0;
        const auto a = adaptive_cluster({0, pts}, res, bands, 3);
        std::shuffle(pts.begin(), pts.end(), rng);
        const auto b = adaptive_cluster({0, pts}, res, bands, 3);
        ASSERT_EQ(a.size(), b.size());
        std::size_t covered = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].members, b[i].members);
            EXPECT_NEAR(a[i].centroid.x(), b[i].centroid.x(), 1e-12);
            EXPECT_NEAR(a[i].centroid.y(), b[i].centroid.y(), 1e-12);
            EXPECT_GE(a[i].point_count(), 3u);
            double sx = 0, sy = 0;
            for (const auto& p : a[i].members) sx += p.x(), sy += p.y();
            EXPECT_NEAR(a[i].centroid.x(), sx / static_cast<double>(a[i].point_count()), 1e-12);
            EXPECT_NEAR(a[i].centroid.y(), sy / static_cast<double>(a[i].point_count()), 1e-12);
            if (i > 0) {
                EXPECT_LE(a[i - 1].range(), a[i].range());
            }
            covered += a[i].point_count();
        }
        EXPECT_LE(covered, pts.size());
    }
}

Cluster at(double x, double y) { return {Point2(x, y), {Point2(x, y)}}; }

TEST(DetectDynamic, Examples) {
    const std::vector<Cluster> scene{at(1, 1), at(3, 0), at(-2, 4)};
    EXPECT_TRUE(detect_dynamic(scene, scene, 0.05, 0.5).empty());

    auto moved = scene;
    moved[1] = at(3.2, 0);
    const auto dyn = detect_dynamic(scene, moved, 0.05, 0.5);
    ASSERT_EQ(dyn.size(), 1u);
    EXPECT_EQ(dyn[0].centroid, Point2(3.2, 0));

    auto appeared = scene;
    appeared.push_back(at(7, 7));
    const auto fresh = detect_dynamic(scene, appeared, 0.05, 0.5);
    ASSERT_EQ(fresh.size(), 1u);
    EXPECT_EQ(fresh[0].centroid, Point2(7, 7));
}

TEST(GateByUwb, Examples) {
    const std::vector<Cluster> three{at(2.0, 0), at(0, 4.9), at(7.1, 0)};
    const auto d = gate_by_uwb(three, {0, 5.0, true}, 0.3);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->position, Point2(0, 4.9));
    EXPECT_NEAR(d->range_gap, 0.1, 1e-12);

    EXPECT_FALSE(gate_by_uwb({at(2.0, 0), at(7.1, 0)}, {0, 5.0, true}, 0.3));
    EXPECT_FALSE(gate_by_uwb({}, {0, 5.0, true}, 0.3));

    // Equal gaps: the nearer cluster wins.
    const auto tie = gate_by_uwb({at(5.2, 0), at(0, 4.8)}, {0, 5.0, true}, 0.3);
    ASSERT_TRUE(tie);
    EXPECT_NEAR(tie->position.norm(), 4.8, 1e-12);
}

TEST(GateByUwb, NeverExceedsTolerance) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-8, 8), r(0, 10), tol(0.05, 0.6);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Cluster> cs;
        for (int k = 0; k < 5; ++k) cs.push_back(at(u(rng), u(rng)));
        const double t = tol(rng);
        if (auto d = gate_by_uwb(cs, {0, r(rng), true}, t)) {
            EXPECT_LE(d->range_gap, t);
        }
    }
}

// Robot parked in a walled box, one disc crossing in front of it.
struct Scene {
    sim::WorldMap world;
    sim::AgentTrajectory robot, object;
};

// The disc moves 0.06 m per tick along x = 10.2, 2.2 to 3 m from the robot.
Scene mover_scene(std::size_t ticks, double footprint, bool walls = true) {
    Scene s;
    s.world.width = 16;
    s.world.height = 12;
    if (walls) {
        s.world.static_obstacles = {{{0, 0}, {16, 0}}, {{16, 0}, {16, 12}}, {{16, 12}, {0, 12}}, {{0, 12}, {0, 0}}};
    }
    s.robot.poses.assign(ticks, Pose2(8, 6, 0));
    s.object.footprint_radius = footprint;
    for (std::size_t i = 0; i < ticks; ++i) {
        const double y = 4.0 + 0.06 * static_cast<double>(i % 60);
        s.object.poses.emplace_back(10.2, y, kPi / 2);
    }
    return s;
}

TEST(Identify, StaticWorldGivesNothing) {
    Scene s = mover_scene(3, 0.0);
    auto cfg = sim::SensorConfig{}.noise_free();
    const auto a = sim::raycast_scan(s.world, s.robot.poses[0], cfg, 0);
    const auto b = sim::raycast_scan(s.world, s.robot.poses[0], cfg, 1);
    EXPECT_FALSE(identify(a, b, {1, 3.0, true}, IdentificationParams{}));
}

TEST(Identify, NoiseFreeMoverWithinLinkDistance) {
    // A wide disc shows only its near arc, whose centroid sits up to ~0.85 r
    // short of the centre; keep r small enough for that to stay within d*.
    const std::size_t ticks = 60;
    Scene s = mover_scene(ticks, 0.03);
    auto cfg = sim::SensorConfig{}.noise_free();
    const auto log = sim::run_scenario(s.world, s.robot, s.object, cfg);
    IdentificationParams params;
    params.angular_resolution = cfg.lidar_angular_resolution;
    params.min_cluster_size = 2;
    ObjectIdentifier id(params);
    int hits = 0;
    for (std::size_t t = 0; t < ticks; ++t) {
        const auto det = id.process(log.scans[t], &log.ranges[t], Pose2::identity());
        if (t == 0) {
            EXPECT_FALSE(det);
            continue;
        }
        if (!log.ranges[t].los || !det) continue;
        ++hits;
        const Point2 truth = inverse_transform_point(log.truth[t].robot, log.truth[t].object.position());
        const double d_star = link_distance(truth.norm(), params.angular_resolution, params.band_edges);
        EXPECT_LE(distance(det->position, truth), d_star) << "tick " << t;
    }
    EXPECT_GT(hits, 50);
}

TEST(Identify, OnlyTheMoverIsFlagged) {
    // The wall sits where the mover never shadows it.
    const std::size_t ticks = 100;
    Scene s = mover_scene(ticks, 0.15, false);
    s.world.static_obstacles.push_back({{4.0, 5.0}, {4.0, 7.5}});
    auto cfg = sim::SensorConfig{}.noise_free();
    const auto log = sim::run_scenario(s.world, s.robot, s.object, cfg);
    IdentificationParams params;
    params.band_edges = {0.0, 2.0, 8.0, 16.0};
    for (std::size_t t = 1; t < ticks; ++t) {
        const auto prev = adaptive_cluster(log.scans[t - 1], params.angular_resolution, params.band_edges);
        const auto curr = adaptive_cluster(log.scans[t], params.angular_resolution, params.band_edges);
        const Point2 truth = inverse_transform_point(log.truth[t].robot, log.truth[t].object.position());
        for (const auto& c : detect_dynamic(prev, curr, params.motion_threshold, params.association_radius)) {
            EXPECT_LT(distance(c.centroid, truth), 0.3) << "tick " << t;
        }
    }
}

TEST(Identify, TwoMoversPicksTheObject) {
    const std::size_t ticks = 150;
    Scene s = mover_scene(ticks, 0.15);
    sim::DynamicObstacle other;
    other.radius = 0.15;
    for (std::size_t i = 0; i < ticks; ++i) other.path.emplace_back(3.0 + 0.03 * static_cast<double>(i), 9.5, 0.0);
    s.world.dynamic_obstacles.push_back(other);
    sim::SensorConfig cfg;
    cfg.rng_seed = 4;
    cfg.uwb_nlos_bias = 0.0;
    const auto log = sim::run_scenario(s.world, s.robot, s.object, cfg);
    IdentificationParams params;
    params.band_edges = {0.0, 2.0, 8.0, 16.0};
    ObjectIdentifier id(params);
    // Identity errors and plain misses (mover below the motion threshold under
    // range noise) are counted apart.
    int los = 0, detected = 0, correct = 0;
    for (std::size_t t = 0; t < ticks; ++t) {
        const auto det = id.process(log.scans[t], &log.ranges[t], Pose2::identity());
        if (t == 0 || !log.ranges[t].los) continue;
        ++los;
        if (!det) continue;
        ++detected;
        const Point2 truth = inverse_transform_point(log.truth[t].robot, log.truth[t].object.position());
        if (distance(det->position, truth) < 0.3) ++correct;
    }
    EXPECT_GE(correct, 0.99 * detected);
    EXPECT_GE(detected, 0.85 * los);
}

TEST(Identify, NlosBiasIsRejected) {
    Scene s = mover_scene(2, 0.15);
    auto cfg = sim::SensorConfig{}.noise_free();
    const auto log = sim::run_scenario(s.world, s.robot, s.object, cfg);
    RangeMeasurement biased = log.ranges[1];
    biased.range += 0.5;
    EXPECT_FALSE(identify(log.scans[0], log.scans[1], biased, IdentificationParams{}));
    EXPECT_TRUE(identify(log.scans[0], log.scans[1], log.ranges[1], IdentificationParams{}));
}

TEST(Identify, DetectionRecordsRoundTrip) {
    const std::vector<ObjectDetection> dets{{3, Point2(1.25, -0.5), 1.4, 0.05}, {9, Point2(0.1, 2.0), 2.0, 0.0}};
    std::ostringstream os;
    write_detections(os, dets);
    std::istringstream is(os.str());
    EXPECT_EQ(read_detections(is), dets);
}

}  // namespace
}  // namespace objloc::detect
