#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "objloc/geometry.hpp"
#include "oracles.hpp"

namespace objloc {
namespace {

void expect_pose_near(const Pose2& a, const Pose2& b, double tol) {
    EXPECT_NEAR(a.x(), b.x(), tol);
    EXPECT_NEAR(a.y(), b.y(), tol);
    EXPECT_NEAR(angle_diff(a.theta(), b.theta()), 0.0, tol);
}

TEST(Geometry, ComposeIdentityAndQuarterTurn) {
    const Pose2 p(1.5, -2.0, 0.7);
    expect_pose_near(compose(Pose2::identity(), p), p, 0.0);
    expect_pose_near(compose(Pose2(1, 0, kPi / 2), Pose2(1, 0, 0)), Pose2(1, 1, kPi / 2), 1e-15);
}

TEST(Geometry, ComposeMatchesHomogeneousMatrices) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Pose2 a = oracle::random_pose(rng), b = oracle::random_pose(rng);
        const Pose2 want = oracle::from_homogeneous(oracle::homogeneous(a) * oracle::homogeneous(b));
        expect_pose_near(compose(a, b), want, 1e-12);
    }
}

TEST(Geometry, ComposeIsAssociative) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const Pose2 a = oracle::random_pose(rng), b = oracle::random_pose(rng), c = oracle::random_pose(rng);
        expect_pose_near(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-12);
    }
}

TEST(Geometry, Inverse) {
    expect_pose_near(inverse(Pose2::identity()), Pose2::identity(), 0.0);
    expect_pose_near(inverse(Pose2(1, 0, 0)), Pose2(-1, 0, 0), 0.0);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const Pose2 a = oracle::random_pose(rng);
        expect_pose_near(compose(a, inverse(a)), Pose2::identity(), 1e-12);
        expect_pose_near(inverse(inverse(a)), a, 1e-12);
        expect_pose_near(inverse(a), oracle::from_homogeneous(oracle::homogeneous(a).inverse()), 1e-12);
    }
}

TEST(Geometry, Between) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const Pose2 a = oracle::random_pose(rng), b = oracle::random_pose(rng);
        expect_pose_near(compose(a, between(a, b)), b, 1e-12);
    }
}

TEST(Geometry, TransformPoint) {
    const Point2 p(0.3, -4.0);
    EXPECT_EQ(transform_point(Pose2::identity(), p), p);
    const Point2 q = transform_point(Pose2(0, 0, kPi / 2), Point2(1, 0));
    EXPECT_NEAR(q.x(), 0.0, 1e-15);
    EXPECT_NEAR(q.y(), 1.0, 1e-15);

    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int i = 0; i < 1000; ++i) {
        const Pose2 f = oracle::random_pose(rng);
        const Point2 pt(u(rng), u(rng));
        const Point2 want = oracle::apply(oracle::homogeneous(f), pt);
        const Point2 got = transform_point(f, pt);
        EXPECT_NEAR(got.x(), want.x(), 1e-12);
        EXPECT_NEAR(got.y(), want.y(), 1e-12);
        const Point2 back = inverse_transform_point(f, got);
        EXPECT_NEAR(back.x(), pt.x(), 1e-12);
        EXPECT_NEAR(back.y(), pt.y(), 1e-12);
    }
}

TEST(Geometry, AngleDiffExamples) {
    EXPECT_NEAR(angle_diff(0.2, 0.1), 0.1, 1e-15);
    EXPECT_EQ(angle_diff(kPi, -kPi), 0.0);
    EXPECT_NEAR(angle_diff(3.1, -3.1), 6.2 - kTwoPi, 1e-12);
    EXPECT_NEAR(angle_diff(3.1, -3.1), -0.0832, 1e-4);
}

TEST(Geometry, WrapRangeAndSeam) {
    EXPECT_EQ(wrap_angle(kPi), kPi);
    EXPECT_EQ(wrap_angle(-kPi), kPi);
    EXPECT_EQ(Pose2(0, 0, -kPi).theta(), kPi);
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 10000; ++i) {
        const double a = u(rng), b = u(rng);
        const double d = angle_diff(a, b);
        EXPECT_LE(std::abs(d), kPi);
        EXPECT_GT(d, -kPi);
        EXPECT_NEAR(d, oracle::slow_wrap(a - b), 1e-9);
        const Pose2 p(0, 0, a);
        EXPECT_GT(p.theta(), -kPi);
        EXPECT_LE(p.theta(), kPi);
    }
}

TEST(Geometry, PointRejectsNonFinite) {
    EXPECT_THROW(Point2(std::numeric_limits<double>::quiet_NaN(), 0.0), std::invalid_argument);
    EXPECT_THROW(Point2(0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

}  // namespace
}  // namespace objloc
