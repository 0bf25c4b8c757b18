#pragma once

#include <cmath>
#include <numbers>
#include <ostream>

namespace objloc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle) noexcept;

/// Returns (a - b) wrapped into (-pi, pi].
double angle_diff(double a, double b) noexcept;

/// A point in the plane. Components are always finite.
class Point2 {
  public:
    constexpr Point2() noexcept = default;
    /// Throws std::invalid_argument on NaN or infinite components.
    Point2(double x, double y);

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }

    [[nodiscard]] double norm() const noexcept { return std::hypot(x_, y_); }
    [[nodiscard]] double squared_norm() const noexcept { return x_ * x_ + y_ * y_; }

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x_ + b.x_, a.y_ + b.y_}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x_ - b.x_, a.y_ - b.y_}; }
    friend Point2 operator*(double s, const Point2& p) { return {s * p.x_, s * p.y_}; }
    friend bool operator==(const Point2&, const Point2&) = default;

  private:
    double x_ = 0.0;
    double y_ = 0.0;
};

[[nodiscard]] inline double distance(const Point2& a, const Point2& b) noexcept {
    return std::hypot(a.x() - b.x(), a.y() - b.y());
}

/// Rigid 2D transform (x, y, theta). theta is kept in (-pi, pi].
class Pose2 {
  public:
    constexpr Pose2() noexcept = default;
    Pose2(double x, double y, double theta) noexcept : x_(x), y_(y), theta_(wrap_angle(theta)) {}
    Pose2(const Point2& position, double theta) noexcept
        : Pose2(position.x(), position.y(), theta) {}

    static constexpr Pose2 identity() noexcept { return {}; }

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] Point2 position() const { return {x_, y_}; }

    friend bool operator==(const Pose2&, const Pose2&) = default;

  private:
    double x_ = 0.0;
    double y_ = 0.0;
    double theta_ = 0.0;
};

/// a ⊕ b: applies b in the frame of a.
[[nodiscard]] Pose2 compose(const Pose2& a, const Pose2& b) noexcept;

[[nodiscard]] Pose2 inverse(const Pose2& a) noexcept;

/// inverse(a) ⊕ b, the pose of b expressed in the frame of a.
[[nodiscard]] Pose2 between(const Pose2& a, const Pose2& b) noexcept;

/// Rotates p by frame.theta, then translates by frame's position.
[[nodiscard]] Point2 transform_point(const Pose2& frame, const Point2& p);

/// Expresses a world point in the body frame of `frame`.
[[nodiscard]] Point2 inverse_transform_point(const Pose2& frame, const Point2& p);

std::ostream& operator<<(std::ostream& os, const Point2& p);
std::ostream& operator<<(std::ostream& os, const Pose2& p);

}  // namespace objloc
