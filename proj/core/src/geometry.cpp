#include "objloc/geometry.hpp"

#include <stdexcept>

namespace objloc {

double wrap_angle(double angle) noexcept {
    // std::remainder lands in [-pi, pi]; fold the closed lower end onto +pi.
    double r = std::remainder(angle, kTwoPi);
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

double angle_diff(double a, double b) noexcept { return wrap_angle(a - b); }

Point2::Point2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("Point2: non-finite component");
    }
}

Pose2 compose(const Pose2& a, const Pose2& b) noexcept {
    const double c = std::cos(a.theta());
    const double s = std::sin(a.theta());
    return {a.x() + c * b.x() - s * b.y(), a.y() + s * b.x() + c * b.y(), a.theta() + b.theta()};
}

Pose2 inverse(const Pose2& a) noexcept {
    const double c = std::cos(a.theta());
    const double s = std::sin(a.theta());
    return {-c * a.x() - s * a.y(), s * a.x() - c * a.y(), -a.theta()};
}

Pose2 between(const Pose2& a, const Pose2& b) noexcept {
    const double c = std::cos(a.theta());
    const double s = std::sin(a.theta());
    const double dx = b.x() - a.x();
    const double dy = b.y() - a.y();
    return {c * dx + s * dy, -s * dx + c * dy, b.theta() - a.theta()};
}

Point2 transform_point(const Pose2& frame, const Point2& p) {
    const double c = std::cos(frame.theta());
    const double s = std::sin(frame.theta());
    return {frame.x() + c * p.x() - s * p.y(), frame.y() + s * p.x() + c * p.y()};
}

Point2 inverse_transform_point(const Pose2& frame, const Point2& p) {
    const double c = std::cos(frame.theta());
    const double s = std::sin(frame.theta());
    const double dx = p.x() - frame.x();
    const double dy = p.y() - frame.y();
    return {c * dx + s * dy, -s * dx + c * dy};
}

std::ostream& operator<<(std::ostream& os, const Point2& p) {
    return os << '(' << p.x() << ", " << p.y() << ')';
}

std::ostream& operator<<(std::ostream& os, const Pose2& p) {
    return os << '(' << p.x() << ", " << p.y() << ", " << p.theta() << ')';
}

}  // namespace objloc
