#include "objloc/direction.hpp"

#include <cmath>

#include "objloc/errors.hpp"

namespace objloc {

void GateParams::validate() const {
    if (!(vartheta > 0.0)) throw ConfigError("vartheta must be > 0");
    if (!(omega > 0.0)) throw ConfigError("omega must be > 0");
    if (min_displacement < 0.0) throw ConfigError("min_displacement must be >= 0");
}

std::optional<double> moving_direction(const Point2& prev, const Point2& curr, double min_displacement) {
    const double dx = curr.x() - prev.x();
    const double dy = curr.y() - prev.y();
    const double len = std::hypot(dx, dy);
    if (len < min_displacement || len == 0.0) {
        return std::nullopt;
    }
    return wrap_angle(std::atan2(dy, dx));
}

double gate(double direction, double theta_pgo, const GateParams& params) {
    return std::abs(angle_diff(direction, theta_pgo)) <= params.vartheta ? params.omega : 0.0;
}

}  // namespace objloc
