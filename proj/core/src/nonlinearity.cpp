#include "satlms/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

namespace satlms {

double Nonlinearity::operator()(double x) const {
    if (kind == NonlinKind::Saturation) {
        if (std::isinf(threshold)) return x;
        return std::clamp(x, -threshold, threshold);
    }
    // Dead zone. threshold = +inf kills every finite input.
    if (std::isinf(threshold)) return 0.0;
    double mag = std::fabs(x) - threshold;
    return mag > 0.0 ? std::copysign(mag, x) : 0.0;
}

bool Nonlinearity::is_identity() const {
    if (kind == NonlinKind::Saturation) return std::isinf(threshold);
    return threshold == 0.0;
}

Nonlinearity saturation(double s) { return {NonlinKind::Saturation, s}; }
Nonlinearity dead_zone(double d) { return {NonlinKind::DeadZone, d}; }

} // namespace satlms
