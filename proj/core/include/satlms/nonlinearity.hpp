#pragma once

namespace satlms {

enum class NonlinKind {
    Saturation, // clip to [-S, S]
    DeadZone    // soft threshold: sign(x) * max(|x| - D, 0)
};

/// Output nonlinearity of the unknown system. `threshold` is S for the
/// saturation type and D for the dead-zone type; it must be nonnegative.
/// Saturation with threshold = +infinity is the identity (linear baseline);
/// DeadZone with threshold = 0 is also the identity.
struct Nonlinearity {
    NonlinKind kind = NonlinKind::Saturation;
    double threshold = 1.0;

    /// Apply f to a scalar.
    double operator()(double x) const;

    /// True when f reduces to the identity on all finite inputs.
    bool is_identity() const;
};

Nonlinearity saturation(double s);
Nonlinearity dead_zone(double d);

} // namespace satlms
