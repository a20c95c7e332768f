#pragma once

#include <vector>

#include "satlms/config.hpp"

namespace satlms {

/// Macroscopic state of the learning dynamics at one time point:
/// r = (1/N) g^T w (overlap with the unknown system) and
/// q = (1/N) w^T w (self-overlap of the adaptive filter).
struct MacroState {
    double r = 0.0;
    double q = 0.0;
};

enum class TrajectorySource { Theory, Simulation };

struct TrajectoryPoint {
    double t = 0.0;
    MacroState state{};
    double mse = 0.0;
    double nmsd = 0.0; // (1/N) ||g - w||^2 = sigma_g^2 - 2r + q
};

/// Time-indexed series of (t, r, q, MSE, normalized MSD), either evaluated
/// from the closed-form theory or reduced from a simulation ensemble.
struct Trajectory {
    std::vector<TrajectoryPoint> points;
    TrajectorySource source = TrajectorySource::Theory;
    ExperimentConfig meta{};
};

} // namespace satlms
