#pragma once

#include <utility>

#include "satlms/config.hpp"
#include "satlms/trajectory.hpp"

namespace satlms::ode {

enum class OdeMethod { RK4, Euler };

/// Fixed-step integration settings in units of t = n / N. The defaults reach
/// the steady state of any converging configuration.
struct OdeSettings {
    double dt = 1e-3;
    double t_end = 200.0;
    OdeMethod method = OdeMethod::RK4;
};

/// Right-hand side of the coupled macroscopic ODEs:
///   dr/dt = mu (<f(x)x> - rho^2 r)
///   dQ/dt = mu^2 rho^2 (<f(x)^2> - 2 <f(x)y> + rho^2 Q + sigma_xi^2)
///           + 2 mu (<f(x)y> - rho^2 Q)
/// with the moments evaluated in closed form at the given state.
std::pair<double, double> rhs(const ExperimentConfig& config, const MacroState& state);

/// Integrate from r(0) = Q(0) = 0, recording every step. The MSE column is
/// assembled from the moments at each step. Used as an independent check of
/// the closed-form solution; it never consults the theory module.
/// Throws NonFiniteState (carrying the time of failure) if the state leaves
/// the finite range, which happens for mu rho^2 >= 2 at large t_end.
Trajectory integrate(const ExperimentConfig& config, const OdeSettings& settings);

} // namespace satlms::ode
