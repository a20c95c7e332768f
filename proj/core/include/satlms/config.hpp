#pragma once

#include <cstddef>

#include "satlms/nonlinearity.hpp"

namespace satlms {

enum class Dist {
    Gaussian,
    Uniform,   // uniform on [-sqrt(3) s, sqrt(3) s], variance s^2
    Rademacher // +-s equiprobable, variance s^2
};

/// All scalar parameters of one theory or simulation scenario.
///
/// rho2 is the scaled input power rho^2 = N sigma^2, held fixed as the tap
/// count N grows; the per-sample input variance is rho2 / taps. The analysis
/// treats t = n / N as continuous time.
struct ExperimentConfig {
    double rho2 = 1.0;      // input power rho^2 = N sigma^2
    double sigma_g2 = 1.0;  // unknown-system power (1/N) ||g||^2
    double sigma_xi2 = 0.0; // background-noise variance
    double mu = 1.0;        // step size
    std::size_t taps = 400; // N
    Nonlinearity nonlinearity{};
    Dist input_dist = Dist::Gaussian;
    Dist noise_dist = Dist::Gaussian;

    /// Per-sample input variance sigma^2 = rho^2 / N.
    double input_variance() const { return rho2 / static_cast<double>(taps); }

    /// Mean-square convergence requires 0 < mu < 2 / rho^2.
    bool converges() const { return mu > 0.0 && mu * rho2 < 2.0; }
};

struct ValidationReport {
    bool converges = true; // false is a warning, not an error
};

/// Check all config invariants. Throws NonPositiveParameter (naming the
/// offending field) or NegativeThreshold. A non-converging step size is
/// legal (divergence is a legitimate experiment) and only clears the
/// `converges` flag in the report.
ValidationReport validate(const ExperimentConfig& config);

} // namespace satlms
