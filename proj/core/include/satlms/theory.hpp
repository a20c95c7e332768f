#pragma once

#include "satlms/config.hpp"
#include "satlms/trajectory.hpp"

namespace satlms::theory {

/// Closed-form solution of the macroscopic dynamics for one configuration.
///
/// With E the type's erf factor and k = mu rho^2:
///   r(t) = sigma_g^2 E (1 - exp(-k t))
///   Q(t) = 2 sigma_g^2 E^2 (1 - exp(-k t)) - A (1 - exp(-k (2 - k) t))
///   A    = [2 sigma_g^2 E^2 - mu (<f(x)^2> + sigma_xi^2)] / (2 - k)
///   MSE(t) = rho^2 A exp(-k (2 - k) t) + mse_floor
/// where mse_floor is the steady-state MSE expression (the constant term of
/// the MSE curve; it is the t -> inf limit only when the config converges).
struct AnalyticSolution {
    ExperimentConfig config{};
    double erf_factor = 0.0; // E
    double a_coeff = 0.0;    // A
    double rate_r = 0.0;     // mu rho^2, relaxation rate of r
    double rate_mse = 0.0;   // mu rho^2 (2 - mu rho^2), relaxation rate of Q and MSE
    double mse_floor = 0.0;  // constant term of MSE(t)
    bool converges = false;

    // t -> inf limits; NaN when the config does not converge.
    double r_inf = 0.0;
    double q_inf = 0.0;
    double mse_inf = 0.0;
};

/// Build the closed-form coefficients. Throws DegenerateStepSize when
/// mu rho^2 = 2 exactly (the A denominator vanishes; the limiting resonant
/// solution is deliberately not implemented). Non-converging configs are
/// accepted: the finite-t formulas stay valid, only the steady-state fields
/// are NaN.
AnalyticSolution solve(const ExperimentConfig& config);

/// Evaluate r(t), Q(t). Exact (0, 0) at t = 0 by construction.
MacroState macro_at(const AnalyticSolution& sol, double t);

/// Evaluate the analytic MSE(t). Single time constant 1/rate_mse.
double mse_at(const AnalyticSolution& sol, double t);

/// Steady-state MSE. Depends on the nonlinearity only through
/// u = threshold / (rho sigma_g), identically for both types:
///   mse = (2 rho^2 sigma_g^2 / (2 - mu rho^2)) *
///         [ erfc(u/sqrt2) (u^2 + erf(u/sqrt2)) - u sqrt(2/pi) exp(-u^2/2) ]
///         + 2 sigma_xi^2 / (2 - mu rho^2).
/// Throws Diverges when mu rho^2 >= 2.
double steady_state_mse(const Nonlinearity& nl, double rho2, double sigma_g2,
                        double sigma_xi2, double mu);

/// Steady-state normalized MSD sigma_g^2 - 2 r_inf + q_inf. Unlike the MSE
/// this does differ between the two nonlinearity types. Throws Diverges for
/// non-converging configs.
double steady_state_nmsd(const AnalyticSolution& sol);

/// Threshold that maximizes the steady-state MSE: the root of
///   (1 + sqrt(2/pi) exp(-u^2/2) / u) erf(u/sqrt2) = 1
/// in u = threshold / (rho sigma_g), bracketed on [1e-8, 10], solved by
/// bisection plus one Newton polish. Returns the threshold (u* rho sigma_g);
/// u* is about 0.8485 and depends on neither mu nor sigma_xi2.
double solve_max_threshold(double rho2, double sigma_g2);

/// Residual of the self-consistency condition above at a given threshold
/// (zero at the maximizer). Exposed for reporting.
double max_threshold_residual(double threshold, double rho2, double sigma_g2);

/// Theory trajectory sampled on a uniform t grid (t = 0, dt, ..., t_end).
Trajectory sample_trajectory(const AnalyticSolution& sol, double t_end, double dt);

} // namespace satlms::theory
