#pragma once

#include "satlms/config.hpp"
#include "satlms/nonlinearity.hpp"
#include "satlms/trajectory.hpp"

namespace satlms::moments {

/// The five bivariate-Gaussian expectations the macroscopic dynamics run on,
/// taken over (x, y) jointly zero-mean Gaussian with covariance
///   Var x = rho^2 sigma_g^2,  Cov(x,y) = rho^2 r,  Var y = rho^2 Q.
struct GaussianMoments {
    double fx2 = 0.0; // < f(x)^2 >
    double y2 = 0.0;  // < y^2 >   = rho^2 Q
    double fxy = 0.0; // < f(x) y >
    double xy = 0.0;  // < x y >   = rho^2 r
    double fxx = 0.0; // < f(x) x >
};

/// Closed forms of the five moments.
///
/// With c = rho^2 sigma_g^2 and u = threshold / sqrt(2c):
///   saturation: fx2 = S^2 erfc(u) + c erf(u) - S sqrt(2c/pi) exp(-u^2),
///               fxy = rho^2 r erf(u),  fxx = c erf(u);
///   dead zone:  fx2 = (D^2 + c) erfc(u) - D sqrt(2c/pi) exp(-u^2),
///               fxy = rho^2 r erfc(u), fxx = c erfc(u).
/// An infinite saturation threshold gives the linear moments; an infinite
/// dead-zone threshold zeroes every f-moment.
GaussianMoments closed_form_moments(const Nonlinearity& nl, double rho2,
                                    double sigma_g2, const MacroState& state);

/// Independent numerical oracle for the same five expectations.
///
/// Integrates over x with composite Gauss-Legendre panels, split at the
/// nonlinearity's kinks (x < -threshold, |x| <= threshold, x > threshold),
/// and over y with Gauss-Hermite nodes centered on the conditional Gaussian
/// y | x. A degenerate covariance (Q = r^2 / sigma_g^2) collapses the y
/// dimension onto the conditional mean. `nodes` is the order per panel;
/// nodes >= 64 agrees with the closed forms to better than 1e-8 absolute
/// when rho^2 sigma_g^2 = O(1).
///
/// Throws NotPositiveSemidefinite when r^2 > Q sigma_g^2.
GaussianMoments oracle_moments(const Nonlinearity& nl, double rho2,
                               double sigma_g2, const MacroState& state,
                               int nodes = 64);

/// Mean square error assembled from the moments:
/// <e^2> = <f(x)^2> + <y^2> - 2 <f(x) y> + sigma_xi^2.
double mse_from_moments(const GaussianMoments& m, double sigma_xi2);

/// The type's erf factor E: the effective linear gain of f under the input
/// Gaussian. erf(u) for saturation, erfc(u) for dead zone, u as above.
double erf_factor(const Nonlinearity& nl, double rho2, double sigma_g2);

} // namespace satlms::moments
