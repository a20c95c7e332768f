#include "satlms/theory.hpp"

#include <cmath>
#include <limits>

#include "satlms/erf.hpp"
#include "satlms/errors.hpp"
#include "satlms/moments.hpp"

namespace satlms::theory {
namespace {

constexpr double kSqrtTwoOverPi = 0.79788456080286535588; // sqrt(2/pi)

// The bracketed steady-state factor in u = threshold / (rho sigma_g):
//   erfc(u/sqrt2) (u^2 + erf(u/sqrt2)) - u sqrt(2/pi) exp(-u^2/2)
// Vanishes at u = 0 and as u -> inf.
double steady_bracket(double u) {
    if (std::isinf(u)) return 0.0;
    double s = u / std::sqrt(2.0);
    return satlms::erfc(s) * (u * u + satlms::erf(s)) -
           u * kSqrtTwoOverPi * std::exp(-0.5 * u * u);
}

} // namespace

AnalyticSolution solve(const ExperimentConfig& config) {
    validate(config);
    const double k = config.mu * config.rho2;
    if (k == 2.0) throw DegenerateStepSize();

    AnalyticSolution sol;
    sol.config = config;
    sol.converges = config.converges();
    sol.rate_r = k;
    sol.rate_mse = k * (2.0 - k);
    sol.erf_factor = moments::erf_factor(config.nonlinearity, config.rho2, config.sigma_g2);

    // fx2 is independent of (r, Q), so any state works here.
    const double fx2 =
        moments::closed_form_moments(config.nonlinearity, config.rho2,
                                     config.sigma_g2, MacroState{0.0, 0.0})
            .fx2;
    const double e2term = 2.0 * config.sigma_g2 * sol.erf_factor * sol.erf_factor;
    sol.a_coeff = (e2term - config.mu * (fx2 + config.sigma_xi2)) / (2.0 - k);

    const double u = config.nonlinearity.threshold /
                     std::sqrt(config.rho2 * config.sigma_g2);
    sol.mse_floor = (2.0 * config.rho2 * config.sigma_g2 * steady_bracket(u) +
                     2.0 * config.sigma_xi2) /
                    (2.0 - k);

    if (sol.converges) {
        sol.r_inf = config.sigma_g2 * sol.erf_factor;
        sol.q_inf = e2term - sol.a_coeff;
        sol.mse_inf = sol.mse_floor;
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        sol.r_inf = nan;
        sol.q_inf = nan;
        sol.mse_inf = nan;
    }
    return sol;
}

MacroState macro_at(const AnalyticSolution& sol, double t) {
    if (t < 0.0 || std::isnan(t)) throw InvalidParameter("t must be >= 0");
    const double s = sol.config.sigma_g2;
    const double e = sol.erf_factor;
    // 1 - exp(-rate t) via expm1 keeps small-t evaluations exact.
    const double g1 = -std::expm1(-sol.rate_r * t);
    const double g2 = -std::expm1(-sol.rate_mse * t);
    MacroState st;
    st.r = s * e * g1;
    st.q = 2.0 * s * e * e * g1 - sol.a_coeff * g2;
    return st;
}

double mse_at(const AnalyticSolution& sol, double t) {
    if (t < 0.0 || std::isnan(t)) throw InvalidParameter("t must be >= 0");
    return sol.config.rho2 * sol.a_coeff * std::exp(-sol.rate_mse * t) + sol.mse_floor;
}

double steady_state_mse(const Nonlinearity& nl, double rho2, double sigma_g2,
                        double sigma_xi2, double mu) {
    if (!(rho2 > 0.0)) throw NonPositiveParameter("rho2");
    if (!(sigma_g2 > 0.0)) throw NonPositiveParameter("sigma_g2");
    if (!(mu > 0.0)) throw NonPositiveParameter("mu");
    if (sigma_xi2 < 0.0) throw InvalidParameter("sigma_xi2 must be >= 0");
    if (nl.threshold < 0.0) throw NegativeThreshold();
    const double k = mu * rho2;
    if (k >= 2.0) throw Diverges();
    const double u = nl.threshold / std::sqrt(rho2 * sigma_g2);
    return (2.0 * rho2 * sigma_g2 * steady_bracket(u) + 2.0 * sigma_xi2) / (2.0 - k);
}

double steady_state_nmsd(const AnalyticSolution& sol) {
    if (!sol.converges) throw Diverges();
    return sol.config.sigma_g2 - 2.0 * sol.r_inf + sol.q_inf;
}

double max_threshold_residual(double threshold, double rho2, double sigma_g2) {
    if (!(rho2 > 0.0)) throw NonPositiveParameter("rho2");
    if (!(sigma_g2 > 0.0)) throw NonPositiveParameter("sigma_g2");
    const double u = threshold / std::sqrt(rho2 * sigma_g2);
    const double s = u / std::sqrt(2.0);
    return (1.0 + kSqrtTwoOverPi * std::exp(-0.5 * u * u) / u) * satlms::erf(s) - 1.0;
}

namespace {

// Cancellation-free form of the self-consistency residual:
//   (1 + eps) erf(u/sqrt2) - 1  ==  eps erf(u/sqrt2) - erfc(u/sqrt2)
// with eps = sqrt(2/pi) exp(-u^2/2) / u. The right side stays meaningful at
// the far end of the bracket where both terms are ~1e-23.
double max_eq_signed(double u) {
    const double s = u / std::sqrt(2.0);
    const double eps = kSqrtTwoOverPi * std::exp(-0.5 * u * u) / u;
    return eps * satlms::erf(s) - satlms::erfc(s);
}

double max_eq_derivative(double u) {
    // d/du of (1 + sqrt(2/pi) e^{-u^2/2} / u) erf(u/sqrt2) - 1.
    const double s = u / std::sqrt(2.0);
    const double phi = kSqrtTwoOverPi * std::exp(-0.5 * u * u);
    const double eps = phi / u;
    const double deps = -phi * (1.0 + 1.0 / (u * u)); // d(eps)/du
    return deps * satlms::erf(s) + (1.0 + eps) * phi;
}

} // namespace

double solve_max_threshold(double rho2, double sigma_g2) {
    if (!(rho2 > 0.0)) throw NonPositiveParameter("rho2");
    if (!(sigma_g2 > 0.0)) throw NonPositiveParameter("sigma_g2");

    double lo = 1e-8, hi = 10.0;
    double flo = max_eq_signed(lo);
    double fhi = max_eq_signed(hi);
    if (!(flo < 0.0) || !(fhi > 0.0)) throw BracketFailure();

    // Bisection down to a 1e-13 interval, then one Newton polish.
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        double fmid = max_eq_signed(mid);
        if (fmid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double u = 0.5 * (lo + hi);
    double d = max_eq_derivative(u);
    if (d != 0.0 && std::isfinite(d)) {
        double step = max_eq_signed(u) / d;
        if (std::fabs(step) < 1e-10) u -= step;
    }
    return u * std::sqrt(rho2 * sigma_g2);
}

Trajectory sample_trajectory(const AnalyticSolution& sol, double t_end, double dt) {
    if (t_end < 0.0 || std::isnan(t_end)) throw InvalidParameter("t_end must be >= 0");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be > 0");

    Trajectory traj;
    traj.source = TrajectorySource::Theory;
    traj.meta = sol.config;
    const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 0.5));
    traj.points.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) * dt;
        if (t > t_end) t = t_end;
        TrajectoryPoint p;
        p.t = t;
        p.state = macro_at(sol, t);
        p.mse = mse_at(sol, t);
        p.nmsd = sol.config.sigma_g2 - 2.0 * p.state.r + p.state.q;
        traj.points.push_back(p);
    }
    return traj;
}

} // namespace satlms::theory
