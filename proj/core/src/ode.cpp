#include "satlms/ode.hpp"

#include <cmath>

#include "satlms/errors.hpp"
#include "satlms/moments.hpp"

namespace satlms::ode {

std::pair<double, double> rhs(const ExperimentConfig& config, const MacroState& state) {
    const auto m = moments::closed_form_moments(config.nonlinearity, config.rho2,
                                                config.sigma_g2, state);
    const double mu = config.mu;
    const double rho2 = config.rho2;
    const double dr = mu * (m.fxx - rho2 * state.r);
    const double dq = mu * mu * rho2 *
                          (m.fx2 - 2.0 * m.fxy + rho2 * state.q + config.sigma_xi2) +
                      2.0 * mu * (m.fxy - rho2 * state.q);
    return {dr, dq};
}

Trajectory integrate(const ExperimentConfig& config, const OdeSettings& settings) {
    validate(config);
    if (!(settings.dt > 0.0)) throw InvalidParameter("dt must be > 0");
    if (!(settings.t_end >= settings.dt)) throw InvalidParameter("t_end must be >= dt");

    Trajectory traj;
    traj.source = TrajectorySource::Theory;
    traj.meta = config;

    const auto steps = static_cast<std::size_t>(std::ceil(settings.t_end / settings.dt - 1e-9));
    traj.points.reserve(steps + 1);

    MacroState st{0.0, 0.0};
    double t = 0.0;

    auto record = [&](double time, const MacroState& s) {
        if (!std::isfinite(s.r) || !std::isfinite(s.q)) throw NonFiniteState(time);
        const auto m = moments::closed_form_moments(config.nonlinearity, config.rho2,
                                                    config.sigma_g2, s);
        TrajectoryPoint p;
        p.t = time;
        p.state = s;
        p.mse = moments::mse_from_moments(m, config.sigma_xi2);
        p.nmsd = config.sigma_g2 - 2.0 * s.r + s.q;
        traj.points.push_back(p);
    };

    record(t, st);
    for (std::size_t i = 0; i < steps; ++i) {
        const double h = std::min(settings.dt, settings.t_end - t);
        if (settings.method == OdeMethod::Euler) {
            auto [dr, dq] = rhs(config, st);
            st.r += h * dr;
            st.q += h * dq;
        } else {
            const auto [k1r, k1q] = rhs(config, st);
            const auto [k2r, k2q] =
                rhs(config, MacroState{st.r + 0.5 * h * k1r, st.q + 0.5 * h * k1q});
            const auto [k3r, k3q] =
                rhs(config, MacroState{st.r + 0.5 * h * k2r, st.q + 0.5 * h * k2q});
            const auto [k4r, k4q] =
                rhs(config, MacroState{st.r + h * k3r, st.q + h * k3q});
            st.r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
            st.q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        }
        t += h;
        record(t, st);
    }
    return traj;
}

} // namespace satlms::ode
