#include <initializer_list>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "satlms/errors.hpp"
#include "satlms/ode.hpp"
#include "satlms/theory.hpp"

namespace od = satlms::ode;
namespace th = satlms::theory;

namespace {
satlms::ExperimentConfig cfg(satlms::Nonlinearity nl, double mu = 1.0,
                             double sigma_xi2 = 0.0, double rho2 = 1.0,
                             double sigma_g2 = 1.0) {
    satlms::ExperimentConfig c;
    c.rho2 = rho2;
    c.sigma_g2 = sigma_g2;
    c.sigma_xi2 = sigma_xi2;
    c.mu = mu;
    c.nonlinearity = nl;
    return c;
}
}

TEST_CASE("analytic fixed point zeroes the vector field") {
    for (double thr : {0.3, 1.0, 2.2}) {
        for (auto nl : {satlms::saturation(thr), satlms::dead_zone(thr)}) {
            // mu rho^2 stays below 2 so the fixed point exists.
            for (double mu : {0.3, 1.0, 1.7}) {
                for (double noise : {0.0, 0.2}) {
                    auto c = cfg(nl, mu, noise, 1.1, 0.9);
                    auto sol = th::solve(c);
                    auto [dr, dq] = od::rhs(c, {sol.r_inf, sol.q_inf});
                    CHECK(std::fabs(dr) < 1e-12);
                    CHECK(std::fabs(dq) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("closed form satisfies the differential equations") {
    // Central finite difference of the analytic macro curve against the
    // vector field assembled from the moments. This ties the erf factor, the
    // A coefficient, and both rates to the equations of motion.
    const double h = 1e-5;
    for (auto nl : {satlms::saturation(0.6), satlms::dead_zone(1.1)}) {
        for (double mu : {0.5, 1.6}) {
            auto c = cfg(nl, mu, 0.15, 1.3, 0.8);
            auto sol = th::solve(c);
            for (double t : {0.2, 1.0, 3.0}) {
                auto sm = th::macro_at(sol, t - h);
                auto sp = th::macro_at(sol, t + h);
                auto [dr, dq] = od::rhs(c, th::macro_at(sol, t));
                CHECK(std::fabs((sp.r - sm.r) / (2.0 * h) - dr) < 1e-7);
                CHECK(std::fabs((sp.q - sm.q) / (2.0 * h) - dq) < 1e-7);
            }
        }
    }
}

TEST_CASE("linear channel integrates to perfect identification") {
    auto c = cfg(satlms::dead_zone(0.0));
    od::OdeSettings set;
    set.t_end = 30.0;
    auto traj = od::integrate(c, set);
    CHECK(traj.points.back().state.r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(traj.points.back().state.q == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(traj.points.back().nmsd < 1e-9);
    CHECK(traj.points.front().state.r == 0.0);
    CHECK(traj.points.front().state.q == 0.0);
}

TEST_CASE("numerical integration tracks the closed form") {
    for (auto [nl, mu] :
         {std::pair{satlms::saturation(0.5), 1.5},
          std::pair{satlms::dead_zone(1.2), 0.5}}) {
        auto c = cfg(nl, mu, 0.1);
        auto sol = th::solve(c);
        od::OdeSettings set;
        set.t_end = 20.0;
        auto traj = od::integrate(c, set);
        double worst_state = 0.0, worst_mse = 0.0;
        for (const auto& p : traj.points) {
            auto ref = th::macro_at(sol, p.t);
            worst_state = std::max(worst_state, std::fabs(p.state.r - ref.r));
            worst_state = std::max(worst_state, std::fabs(p.state.q - ref.q));
            worst_mse = std::max(worst_mse, std::fabs(p.mse - th::mse_at(sol, p.t)));
        }
        CHECK(worst_state < 1e-8);
        CHECK(worst_mse < 1e-8);
    }
}

TEST_CASE("step halving shows the methods' orders") {
    auto c = cfg(satlms::saturation(0.8), 1.5, 0.05);
    auto sol = th::solve(c);
    auto final_error = [&](double dt, od::OdeMethod method) {
        od::OdeSettings set;
        set.dt = dt;
        set.t_end = 2.0;
        set.method = method;
        auto traj = od::integrate(c, set);
        const auto& p = traj.points.back();
        auto ref = th::macro_at(sol, p.t);
        return std::max(std::fabs(p.state.r - ref.r), std::fabs(p.state.q - ref.q));
    };

    const double rk_ratio =
        final_error(0.05, od::OdeMethod::RK4) / final_error(0.025, od::OdeMethod::RK4);
    CHECK(rk_ratio > 12.0);
    CHECK(rk_ratio < 20.0);

    const double eu_ratio =
        final_error(0.05, od::OdeMethod::Euler) / final_error(0.025, od::OdeMethod::Euler);
    CHECK(eu_ratio > 1.7);
    CHECK(eu_ratio < 2.3);
}

TEST_CASE("integration grid and validation") {
    auto c = cfg(satlms::saturation(1.0));
    od::OdeSettings set;
    set.dt = 0.25;
    set.t_end = 1.0;
    auto traj = od::integrate(c, set);
    REQUIRE(traj.points.size() == 5);
    CHECK(traj.points.back().t == doctest::Approx(1.0).epsilon(1e-12));

    set.dt = 0.0;
    CHECK_THROWS_AS(od::integrate(c, set), satlms::InvalidParameter);
    set.dt = 2.0;
    set.t_end = 1.0;
    CHECK_THROWS_AS(od::integrate(c, set), satlms::InvalidParameter);
}

TEST_CASE("runaway step size is detected with its failure time") {
    // mu rho^2 = 5 makes q blow up like exp(15 t); the integrator must stop
    // with the time at which the state left the finite range.
    auto c = cfg(satlms::saturation(1.0), 5.0);
    od::OdeSettings set;
    set.t_end = 100.0;
    bool thrown = false;
    try {
        od::integrate(c, set);
    } catch (const satlms::NonFiniteState& e) {
        thrown = true;
        CHECK(e.t() > 0.0);
        CHECK(e.t() < 100.0);
    }
    CHECK(thrown);
}
