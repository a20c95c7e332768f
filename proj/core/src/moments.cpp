#include "satlms/moments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "satlms/detail/quadrature.hpp"
#include "satlms/erf.hpp"
#include "satlms/errors.hpp"

namespace satlms::moments {
namespace {

void check_params(double rho2, double sigma_g2) {
    if (!(rho2 > 0.0) || std::isnan(rho2)) throw InvalidParameter("rho2 must be > 0");
    if (!(sigma_g2 > 0.0) || std::isnan(sigma_g2)) {
        throw InvalidParameter("sigma_g2 must be > 0");
    }
}

constexpr double kTwoOverPi = 0.63661977236758134308; // 2/pi

} // namespace

double erf_factor(const Nonlinearity& nl, double rho2, double sigma_g2) {
    check_params(rho2, sigma_g2);
    double c = rho2 * sigma_g2;
    if (std::isinf(nl.threshold)) {
        return nl.kind == NonlinKind::Saturation ? 1.0 : 0.0;
    }
    double u = nl.threshold / std::sqrt(2.0 * c);
    return nl.kind == NonlinKind::Saturation ? satlms::erf(u) : satlms::erfc(u);
}

GaussianMoments closed_form_moments(const Nonlinearity& nl, double rho2,
                                    double sigma_g2, const MacroState& state) {
    check_params(rho2, sigma_g2);
    const double c = rho2 * sigma_g2;

    GaussianMoments m;
    m.y2 = rho2 * state.q;
    m.xy = rho2 * state.r;

    const double th = nl.threshold;
    if (std::isinf(th)) {
        if (nl.kind == NonlinKind::Saturation) { // identity
            m.fx2 = c;
            m.fxy = rho2 * state.r;
            m.fxx = c;
        } // dead zone with infinite threshold: f == 0, moments stay 0
        return m;
    }

    const double u = th / std::sqrt(2.0 * c);
    const double erf_u = satlms::erf(u);
    const double erfc_u = satlms::erfc(u);
    // th * sqrt(2c/pi) * exp(-th^2 / (2c)), the Gaussian boundary term shared
    // by both types.
    const double edge = th * std::sqrt(kTwoOverPi * c) * std::exp(-u * u);

    if (nl.kind == NonlinKind::Saturation) {
        m.fx2 = th * th * erfc_u + c * erf_u - edge;
        m.fxy = rho2 * state.r * erf_u;
        m.fxx = c * erf_u;
    } else {
        m.fx2 = (th * th + c) * erfc_u - edge;
        m.fxy = rho2 * state.r * erfc_u;
        m.fxx = c * erfc_u;
    }
    return m;
}

double mse_from_moments(const GaussianMoments& m, double sigma_xi2) {
    return m.fx2 + m.y2 - 2.0 * m.fxy + sigma_xi2;
}

GaussianMoments oracle_moments(const Nonlinearity& nl, double rho2,
                               double sigma_g2, const MacroState& state,
                               int nodes) {
    check_params(rho2, sigma_g2);
    if (nodes < 1) throw InvalidParameter("nodes must be >= 1");

    const double c = rho2 * sigma_g2; // Var x
    const double sd = std::sqrt(c);

    // Positive semidefiniteness of the (x, y) covariance, with a small
    // relative slack so states measured from actual vectors pass.
    const double slack = 1e-12 * std::max(1.0, std::fabs(state.q) * sigma_g2);
    if (state.r * state.r > state.q * sigma_g2 + slack) {
        throw NotPositiveSemidefinite();
    }

    // Conditional law of y given x: mean slope and residual variance.
    const double slope = state.r / sigma_g2;
    const double var_cond = std::max(0.0, rho2 * (state.q - state.r * state.r / sigma_g2));
    const double y_scale = std::sqrt(2.0 * var_cond);

    std::vector<double> gl_x, gl_w, gh_x, gh_w;
    detail::gauss_legendre(nodes, gl_x, gl_w);
    const bool degenerate = var_cond == 0.0;
    if (!degenerate) detail::gauss_hermite(nodes, gh_x, gh_w);
    const double inv_sqrt_pi = 0.5641895835477562869;

    // Integration domain: 12 standard deviations covers the Gaussian mass far
    // beyond any target accuracy; the threshold splits it at the kinks.
    const double lim = 12.0 * sd;
    const double tc = std::min(nl.threshold, lim);

    double fx2 = 0.0, y2 = 0.0, fxy = 0.0, xy = 0.0, fxx = 0.0;

    auto integrate_panel = [&](double a, double b) {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (int i = 0; i < nodes; ++i) {
            const double x = mid + half * gl_x[i];
            const double pdf = std::exp(-x * x / (2.0 * c)) /
                               (sd * 2.5066282746310005024); // sqrt(2 pi)
            const double wx = gl_w[i] * half * pdf;
            const double fx = nl(x);
            const double mean_y = slope * x;

            double e_y, e_y2;
            if (degenerate) {
                e_y = mean_y;
                e_y2 = mean_y * mean_y;
            } else {
                e_y = 0.0;
                e_y2 = 0.0;
                for (int j = 0; j < nodes; ++j) {
                    const double y = mean_y + y_scale * gh_x[j];
                    const double wy = gh_w[j] * inv_sqrt_pi;
                    e_y += wy * y;
                    e_y2 += wy * y * y;
                }
            }
            fx2 += wx * fx * fx;
            fxx += wx * fx * x;
            fxy += wx * fx * e_y;
            xy += wx * x * e_y;
            y2 += wx * e_y2;
        }
    };

    // Composite panels no wider than one standard deviation keep the
    // Gauss-Legendre rule deep in its spectral-accuracy regime.
    auto integrate_region = [&](double a, double b) {
        if (!(b > a)) return;
        int count = static_cast<int>(std::ceil((b - a) / sd));
        count = std::max(count, 1);
        const double width = (b - a) / count;
        for (int k = 0; k < count; ++k) {
            integrate_panel(a + k * width, a + (k + 1) * width);
        }
    };

    integrate_region(-lim, -tc);
    integrate_region(-tc, tc);
    integrate_region(tc, lim);

    return GaussianMoments{fx2, y2, fxy, xy, fxx};
}

} // namespace satlms::moments
