#include <cmath>
#include <vector>

#include "doctest.h"
#include "satlms/detail/quadrature.hpp"

namespace sd = satlms::detail;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    sd::gauss_legendre(8, x, w);
    REQUIRE(x.size() == 8);

    // Weights sum to the interval length.
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));

    // Degree up to 2n - 1 = 15: int_{-1}^{1} x^p dx.
    for (int p = 0; p <= 15; ++p) {
        double est = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) est += w[i] * std::pow(x[i], p);
        const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
        CHECK(std::fabs(est - exact) < 1e-13);
    }

    // Nodes are symmetric and sorted strictly inside the interval.
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i] > -1.0);
        CHECK(x[i] < 1.0);
        CHECK(x[i] == doctest::Approx(-x[x.size() - 1 - i]).epsilon(1e-14));
        if (i > 0) CHECK(x[i] > x[i - 1]);
    }
}

TEST_CASE("gauss-legendre handles a non-polynomial integrand") {
    // int_{-1}^{1} exp(x) dx = e - 1/e.
    std::vector<double> x, w;
    sd::gauss_legendre(24, x, w);
    double est = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) est += w[i] * std::exp(x[i]);
    CHECK(est == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("gauss-hermite matches gaussian moments") {
    std::vector<double> x, w;
    sd::gauss_hermite(32, x, w);
    REQUIRE(x.size() == 32);

    // int exp(-x^2) dx = sqrt(pi); int x^2 exp(-x^2) dx = sqrt(pi)/2;
    // int x^4 exp(-x^2) dx = 3 sqrt(pi)/4. Odd powers vanish.
    const double spi = std::sqrt(std::acos(-1.0));
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m0 += w[i];
        m1 += w[i] * x[i];
        m2 += w[i] * x[i] * x[i];
        m4 += w[i] * x[i] * x[i] * x[i] * x[i];
    }
    CHECK(m0 == doctest::Approx(spi).epsilon(1e-13));
    CHECK(std::fabs(m1) < 1e-13);
    CHECK(m2 == doctest::Approx(0.5 * spi).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(0.75 * spi).epsilon(1e-13));

    // A bounded non-polynomial: int cos(x) exp(-x^2) dx = sqrt(pi) e^{-1/4}.
    double mc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mc += w[i] * std::cos(x[i]);
    CHECK(mc == doctest::Approx(spi * std::exp(-0.25)).epsilon(1e-13));
}

TEST_CASE("odd hermite order pins the middle node at zero") {
    std::vector<double> x, w;
    sd::gauss_hermite(31, x, w);
    REQUIRE(x.size() == 31);
    CHECK(x[15] == 0.0);
}
