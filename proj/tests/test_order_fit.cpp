#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sderand/order_fit.hpp"

using namespace sderand;

namespace {

// Three-point OLS slope in closed form: sum (x - xbar)(y - ybar) / sum (x - xbar)^2.
double three_point_slope(const double (&x)[3], const double (&y)[3]) {
    const double xbar = (x[0] + x[1] + x[2]) / 3.0, ybar = (y[0] + y[1] + y[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
        sxy += (x[i] - xbar) * (y[i] - ybar);
        sxx += (x[i] - xbar) * (x[i] - xbar);
    }
    return sxy / sxx;
}

}  // namespace

TEST_CASE("exact power laws are recovered") {
    const std::vector<std::size_t> ns{16, 32, 64, 128, 256};
    for (double order : {0.5, 0.75, 1.0, 1.3}) {
        std::vector<double> e;
        for (auto n : ns) e.push_back(2.5 * std::pow(static_cast<double>(n), -order));
        const auto fit = fit_power_law(ns, e);
        CHECK(fit.slope == doctest::Approx(order).epsilon(1e-12));
        CHECK(fit.intercept == doctest::Approx(std::log(2.5)).epsilon(1e-12));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(fit.degenerate);
    }
}

TEST_CASE("flat ladder has zero slope") {
    const std::vector<std::size_t> ns{8, 16, 32};
    const auto fit = fit_power_law(ns, std::vector<double>{0.3, 0.3, 0.3});
    CHECK(fit.slope == doctest::Approx(0.0));
    CHECK_FALSE(fit.degenerate);
}

TEST_CASE("three noisy points match the closed-form slope") {
    const std::vector<std::size_t> ns{16, 32, 64};
    const std::vector<double> e{0.1, 0.052, 0.026};
    const double x[3] = {std::log(16.0), std::log(32.0), std::log(64.0)};
    const double y[3] = {std::log(0.1), std::log(0.052), std::log(0.026)};
    const auto fit = fit_power_law(ns, e);
    CHECK(fit.slope == doctest::Approx(-three_point_slope(x, y)).epsilon(1e-12));
    CHECK(fit.slope == doctest::Approx(0.972).epsilon(1e-3));
    CHECK(fit.r_squared < 1.0);
    CHECK(fit.r_squared > 0.99);
}

TEST_CASE("standard errors propagate into the slope") {
    const std::vector<std::size_t> ns{16, 32, 64, 128};
    std::vector<double> e, se;
    for (auto n : ns) {
        e.push_back(1.0 / n);
        se.push_back(0.05 / n);
    }
    const auto fit = fit_power_law(ns, e, se);
    CHECK(fit.slope == doctest::Approx(1.0));
    CHECK(fit.slope_std_error > 0.0);
    CHECK(fit.per_point_ci.size() == 4);
    CHECK(fit.per_point_ci[0] == doctest::Approx(1.96 * 0.05).epsilon(1e-3));
    CHECK(slope_band_contains(fit, 1.0));
    CHECK_FALSE(slope_band_contains(fit, 0.5));
    CHECK(slope_band_contains(fit, 0.9, 0.15) == (0.9 >= 1.0 - 3 * fit.slope_std_error));
}

TEST_CASE("degenerate input is flagged") {
    const std::vector<std::size_t> ns{8, 16, 32};
    auto fit = fit_power_law(ns, std::vector<double>{0.0, 0.0, 0.0});
    CHECK(fit.degenerate);
    CHECK(fit.degenerate_zero);
    fit = fit_power_law(ns, std::vector<double>{0.1, 0.0, 0.02});
    CHECK(fit.degenerate);
    CHECK_FALSE(fit.degenerate_zero);
    fit = fit_power_law(ns, std::vector<double>{0.1, std::numeric_limits<double>::quiet_NaN(), 0.02});
    CHECK(fit.degenerate);
}

TEST_CASE("too few points or mismatched sizes throw") {
    CHECK_THROWS_AS(fit_power_law(std::vector<std::size_t>{8}, std::vector<double>{0.1}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law(std::vector<std::size_t>{8, 16}, std::vector<double>{0.1}), std::invalid_argument);
}
