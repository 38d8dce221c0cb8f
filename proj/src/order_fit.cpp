#include "sderand/order_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sderand {

OrderFit fit_power_law(std::span<const std::size_t> ns, std::span<const double> estimates,
                       std::span<const double> std_errors) {
    if (ns.size() != estimates.size() || (!std_errors.empty() && std_errors.size() != ns.size()))
        throw std::invalid_argument("fit_power_law: size mismatch");
    if (ns.size() < 2) throw std::invalid_argument("fit_power_law: need at least two ladder points");

    OrderFit fit;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool all_zero = std::all_of(estimates.begin(), estimates.end(), [](double e) { return e == 0.0; });
    const bool any_bad =
        std::any_of(estimates.begin(), estimates.end(), [](double e) { return !(e > 0.0) || !std::isfinite(e); });
    if (all_zero || any_bad) {
        fit.degenerate = true;
        fit.degenerate_zero = all_zero;
        fit.slope = fit.intercept = fit.slope_std_error = nan;
        fit.r_squared = 0.0;
        fit.per_point_ci.assign(ns.size(), nan);
        return fit;
    }

    const std::size_t m = ns.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = -std::log(static_cast<double>(ns[i]));
        y[i] = std::log(estimates[i]);
    }
    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x_mean += x[i];
        y_mean += y[i];
    }
    x_mean /= static_cast<double>(m);
    y_mean /= static_cast<double>(m);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - x_mean) * (x[i] - x_mean);
        sxy += (x[i] - x_mean) * (y[i] - y_mean);
        syy += (y[i] - y_mean) * (y[i] - y_mean);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: ladder resolutions must not all coincide");

    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    // A flat ladder is fitted perfectly by slope 0.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;

    fit.per_point_ci.resize(m);
    double slope_var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double log_se = std_errors.empty() ? 0.0 : std_errors[i] / estimates[i];
        fit.per_point_ci[i] = 1.96 * log_se;
        const double weight = (x[i] - x_mean) / sxx;
        slope_var += weight * weight * log_se * log_se;
    }
    fit.slope_std_error = std::sqrt(slope_var);
    return fit;
}

bool slope_band_contains(const OrderFit& fit, double predicted, double slack) {
    if (fit.degenerate) return false;
    return predicted >= fit.slope - 3.0 * fit.slope_std_error &&
           predicted <= fit.slope + 3.0 * fit.slope_std_error + slack;
}

}  // namespace sderand
