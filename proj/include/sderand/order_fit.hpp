#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sderand {

/// Least-squares fit of log(error) against log(1/n).
///
/// slope is the empirical convergence order. slope_std_error propagates the
/// per-point Monte Carlo errors (treated as independent in log space);
/// per_point_ci holds the 95% half-widths of log(error).
struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
    std::vector<double> per_point_ci;
    bool degenerate = false;       // some estimate was zero, negative or non-finite
    bool degenerate_zero = false;  // every estimate was exactly zero
};

/// Throws std::invalid_argument for fewer than two points or mismatched sizes.
/// Degenerate input is flagged, not thrown.
OrderFit fit_power_law(std::span<const std::size_t> ns, std::span<const double> estimates,
                       std::span<const double> std_errors = {});

/// True when `predicted` lies in [slope - 3 se, slope + 3 se + slack].
bool slope_band_contains(const OrderFit& fit, double predicted, double slack = 0.15);

}  // namespace sderand
