#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "sderand/core.hpp"
#include "sderand/order_fit.hpp"

namespace sderand {

/// Scalar integrands of time. Every registered kind has a closed-form
/// antiderivative; Custom functions can be integrated numerically by the
/// quadrature rules but have no oracle.
namespace integrand {

struct Constant {
    double value = 0.0;
};
/// intercept + slope r
struct Affine {
    double slope = 1.0;
    double intercept = 0.0;
};
/// scale |r - anchor|^exponent
struct Power {
    double anchor = 0.5;
    double exponent = 0.5;
    double scale = 1.0;
};
/// scale c_L sum_{k=0..L} 2^{-k alpha} cos(2^k pi (r - anchor)), c_L = 1/sum_k 2^{-k alpha}
struct Weierstrass {
    double alpha = 0.5;
    double anchor = 0.5;
    int truncation = 12;
    double scale = 1.0;
};
struct Custom {
    std::function<double(double)> fn;
    std::string name = "custom";
};

}  // namespace integrand

class TimeFunction {
public:
    using Variant = std::variant<integrand::Constant, integrand::Affine, integrand::Power, integrand::Weierstrass,
                                 integrand::Custom>;

    TimeFunction(Variant v);  // NOLINT(google-explicit-constructor)
    template <class Kind>
        requires(!std::same_as<std::remove_cvref_t<Kind>, TimeFunction> && std::constructible_from<Variant, Kind>)
    TimeFunction(Kind kind)  // NOLINT(google-explicit-constructor)
        : TimeFunction(Variant(std::move(kind))) {}

    double operator()(double r) const;
    /// ∫_0^t g(r) dr in closed form; UnsupportedFunctionError for Custom.
    double integral(double t) const;
    /// ∫_a^b g(r) dr.
    double integral(double a, double b) const;
    bool has_antiderivative() const noexcept;
    std::string describe() const;
    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
    std::vector<double> weights_;  // Weierstrass only
};

/// Q^j, ∫_0^{t_j} g and their difference for j = 0..n. truth and error_process
/// stay empty until attach_truth is called.
struct QuadratureRun {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> truth;
    std::vector<double> error_process;
};

/// values[j] = (1/n) sum_{i<j} g((i + taus[i])/n).
QuadratureRun randomised_quadrature(const TimeFunction& g, std::size_t n, const RandomOffsets& offsets);

/// values[j] = (1/n) sum_{i<j} g(i/n).
QuadratureRun leftpoint_quadrature(const TimeFunction& g, std::size_t n);

/// Fills truth and error_process = truth - values.
void attach_truth(QuadratureRun& run, const TimeFunction& g);

double integral_oracle(const TimeFunction& g, double t);

struct MartingaleStep {
    double mean = 0.0;
    double std_error = 0.0;
    bool flagged = false;
};

struct MartingaleReport {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::vector<MartingaleStep> steps;  // steps[j-1] describes E_j - E_{j-1}
    std::size_t flagged_steps = 0;
    double terminal_mean = 0.0;  // sample mean of Q^n
    double terminal_std_error = 0.0;
    double terminal_truth = 0.0;
    bool terminal_unbiased = false;
    double z_threshold = 4.0;
};

/// Sample means of the error-process increments over independent offset draws;
/// a step is flagged when |mean| > z_threshold standard errors.
MartingaleReport martingale_diagnostic(const TimeFunction& g, std::size_t n, std::size_t samples,
                                       const RngStream& stream, std::size_t workers = 1, double z_threshold = 4.0);

struct QuadratureOrderReport {
    std::vector<std::size_t> ns;
    std::size_t samples = 0;
    double p = 2.0;
    std::vector<double> randomised_error;
    std::vector<double> randomised_std_error;
    std::vector<double> leftpoint_error;
    OrderFit randomised_fit;
    OrderFit leftpoint_fit;
};

/// L^p-over-draws error of Q^n at t = 1 for each n, against the closed-form
/// integral; left-point error alongside.
QuadratureOrderReport quadrature_order_experiment(const TimeFunction& g, const std::vector<std::size_t>& ns,
                                                  std::size_t samples, const RngStream& stream, double p = 2.0,
                                                  std::size_t workers = 1);

/// Mean of |x|^p across equal batches, delta-mapped to the 1/p power.
/// Returns {estimate, std_error}.
struct MomentEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double moment = 0.0;
};
MomentEstimate lp_norm_estimate(const std::vector<double>& powered_samples, double p, std::size_t batches = 10);

}  // namespace sderand
