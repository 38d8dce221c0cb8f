#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sderand/drifts.hpp"
#include "sderand/integrators.hpp"
#include "sderand/order_fit.hpp"
#include "sderand/quadrature.hpp"

namespace sderand {

/// Everything a strong-error ladder depends on. Results are a pure function of this.
struct LadderConfig {
    DriftSpec drift;
    Scheme scheme = Scheme::RandomisedEM;
    std::vector<std::size_t> ns;
    std::size_t n_ref = 8192;
    std::size_t samples = 500;  // M
    double p = 2.0;
    std::uint64_t master_seed = 0;
    std::vector<double> x0;  // empty means the origin
    std::size_t batches = 10;
    std::size_t workers = 1;

    /// Throws ConfigError naming the first offending field.
    void validate() const;
    std::vector<double> initial_state() const;
};

struct LadderPoint {
    std::size_t n = 0;
    double estimate = 0.0;
    double std_error = 0.0;
};

struct ErrorLadder {
    LadderConfig config;
    std::vector<LadderPoint> points;
    /// Largest max_j |X_j - x0 - B(t_j)| over every simulated trajectory, coarse and reference.
    double max_drift_excursion = 0.0;
    /// True when max_drift_excursion <= sup|f| with no tolerance.
    bool drift_bound_holds = true;

    std::vector<std::size_t> ns() const;
    std::vector<double> estimates() const;
    std::vector<double> std_errors() const;
};

/// Coupled ladder: sample m draws one Brownian path at n_ref and every coarse
/// run uses that path coarsened. The reference is randomised EM at n_ref with
/// its own offsets. Per-sample error is max_j |X_ref(t_j) - X^(n)(t_j)| (Euclidean).
ErrorLadder run_ladder(const LadderConfig& config);

/// One rung of the ladder; identical to the matching point of run_ladder.
LadderPoint strong_error_estimate(const LadderConfig& config, std::size_t n);

/// Needs at least three ladder points.
OrderFit fit_order(const ErrorLadder& ladder);

/// Predicted order 1/2 + (alpha ∧ beta/2) for randomised EM.
double predicted_randomised_order(const DriftSpec& drift);

enum class ProbeKind { I1, I2 };
std::string_view to_string(ProbeKind kind);

struct ProbeConfig {
    DriftSpec drift;
    ObservableSpec observable;  // used by I2 only
    std::size_t n = 64;
    std::size_t q = 16;
    std::size_t samples = 200;
    double p = 2.0;
    std::uint64_t master_seed = 0;
    std::vector<double> x0;
    std::size_t batches = 10;
    std::size_t workers = 1;

    void validate() const;
};

struct IProbeResult {
    ProbeKind kind = ProbeKind::I1;
    std::size_t n = 0;
    std::size_t samples = 0;
    double p = 2.0;
    std::size_t q = 16;
    double moment = 0.0;     // E[sup_u |∫_0^u ...|^p]
    double estimate = 0.0;   // moment^{1/p}
    double std_error = 0.0;  // of estimate
    double max_drift_excursion = 0.0;
    bool drift_bound_holds = true;
};

/// sup over fine-grid prefixes u of |∫_0^u (f(r, X_r) - f(κ^τ(r), X_κ(r))) dr|, with the
/// integral taken as a left Riemann sum on the extension's fine grid.
double i1_path_functional(const Drift& drift, const ContinuousExtension& ext, const RandomOffsets& offsets);

/// As i1_path_functional for the scalar integrand (g1(r,X_r) - g1(κ^τ(r),X_κ(r))) g2(r,X_r),
/// g1 the first drift component.
double i2_path_functional(const Drift& drift, const ObservableSpec& observable, const ContinuousExtension& ext,
                          const RandomOffsets& offsets);

IProbeResult measure_I1(const ProbeConfig& config);
IProbeResult measure_I2(const ProbeConfig& config);

struct SchemeComparison {
    ErrorLadder standard;
    ErrorLadder randomised;
    OrderFit standard_fit;
    OrderFit randomised_fit;
    double slope_gap = 0.0;  // randomised - standard
};

/// Both schemes on identical Brownian randomness and reference.
SchemeComparison compare_schemes(LadderConfig config);

}  // namespace sderand
