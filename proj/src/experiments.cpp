#include "sderand/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sderand/errors.hpp"
#include "sderand/parallel.hpp"

namespace sderand {

namespace {

double euclidean(std::span<const double> v) {
    if (v.size() == 1) return std::abs(v[0]);
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void validate_common(const DriftSpec& drift, const std::vector<double>& x0, std::size_t samples, double p,
                     std::size_t batches) {
    drift.validate();
    if (!x0.empty() && x0.size() != drift.d) throw ConfigError("x0", "needs exactly d entries");
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p", "moment order must be >= 1");
    if (batches < 10) throw ConfigError("batches", "standard errors need at least 10 batches");
    if (samples < batches) throw ConfigError("samples", "need at least as many samples as batches");
}

RngStream sample_stream(std::uint64_t master_seed, std::size_t m) { return RngStream(master_seed, {m}); }

}  // namespace

void LadderConfig::validate() const {
    validate_common(drift, x0, samples, p, batches);
    if (ns.empty()) throw ConfigError("ns", "ladder is empty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] == 0) throw ConfigError("ns", "resolutions must be positive");
        if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("ns", "resolutions must be strictly ascending");
        if (n_ref % ns[i] != 0)
            throw ConfigError("n_ref", "every ladder resolution must divide n_ref (" + std::to_string(ns[i]) +
                                           " does not divide " + std::to_string(n_ref) + ")");
    }
    if (n_ref < kReferenceRefinement * ns.back())
        throw ConfigError("n_ref", "must be at least " + std::to_string(kReferenceRefinement) +
                                       " times the largest ladder resolution");
}

std::vector<double> LadderConfig::initial_state() const {
    return x0.empty() ? std::vector<double>(drift.d, 0.0) : x0;
}

std::vector<std::size_t> ErrorLadder::ns() const {
    std::vector<std::size_t> out;
    for (const auto& point : points) out.push_back(point.n);
    return out;
}

std::vector<double> ErrorLadder::estimates() const {
    std::vector<double> out;
    for (const auto& point : points) out.push_back(point.estimate);
    return out;
}

std::vector<double> ErrorLadder::std_errors() const {
    std::vector<double> out;
    for (const auto& point : points) out.push_back(point.std_error);
    return out;
}

ErrorLadder run_ladder(const LadderConfig& config) {
    config.validate();
    const Drift drift(config.drift);
    const std::vector<double> x0 = config.initial_state();
    const std::size_t levels = config.ns.size();
    const std::size_t samples = config.samples;
    const std::size_t d = config.drift.d;

    // powered[level][m] = (max_j |X_ref - X^(n)|)^p
    std::vector<std::vector<double>> powered(levels, std::vector<double>(samples));
    std::vector<double> excursion(samples, 0.0);

    parallel_for(samples, config.workers, [&](std::size_t m) {
        const RngStream stream = sample_stream(config.master_seed, m);
        const BrownianPath fine = sample_brownian(config.n_ref, d, stream.child(StreamPurpose::Brownian));
        const DiscreteTrajectory reference = simulate_reference(drift, fine, x0, stream, config.ns.back());
        double worst = reference.max_drift_excursion();

        std::vector<double> diff(d);
        for (std::size_t level = 0; level < levels; ++level) {
            const std::size_t n = config.ns[level];
            const std::size_t factor = config.n_ref / n;
            const BrownianPath coarse = coarsen_path(fine, factor);
            const DiscreteTrajectory traj =
                config.scheme == Scheme::StandardEM
                    ? simulate_standard_em(drift, coarse, x0)
                    : simulate_randomised_em(
                          drift, coarse,
                          sample_offsets(n, stream.child({static_cast<std::uint64_t>(StreamPurpose::Offsets), n})),
                          x0);
            worst = std::max(worst, traj.max_drift_excursion());

            double error = 0.0;
            for (std::size_t j = 0; j <= n; ++j) {
                const auto coarse_state = traj.state(j);
                const auto ref_state = reference.state(j * factor);
                for (std::size_t l = 0; l < d; ++l) diff[l] = ref_state[l] - coarse_state[l];
                error = std::max(error, euclidean(diff));
            }
            powered[level][m] = std::pow(error, config.p);
        }
        excursion[m] = worst;
    });

    ErrorLadder ladder;
    ladder.config = config;
    for (std::size_t level = 0; level < levels; ++level) {
        const MomentEstimate est = lp_norm_estimate(powered[level], config.p, config.batches);
        ladder.points.push_back({config.ns[level], est.estimate, est.std_error});
    }
    ladder.max_drift_excursion = *std::max_element(excursion.begin(), excursion.end());
    ladder.drift_bound_holds = ladder.max_drift_excursion <= config.drift.sup_bound();
    return ladder;
}

LadderPoint strong_error_estimate(const LadderConfig& config, std::size_t n) {
    LadderConfig single = config;
    single.ns = {n};
    return run_ladder(single).points.front();
}

OrderFit fit_order(const ErrorLadder& ladder) {
    if (ladder.points.size() < 3) throw std::invalid_argument("fit_order: need at least three ladder points");
    return fit_power_law(ladder.ns(), ladder.estimates(), ladder.std_errors());
}

double predicted_randomised_order(const DriftSpec& drift) { return 0.5 + drift.gamma(); }

std::string_view to_string(ProbeKind kind) { return kind == ProbeKind::I1 ? "I1" : "I2"; }

void ProbeConfig::validate() const {
    validate_common(drift, x0, samples, p, batches);
    if (n == 0) throw ConfigError("n", "must be positive");
    if (q < 8) throw ConfigError("q", "fine factor must be at least 8");
    if (observable.d != drift.d) throw ConfigError("observable", "dimension must match the drift");
}

namespace {

// Shared walk over the fine grid. integrand(k, j, out) fills out (size width) at fine node k in cell j.
template <class Integrand>
double sup_prefix_integral(const ContinuousExtension& ext, std::size_t width, Integrand integrand) {
    const std::size_t q = ext.q;
    const std::size_t n = ext.base.n();
    const double h = ext.fine_grid.step();
    std::vector<double> acc(width, 0.0), term(width);
    double sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < q; ++i) {
            const std::size_t k = j * q + i;
            integrand(k, j, term);
            for (std::size_t l = 0; l < width; ++l) acc[l] += term[l] * h;
            sup = std::max(sup, euclidean(acc));
        }
    }
    return sup;
}

double randomised_time(const ContinuousExtension& ext, const RandomOffsets& offsets, std::size_t j) {
    return (static_cast<double>(j) + offsets[j]) / static_cast<double>(ext.base.n());
}

}  // namespace

double i1_path_functional(const Drift& drift, const ContinuousExtension& ext, const RandomOffsets& offsets) {
    const std::size_t d = ext.base.d;
    if (offsets.n() < ext.base.n()) throw std::length_error("i1_path_functional: need at least n offsets");
    std::vector<double> at_r(d), at_node(d);
    std::size_t cached = static_cast<std::size_t>(-1);
    return sup_prefix_integral(ext, d, [&](std::size_t k, std::size_t j, std::vector<double>& term) {
        if (j != cached) {
            drift.eval(randomised_time(ext, offsets, j), ext.base.state(j), at_node);
            cached = j;
        }
        drift.eval(ext.fine_grid.node(k), ext.fine_state(k), at_r);
        for (std::size_t l = 0; l < d; ++l) term[l] = at_r[l] - at_node[l];
    });
}

double i2_path_functional(const Drift& drift, const ObservableSpec& observable, const ContinuousExtension& ext,
                          const RandomOffsets& offsets) {
    if (offsets.n() < ext.base.n()) throw std::length_error("i2_path_functional: need at least n offsets");
    double at_node = 0.0;
    std::size_t cached = static_cast<std::size_t>(-1);
    return sup_prefix_integral(ext, 1, [&](std::size_t k, std::size_t j, std::vector<double>& term) {
        if (j != cached) {
            at_node = drift.eval_component(randomised_time(ext, offsets, j), ext.base.state(j), 0);
            cached = j;
        }
        const double r = ext.fine_grid.node(k);
        const auto x_r = ext.fine_state(k);
        term[0] = (drift.eval_component(r, x_r, 0) - at_node) * eval_observable(observable, r, x_r);
    });
}

namespace {

IProbeResult measure_probe(const ProbeConfig& config, ProbeKind kind) {
    config.validate();
    const Drift drift(config.drift);
    const std::vector<double> x0 = config.x0.empty() ? std::vector<double>(config.drift.d, 0.0) : config.x0;
    std::vector<double> powered(config.samples);
    std::vector<double> excursion(config.samples);

    parallel_for(config.samples, config.workers, [&](std::size_t m) {
        const RngStream stream = sample_stream(config.master_seed, m);
        const BrownianPath fine =
            sample_brownian(config.q * config.n, config.drift.d, stream.child(StreamPurpose::Brownian));
        const RandomOffsets offsets =
            sample_offsets(config.n, stream.child({static_cast<std::uint64_t>(StreamPurpose::Offsets), config.n}));
        const DiscreteTrajectory traj = simulate_randomised_em(drift, coarsen_path(fine, config.q), offsets, x0);
        const ContinuousExtension ext = extend_continuous(drift, traj, fine, config.q, offsets);
        const double sup = kind == ProbeKind::I1 ? i1_path_functional(drift, ext, offsets)
                                                 : i2_path_functional(drift, config.observable, ext, offsets);
        powered[m] = std::pow(sup, config.p);
        excursion[m] = traj.max_drift_excursion();
    });

    const MomentEstimate est = lp_norm_estimate(powered, config.p, config.batches);
    IProbeResult result;
    result.kind = kind;
    result.n = config.n;
    result.samples = config.samples;
    result.p = config.p;
    result.q = config.q;
    result.moment = est.moment;
    result.estimate = est.estimate;
    result.std_error = est.std_error;
    result.max_drift_excursion = *std::max_element(excursion.begin(), excursion.end());
    result.drift_bound_holds = result.max_drift_excursion <= config.drift.sup_bound();
    return result;
}

}  // namespace

IProbeResult measure_I1(const ProbeConfig& config) { return measure_probe(config, ProbeKind::I1); }
IProbeResult measure_I2(const ProbeConfig& config) { return measure_probe(config, ProbeKind::I2); }

SchemeComparison compare_schemes(LadderConfig config) {
    SchemeComparison out;
    config.scheme = Scheme::StandardEM;
    out.standard = run_ladder(config);
    config.scheme = Scheme::RandomisedEM;
    out.randomised = run_ladder(config);
    out.standard_fit = fit_order(out.standard);
    out.randomised_fit = fit_order(out.randomised);
    out.slope_gap = out.randomised_fit.slope - out.standard_fit.slope;
    return out;
}

}  // namespace sderand
