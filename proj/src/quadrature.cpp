#include "sderand/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sderand/errors.hpp"
#include "sderand/parallel.hpp"

namespace sderand {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Antiderivative of |r - a|^e that vanishes at r = a.
double signed_power_antiderivative(double r, double anchor, double exponent) {
    const double u = r - anchor;
    const double magnitude = std::pow(std::abs(u), exponent + 1.0) / (exponent + 1.0);
    return u < 0.0 ? -magnitude : magnitude;
}

}  // namespace

TimeFunction::TimeFunction(Variant v) : v_(std::move(v)) {
    if (const auto* w = std::get_if<integrand::Weierstrass>(&v_)) {
        if (w->truncation < 0) throw std::invalid_argument("TimeFunction: Weierstrass truncation must be >= 0");
        double sum = 0.0;
        for (int k = 0; k <= w->truncation; ++k) {
            weights_.push_back(std::pow(2.0, -k * w->alpha));
            sum += weights_.back();
        }
        for (double& weight : weights_) weight /= sum;
    }
    if (const auto* c = std::get_if<integrand::Custom>(&v_); c != nullptr && !c->fn)
        throw std::invalid_argument("TimeFunction: custom function is empty");
}

double TimeFunction::operator()(double r) const {
    return std::visit(overloaded{
                          [](const integrand::Constant& c) { return c.value; },
                          [r](const integrand::Affine& a) { return a.intercept + a.slope * r; },
                          [r](const integrand::Power& p) { return p.scale * std::pow(std::abs(r - p.anchor), p.exponent); },
                          [r, this](const integrand::Weierstrass& w) {
                              double sum = 0.0;
                              double frequency = std::numbers::pi;
                              for (double weight : weights_) {
                                  sum += weight * std::cos(frequency * (r - w.anchor));
                                  frequency *= 2.0;
                              }
                              return w.scale * sum;
                          },
                          [r](const integrand::Custom& c) { return c.fn(r); },
                      },
                      v_);
}

double TimeFunction::integral(double a, double b) const {
    return std::visit(
        overloaded{
            [&](const integrand::Constant& c) { return c.value * (b - a); },
            [&](const integrand::Affine& f) { return f.intercept * (b - a) + 0.5 * f.slope * (b * b - a * a); },
            [&](const integrand::Power& p) {
                return p.scale * (signed_power_antiderivative(b, p.anchor, p.exponent) -
                                  signed_power_antiderivative(a, p.anchor, p.exponent));
            },
            [&](const integrand::Weierstrass& w) {
                double sum = 0.0;
                double frequency = std::numbers::pi;
                for (double weight : weights_) {
                    sum += weight * (std::sin(frequency * (b - w.anchor)) - std::sin(frequency * (a - w.anchor))) /
                           frequency;
                    frequency *= 2.0;
                }
                return w.scale * sum;
            },
            [](const integrand::Custom& c) -> double {
                throw UnsupportedFunctionError("integral_oracle: no closed-form antiderivative for '" + c.name + "'");
            },
        },
        v_);
}

double TimeFunction::integral(double t) const { return integral(0.0, t); }

bool TimeFunction::has_antiderivative() const noexcept { return !std::holds_alternative<integrand::Custom>(v_); }

std::string TimeFunction::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{
                   [&](const integrand::Constant& c) { out << "constant(" << c.value << ")"; },
                   [&](const integrand::Affine& a) { out << "affine(slope=" << a.slope << ",intercept=" << a.intercept << ")"; },
                   [&](const integrand::Power& p) {
                       out << "power(anchor=" << p.anchor << ",exponent=" << p.exponent << ",scale=" << p.scale << ")";
                   },
                   [&](const integrand::Weierstrass& w) {
                       out << "weierstrass(alpha=" << w.alpha << ",anchor=" << w.anchor << ",L=" << w.truncation
                           << ",scale=" << w.scale << ")";
                   },
                   [&](const integrand::Custom& c) { out << c.name; },
               },
               v_);
    return out.str();
}

QuadratureRun randomised_quadrature(const TimeFunction& g, std::size_t n, const RandomOffsets& offsets) {
    if (n == 0) throw std::invalid_argument("randomised_quadrature: n must be positive");
    if (offsets.n() < n) throw std::length_error("randomised_quadrature: need at least n offsets");
    QuadratureRun run;
    run.n = n;
    run.values.resize(n + 1);
    run.values[0] = 0.0;
    const double nd = static_cast<double>(n);
    // Partial sums are accumulated unscaled so that each Q^j is a single division.
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += g((static_cast<double>(i) + offsets[i]) / nd);
        run.values[i + 1] = sum / nd;
    }
    return run;
}

QuadratureRun leftpoint_quadrature(const TimeFunction& g, std::size_t n) {
    if (n == 0) throw std::invalid_argument("leftpoint_quadrature: n must be positive");
    QuadratureRun run;
    run.n = n;
    run.values.resize(n + 1);
    run.values[0] = 0.0;
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += g(static_cast<double>(i) / nd);
        run.values[i + 1] = sum / nd;
    }
    return run;
}

void attach_truth(QuadratureRun& run, const TimeFunction& g) {
    const TimeGrid grid(run.n);
    run.truth.resize(run.n + 1);
    run.error_process.resize(run.n + 1);
    for (std::size_t j = 0; j <= run.n; ++j) {
        run.truth[j] = j == 0 ? 0.0 : g.integral(grid.node(j));
        run.error_process[j] = run.truth[j] - run.values[j];
    }
}

double integral_oracle(const TimeFunction& g, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("integral_oracle: t must lie in [0,1]");
    return g.integral(t);
}

MomentEstimate lp_norm_estimate(const std::vector<double>& powered, double p, std::size_t batches) {
    if (powered.empty()) throw std::invalid_argument("lp_norm_estimate: no samples");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_estimate: p must be >= 1");
    const std::size_t m = powered.size();
    batches = std::min(batches, m);

    MomentEstimate out;
    double total = 0.0;
    for (double v : powered) total += v;
    out.moment = total / static_cast<double>(m);
    out.estimate = std::pow(out.moment, 1.0 / p);
    if (batches < 2 || out.moment == 0.0) return out;

    std::vector<double> batch_means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t begin = b * m / batches;
        const std::size_t end = (b + 1) * m / batches;
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += powered[i];
        batch_means[b] = s / static_cast<double>(end - begin);
    }
    double mean_of_means = 0.0;
    for (double bm : batch_means) mean_of_means += bm;
    mean_of_means /= static_cast<double>(batches);
    double var = 0.0;
    for (double bm : batch_means) var += (bm - mean_of_means) * (bm - mean_of_means);
    var /= static_cast<double>(batches - 1);
    const double moment_se = std::sqrt(var / static_cast<double>(batches));
    out.std_error = moment_se * std::pow(out.moment, 1.0 / p - 1.0) / p;
    return out;
}

MartingaleReport martingale_diagnostic(const TimeFunction& g, std::size_t n, std::size_t samples,
                                       const RngStream& stream, std::size_t workers, double z_threshold) {
    if (n == 0) throw std::invalid_argument("martingale_diagnostic: n must be positive");
    if (samples < 100) throw ConfigError("samples", "martingale diagnostic needs at least 100 samples");

    const TimeGrid grid(n);
    const double nd = static_cast<double>(n);
    std::vector<double> exact_steps(n);
    for (std::size_t j = 0; j < n; ++j) exact_steps[j] = g.integral(grid.node(j), grid.node(j + 1));

    // increments[m][j] = (E_{j+1} - E_j) for draw m; terminal[m] = Q^n.
    std::vector<double> increments(samples * n);
    std::vector<double> terminal(samples);
    parallel_for(samples, workers, [&](std::size_t m) {
        const RandomOffsets offsets =
            sample_offsets(n, stream.child({static_cast<std::uint64_t>(StreamPurpose::Martingale), m}));
        const QuadratureRun run = randomised_quadrature(g, n, offsets);
        for (std::size_t j = 0; j < n; ++j) {
            const double sampled = g((static_cast<double>(j) + offsets[j]) / nd) / nd;
            increments[m * n + j] = exact_steps[j] - sampled;
        }
        terminal[m] = run.values[n];
    });

    auto mean_and_se = [samples](auto value_at) {
        double mean = 0.0;
        for (std::size_t m = 0; m < samples; ++m) mean += value_at(m);
        mean /= static_cast<double>(samples);
        double ss = 0.0;
        for (std::size_t m = 0; m < samples; ++m) ss += (value_at(m) - mean) * (value_at(m) - mean);
        const double sd = std::sqrt(ss / static_cast<double>(samples - 1));
        return std::pair{mean, sd / std::sqrt(static_cast<double>(samples))};
    };

    MartingaleReport report;
    report.n = n;
    report.samples = samples;
    report.z_threshold = z_threshold;
    report.steps.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto [mean, se] = mean_and_se([&](std::size_t m) { return increments[m * n + j]; });
        MartingaleStep& step = report.steps[j];
        step.mean = mean;
        step.std_error = se;
        step.flagged = std::abs(mean) > z_threshold * se;
        if (step.flagged) ++report.flagged_steps;
    }
    auto [mean, se] = mean_and_se([&](std::size_t m) { return terminal[m]; });
    report.terminal_mean = mean;
    report.terminal_std_error = se;
    report.terminal_truth = g.integral(1.0);
    report.terminal_unbiased = std::abs(mean - report.terminal_truth) <= z_threshold * se;
    return report;
}

QuadratureOrderReport quadrature_order_experiment(const TimeFunction& g, const std::vector<std::size_t>& ns,
                                                  std::size_t samples, const RngStream& stream, double p,
                                                  std::size_t workers) {
    if (ns.size() < 2) throw std::invalid_argument("quadrature_order_experiment: ladder needs at least two resolutions");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] == 0) throw ConfigError("ns", "resolutions must be positive");
        if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("ns", "resolutions must be strictly ascending");
    }
    if (samples < 100) throw ConfigError("samples", "quadrature ladder needs at least 100 samples");
    if (!(p >= 1.0)) throw ConfigError("p", "must be >= 1");

    QuadratureOrderReport report;
    report.ns = ns;
    report.samples = samples;
    report.p = p;
    const double truth = g.integral(1.0);
    for (std::size_t n : ns) {
        std::vector<double> powered(samples);
        parallel_for(samples, workers, [&](std::size_t m) {
            const RandomOffsets offsets =
                sample_offsets(n, stream.child({static_cast<std::uint64_t>(StreamPurpose::Quadrature), n, m}));
            const QuadratureRun run = randomised_quadrature(g, n, offsets);
            powered[m] = std::pow(std::abs(truth - run.values[n]), p);
        });
        const MomentEstimate est = lp_norm_estimate(powered, p);
        report.randomised_error.push_back(est.estimate);
        report.randomised_std_error.push_back(est.std_error);
        report.leftpoint_error.push_back(std::abs(truth - leftpoint_quadrature(g, n).values[n]));
    }
    report.randomised_fit = fit_power_law(report.ns, report.randomised_error, report.randomised_std_error);
    report.leftpoint_fit = fit_power_law(report.ns, report.leftpoint_error);
    return report;
}

}  // namespace sderand
