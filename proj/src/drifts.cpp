#include "sderand/drifts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sderand/errors.hpp"

namespace sderand {

std::string_view to_string(DriftFamily family) {
    switch (family) {
        case DriftFamily::Zero: return "zero";
        case DriftFamily::Constant: return "constant";
        case DriftFamily::TimeOnly: return "time_only";
        case DriftFamily::Product: return "product";
        case DriftFamily::Weierstrass: return "weierstrass";
        case DriftFamily::SpaceOnly: return "space_only";
    }
    return "unknown";
}

DriftFamily parse_drift_family(std::string_view name) {
    for (auto family : {DriftFamily::Zero, DriftFamily::Constant, DriftFamily::TimeOnly, DriftFamily::Product,
                        DriftFamily::Weierstrass, DriftFamily::SpaceOnly})
        if (to_string(family) == name) return family;
    throw ConfigError("family", "unknown drift family '" + std::string(name) + "'");
}

void DriftSpec::validate() const {
    if (d == 0) throw ConfigError("d", "dimension must be positive");
    const bool uses_alpha = family == DriftFamily::TimeOnly || family == DriftFamily::Product ||
                            family == DriftFamily::Weierstrass;
    const bool uses_beta = family == DriftFamily::Product || family == DriftFamily::Weierstrass ||
                           family == DriftFamily::SpaceOnly;
    if (uses_alpha && !(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in (0,1]");
    if (uses_beta && !(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta", "must lie in (0,1]");
    if (family != DriftFamily::Zero && family != DriftFamily::Constant &&
        !(amplitude > 0.0 && std::isfinite(amplitude)))
        throw ConfigError("K", "amplitude must be positive and finite");
    if (uses_alpha && !(anchor >= 0.0 && anchor <= 1.0)) throw ConfigError("anchor", "must lie in [0,1]");
    if (family == DriftFamily::Constant) {
        if (constant_value.size() != d) throw ConfigError("constant_value", "needs exactly d entries");
        for (double c : constant_value)
            if (!std::isfinite(c)) throw ConfigError("constant_value", "entries must be finite");
    }
    if (family == DriftFamily::Weierstrass && (truncation < 0 || truncation > 40))
        throw ConfigError("L", "Weierstrass truncation must lie in [0,40]");
}

DriftSpec DriftSpec::zero(std::size_t d) {
    DriftSpec spec;
    spec.family = DriftFamily::Zero;
    spec.d = d;
    return spec;
}

DriftSpec DriftSpec::constant(std::vector<double> value) {
    DriftSpec spec;
    spec.family = DriftFamily::Constant;
    spec.d = value.size();
    spec.amplitude = 0.0;
    for (double c : value) spec.amplitude = std::max(spec.amplitude, std::abs(c));
    spec.constant_value = std::move(value);
    return spec;
}

DriftSpec DriftSpec::time_only(double alpha, double amplitude, double anchor, std::size_t d) {
    DriftSpec spec;
    spec.family = DriftFamily::TimeOnly;
    spec.alpha = alpha;
    spec.amplitude = amplitude;
    spec.anchor = anchor;
    spec.d = d;
    return spec;
}

DriftSpec DriftSpec::product(double alpha, double beta, double amplitude, std::size_t d, double anchor) {
    DriftSpec spec;
    spec.family = DriftFamily::Product;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.amplitude = amplitude;
    spec.d = d;
    spec.anchor = anchor;
    return spec;
}

DriftSpec DriftSpec::weierstrass(double alpha, double beta, double amplitude, std::size_t d, int truncation,
                                 double anchor) {
    DriftSpec spec = product(alpha, beta, amplitude, d, anchor);
    spec.family = DriftFamily::Weierstrass;
    spec.truncation = truncation;
    return spec;
}

DriftSpec DriftSpec::space_only(double beta, double amplitude, std::size_t d) {
    DriftSpec spec;
    spec.family = DriftFamily::SpaceOnly;
    spec.beta = beta;
    spec.amplitude = amplitude;
    spec.d = d;
    return spec;
}

double DriftSpec::sup_bound() const {
    switch (family) {
        case DriftFamily::Zero: return 0.0;
        case DriftFamily::Constant: {
            double bound = 0.0;
            for (double c : constant_value) bound = std::max(bound, std::abs(c));
            return bound;
        }
        default: return amplitude;
    }
}

double DriftSpec::time_seminorm_bound() const {
    switch (family) {
        case DriftFamily::TimeOnly:
        case DriftFamily::Product:
            // ||t-a|^α - |s-a|^α| <= |t-s|^α
            return amplitude;
        case DriftFamily::Weierstrass: {
            // |cos(ωu) - cos(ωv)| <= min(2, ω|u-v|); its α-quotient peaks at 2(ω/2)^α,
            // so each weighted mode contributes at most 2(π/2)^α.
            double weight_sum = 0.0;
            for (int k = 0; k <= truncation; ++k) weight_sum += std::pow(2.0, -k * alpha);
            return amplitude * (truncation + 1) * 2.0 * std::pow(std::numbers::pi / 2.0, alpha) / weight_sum;
        }
        default: return 0.0;
    }
}

double DriftSpec::space_seminorm_bound() const {
    switch (family) {
        case DriftFamily::Product:
        case DriftFamily::Weierstrass:
        case DriftFamily::SpaceOnly:
            // ||sin x|^β - |sin y|^β| <= |x-y|^β
            return amplitude;
        default: return 0.0;
    }
}

double DriftSpec::gamma() const {
    const double a = time_dependent() ? alpha : 1.0;
    const bool space_dependent =
        family == DriftFamily::Product || family == DriftFamily::Weierstrass || family == DriftFamily::SpaceOnly;
    const double b = space_dependent ? beta : 1.0;
    return std::min(a, b / 2.0);
}

bool DriftSpec::time_dependent() const {
    return family == DriftFamily::TimeOnly || family == DriftFamily::Product || family == DriftFamily::Weierstrass;
}

Drift::Drift(DriftSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.family == DriftFamily::Weierstrass) {
        double weight_sum = 0.0;
        for (int k = 0; k <= spec_.truncation; ++k) {
            weierstrass_weights_.push_back(std::pow(2.0, -k * spec_.alpha));
            weight_sum += weierstrass_weights_.back();
        }
        for (double& w : weierstrass_weights_) w /= weight_sum;
    }
}

double Drift::time_factor(double t) const {
    switch (spec_.family) {
        case DriftFamily::TimeOnly:
        case DriftFamily::Product: return spec_.amplitude * std::pow(std::abs(t - spec_.anchor), spec_.alpha);
        case DriftFamily::Weierstrass: {
            double sum = 0.0;
            double frequency = std::numbers::pi;
            for (double w : weierstrass_weights_) {
                sum += w * std::cos(frequency * (t - spec_.anchor));
                frequency *= 2.0;
            }
            return spec_.amplitude * sum;
        }
        case DriftFamily::SpaceOnly: return spec_.amplitude;
        default: return 0.0;
    }
}

double Drift::space_factor(double x) const {
    const double s = std::abs(std::sin(x));
    return spec_.beta == 1.0 ? s : std::pow(s, spec_.beta);
}

void Drift::eval(double t, std::span<const double> x, std::span<double> out) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_drift: t must lie in [0,1]");
    if (x.size() != spec_.d || out.size() != spec_.d)
        throw std::invalid_argument("eval_drift: dimension mismatch");
    switch (spec_.family) {
        case DriftFamily::Zero: std::fill(out.begin(), out.end(), 0.0); return;
        case DriftFamily::Constant: std::copy(spec_.constant_value.begin(), spec_.constant_value.end(), out.begin()); return;
        case DriftFamily::TimeOnly: std::fill(out.begin(), out.end(), time_factor(t)); return;
        default: {
            const double scale = time_factor(t);
            for (std::size_t l = 0; l < x.size(); ++l) out[l] = scale * space_factor(x[l]);
        }
    }
}

std::vector<double> Drift::operator()(double t, std::span<const double> x) const {
    std::vector<double> out(spec_.d);
    eval(t, x, out);
    return out;
}

double Drift::eval_component(double t, std::span<const double> x, std::size_t l) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_drift: t must lie in [0,1]");
    if (x.size() != spec_.d || l >= spec_.d) throw std::invalid_argument("eval_drift: dimension mismatch");
    switch (spec_.family) {
        case DriftFamily::Zero: return 0.0;
        case DriftFamily::Constant: return spec_.constant_value[l];
        case DriftFamily::TimeOnly: return time_factor(t);
        default: return time_factor(t) * space_factor(x[l]);
    }
}

std::vector<double> eval_drift(const DriftSpec& spec, double t, std::span<const double> x) {
    return Drift(spec)(t, x);
}

std::string_view to_string(ObservableKind kind) {
    return kind == ObservableKind::UnitScalar ? "unit_scalar" : "smooth_decay";
}

ObservableKind parse_observable_kind(std::string_view name) {
    if (name == "unit_scalar") return ObservableKind::UnitScalar;
    if (name == "smooth_decay") return ObservableKind::SmoothDecay;
    throw ConfigError("observable", "unknown observable '" + std::string(name) + "'");
}

double eval_observable(const ObservableSpec& spec, double t, std::span<const double> x) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_observable: t must lie in [0,1]");
    if (x.size() != spec.d) throw std::invalid_argument("eval_observable: dimension mismatch");
    if (spec.kind == ObservableKind::UnitScalar) return 1.0;
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    return std::cos(t) / std::sqrt(1.0 + norm2);
}

HolderProbe probe_holder_seminorms(const DriftSpec& spec, std::size_t n_pairs, const RngStream& stream) {
    if (n_pairs == 0) throw std::invalid_argument("probe_holder_seminorms: n_pairs must be positive");
    const Drift drift(spec);
    const std::size_t d = spec.d;
    // Per pair: 1 base time, 1 separation, 1 sign, d base coordinates.
    const std::size_t draws_per_pair = 3 + d;
    const RngStream time_stream = stream.child({static_cast<std::uint64_t>(StreamPurpose::Probe), 1});
    const RngStream space_stream = stream.child({static_cast<std::uint64_t>(StreamPurpose::Probe), 2});

    auto separation = [](double u) { return std::pow(10.0, -6.0 * u); };
    auto max_abs_diff = [](std::span<const double> a, std::span<const double> b) {
        double m = 0.0;
        for (std::size_t l = 0; l < a.size(); ++l) m = std::max(m, std::abs(a[l] - b[l]));
        return m;
    };

    std::vector<double> x(d), y(d), fa(d), fb(d);
    HolderProbe probe;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const std::uint64_t base = i * draws_per_pair;
        for (std::size_t l = 0; l < d; ++l) x[l] = 8.0 * time_stream.uniform(base + 3 + l) - 4.0;

        double s = time_stream.uniform(base);
        double t = s + separation(time_stream.uniform(base + 1)) * (time_stream.uniform(base + 2) < 0.5 ? -1.0 : 1.0);
        t = std::clamp(t, 0.0, 1.0);
        if (t != s) {
            drift.eval(s, x, fa);
            drift.eval(t, x, fb);
            probe.time_seminorm =
                std::max(probe.time_seminorm, max_abs_diff(fa, fb) / std::pow(std::abs(t - s), spec.alpha));
        }

        const double tt = space_stream.uniform(base);
        const double h = separation(space_stream.uniform(base + 1));
        for (std::size_t l = 0; l < d; ++l) {
            x[l] = 8.0 * space_stream.uniform(base + 3 + l) - 4.0;
            y[l] = x[l] + ((l == 0 || space_stream.uniform(base + 2) < 0.5) ? h : -h);
        }
        drift.eval(tt, x, fa);
        drift.eval(tt, y, fb);
        probe.space_seminorm = std::max(probe.space_seminorm, max_abs_diff(fa, fb) / std::pow(h, spec.beta));
    }
    return probe;
}

}  // namespace sderand
