#include "sderand/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "sderand/errors.hpp"
#include "sderand/experiments.hpp"
#include "sderand/quadrature.hpp"

namespace sderand {

using nlohmann::json;

std::string_view to_string(Command command) {
    switch (command) {
        case Command::Converge: return "converge";
        case Command::Compare: return "compare";
        case Command::Quadrature: return "quadrature";
        case Command::IProbe: return "iprobe";
        case Command::SelfTest: return "selftest";
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::Converge, Command::Compare, Command::Quadrature, Command::IProbe, Command::SelfTest})
        if (to_string(c) == name) return c;
    throw ConfigError("command", "unknown command '" + std::string(name) + "'");
}

namespace {

std::size_t parse_positive(std::string_view text) {
    std::size_t value = 0;
    if (text.empty()) throw ConfigError("ns", "empty entry");
    for (char c : text) {
        if (c < '0' || c > '9') throw ConfigError("ns", "bad resolution '" + std::string(text) + "'");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

std::size_t parse_resolution(std::string_view text) {
    if (text.starts_with("2^")) {
        const std::size_t exponent = parse_positive(text.substr(2));
        if (exponent > 40) throw ConfigError("ns", "exponent too large");
        return std::size_t{1} << exponent;
    }
    return parse_positive(text);
}

}  // namespace

std::vector<std::size_t> parse_resolution_list(std::string_view text) {
    std::vector<std::size_t> out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const std::string_view lo = text.substr(0, dots);
        const std::string_view hi = text.substr(dots + 2);
        if (!lo.starts_with("2^") || !hi.starts_with("2^"))
            throw ConfigError("ns", "ranges must be written 2^a..2^b");
        for (std::size_t n = parse_resolution(lo), last = parse_resolution(hi); n <= last; n *= 2) out.push_back(n);
        if (out.empty()) throw ConfigError("ns", "empty range");
        return out;
    }
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const auto comma = text.find(',', begin);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_resolution(text.substr(begin, end - begin)));
        begin = end + 1;
        if (comma == std::string_view::npos) break;
    }
    return out;
}

namespace {

LadderConfig ladder_config(const RunConfig& c) {
    LadderConfig lc;
    lc.drift = c.drift;
    lc.scheme = c.scheme;
    lc.ns = c.ns;
    lc.n_ref = c.n_ref;
    lc.samples = c.samples;
    lc.p = c.p;
    lc.master_seed = c.master_seed;
    lc.x0 = c.x0;
    lc.batches = c.batches;
    lc.workers = c.workers;
    return lc;
}

ProbeConfig probe_config(const RunConfig& c, std::size_t n) {
    ProbeConfig pc;
    pc.drift = c.drift;
    pc.observable = {c.observable, c.drift.d};
    pc.n = n;
    pc.q = c.q;
    pc.samples = c.samples;
    pc.p = c.p;
    pc.master_seed = c.master_seed;
    pc.x0 = c.x0;
    pc.batches = c.batches;
    pc.workers = c.workers;
    return pc;
}

/// The time profile of the drift, used as the quadrature integrand.
TimeFunction integrand_for(const DriftSpec& drift) {
    switch (drift.family) {
        case DriftFamily::TimeOnly:
        case DriftFamily::Product: return integrand::Power{drift.anchor, drift.alpha, drift.amplitude};
        case DriftFamily::Weierstrass:
            return integrand::Weierstrass{drift.alpha, drift.anchor, drift.truncation, drift.amplitude};
        case DriftFamily::Constant: return integrand::Constant{drift.constant_value.at(0)};
        case DriftFamily::SpaceOnly: return integrand::Constant{drift.amplitude};
        case DriftFamily::Zero: break;
    }
    return integrand::Constant{0.0};
}

void require_ascending(const std::vector<std::size_t>& ns, std::size_t minimum) {
    if (ns.size() < minimum) throw ConfigError("ns", "needs at least " + std::to_string(minimum) + " resolutions");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] == 0) throw ConfigError("ns", "resolutions must be positive");
        if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("ns", "resolutions must be strictly ascending");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (workers == 0) throw ConfigError("workers", "must be at least 1");
    if (command == Command::SelfTest) return;
    drift.validate();
    if (!x0.empty() && x0.size() != drift.d) throw ConfigError("x0", "needs exactly d entries");
    if (drift.family == DriftFamily::Weierstrass && !ns.empty()) {
        // Roughness below 2^-L is truncated away; keep every step at least 8 times coarser.
        const double finest = 1.0 / static_cast<double>(ns.back());
        if (finest < 8.0 * std::ldexp(1.0, -drift.truncation))
            throw ConfigError("ns", "Weierstrass drift with L=" + std::to_string(drift.truncation) +
                                        " needs max n <= 2^(L-3)");
    }
    switch (command) {
        case Command::Converge:
        case Command::Compare:
            require_ascending(ns, 3);
            ladder_config(*this).validate();
            break;
        case Command::Quadrature:
            require_ascending(ns, 2);
            if (samples < 100) throw ConfigError("samples", "quadrature ladder needs at least 100 samples");
            if (!(p >= 1.0)) throw ConfigError("p", "must be >= 1");
            break;
        case Command::IProbe:
            require_ascending(ns, 2);
            for (std::size_t n : ns) probe_config(*this, n).validate();
            break;
        case Command::SelfTest: break;
    }
}

std::string RunConfig::to_json() const {
    json j;
    j["command"] = std::string(sderand::to_string(command));
    j["family"] = std::string(sderand::to_string(drift.family));
    j["alpha"] = drift.alpha;
    j["beta"] = drift.beta;
    j["K"] = drift.amplitude;
    j["d"] = drift.d;
    j["anchor"] = drift.anchor;
    j["L"] = drift.truncation;
    j["constant"] = drift.constant_value;
    j["scheme"] = std::string(sderand::to_string(scheme));
    j["ns"] = ns;
    j["n_ref"] = n_ref;
    j["samples"] = samples;
    j["p"] = p;
    j["q"] = q;
    j["seed"] = master_seed;
    j["x0"] = x0.empty() ? std::vector<double>(drift.d, 0.0) : x0;
    j["observable"] = std::string(sderand::to_string(observable));
    j["batches"] = batches;
    j["workers"] = workers;
    j["out"] = output_dir.string();
    j["svg"] = emit_svg;
    j["strict"] = strict;
    return j.dump(2);
}

void RunConfig::merge_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("unparseable config file: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "config file must hold a JSON object");
    auto take = [&](const char* key, auto& target) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(target);
        } catch (const json::exception& e) {
            throw ConfigError(key, std::string("wrong type in config file: ") + e.what());
        }
    };
    std::string text_value;
    if (j.contains("command")) {
        take("command", text_value);
        command = parse_command(text_value);
    }
    if (j.contains("family")) {
        take("family", text_value);
        drift.family = parse_drift_family(text_value);
    }
    if (j.contains("scheme")) {
        take("scheme", text_value);
        scheme = parse_scheme(text_value);
    }
    if (j.contains("observable")) {
        take("observable", text_value);
        observable = parse_observable_kind(text_value);
    }
    if (j.contains("ns") && j["ns"].is_string()) {
        ns = parse_resolution_list(j["ns"].get<std::string>());
    } else {
        take("ns", ns);
    }
    take("alpha", drift.alpha);
    take("beta", drift.beta);
    take("K", drift.amplitude);
    take("d", drift.d);
    take("anchor", drift.anchor);
    take("L", drift.truncation);
    take("constant", drift.constant_value);
    take("n_ref", n_ref);
    take("samples", samples);
    take("p", p);
    take("q", q);
    take("seed", master_seed);
    take("x0", x0);
    take("batches", batches);
    take("workers", workers);
    if (j.contains("out")) {
        take("out", text_value);
        output_dir = text_value;
    }
    take("svg", emit_svg);
    take("strict", strict);
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void echo_config(Summary& summary, const RunConfig& config) {
    const json j = json::parse(config.to_json());
    for (const auto& [key, value] : j.items())
        summary.add("config." + key, value.is_string() ? value.get<std::string>() : value.dump());
}

bool strictly_decreasing(const std::vector<double>& values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] < values[i - 1])) return false;
    return true;
}

/// The rate statements are lower bounds on the order: pass when the fitted
/// slope reaches the prediction within 3 standard errors plus the epsilon slack.
bool order_reaches(const OrderFit& fit, double predicted, double slack = 0.15) {
    return !fit.degenerate && fit.slope >= predicted - 3.0 * fit.slope_std_error - slack;
}

void add_ladder_rows(RunOutcome& outcome, const ErrorLadder& ladder) {
    for (const auto& point : ladder.points)
        outcome.rows.push_back({point.n, std::string(to_string(ladder.config.scheme)), ladder.config.p, point.estimate,
                                point.std_error, ladder.config.samples, ladder.config.master_seed});
}

void add_points(Summary& summary, const std::string& prefix, const std::vector<std::size_t>& ns,
                const std::vector<double>& values) {
    for (std::size_t i = 0; i < ns.size(); ++i) summary.add(prefix + ".n" + std::to_string(ns[i]), values[i]);
}

void run_converge(const RunConfig& config, RunOutcome& out) {
    const ErrorLadder ladder = run_ladder(ladder_config(config));
    const OrderFit fit = fit_order(ladder);
    add_ladder_rows(out, ladder);
    Summary& s = out.summary;
    add_points(s, "estimate", ladder.ns(), ladder.estimates());
    s.add_fit("fit", fit);
    s.add("max_drift_excursion", ladder.max_drift_excursion);
    s.add("drift_bound_holds", ladder.drift_bound_holds);
    out.bands_passed = ladder.drift_bound_holds;
    if (fit.degenerate_zero) {
        s.add("flag", std::string("degenerate-zero"));
        s.add("band.order", std::string("n/a"));
    } else if (config.scheme == Scheme::RandomisedEM) {
        const double predicted = predicted_randomised_order(config.drift);
        const bool reaches = order_reaches(fit, predicted);
        s.add("predicted_slope", predicted);
        s.add("epsilon_slack", 0.15);
        s.add("band.order", std::string(reaches ? "pass" : "fail"));
        s.add("band.containment", std::string(slope_band_contains(fit, predicted) ? "pass" : "fail"));
        out.bands_passed = out.bands_passed && reaches;
    } else {
        const double alpha = config.drift.time_dependent() ? config.drift.alpha : 1.0;
        s.add("predicted_slope_upper", std::min(alpha, (1.0 + config.drift.beta) / 2.0));
        s.add("band.order", std::string("n/a"));
    }
    out.svg = render_loglog_svg({{std::string(to_string(config.scheme)), ladder.ns(), ladder.estimates(), fit}},
                                "strong error vs n");
}

void run_compare(const RunConfig& config, RunOutcome& out) {
    const SchemeComparison cmp = compare_schemes(ladder_config(config));
    add_ladder_rows(out, cmp.standard);
    add_ladder_rows(out, cmp.randomised);
    Summary& s = out.summary;
    add_points(s, "standard_em.estimate", cmp.standard.ns(), cmp.standard.estimates());
    add_points(s, "randomised_em.estimate", cmp.randomised.ns(), cmp.randomised.estimates());
    s.add_fit("standard_em.fit", cmp.standard_fit);
    s.add_fit("randomised_em.fit", cmp.randomised_fit);
    s.add("slope_gap", cmp.slope_gap);
    s.add("predicted_slope", predicted_randomised_order(config.drift));
    const bool bound = cmp.standard.drift_bound_holds && cmp.randomised.drift_bound_holds;
    s.add("drift_bound_holds", bound);
    out.bands_passed = bound;
    if (!config.drift.time_dependent() || cmp.randomised_fit.degenerate) {
        s.add("band.scheme_gap", std::string("n/a"));
    } else {
        const bool gap_ok = cmp.slope_gap >= 0.2;
        s.add("band.scheme_gap", std::string(gap_ok ? "pass" : "fail"));
        out.bands_passed = out.bands_passed && gap_ok;
    }
    out.svg = render_loglog_svg({{"standard_em", cmp.standard.ns(), cmp.standard.estimates(), cmp.standard_fit},
                                 {"randomised_em", cmp.randomised.ns(), cmp.randomised.estimates(), cmp.randomised_fit}},
                                "standard vs randomised EM");
}

void run_quadrature(const RunConfig& config, RunOutcome& out) {
    const TimeFunction g = integrand_for(config.drift);
    const QuadratureOrderReport report =
        quadrature_order_experiment(g, config.ns, config.samples, RngStream(config.master_seed), config.p, config.workers);
    for (std::size_t i = 0; i < report.ns.size(); ++i) {
        out.rows.push_back({report.ns[i], "randomised_quadrature", config.p, report.randomised_error[i],
                            report.randomised_std_error[i], config.samples, config.master_seed});
        out.rows.push_back({report.ns[i], "leftpoint_quadrature", config.p, report.leftpoint_error[i], 0.0, 1,
                            config.master_seed});
    }
    Summary& s = out.summary;
    s.add("integrand", g.describe());
    s.add("integral", g.integral(1.0));
    add_points(s, "randomised.error", report.ns, report.randomised_error);
    add_points(s, "leftpoint.error", report.ns, report.leftpoint_error);
    s.add_fit("randomised.fit", report.randomised_fit);
    s.add_fit("leftpoint.fit", report.leftpoint_fit);
    if (report.randomised_fit.degenerate_zero) {
        s.add("flag", std::string("degenerate-zero"));
        s.add("band.order", std::string("n/a"));
    } else {
        const double alpha = config.drift.time_dependent() ? config.drift.alpha : 1.0;
        const bool reaches = order_reaches(report.randomised_fit, 0.5 + alpha);
        s.add("predicted_slope", 0.5 + alpha);
        s.add("predicted_slope_leftpoint", alpha);
        s.add("band.order", std::string(reaches ? "pass" : "fail"));
        out.bands_passed = reaches;
    }
    out.svg = render_loglog_svg({{"randomised", report.ns, report.randomised_error, report.randomised_fit},
                                 {"left-point", report.ns, report.leftpoint_error, report.leftpoint_fit}},
                                "quadrature error vs n");
}

void run_iprobe(const RunConfig& config, RunOutcome& out) {
    std::vector<double> i1, i2, i1_se, i2_se;
    bool bound = true;
    for (std::size_t n : config.ns) {
        const ProbeConfig pc = probe_config(config, n);
        for (const IProbeResult& r : {measure_I1(pc), measure_I2(pc)}) {
            out.rows.push_back({n, std::string(to_string(r.kind)), r.p, r.estimate, r.std_error, r.samples,
                                config.master_seed});
            (r.kind == ProbeKind::I1 ? i1 : i2).push_back(r.estimate);
            (r.kind == ProbeKind::I1 ? i1_se : i2_se).push_back(r.std_error);
            bound = bound && r.drift_bound_holds;
        }
    }
    const OrderFit fit1 = fit_power_law(config.ns, i1, i1_se);
    const OrderFit fit2 = fit_power_law(config.ns, i2, i2_se);
    Summary& s = out.summary;
    add_points(s, "I1.estimate", config.ns, i1);
    add_points(s, "I2.estimate", config.ns, i2);
    s.add_fit("I1.fit", fit1);
    s.add_fit("I2.fit", fit2);
    s.add("drift_bound_holds", bound);
    out.bands_passed = bound;
    if (fit1.degenerate_zero && fit2.degenerate_zero) {
        s.add("flag", std::string("degenerate-zero"));
        s.add("band.order", std::string("n/a"));
    } else {
        const double predicted = predicted_randomised_order(config.drift);
        const bool ok = strictly_decreasing(i1) && strictly_decreasing(i2) && order_reaches(fit1, predicted) &&
                        order_reaches(fit2, predicted);
        s.add("predicted_slope", predicted);
        s.add("band.order", std::string(ok ? "pass" : "fail"));
        out.bands_passed = out.bands_passed && ok;
    }
    out.svg = render_loglog_svg({{"I1", config.ns, i1, fit1}, {"I2", config.ns, i2, fit2}}, "quadrature-error probes");
}

}  // namespace

RunOutcome execute(const RunConfig& config) {
    config.validate();
    RunOutcome out;
    Summary& s = out.summary;
    s.add("tool_version", std::string(kToolVersion));
    s.add("timestamp", utc_timestamp());
    echo_config(s, config);
    const auto start = std::chrono::steady_clock::now();
    switch (config.command) {
        case Command::Converge: run_converge(config, out); break;
        case Command::Compare: run_compare(config, out); break;
        case Command::Quadrature: run_quadrature(config, out); break;
        case Command::IProbe: run_iprobe(config, out); break;
        case Command::SelfTest: {
            std::size_t passed = 0;
            const auto checks = run_selftest(config.workers);
            for (const auto& check : checks) {
                s.add("selftest." + check.name, std::string(check.passed ? "pass" : "FAIL: " + check.detail));
                passed += check.passed ? 1 : 0;
            }
            s.add("selftest.passed", passed);
            s.add("selftest.total", checks.size());
            out.bands_passed = passed == checks.size();
            if (!out.bands_passed) out.exit_code = 1;
            break;
        }
    }
    s.add("wall_clock_seconds",
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    s.add("bands_passed", out.bands_passed);
    if (config.strict && !out.bands_passed && out.exit_code == 0) out.exit_code = 3;
    return out;
}

int run(const RunConfig& config) {
    RunOutcome outcome;
    try {
        outcome = execute(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    try {
        std::filesystem::create_directories(config.output_dir);
        write_csv(config.output_dir / "results.csv", outcome.rows);
        write_text(config.output_dir / "summary.txt", outcome.summary.str());
        write_text(config.output_dir / "config.json", config.to_json() + "\n");
        if (config.emit_svg && !outcome.svg.empty()) write_text(config.output_dir / "plot.svg", outcome.svg);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 1;
    }
    std::cout << outcome.summary.str();
    return outcome.exit_code;
}

}  // namespace sderand
