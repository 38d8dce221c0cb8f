// Command-line front end: sde-rand-em <command> [flags]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sderand/cli.hpp"
#include "sderand/errors.hpp"

int main(int argc, char** argv) {
    using namespace sderand;

    CLI::App app{"Strong-convergence laboratory for randomised Euler-Maruyama on additive SDEs with Hölder drift",
                 "sde-rand-em"};
    app.set_version_flag("--version", kToolVersion);

    std::string command, config_file, family, scheme, ns, observable, out;
    double alpha = 0, beta = 0, amplitude = 0, anchor = 0, p = 0;
    std::size_t d = 0, n_ref = 0, samples = 0, q = 0, batches = 0, workers = 0;
    int truncation = 0;
    std::uint64_t seed = 0;
    std::vector<double> constant, x0;

    app.add_option("command", command, "converge | compare | quadrature | iprobe | selftest")->required();
    app.add_option("--config", config_file, "JSON config file; flags override its fields");
    auto* o_family = app.add_option("--family", family, "zero|constant|time_only|product|weierstrass|space_only");
    auto* o_alpha = app.add_option("--alpha", alpha, "time Hölder exponent in (0,1]");
    auto* o_beta = app.add_option("--beta", beta, "space Hölder exponent in (0,1]");
    auto* o_k = app.add_option("--K", amplitude, "drift amplitude");
    auto* o_d = app.add_option("--d", d, "dimension");
    auto* o_anchor = app.add_option("--anchor", anchor, "location of the time singularity");
    auto* o_l = app.add_option("--L", truncation, "Weierstrass truncation");
    auto* o_constant = app.add_option("--constant", constant, "constant drift value (d entries)")->delimiter(',');
    auto* o_scheme = app.add_option("--scheme", scheme, "standard_em | randomised_em");
    auto* o_ns = app.add_option("--ns", ns, "resolutions, e.g. 16,32,64 or 2^4..2^9");
    auto* o_nref = app.add_option("--nref", n_ref, "reference resolution");
    auto* o_samples = app.add_option("--samples", samples, "Monte Carlo samples M");
    auto* o_p = app.add_option("--p", p, "moment order p >= 1");
    auto* o_seed = app.add_option("--seed", seed, "master seed");
    auto* o_q = app.add_option("--q", q, "fine factor for probes");
    auto* o_x0 = app.add_option("--x0", x0, "initial state (d entries)")->delimiter(',');
    auto* o_observable = app.add_option("--observable", observable, "unit_scalar | smooth_decay");
    auto* o_batches = app.add_option("--batches", batches, "batches for standard errors (>= 10)");
    auto* o_out = app.add_option("--out", out, "output directory");
    auto* o_workers = app.add_option("--workers", workers, "worker threads");
    auto* f_svg = app.add_flag("--svg", "write plot.svg");
    auto* f_strict = app.add_flag("--strict", "exit 3 when an acceptance band fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunConfig config;
    try {
        if (!config_file.empty()) {
            std::ifstream file(config_file);
            if (!file) throw ConfigError("config", "cannot read '" + config_file + "'");
            std::stringstream buffer;
            buffer << file.rdbuf();
            config.merge_json(buffer.str());
        }
        config.command = parse_command(command);
        if (*o_family) {
            config.drift.family = parse_drift_family(family);
            if (config.drift.family == DriftFamily::Constant && !*o_constant && config.drift.constant_value.empty())
                throw ConfigError("constant", "constant family needs --constant");
        }
        if (*o_alpha) config.drift.alpha = alpha;
        if (*o_beta) config.drift.beta = beta;
        if (*o_k) config.drift.amplitude = amplitude;
        if (*o_d) config.drift.d = d;
        if (*o_anchor) config.drift.anchor = anchor;
        if (*o_l) config.drift.truncation = truncation;
        if (*o_constant) {
            config.drift.constant_value = constant;
            if (!*o_d) config.drift.d = constant.size();
        }
        if (*o_scheme) config.scheme = parse_scheme(scheme);
        if (*o_ns) config.ns = parse_resolution_list(ns);
        if (*o_nref) config.n_ref = n_ref;
        if (*o_samples) config.samples = samples;
        if (*o_p) config.p = p;
        if (*o_seed) config.master_seed = seed;
        if (*o_q) config.q = q;
        if (*o_x0) config.x0 = x0;
        if (*o_observable) config.observable = parse_observable_kind(observable);
        if (*o_batches) config.batches = batches;
        if (*o_out) config.output_dir = out;
        if (*o_workers) config.workers = workers;
        if (*f_svg) config.emit_svg = true;
        if (*f_strict) config.strict = true;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    return run(config);
}
