#include <cmath>
#include <functional>
#include <numbers>

#include "sderand/cli.hpp"
#include "sderand/experiments.hpp"

namespace sderand {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::vector<SelfTestCheck> run_selftest(std::size_t workers) {
    std::vector<SelfTestCheck> checks;
    auto check = [&](std::string name, const std::function<bool(std::string&)>& body) {
        SelfTestCheck result{std::move(name), false, {}};
        try {
            result.passed = body(result.detail);
        } catch (const std::exception& e) {
            result.detail = e.what();
        }
        checks.push_back(std::move(result));
    };

    check("kappa", [](std::string&) {
        return kappa(4, 0.6) == 0.5 && kappa(4, 0.5) == 0.5 && near(kappa(10, 0.99), 0.9, 1e-15);
    });
    check("kappa_tau", [](std::string&) {
        return kappa_tau(4, 0.6, RandomOffsets({0.1, 0.1, 0.5, 0.1})) == 0.625 &&
               kappa_tau(2, 0.0, RandomOffsets({0.25, 0.5})) == 0.125 &&
               near(kappa_tau(2, 0.75, RandomOffsets({0.5, 0.9})), 0.95, 1e-15);
    });
    check("coarsening_composes", [](std::string&) {
        const BrownianPath p = sample_brownian(64, 2, RngStream(7, {1}));
        return coarsen_path(coarsen_path(p, 2), 2) == coarsen_path(p, 4) &&
               coarsen_path(p, 64).position(1, 0) == p.position(64, 0);
    });
    check("stream_determinism", [](std::string&) {
        const RngStream s(11, {3, 1});
        return sample_brownian(128, 1, s) == sample_brownian(128, 1, s) &&
               sample_offsets(100, s).taus() == sample_offsets(100, s).taus();
    });
    check("product_drift_value", [](std::string& detail) {
        const std::vector<double> x{std::numbers::pi / 2};
        const double v = eval_drift(DriftSpec::product(0.5, 1.0, 1.0, 1, 0.5), 0.75, x)[0];
        detail = std::to_string(v);
        return near(v, 0.5, 1e-15);
    });
    check("zero_drift_em", [](std::string&) {
        const BrownianPath p = sample_brownian(256, 3, RngStream(5));
        const std::vector<double> x0{1.0, -2.0, 0.5};
        const auto traj = simulate_standard_em(Drift(DriftSpec::zero(3)), p, x0);
        for (std::size_t j = 0; j <= 256; ++j)
            for (std::size_t l = 0; l < 3; ++l)
                if (!near(traj.states[j * 3 + l], x0[l] + p.position(j, l), 1e-12)) return false;
        return true;
    });
    check("constant_drift_em", [](std::string&) {
        const BrownianPath p = sample_brownian(16, 1, RngStream(6));
        const std::vector<double> x0{0.25};
        const auto traj = simulate_randomised_em(Drift(DriftSpec::constant({0.7})), p,
                                                 sample_offsets(16, RngStream(6, {9})), x0);
        for (std::size_t j = 0; j <= 16; ++j)
            if (!near(traj.states[j], 0.25 + 0.7 * j / 16.0 + p.position(j, 0), 1e-12)) return false;
        return true;
    });
    check("time_drift_hand_recursion", [](std::string&) {
        const BrownianPath p = BrownianPath::from_increments(2, 1, std::vector<double>{0.3, -0.1});
        const Drift identity(DriftSpec::time_only(1.0, 1.0, 0.0));
        const std::vector<double> x0{0.0};
        const auto standard = simulate_standard_em(identity, p, x0);
        const auto randomised = simulate_randomised_em(identity, p, RandomOffsets({0.5, 0.5}), x0);
        return near(standard.states[2], 0.25 + 0.3 - 0.1, 1e-15) && near(randomised.states[1], 0.125 + 0.3, 1e-15) &&
               near(randomised.states[2], 0.125 + 0.3 + 0.375 - 0.1, 1e-15);
    });
    check("quadrature_affine", [](std::string&) {
        const TimeFunction g = integrand::Affine{1.0, 0.0};
        return randomised_quadrature(g, 2, RandomOffsets({0.5, 0.5})).values[2] == 0.5 &&
               near(randomised_quadrature(g, 2, RandomOffsets({0.1, 0.9})).values[2], 0.5, 1e-15) &&
               leftpoint_quadrature(g, 2).values[2] == 0.25;
    });
    check("integral_oracle_power", [](std::string&) {
        const TimeFunction g = integrand::Power{0.5, 0.5, 1.0};
        return near(integral_oracle(g, 1.0), 2.0 * std::pow(0.5, 1.5) / 1.5, 1e-15);
    });
    check("martingale_constant", [workers](std::string&) {
        const auto report = martingale_diagnostic(integrand::Constant{2.0}, 64, 100, RngStream(3), workers);
        for (const auto& step : report.steps)
            if (step.mean != 0.0) return false;
        return report.flagged_steps == 0;
    });
    check("fit_exact_power_law", [](std::string&) {
        const std::vector<std::size_t> ns{16, 32, 64, 128};
        std::vector<double> e;
        for (auto n : ns) e.push_back(3.0 * std::pow(static_cast<double>(n), -0.75));
        const OrderFit fit = fit_power_law(ns, e);
        return near(fit.slope, 0.75, 1e-12) && near(fit.r_squared, 1.0, 1e-12);
    });
    check("zero_drift_ladder", [workers](std::string& detail) {
        LadderConfig c;
        c.drift = DriftSpec::zero(1);
        c.ns = {16, 32, 64};
        c.n_ref = 1024;
        c.samples = 20;
        c.workers = workers;
        const ErrorLadder ladder = run_ladder(c);
        for (const auto& point : ladder.points) {
            detail = format_real(point.estimate);
            if (!(point.estimate < 1e-12)) return false;
        }
        return true;
    });
    check("probe_unit_observable_matches_I1", [workers](std::string&) {
        ProbeConfig c;
        c.drift = DriftSpec::product(0.25, 1.0);
        c.observable = {ObservableKind::UnitScalar, 1};
        c.n = 16;
        c.samples = 20;
        c.workers = workers;
        return measure_I1(c).moment == measure_I2(c).moment;
    });
    return checks;
}

}  // namespace sderand
