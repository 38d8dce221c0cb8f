#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sderand/drifts.hpp"
#include "sderand/errors.hpp"

using namespace sderand;

namespace {

std::vector<DriftSpec> all_families(std::size_t d) {
    return {DriftSpec::zero(d),
            DriftSpec::constant(std::vector<double>(d, -0.75)),
            DriftSpec::time_only(0.3, 1.5, kDefaultAnchor, d),
            DriftSpec::product(0.3, 0.6, 2.0, d),
            DriftSpec::weierstrass(0.25, 1.0, 1.0, d),
            DriftSpec::space_only(0.5, 0.8, d)};
}

}  // namespace

TEST_CASE("zero drift vanishes everywhere") {
    const std::vector<double> x{1.0, -2.0, 3.0};
    for (double v : eval_drift(DriftSpec::zero(3), 0.4, x)) CHECK(v == 0.0);
}

TEST_CASE("product drift at a hand-computed point") {
    const std::vector<double> x{std::numbers::pi / 2};
    const double value = eval_drift(DriftSpec::product(0.5, 1.0, 1.0, 1, 0.5), 0.75, x)[0];
    // independent scalar evaluation: |0.75 - 0.5|^0.5 * |sin(pi/2)|^1
    CHECK(value == doctest::Approx(std::sqrt(0.25) * std::abs(std::sin(std::numbers::pi / 2))).epsilon(1e-15));
    CHECK(value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("time-only drift vanishes at its anchor") {
    const std::vector<double> x{0.3};
    CHECK(eval_drift(DriftSpec::time_only(0.4), kDefaultAnchor, x)[0] == 0.0);
    CHECK(eval_drift(DriftSpec::time_only(1.0, 1.0, 0.0), 0.625, x)[0] == 0.625);
}

TEST_CASE("weierstrass drift equals its defining series") {
    const DriftSpec spec = DriftSpec::weierstrass(0.4, 0.7, 1.3, 2, 5, 0.2);
    const std::vector<double> x{0.9, -2.1};
    const double t = 0.37;
    double norm = 0.0, series = 0.0;
    for (int k = 0; k <= 5; ++k) {
        norm += std::pow(2.0, -0.4 * k);
        series += std::pow(2.0, -0.4 * k) * std::cos(std::pow(2.0, k) * std::numbers::pi * (t - 0.2));
    }
    const auto f = eval_drift(spec, t, x);
    for (std::size_t l = 0; l < 2; ++l)
        CHECK(f[l] == doctest::Approx(1.3 * series / norm * std::pow(std::abs(std::sin(x[l])), 0.7)).epsilon(1e-13));
}

TEST_CASE("drift evaluation rejects bad inputs") {
    const Drift drift(DriftSpec::product(0.5, 0.5, 1.0, 2));
    const std::vector<double> x2{0.0, 1.0}, x1{0.0};
    std::vector<double> out(2);
    CHECK_THROWS_AS(drift.eval(1.5, x2, out), std::domain_error);
    CHECK_THROWS_AS(drift.eval(-0.1, x2, out), std::domain_error);
    CHECK_THROWS_AS(drift.eval(0.5, x1, out), std::invalid_argument);
}

TEST_CASE("spec validation names the offending field") {
    auto field_of = [](const DriftSpec& spec) {
        try {
            spec.validate();
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("none");
    };
    CHECK(field_of(DriftSpec::product(0.0, 1.0)) == "alpha");
    CHECK(field_of(DriftSpec::product(0.5, 1.2)) == "beta");
    CHECK(field_of(DriftSpec::product(0.5, 1.0, -1.0)) == "K");
    CHECK(field_of(DriftSpec::product(0.5, 1.0, 1.0, 0)) == "d");
    CHECK(field_of(DriftSpec::product(0.5, 1.0, 1.0, 1, 1.5)) == "anchor");
    DriftSpec bad_constant = DriftSpec::constant({1.0});
    bad_constant.d = 2;
    CHECK(field_of(bad_constant) == "constant_value");
    CHECK(field_of(DriftSpec::weierstrass(0.5, 1.0, 1.0, 1, -1)) == "L");
    CHECK(field_of(DriftSpec::product(0.3, 1.0)) == "none");
    CHECK_THROWS_AS(parse_drift_family("sobolev"), ConfigError);
    CHECK(parse_drift_family("weierstrass") == DriftFamily::Weierstrass);
}

TEST_CASE("every family stays within its sup bound") {
    const RngStream s(404);
    for (std::size_t d : {1u, 3u}) {
        for (const DriftSpec& spec : all_families(d)) {
            const Drift drift(spec);
            std::vector<double> x(d), f(d);
            double worst = 0.0;
            for (std::uint64_t i = 0; i < 1000000 / d; ++i) {
                const RngStream draw = s.child({static_cast<std::uint64_t>(spec.family), d});
                const double t = draw.uniform(i * (d + 1));
                for (std::size_t l = 0; l < d; ++l) x[l] = 20.0 * draw.uniform(i * (d + 1) + 1 + l) - 10.0;
                drift.eval(t, x, f);
                for (double v : f) worst = std::max(worst, std::abs(v));
            }
            CHECK(worst <= spec.sup_bound() + 1e-12);
        }
    }
}

TEST_CASE("Hölder probes: degenerate families") {
    const HolderProbe zero = probe_holder_seminorms(DriftSpec::zero(2), 10000, RngStream(1));
    CHECK(zero.time_seminorm == 0.0);
    CHECK(zero.space_seminorm == 0.0);
    const HolderProbe constant = probe_holder_seminorms(DriftSpec::constant({0.5, -1.0}), 10000, RngStream(1));
    CHECK(constant.time_seminorm == 0.0);
    CHECK(constant.space_seminorm == 0.0);
}

TEST_CASE("Hölder probes stay below the documented constants") {
    // Analytic: product family quotients are at most K in time and in space.
    const DriftSpec product = DriftSpec::product(0.3, 1.0);
    const HolderProbe probe = probe_holder_seminorms(product, 1000000, RngStream(2));
    CHECK(probe.time_seminorm <= 2.0);
    CHECK(probe.space_seminorm <= 2.0);
    CHECK(probe.time_seminorm <= product.time_seminorm_bound() + 1e-12);
    CHECK(probe.space_seminorm <= product.space_seminorm_bound() + 1e-12);
    // The probe is not vacuous: near the anchor the time quotient approaches K.
    CHECK(probe.time_seminorm > 0.5);
    CHECK(probe.space_seminorm > 0.5);

    for (const DriftSpec& spec : all_families(2)) {
        const HolderProbe p = probe_holder_seminorms(spec, 100000, RngStream(3));
        CHECK(p.time_seminorm <= spec.time_seminorm_bound() + 1e-12);
        CHECK(p.space_seminorm <= spec.space_seminorm_bound() + 1e-12);
    }
}

TEST_CASE("product drift has rank-one structure") {
    const Drift drift(DriftSpec::product(0.35, 0.8, 1.7, 2));
    const RngStream s(9);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double t = s.uniform(6 * i), u = s.uniform(6 * i + 1);
        const std::vector<double> x{4 * s.uniform(6 * i + 2) - 2, 4 * s.uniform(6 * i + 3) - 2};
        const std::vector<double> y{4 * s.uniform(6 * i + 4) - 2, 4 * s.uniform(6 * i + 5) - 2};
        const auto ftx = drift(t, x), fuy = drift(u, y), fty = drift(t, y), fux = drift(u, x);
        for (std::size_t l = 0; l < 2; ++l) CHECK(std::abs(ftx[l] * fuy[l] - fty[l] * fux[l]) <= 1e-12);
    }
}

TEST_CASE("observables") {
    const std::vector<double> origin{0.0, 0.0};
    CHECK(eval_observable({ObservableKind::UnitScalar, 2}, 0.3, origin) == 1.0);
    CHECK(eval_observable({ObservableKind::SmoothDecay, 2}, 0.0, origin) == 1.0);
    const std::vector<double> x{3.0, 4.0};
    CHECK(eval_observable({ObservableKind::SmoothDecay, 2}, 0.5, x) ==
          doctest::Approx(std::cos(0.5) / std::sqrt(26.0)).epsilon(1e-15));

    const RngStream s(21);
    double worst = 0.0, worst_gradient = 0.0;
    const ObservableSpec spec{ObservableKind::SmoothDecay, 1};
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double t = s.uniform(3 * i);
        const std::vector<double> a{20 * s.uniform(3 * i + 1) - 10};
        const std::vector<double> b{a[0] + 1e-3 * s.uniform(3 * i + 2)};
        const double ga = eval_observable(spec, t, a);
        worst = std::max(worst, std::abs(ga));
        if (b[0] != a[0])
            worst_gradient = std::max(worst_gradient, std::abs(eval_observable(spec, t, b) - ga) / (b[0] - a[0]));
    }
    CHECK(worst <= 1.0);
    CHECK(worst_gradient <= 1.0);
    CHECK_THROWS_AS(eval_observable(spec, 1.2, std::vector<double>{0.0}), std::domain_error);
}

TEST_CASE("gamma is alpha min beta/2") {
    CHECK(DriftSpec::product(0.3, 1.0).gamma() == doctest::Approx(0.3));
    CHECK(DriftSpec::product(0.25, 1.0).gamma() == doctest::Approx(0.25));
    CHECK(DriftSpec::product(1.0, 1.0).gamma() == doctest::Approx(0.5));
    CHECK(DriftSpec::product(0.9, 0.4).gamma() == doctest::Approx(0.2));
}
