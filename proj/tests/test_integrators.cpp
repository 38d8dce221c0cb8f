#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sderand/errors.hpp"
#include "sderand/integrators.hpp"

using namespace sderand;

namespace {

double sup_distance(const DiscreteTrajectory& a, const DiscreteTrajectory& b, std::size_t stride) {
    double worst = 0.0;
    for (std::size_t j = 0; j <= a.n(); ++j)
        for (std::size_t l = 0; l < a.d; ++l)
            worst = std::max(worst, std::abs(a.states[j * a.d + l] - b.states[j * stride * b.d + l]));
    return worst;
}

}  // namespace

TEST_CASE("zero drift reproduces x0 + B at the nodes") {
    for (std::size_t d : {1u, 3u}) {
        const BrownianPath path = sample_brownian(256, d, RngStream(1, {d}));
        std::vector<double> x0(d);
        for (std::size_t l = 0; l < d; ++l) x0[l] = 0.5 * static_cast<double>(l) - 1.0;
        const Drift zero(DriftSpec::zero(d));
        const auto standard = simulate_standard_em(zero, path, x0);
        const auto randomised = simulate_randomised_em(zero, path, sample_offsets(256, RngStream(2)), x0);
        CHECK(standard.states == randomised.states);
        for (std::size_t j = 0; j <= 256; ++j)
            for (std::size_t l = 0; l < d; ++l) CHECK(standard.states[j * d + l] == x0[l] + path.position(j, l));
        CHECK(standard.state(0)[0] == x0[0]);
    }
}

TEST_CASE("constant drift matches the telescoped closed form") {
    const std::vector<double> c{0.7, -1.3};
    const BrownianPath path = sample_brownian(64, 2, RngStream(3));
    const std::vector<double> x0{0.1, 0.2};
    const Drift drift(DriftSpec::constant(c));
    const auto standard = simulate_standard_em(drift, path, x0);
    const auto randomised = simulate_randomised_em(drift, path, sample_offsets(64, RngStream(4)), x0);
    CHECK(standard.states == randomised.states);
    for (std::size_t j = 0; j <= 64; ++j)
        for (std::size_t l = 0; l < 2; ++l)
            CHECK(std::abs(standard.states[j * 2 + l] - (x0[l] + c[l] * j / 64.0 + path.position(j, l))) < 1e-12);
}

TEST_CASE("two-step hand recursion for f(t,x) = t") {
    const double b1 = 0.37, b2 = -0.21;
    const BrownianPath path = BrownianPath::from_increments(2, 1, std::vector<double>{b1, b2});
    const Drift identity(DriftSpec::time_only(1.0, 1.0, 0.0));
    const std::vector<double> x0{0.0};

    const auto standard = simulate_standard_em(identity, path, x0);
    CHECK(standard.states[0] == 0.0);
    CHECK(standard.states[1] == doctest::Approx(b1).epsilon(1e-15));
    CHECK(standard.states[2] == doctest::Approx(0.25 + b1 + b2).epsilon(1e-15));

    // κ^τ values 0.25 and 0.75
    const auto randomised = simulate_randomised_em(identity, path, RandomOffsets({0.5, 0.5}), x0);
    CHECK(randomised.states[1] == doctest::Approx(0.125 + b1).epsilon(1e-15));
    CHECK(randomised.states[2] == doctest::Approx(0.125 + b1 + 0.375 + b2).epsilon(1e-15));
}

TEST_CASE("schemes agree bit-for-bit on time-independent drifts") {
    const BrownianPath path = sample_brownian(128, 2, RngStream(5));
    const std::vector<double> x0{0.3, -0.4};
    const Drift drift(DriftSpec::space_only(0.6, 1.2, 2));
    CHECK(simulate_standard_em(drift, path, x0).states ==
          simulate_randomised_em(drift, path, sample_offsets(128, RngStream(6)), x0).states);
}

TEST_CASE("drift excursion obeys the boundedness bound at every node") {
    const DriftSpec spec = DriftSpec::product(0.25, 1.0, 1.0, 2);
    const Drift drift(spec);
    for (std::uint64_t m = 0; m < 50; ++m) {
        const BrownianPath path = sample_brownian(64, 2, RngStream(7, {m}));
        const std::vector<double> x0{1.0, -1.0};
        for (const auto& traj : {simulate_standard_em(drift, path, x0),
                                 simulate_randomised_em(drift, path, sample_offsets(64, RngStream(8, {m})), x0)}) {
            for (std::size_t j = 0; j <= 64; ++j)
                for (std::size_t l = 0; l < 2; ++l)
                    CHECK(std::abs(traj.states[j * 2 + l] - x0[l] - traj.noise[j * 2 + l]) <=
                          spec.sup_bound() * traj.grid.node(j) + 1e-15);
            CHECK(traj.max_drift_excursion() <= spec.sup_bound());
        }
    }
}

TEST_CASE("input validation") {
    const Drift drift(DriftSpec::product(0.5, 1.0));
    const BrownianPath path = sample_brownian(8, 1, RngStream(1));
    const std::vector<double> x0{0.0}, x0_bad{0.0, 0.0};
    CHECK_THROWS_AS(simulate_standard_em(drift, path, x0_bad), std::invalid_argument);
    CHECK_THROWS_AS(simulate_standard_em(drift, sample_brownian(8, 2, RngStream(1)), x0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_randomised_em(drift, path, RandomOffsets({0.5}), x0), std::length_error);

    const Drift huge(DriftSpec::constant({1.7e308}));
    const std::vector<double> far{1.7e308};
    CHECK_THROWS_AS(simulate_standard_em(huge, sample_brownian(1, 1, RngStream(1)), far), NumericError);
}

TEST_CASE("continuous extension") {
    const std::size_t n = 8, q = 16;
    const RngStream s(11);
    const BrownianPath fine = sample_brownian(n * q, 2, s.child(1));
    const BrownianPath coarse = coarsen_path(fine, q);
    const RandomOffsets offsets = sample_offsets(n, s.child(2));
    const std::vector<double> x0{0.2, 0.4};

    SUBCASE("shared nodes are the discrete states") {
        const Drift drift(DriftSpec::product(0.3, 0.7, 1.0, 2));
        for (const auto& traj : {simulate_standard_em(drift, coarse, x0), simulate_randomised_em(drift, coarse, offsets, x0)}) {
            const auto ext = extend_continuous(drift, traj, fine, q, offsets);
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t l = 0; l < 2; ++l) CHECK(ext.fine_states[(j * q) * 2 + l] == traj.states[j * 2 + l]);
        }
    }
    SUBCASE("zero drift gives x0 + B(t) on the fine grid") {
        const Drift drift(DriftSpec::zero(2));
        const auto ext = extend_continuous(drift, simulate_randomised_em(drift, coarse, offsets, x0), fine, q, offsets);
        for (std::size_t k = 0; k <= n * q; ++k)
            for (std::size_t l = 0; l < 2; ++l) CHECK(std::abs(ext.fine_state(k)[l] - x0[l] - fine.position(k, l)) < 1e-12);
    }
    SUBCASE("constant drift integrates exactly between nodes") {
        const std::vector<double> c{-0.6, 1.1};
        const Drift drift(DriftSpec::constant(c));
        const auto ext = extend_continuous(drift, simulate_standard_em(drift, coarse, x0), fine, q);
        for (std::size_t k = 0; k <= n * q; ++k) {
            const double t = static_cast<double>(k) / (n * q);
            for (std::size_t l = 0; l < 2; ++l)
                CHECK(std::abs(ext.fine_state(k)[l] - (x0[l] + c[l] * t + fine.position(k, l))) < 1e-12);
        }
    }
    SUBCASE("randomised extension uses the offset time within each cell") {
        const Drift drift(DriftSpec::time_only(1.0, 1.0, 0.0, 2));
        const auto traj = simulate_randomised_em(drift, coarse, offsets, x0);
        const auto ext = extend_continuous(drift, traj, fine, q, offsets);
        const std::size_t j = 3, i = 5, k = j * q + i;
        const double s_j = (j + offsets[j]) / n;
        const double elapsed = static_cast<double>(i) / (n * q);
        CHECK(ext.fine_state(k)[0] == doctest::Approx(traj.states[j * 2] + s_j * elapsed +
                                                      fine.position(k, 0) - fine.position(j * q, 0)).epsilon(1e-14));
    }
    SUBCASE("a fine path from another sample is rejected") {
        const Drift drift(DriftSpec::product(0.3, 0.7, 1.0, 2));
        const auto traj = simulate_randomised_em(drift, coarse, offsets, x0);
        CHECK_THROWS_AS(extend_continuous(drift, traj, sample_brownian(n * q, 2, s.child(99)), q, offsets), ConsistencyError);
        CHECK_THROWS_AS(extend_continuous(drift, traj, fine, q / 2, offsets), ConsistencyError);
        CHECK_THROWS_AS(extend_continuous(drift, traj, fine, q), std::invalid_argument);
    }
}

TEST_CASE("reference solution") {
    const std::vector<double> x0{0.5};
    const BrownianPath fine = sample_brownian(1024, 1, RngStream(13, {1}));

    const auto zero = simulate_reference(Drift(DriftSpec::zero()), fine, x0, RngStream(13), 64);
    for (std::size_t j = 0; j <= 1024; ++j) CHECK(zero.states[j] == 0.5 + fine.position(j, 0));

    const auto constant = simulate_reference(Drift(DriftSpec::constant({0.3})), fine, x0, RngStream(13), 64);
    for (std::size_t j = 0; j <= 1024; ++j)
        CHECK(std::abs(constant.states[j] - (0.5 + 0.3 * j / 1024.0 + fine.position(j, 0))) < 1e-12);

    CHECK(constant.scheme == Scheme::RandomisedEM);
    CHECK_THROWS_AS(simulate_reference(Drift(DriftSpec::zero()), fine, x0, RngStream(13), 128), ConfigError);
}

TEST_CASE("reference at n_ref is within the smallest ladder error of the reference at 2 n_ref") {
    // Product alpha=0.3, beta=1: the ladder's finest rung (n=512 at n_ref=8192) has RMS error ~8e-4.
    const Drift drift(DriftSpec::product(0.3, 1.0));
    const std::vector<double> x0{0.0};
    const std::size_t n_ref = 8192, samples = 40;
    double sum_sq_ref = 0.0, sum_sq_ladder = 0.0;
    for (std::size_t m = 0; m < samples; ++m) {
        const RngStream stream(2718, {m});
        const BrownianPath finest = sample_brownian(2 * n_ref, 1, stream.child(StreamPurpose::Brownian));
        const auto ref_fine = simulate_reference(drift, finest, x0, stream.child(1), 512);
        const auto ref = simulate_reference(drift, coarsen_path(finest, 2), x0, stream.child(2), 512);
        const double ref_gap = sup_distance(ref, ref_fine, 2);
        const auto coarse = simulate_randomised_em(drift, coarsen_path(finest, 32), sample_offsets(512, stream.child(3)), x0);
        const double ladder_gap = sup_distance(coarse, ref_fine, 32);
        sum_sq_ref += ref_gap * ref_gap;
        sum_sq_ladder += ladder_gap * ladder_gap;
    }
    const double ref_rms = std::sqrt(sum_sq_ref / samples);
    const double ladder_rms = std::sqrt(sum_sq_ladder / samples);
    MESSAGE("reference self-gap " << ref_rms << ", finest ladder error " << ladder_rms);
    CHECK(ref_rms < ladder_rms);
}
