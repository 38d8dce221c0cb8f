#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sderand/core.hpp"

using namespace sderand;

TEST_CASE("kappa floors onto the grid") {
    CHECK(kappa(4, 0.6) == 0.5);
    CHECK(kappa(4, 0.5) == 0.5);
    CHECK(kappa(10, 0.99) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(kappa(4, 1.0) == 1.0);
    CHECK(kappa(7, 0.0) == 0.0);
    CHECK_THROWS_AS(kappa(4, -0.1), std::domain_error);
    CHECK_THROWS_AS(kappa(4, 1.01), std::domain_error);
}

TEST_CASE("kappa_tau uses the offset of the containing cell") {
    CHECK(kappa_tau(4, 0.6, RandomOffsets({0.3, 0.3, 0.5, 0.3})) == 0.625);
    CHECK(kappa_tau(2, 0.0, RandomOffsets({0.25, 0.7})) == 0.125);
    CHECK(kappa_tau(2, 0.75, RandomOffsets({0.7, 0.9})) == doctest::Approx(0.95).epsilon(1e-15));
    CHECK_THROWS_AS(kappa_tau(4, 0.5, RandomOffsets({0.5, 0.5})), std::length_error);
    CHECK_THROWS_AS(kappa_tau(2, 1.0, RandomOffsets({0.5, 0.5})), std::domain_error);
}

TEST_CASE("kappa sandwich holds on random points") {
    const RngStream s(17);
    for (std::size_t n : {1u, 3u, 16u, 100u}) {
        const RandomOffsets offsets = sample_offsets(n, s.child(n));
        for (std::uint64_t i = 0; i < 2000; ++i) {
            const double r = s.child(1000 + n).uniform(i) * (1.0 - 1e-12);
            const double k = kappa(n, r);
            const double kt = kappa_tau(n, r, offsets);
            CHECK(k <= r);
            CHECK(k < kt);
            CHECK(kt < k + 1.0 / n);
        }
    }
}

TEST_CASE("random offsets reject values outside (0,1)") {
    CHECK_THROWS_AS(RandomOffsets({0.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(RandomOffsets({1.0}), std::domain_error);
}

TEST_CASE("Brownian increments have variance 1/n") {
    // 1e6 pooled increments at n_fine = 256: sd of the sample variance is sqrt(2/1e6)/256 ~ 0.14% relative.
    const std::size_t n = 256, paths = 3907;
    double sum2 = 0.0;
    std::size_t count = 0;
    for (std::size_t m = 0; m < paths; ++m) {
        const BrownianPath p = sample_brownian(n, 1, RngStream(2024, {m}));
        for (double inc : p.increments()) {
            sum2 += inc * inc;
            ++count;
        }
    }
    CHECK(count >= 1000000);
    CHECK(sum2 / count == doctest::Approx(1.0 / n).epsilon(0.01));
}

TEST_CASE("B(1) is centred") {
    const std::size_t paths = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t m = 0; m < paths; ++m) {
        const double b1 = sample_brownian(4, 1, RngStream(77, {m})).position(4, 0);
        sum += b1;
        sum2 += b1 * b1;
    }
    const double mean = sum / paths;
    const double sd = std::sqrt(sum2 / paths - mean * mean);
    CHECK(std::abs(mean) < 4.0 * sd / std::sqrt(static_cast<double>(paths)));
    CHECK(sd == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sampling is deterministic") {
    const RngStream s(5, {1, 1});
    CHECK(sample_brownian(512, 3, s) == sample_brownian(512, 3, s));
    CHECK(sample_offsets(300, s).taus() == sample_offsets(300, s).taus());
    CHECK(!(sample_brownian(512, 3, s) == sample_brownian(512, 3, s.child(1))));
}

TEST_CASE("offsets are uniform on the open interval") {
    const std::size_t count = 1000000;
    const RandomOffsets offsets = sample_offsets(count, RngStream(8, {2}));
    double sum = 0.0;
    for (double tau : offsets.taus()) {
        REQUIRE(tau > 0.0);
        REQUIRE(tau < 1.0);
        sum += tau;
    }
    CHECK(std::abs(sum / count - 0.5) < 0.002);
}

TEST_CASE("Brownian and offset streams are uncorrelated") {
    const std::size_t count = 100000;
    const RngStream sample(31, {0});
    const BrownianPath path = sample_brownian(count, 1, sample.child(StreamPurpose::Brownian));
    const RandomOffsets offsets = sample_offsets(count, sample.child({static_cast<std::uint64_t>(StreamPurpose::Offsets), count}));
    const auto inc = path.increments();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < count; ++i) {
        mx += inc[i];
        my += offsets[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < count; ++i) {
        sxy += (inc[i] - mx) * (offsets[i] - my);
        sxx += (inc[i] - mx) * (inc[i] - mx);
        syy += (offsets[i] - my) * (offsets[i] - my);
    }
    CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 4.0 / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("coarsening keeps shared nodes bit-exact") {
    const BrownianPath fine = sample_brownian(64, 2, RngStream(12));
    for (std::size_t q : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        const BrownianPath coarse = coarsen_path(fine, q);
        CHECK(coarse.n() == 64 / q);
        for (std::size_t j = 0; j <= coarse.n(); ++j)
            for (std::size_t l = 0; l < 2; ++l) CHECK(coarse.position(j, l) == fine.position(j * q, l));
    }
    CHECK(coarsen_path(coarsen_path(fine, 2), 2) == coarsen_path(fine, 4));
    CHECK(coarsen_path(coarsen_path(fine, 4), 8) == coarsen_path(fine, 32));
    CHECK_THROWS_AS(coarsen_path(fine, 3), std::invalid_argument);
    CHECK_THROWS_AS(coarsen_path(fine, 0), std::invalid_argument);
}

TEST_CASE("coarsening to one cell gives B(1); zero paths stay zero") {
    const std::vector<double> inc{0.1, -0.2, 0.3, 0.05, -0.4, 0.25, 0.0, 0.125};
    const BrownianPath p = BrownianPath::from_increments(8, 1, inc);
    const BrownianPath one = coarsen_path(p, 8);
    CHECK(one.n() == 1);
    CHECK(one.increment(0, 0) == p.position(8, 0));

    const BrownianPath zero = BrownianPath::from_increments(8, 2, std::vector<double>(16, 0.0));
    for (double v : coarsen_path(zero, 4).increments()) CHECK(v == 0.0);
}

TEST_CASE("path construction validates shape") {
    CHECK_THROWS_AS(BrownianPath(2, 1, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BrownianPath(1, 1, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(0), std::invalid_argument);
    CHECK(TimeGrid(8).node(3) == 0.375);
}
