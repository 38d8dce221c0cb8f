#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sderand/report.hpp"

using namespace sderand;

TEST_CASE("empty result is the header alone") {
    CHECK(emit_csv({}) == std::string(kCsvHeader) + "\n");
    CHECK(parse_csv(emit_csv({})).empty());
}

TEST_CASE("rows are sorted by scheme then n") {
    const std::vector<CsvRow> rows{{64, "standard_em", 2.0, 0.01, 0.001, 500, 7},
                                   {16, "standard_em", 2.0, 0.04, 0.004, 500, 7},
                                   {32, "randomised_em", 2.0, 0.02, 0.002, 500, 7}};
    const std::string text = emit_csv(rows);
    std::istringstream in(text);
    std::string header, first, second, third;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    std::getline(in, third);
    CHECK(header == kCsvHeader);
    CHECK(first.rfind("32,randomised_em,", 0) == 0);
    CHECK(second.rfind("16,standard_em,", 0) == 0);
    CHECK(third.rfind("64,standard_em,", 0) == 0);
}

TEST_CASE("round trip is lossless and byte-identical") {
    const std::vector<CsvRow> rows{{16, "randomised_em", 2.0, 0.1 + 0.2, 1.0 / 3.0, 500, 20240917},
                                   {32, "randomised_em", 2.0, std::sqrt(2.0) * 1e-7, 5e-324, 500, 20240917},
                                   {8, "I1", 1.5, 0.5, 0.0, 10, 18446744073709551615ull}};
    const std::string text = emit_csv(rows);
    const auto parsed = parse_csv(text);
    REQUIRE(parsed.size() == 3);
    CHECK(emit_csv(parsed) == text);
    CHECK(parsed[1].estimate == 0.1 + 0.2);
    CHECK(parsed[1].std_error == 1.0 / 3.0);
    CHECK(parsed[0].master_seed == 18446744073709551615ull);
}

TEST_CASE("reals use 17 significant digits") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("malformed csv is rejected") {
    CHECK_THROWS_AS(parse_csv("n,scheme\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n16,x,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\nabc,x,2,0.1,0.1,5,1\n"), std::invalid_argument);
}

TEST_CASE("summary lines") {
    Summary s;
    s.add("name", std::string("value"));
    s.add("ratio", 0.15);
    s.add("flag", true);
    s.add("count", std::size_t{12});
    OrderFit fit;
    fit.slope = 0.8;
    fit.r_squared = 0.99;
    s.add_fit("fit", fit);
    CHECK(s.find("ratio") == "0.15");
    CHECK(s.find("flag") == "true");
    CHECK(s.find("count") == "12");
    CHECK(s.find("fit.slope") == "0.8");
    CHECK(s.find("fit.status") == "ok");
    CHECK_FALSE(s.find("missing").has_value());
    CHECK(s.str().rfind("name: value\nratio: 0.15\n", 0) == 0);

    Summary z;
    OrderFit zero;
    zero.degenerate = zero.degenerate_zero = true;
    z.add_fit("fit", zero);
    CHECK(z.find("fit.status") == "degenerate-zero");
}

TEST_CASE("svg plot") {
    OrderFit fit;
    fit.slope = 1.0;
    fit.intercept = 0.0;
    const std::string svg =
        render_loglog_svg({{"randomised_em", {16, 32, 64}, {1.0 / 16, 1.0 / 32, 1.0 / 64}, fit}}, "error vs n");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("randomised_em") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    // Zero values cannot be drawn on log axes but must not break the document.
    const std::string empty = render_loglog_svg({{"zero", {16, 32}, {0.0, 0.0}, std::nullopt}}, "t");
    CHECK(empty.find("</svg>") != std::string::npos);
}

TEST_CASE("writing to an unwritable path throws") {
    CHECK_THROWS_AS(write_csv("/nonexistent-dir/deeper/results.csv", {}), std::runtime_error);
    const auto path = std::filesystem::temp_directory_path() / "sderand_report_test.csv";
    write_csv(path, {{16, "standard_em", 2.0, 0.5, 0.1, 20, 1}});
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(parse_csv(buf.str()).size() == 1);
    std::filesystem::remove(path);
}
