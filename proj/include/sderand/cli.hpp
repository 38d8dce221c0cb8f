#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sderand/drifts.hpp"
#include "sderand/integrators.hpp"
#include "sderand/report.hpp"

namespace sderand {

inline constexpr const char* kToolVersion = "0.3.0";

enum class Command { Converge, Compare, Quadrature, IProbe, SelfTest };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

/// Parses "16,32,64" or "2^4..2^9" (every power of two in between).
std::vector<std::size_t> parse_resolution_list(std::string_view text);

/// Complete description of one invocation. Every field has an explicit value,
/// so the JSON echo reproduces the run.
struct RunConfig {
    Command command = Command::Converge;
    DriftSpec drift = DriftSpec::product(0.3, 1.0);
    Scheme scheme = Scheme::RandomisedEM;
    std::vector<std::size_t> ns = {16, 32, 64, 128, 256, 512};
    std::size_t n_ref = 8192;
    std::size_t samples = 500;
    double p = 2.0;
    std::size_t q = 16;
    std::uint64_t master_seed = 20240917;
    std::vector<double> x0;  // empty -> origin; echoed explicitly
    ObservableKind observable = ObservableKind::SmoothDecay;
    std::size_t batches = 10;
    std::size_t workers = 1;
    std::filesystem::path output_dir = "sde_rand_em_out";
    bool emit_svg = false;
    bool strict = false;

    /// Checks every module precondition the command will hit. Throws ConfigError.
    void validate() const;

    std::string to_json() const;
    /// Fields absent from `json` keep the values already in *this.
    void merge_json(const std::string& json);
};

/// ResultRecord pieces, as written to disk.
struct RunOutcome {
    int exit_code = 0;
    std::vector<CsvRow> rows;
    Summary summary;
    std::string svg;
    bool bands_passed = true;
};

/// Runs the command without touching the filesystem.
RunOutcome execute(const RunConfig& config);

/// execute() plus results.csv, summary.txt, config.json and (with --svg) plot.svg in output_dir.
/// Returns 0 on success, 2 on configuration error, 3 on band failure under strict.
int run(const RunConfig& config);

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast subset of the oracle suite, runnable from the installed tool.
std::vector<SelfTestCheck> run_selftest(std::size_t workers = 1);

}  // namespace sderand
