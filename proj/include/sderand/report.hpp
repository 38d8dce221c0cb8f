#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sderand/order_fit.hpp"

namespace sderand {

/// One row of the results CSV: n,scheme,p,estimate,std_error,M,master_seed.
struct CsvRow {
    std::size_t n = 0;
    std::string scheme;
    double p = 2.0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t master_seed = 0;

    friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline constexpr const char* kCsvHeader = "n,scheme,p,estimate,std_error,M,master_seed";

/// Shortest-safe lossless decimal: 17 significant digits.
std::string format_real(double value);

/// Header plus rows sorted by (scheme, n).
std::string emit_csv(std::vector<CsvRow> rows);
/// Throws std::runtime_error when the file cannot be written.
void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows);
/// Throws std::invalid_argument on malformed input.
std::vector<CsvRow> parse_csv(const std::string& text);

/// Ordered `key: value` lines.
class Summary {
public:
    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, bool value);
    void add(std::string key, std::size_t value);
    void add_fit(const std::string& prefix, const OrderFit& fit);

    std::string str() const;
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
    std::optional<std::string> find(const std::string& key) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct PlotSeries {
    std::string label;
    std::vector<std::size_t> ns;
    std::vector<double> values;
    std::optional<OrderFit> fit;
};

/// Log-log plot of error against n, one polyline per series plus its fitted line.
std::string render_loglog_svg(const std::vector<PlotSeries>& series, const std::string& title);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sderand
