#include "sderand/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sderand {

std::string format_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string emit_csv(std::vector<CsvRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.scheme, a.n) < std::tie(b.scheme, b.n);
    });
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
        out += std::to_string(row.n) + ',' + row.scheme + ',' + format_real(row.p) + ',' + format_real(row.estimate) +
               ',' + format_real(row.std_error) + ',' + std::to_string(row.samples) + ',' +
               std::to_string(row.master_seed) + '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows) {
    write_text(path, emit_csv(rows));
}

namespace {

template <class T>
T parse_integer(const std::string& field, const char* name) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw std::invalid_argument(std::string("parse_csv: bad ") + name + " '" + field + "'");
    return value;
}

double parse_double(const std::string& field, const char* name) {
    // strtod handles nan/inf spellings emitted by %.17g.
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size())
        throw std::invalid_argument(std::string("parse_csv: bad ") + name + " '" + field + "'");
    return value;
}

}  // namespace

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("parse_csv: missing header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) fields.push_back(cell);
        if (fields.size() != 7) throw std::invalid_argument("parse_csv: expected 7 columns in '" + line + "'");
        CsvRow row;
        row.n = parse_integer<std::size_t>(fields[0], "n");
        row.scheme = fields[1];
        row.p = parse_double(fields[2], "p");
        row.estimate = parse_double(fields[3], "estimate");
        row.std_error = parse_double(fields[4], "std_error");
        row.samples = parse_integer<std::size_t>(fields[5], "M");
        row.master_seed = parse_integer<std::uint64_t>(fields[6], "master_seed");
        rows.push_back(std::move(row));
    }
    return rows;
}

void Summary::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
void Summary::add(std::string key, double value) {
    // Shortest representation that round-trips; the CSV keeps the fixed 17 digits.
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    add(std::move(key), std::string(buffer, result.ptr));
}
void Summary::add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
void Summary::add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }

void Summary::add_fit(const std::string& prefix, const OrderFit& fit) {
    if (fit.degenerate_zero) {
        add(prefix + ".status", std::string("degenerate-zero"));
        return;
    }
    if (fit.degenerate) {
        add(prefix + ".status", std::string("degenerate"));
        return;
    }
    add(prefix + ".status", std::string("ok"));
    add(prefix + ".slope", fit.slope);
    add(prefix + ".slope_std_error", fit.slope_std_error);
    add(prefix + ".intercept", fit.intercept);
    add(prefix + ".r_squared", fit.r_squared);
}

std::string Summary::str() const {
    std::string out;
    for (const auto& [key, value] : entries_) out += key + ": " + value + '\n';
    return out;
}

std::optional<std::string> Summary::find(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::string render_loglog_svg(const std::vector<PlotSeries>& series, const std::string& title) {
    constexpr double width = 640, height = 480, left = 70, right = 20, top = 40, bottom = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.ns.size(); ++i) {
            if (!(s.values[i] > 0.0)) continue;
            x_min = std::min(x_min, std::log10(static_cast<double>(s.ns[i])));
            x_max = std::max(x_max, std::log10(static_cast<double>(s.ns[i])));
            y_min = std::min(y_min, std::log10(s.values[i]));
            y_max = std::max(y_max, std::log10(s.values[i]));
        }
    if (!std::isfinite(x_min)) x_min = 0, x_max = 1, y_min = -1, y_max = 0;
    if (x_max - x_min < 1e-9) x_max = x_min + 1;
    if (y_max - y_min < 1e-9) y_max = y_min + 1;
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);

    auto px = [&](double lx) { return left + (lx - x_min) / (x_max - x_min) * (width - left - right); };
    auto py = [&](double ly) { return top + (y_max - ly) / (y_max - y_min) * (height - top - bottom); };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    for (const auto& s : series)
        for (std::size_t n : s.ns) {
            const double x = px(std::log10(static_cast<double>(n)));
            svg << "<text x=\"" << x << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
                << n << "</text>\n";
        }
    for (double e = y_min; e <= y_max + 0.5; e += 1.0)
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py(e) + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e"
            << static_cast<int>(e) << "</text>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\" font-size=\"13\">n</text>\n";
    svg << "<text x=\"18\" y=\"" << height / 2 << "\" transform=\"rotate(-90 18 " << height / 2
        << ")\" text-anchor=\"middle\" font-size=\"13\">error</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.ns.size(); ++i)
            if (s.values[i] > 0.0)
                svg << px(std::log10(static_cast<double>(s.ns[i]))) << ',' << py(std::log10(s.values[i])) << ' ';
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.ns.size(); ++i)
            if (s.values[i] > 0.0)
                svg << "<circle cx=\"" << px(std::log10(static_cast<double>(s.ns[i]))) << "\" cy=\""
                    << py(std::log10(s.values[i])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        if (s.fit && !s.fit->degenerate && !s.ns.empty()) {
            // log10 e = (intercept - slope ln n) / ln 10
            auto fitted = [&](std::size_t n) {
                return (s.fit->intercept - s.fit->slope * std::log(static_cast<double>(n))) / std::log(10.0);
            };
            svg << "<line x1=\"" << px(std::log10(static_cast<double>(s.ns.front()))) << "\" y1=\""
                << py(fitted(s.ns.front())) << "\" x2=\"" << px(std::log10(static_cast<double>(s.ns.back())))
                << "\" y2=\"" << py(fitted(s.ns.back())) << "\" stroke=\"" << color
                << "\" stroke-dasharray=\"6,4\"/>\n";
        }
        svg << "<text x=\"" << width - right - 10 << "\" y=\"" << top + 16 * (k + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.label;
        if (s.fit && !s.fit->degenerate) svg << " (slope " << s.fit->slope << ")";
        svg << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sderand
