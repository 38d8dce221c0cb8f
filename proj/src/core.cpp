#include "sderand/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sderand {

TimeGrid::TimeGrid(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("TimeGrid: n must be positive");
}

BrownianPath::BrownianPath(std::size_t n, std::size_t d, std::vector<double> positions)
    : n_(n), d_(d), positions_(std::move(positions)) {
    if (n == 0 || d == 0) throw std::invalid_argument("BrownianPath: n and d must be positive");
    if (positions_.size() != (n + 1) * d)
        throw std::invalid_argument("BrownianPath: expected " + std::to_string((n + 1) * d) + " positions, got " +
                                    std::to_string(positions_.size()));
    for (std::size_t l = 0; l < d; ++l)
        if (positions_[l] != 0.0) throw std::invalid_argument("BrownianPath: path must start at the origin");
}

BrownianPath BrownianPath::from_increments(std::size_t n, std::size_t d, std::span<const double> increments) {
    if (increments.size() != n * d) throw std::invalid_argument("BrownianPath: increment count must equal n*d");
    std::vector<double> positions((n + 1) * d, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < d; ++l)
            positions[(j + 1) * d + l] = positions[j * d + l] + increments[j * d + l];
    return BrownianPath(n, d, std::move(positions));
}

std::vector<double> BrownianPath::increments() const {
    std::vector<double> out(n_ * d_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t l = 0; l < d_; ++l) out[j * d_ + l] = increment(j, l);
    return out;
}

RandomOffsets::RandomOffsets(std::vector<double> taus) : taus_(std::move(taus)) {
    for (double tau : taus_)
        if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("RandomOffsets: offsets must lie in (0,1)");
}

namespace {

std::size_t cell_index(std::size_t n, double s) {
    const auto cell = static_cast<std::size_t>(std::floor(static_cast<double>(n) * s));
    return cell < n ? cell : n;
}

}  // namespace

double kappa(std::size_t n, double s) {
    if (n == 0) throw std::invalid_argument("kappa: n must be positive");
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("kappa: s must lie in [0,1]");
    return static_cast<double>(cell_index(n, s)) / static_cast<double>(n);
}

double kappa_tau(std::size_t n, double s, const RandomOffsets& offsets) {
    if (n == 0) throw std::invalid_argument("kappa_tau: n must be positive");
    if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("kappa_tau: s must lie in [0,1)");
    if (offsets.n() < n) throw std::length_error("kappa_tau: need at least n offsets");
    const std::size_t cell = cell_index(n, s);
    return (static_cast<double>(cell) + offsets[cell]) / static_cast<double>(n);
}

BrownianPath sample_brownian(std::size_t n_fine, std::size_t d, const RngStream& stream) {
    if (n_fine == 0 || d == 0) throw std::invalid_argument("sample_brownian: n_fine and d must be positive");
    std::vector<double> increments(n_fine * d);
    stream.fill_normal(increments, std::sqrt(1.0 / static_cast<double>(n_fine)));
    return BrownianPath::from_increments(n_fine, d, increments);
}

BrownianPath coarsen_path(const BrownianPath& path, std::size_t factor) {
    if (factor == 0 || path.n() % factor != 0)
        throw std::invalid_argument("coarsen_path: factor " + std::to_string(factor) + " does not divide " +
                                    std::to_string(path.n()));
    const std::size_t n = path.n() / factor;
    const std::size_t d = path.d();
    std::vector<double> positions((n + 1) * d);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto src = path.position(j * factor);
        std::copy(src.begin(), src.end(), positions.begin() + static_cast<std::ptrdiff_t>(j * d));
    }
    return BrownianPath(n, d, std::move(positions));
}

RandomOffsets sample_offsets(std::size_t n, const RngStream& stream) {
    if (n == 0) throw std::invalid_argument("sample_offsets: n must be positive");
    std::vector<double> taus(n);
    stream.fill_uniform(taus);
    return RandomOffsets(std::move(taus));
}

}  // namespace sderand
