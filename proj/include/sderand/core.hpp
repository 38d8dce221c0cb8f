#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sderand/rng.hpp"

namespace sderand {

/// Uniform grid on [0,1] with n subintervals; node j sits at j/n.
class TimeGrid {
public:
    explicit TimeGrid(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    double step() const noexcept { return 1.0 / static_cast<double>(n_); }
    double node(std::size_t j) const noexcept { return static_cast<double>(j) / static_cast<double>(n_); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::size_t n_;
};

/// A d-dimensional Brownian path sampled at the nodes of a uniform grid.
///
/// Node positions are the stored quantity. A coarser view keeps every
/// factor-th node, so positions at shared nodes agree bit-for-bit across
/// every resolution derived from the same finest path.
class BrownianPath {
public:
    BrownianPath(std::size_t n, std::size_t d, std::vector<double> positions);

    /// Builds a path from increments by left-to-right summation.
    static BrownianPath from_increments(std::size_t n, std::size_t d, std::span<const double> increments);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    TimeGrid grid() const { return TimeGrid(n_); }

    std::span<const double> position(std::size_t j) const noexcept {
        return {positions_.data() + j * d_, d_};
    }
    double position(std::size_t j, std::size_t l) const noexcept { return positions_[j * d_ + l]; }
    double increment(std::size_t j, std::size_t l) const noexcept {
        return positions_[(j + 1) * d_ + l] - positions_[j * d_ + l];
    }
    /// Row-major [n][d] increments.
    std::vector<double> increments() const;
    const std::vector<double>& positions() const noexcept { return positions_; }

    friend bool operator==(const BrownianPath&, const BrownianPath&) = default;

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> positions_;  // [n+1][d], positions_[0..d) == 0
};

/// i.i.d. U(0,1) offsets; interval j of a grid uses taus[j].
class RandomOffsets {
public:
    explicit RandomOffsets(std::vector<double> taus);

    std::size_t n() const noexcept { return taus_.size(); }
    double operator[](std::size_t j) const noexcept { return taus_[j]; }
    const std::vector<double>& taus() const noexcept { return taus_; }

private:
    std::vector<double> taus_;
};

/// floor(n s)/n for s in [0,1].
double kappa(std::size_t n, double s);

/// (floor(n s) + taus[floor(n s)])/n for s in [0,1).
double kappa_tau(std::size_t n, double s, const RandomOffsets& offsets);

BrownianPath sample_brownian(std::size_t n_fine, std::size_t d, const RngStream& stream);

/// Keeps every factor-th node of the path.
BrownianPath coarsen_path(const BrownianPath& path, std::size_t factor);

RandomOffsets sample_offsets(std::size_t n, const RngStream& stream);

}  // namespace sderand
