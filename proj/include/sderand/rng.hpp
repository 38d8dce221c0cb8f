#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace sderand {

// Philox4x32-10 (Salmon et al., SC'11). A pure function of (counter, key): any
// draw can be computed without touching any other, which is what makes sample
// generation independent of how work is split across threads.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Purpose tags for sub-streams. Distinct tags never share draws.
enum class StreamPurpose : std::uint64_t {
    Brownian = 1,
    Offsets = 2,
    OffsetsRef = 3,
    Quadrature = 4,
    Martingale = 5,
    Probe = 6,
    Observable = 7,
};

/// An addressable random stream: a master seed plus a path of labels.
///
/// Streams are values. Deriving a child never mutates the parent, and the
/// draw at position i is a function of (master_seed, path, i) only.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::vector<std::uint64_t> path = {});

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    const std::vector<std::uint64_t>& path() const noexcept { return path_; }

    RngStream child(std::uint64_t label) const;
    RngStream child(StreamPurpose purpose) const { return child(static_cast<std::uint64_t>(purpose)); }
    RngStream child(std::initializer_list<std::uint64_t> labels) const;

    /// 128 random bits for block index `block`.
    PhiloxCounter block(std::uint64_t block) const noexcept;

    /// Uniform on the open interval (0,1), 52 bits of resolution; (k + 1/2) 2^-52 never rounds to an endpoint.
    /// Uniforms 2k and 2k+1 come from block k.
    double uniform(std::uint64_t index) const noexcept;

    /// Standard normal via Box-Muller; normals 2k and 2k+1 share block k.
    double normal(std::uint64_t index) const noexcept;

    void fill_uniform(std::vector<double>& out) const;
    void fill_normal(std::vector<double>& out, double scale = 1.0) const;

private:
    std::uint64_t master_seed_;
    std::vector<std::uint64_t> path_;
    PhiloxKey key_{};
    std::uint64_t digest_ = 0;
};

/// Converts two 32-bit words to a double strictly inside (0,1).
double bits_to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace sderand
