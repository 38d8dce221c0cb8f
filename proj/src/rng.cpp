#include "sderand/rng.hpp"

#include <cmath>
#include <numbers>

namespace sderand {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double bits_to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

RngStream::RngStream(std::uint64_t master_seed, std::vector<std::uint64_t> path)
    : master_seed_(master_seed), path_(std::move(path)) {
    key_ = {static_cast<std::uint32_t>(master_seed_), static_cast<std::uint32_t>(master_seed_ >> 32)};
    // The path is folded into the upper counter words; the lower two carry the block index.
    std::uint64_t digest = splitmix64(path_.size());
    for (std::uint64_t label : path_) digest = splitmix64(digest ^ splitmix64(label));
    digest_ = digest;
}

RngStream RngStream::child(std::uint64_t label) const {
    auto path = path_;
    path.push_back(label);
    return RngStream(master_seed_, std::move(path));
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> labels) const {
    auto path = path_;
    path.insert(path.end(), labels.begin(), labels.end());
    return RngStream(master_seed_, std::move(path));
}

PhiloxCounter RngStream::block(std::uint64_t index) const noexcept {
    return philox4x32_10({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                          static_cast<std::uint32_t>(digest_), static_cast<std::uint32_t>(digest_ >> 32)},
                         key_);
}

double RngStream::uniform(std::uint64_t index) const noexcept {
    const auto bits = block(index / 2);
    return (index % 2 == 0) ? bits_to_open_unit(bits[0], bits[1]) : bits_to_open_unit(bits[2], bits[3]);
}

namespace {

inline std::array<double, 2> box_muller(const PhiloxCounter& bits) noexcept {
    const double u1 = bits_to_open_unit(bits[0], bits[1]);
    const double u2 = bits_to_open_unit(bits[2], bits[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

double RngStream::normal(std::uint64_t index) const noexcept {
    return box_muller(block(index / 2))[index % 2];
}

void RngStream::fill_uniform(std::vector<double>& out) const {
    const std::size_t count = out.size();
    for (std::size_t k = 0; 2 * k < count; ++k) {
        const auto bits = block(k);
        out[2 * k] = bits_to_open_unit(bits[0], bits[1]);
        if (2 * k + 1 < count) out[2 * k + 1] = bits_to_open_unit(bits[2], bits[3]);
    }
}

void RngStream::fill_normal(std::vector<double>& out, double scale) const {
    const std::size_t count = out.size();
    for (std::size_t k = 0; 2 * k < count; ++k) {
        const auto z = box_muller(block(k));
        out[2 * k] = scale * z[0];
        if (2 * k + 1 < count) out[2 * k + 1] = scale * z[1];
    }
}

}  // namespace sderand
