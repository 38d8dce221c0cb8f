#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sderand/core.hpp"
#include "sderand/drifts.hpp"

namespace sderand {

enum class Scheme { StandardEM, RandomisedEM };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// Scheme output at the nodes of a grid, together with the Brownian values it was driven by.
struct DiscreteTrajectory {
    TimeGrid grid{1};
    std::size_t d = 1;
    Scheme scheme = Scheme::StandardEM;
    std::vector<double> x0;
    std::vector<double> states;  // [n+1][d]
    std::vector<double> noise;   // B(t_j), [n+1][d]
    std::vector<double> drift_part;  // Y_j = sum of f/n over the first j steps, [n+1][d]

    std::size_t n() const noexcept { return grid.n(); }
    std::span<const double> state(std::size_t j) const noexcept { return {states.data() + j * d, d}; }

    /// max_j max_l |X_j - x0 - B(t_j)|; bounded by t_j * sup|f| for any bounded drift.
    double max_drift_excursion() const;
};

/// The piecewise-linear-in-time continuous version sampled on a q-times finer grid.
struct ContinuousExtension {
    DiscreteTrajectory base;
    TimeGrid fine_grid{1};
    std::size_t q = 1;
    std::vector<double> fine_states;  // [q n + 1][d]

    std::span<const double> fine_state(std::size_t k) const noexcept {
        return {fine_states.data() + k * base.d, base.d};
    }
};

/// X_j = X_{j-1} + f(t_{j-1}, X_{j-1})/n + ΔB_j.
DiscreteTrajectory simulate_standard_em(const Drift& drift, const BrownianPath& path, std::span<const double> x0);

/// X_j = X_{j-1} + f(t_{j-1} + taus[j-1]/n, X_{j-1})/n + ΔB_j.
DiscreteTrajectory simulate_randomised_em(const Drift& drift, const BrownianPath& path, const RandomOffsets& offsets,
                                          std::span<const double> x0);

/// On subinterval j: X(t) = X_j + f(s_j, X_j)(t - t_j) + B(t) - B(t_j), evaluated as
/// x0 + (Y_j + f(s_j, X_j)(t - t_j)) + B(t), where s_j is the
/// left node (standard EM) or the randomised evaluation time (randomised EM).
/// Throws ConsistencyError if fine_path does not coarsen onto the trajectory's noise.
ContinuousExtension extend_continuous(const Drift& drift, const DiscreteTrajectory& traj, const BrownianPath& fine_path,
                                      std::size_t q, const RandomOffsets& offsets);
ContinuousExtension extend_continuous(const Drift& drift, const DiscreteTrajectory& traj, const BrownianPath& fine_path,
                                      std::size_t q);

/// Randomised EM at the fine path's resolution, with offsets drawn from
/// stream.child(OffsetsRef). The fine path must be at least 16 times finer than
/// the largest ladder resolution it will be compared against.
DiscreteTrajectory simulate_reference(const Drift& drift, const BrownianPath& fine_path, std::span<const double> x0,
                                      const RngStream& stream, std::size_t max_ladder_n);

inline constexpr std::size_t kReferenceRefinement = 16;

}  // namespace sderand
