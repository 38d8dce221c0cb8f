#include "sderand/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sderand/errors.hpp"

namespace sderand {

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::StandardEM ? "standard_em" : "randomised_em";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "standard_em" || name == "standard") return Scheme::StandardEM;
    if (name == "randomised_em" || name == "randomised" || name == "randomized") return Scheme::RandomisedEM;
    throw ConfigError("scheme", "unknown scheme '" + std::string(name) + "'");
}

double DiscreteTrajectory::max_drift_excursion() const {
    double worst = 0.0;
    for (std::size_t j = 0; j <= n(); ++j)
        for (std::size_t l = 0; l < d; ++l)
            worst = std::max(worst, std::abs(states[j * d + l] - x0[l] - noise[j * d + l]));
    return worst;
}

namespace {

void check_inputs(const Drift& drift, const BrownianPath& path, std::span<const double> x0) {
    if (path.d() != drift.d()) throw std::invalid_argument("simulate: path dimension does not match drift");
    if (x0.size() != drift.d()) throw std::invalid_argument("simulate: x0 dimension does not match drift");
}

// The shared recursion; evaluation_time(j) is the drift time on interval j.
template <class EvaluationTime>
DiscreteTrajectory run_scheme(const Drift& drift, const BrownianPath& path, std::span<const double> x0, Scheme scheme,
                              EvaluationTime evaluation_time) {
    check_inputs(drift, path, x0);
    const std::size_t n = path.n();
    const std::size_t d = path.d();
    const double step = 1.0 / static_cast<double>(n);

    DiscreteTrajectory traj;
    traj.grid = TimeGrid(n);
    traj.d = d;
    traj.scheme = scheme;
    traj.x0.assign(x0.begin(), x0.end());
    traj.states.resize((n + 1) * d);
    traj.noise = path.positions();
    traj.drift_part.assign((n + 1) * d, 0.0);
    std::copy(x0.begin(), x0.end(), traj.states.begin());

    // X_j = x0 + Y_j + B(t_j) with Y_j = Y_{j-1} + f/n. Algebraically the same recursion; keeping
    // the noise out of the running sum makes X_j = x0 + B(t_j) exact for zero drift at every resolution.
    std::vector<double> f(d);
    for (std::size_t j = 0; j < n; ++j) {
        const std::span<const double> current{traj.states.data() + j * d, d};
        drift.eval(evaluation_time(j), current, f);
        for (std::size_t l = 0; l < d; ++l) {
            const double y = traj.drift_part[j * d + l] + f[l] * step;
            const double next = (x0[l] + y) + path.position(j + 1, l);
            if (!std::isfinite(next)) throw NumericError("simulate: non-finite state at step " + std::to_string(j + 1));
            traj.drift_part[(j + 1) * d + l] = y;
            traj.states[(j + 1) * d + l] = next;
        }
    }
    return traj;
}

}  // namespace

DiscreteTrajectory simulate_standard_em(const Drift& drift, const BrownianPath& path, std::span<const double> x0) {
    const TimeGrid grid = path.grid();
    return run_scheme(drift, path, x0, Scheme::StandardEM, [&](std::size_t j) { return grid.node(j); });
}

DiscreteTrajectory simulate_randomised_em(const Drift& drift, const BrownianPath& path, const RandomOffsets& offsets,
                                          std::span<const double> x0) {
    if (offsets.n() < path.n()) throw std::length_error("simulate_randomised_em: need at least n offsets");
    const double n = static_cast<double>(path.n());
    return run_scheme(drift, path, x0, Scheme::RandomisedEM,
                      [&](std::size_t j) { return (static_cast<double>(j) + offsets[j]) / n; });
}

namespace {

ContinuousExtension extend(const Drift& drift, const DiscreteTrajectory& traj, const BrownianPath& fine_path,
                           std::size_t q, const RandomOffsets* offsets) {
    if (q == 0) throw std::invalid_argument("extend_continuous: q must be positive");
    const std::size_t n = traj.n();
    const std::size_t d = traj.d;
    if (fine_path.n() != q * n || fine_path.d() != d)
        throw ConsistencyError("extend_continuous: fine path resolution must equal q*n");
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t l = 0; l < d; ++l)
            if (fine_path.position(j * q, l) != traj.noise[j * d + l])
                throw ConsistencyError("extend_continuous: fine path does not coarsen to the trajectory's path");
    if (traj.scheme == Scheme::RandomisedEM) {
        if (offsets == nullptr) throw std::invalid_argument("extend_continuous: randomised trajectory needs offsets");
        if (offsets->n() < n) throw std::length_error("extend_continuous: need at least n offsets");
    }

    ContinuousExtension ext;
    ext.base = traj;
    ext.fine_grid = TimeGrid(q * n);
    ext.q = q;
    ext.fine_states.resize((q * n + 1) * d);

    const double nd = static_cast<double>(n);
    std::vector<double> f(d);
    for (std::size_t j = 0; j < n; ++j) {
        const std::span<const double> node_state = traj.state(j);
        const double t_j = traj.grid.node(j);
        const double s_j = traj.scheme == Scheme::RandomisedEM ? (static_cast<double>(j) + (*offsets)[j]) / nd : t_j;
        drift.eval(s_j, node_state, f);
        std::copy(node_state.begin(), node_state.end(), ext.fine_states.begin() + static_cast<std::ptrdiff_t>(j * q * d));
        for (std::size_t i = 1; i < q; ++i) {
            const std::size_t k = j * q + i;
            const double elapsed = ext.fine_grid.node(k) - t_j;
            for (std::size_t l = 0; l < d; ++l)
                ext.fine_states[k * d + l] =
                    (traj.x0[l] + (traj.drift_part[j * d + l] + f[l] * elapsed)) + fine_path.position(k, l);
        }
    }
    const auto last = traj.state(n);
    std::copy(last.begin(), last.end(), ext.fine_states.begin() + static_cast<std::ptrdiff_t>(q * n * d));
    return ext;
}

}  // namespace

ContinuousExtension extend_continuous(const Drift& drift, const DiscreteTrajectory& traj, const BrownianPath& fine_path,
                                      std::size_t q, const RandomOffsets& offsets) {
    return extend(drift, traj, fine_path, q, &offsets);
}

ContinuousExtension extend_continuous(const Drift& drift, const DiscreteTrajectory& traj, const BrownianPath& fine_path,
                                      std::size_t q) {
    return extend(drift, traj, fine_path, q, nullptr);
}

DiscreteTrajectory simulate_reference(const Drift& drift, const BrownianPath& fine_path, std::span<const double> x0,
                                      const RngStream& stream, std::size_t max_ladder_n) {
    if (max_ladder_n == 0 || fine_path.n() < kReferenceRefinement * max_ladder_n)
        throw ConfigError("n_ref", "reference resolution " + std::to_string(fine_path.n()) + " must be at least " +
                                       std::to_string(kReferenceRefinement) + " times the largest ladder resolution " +
                                       std::to_string(max_ladder_n));
    const RandomOffsets offsets = sample_offsets(fine_path.n(), stream.child(StreamPurpose::OffsetsRef));
    return simulate_randomised_em(drift, fine_path, offsets, x0);
}

}  // namespace sderand
