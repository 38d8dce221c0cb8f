#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sderand/rng.hpp"

namespace sderand {

/// Drift families with analytically known Hölder exponents.
///
/// Per component l:
///   Zero         0
///   Constant     constant_value[l]
///   TimeOnly     K |t - anchor|^alpha
///   Product      K |t - anchor|^alpha |sin x_l|^beta
///   Weierstrass  K c_L sum_{k=0..L} 2^{-k alpha} cos(2^k pi (t - anchor)) |sin x_l|^beta
///   SpaceOnly    K |sin x_l|^beta
/// with c_L = 1 / sum_k 2^{-k alpha}. All norms below are max-norms over components.
enum class DriftFamily { Zero, Constant, TimeOnly, Product, Weierstrass, SpaceOnly };

std::string_view to_string(DriftFamily family);
DriftFamily parse_drift_family(std::string_view name);

inline constexpr double kDefaultAnchor = 0.70710678118654752;  // 1/sqrt(2)

struct DriftSpec {
    DriftFamily family = DriftFamily::Product;
    double alpha = 0.5;
    double beta = 1.0;
    double amplitude = 1.0;  // K
    std::size_t d = 1;
    double anchor = kDefaultAnchor;
    std::vector<double> constant_value;  // Constant family only; size d
    int truncation = 12;                 // Weierstrass family only

    /// Throws ConfigError naming the offending field.
    void validate() const;

    static DriftSpec zero(std::size_t d = 1);
    static DriftSpec constant(std::vector<double> value);
    static DriftSpec time_only(double alpha, double amplitude = 1.0, double anchor = kDefaultAnchor, std::size_t d = 1);
    static DriftSpec product(double alpha, double beta, double amplitude = 1.0, std::size_t d = 1,
                             double anchor = kDefaultAnchor);
    static DriftSpec weierstrass(double alpha, double beta, double amplitude = 1.0, std::size_t d = 1,
                                 int truncation = 12, double anchor = kDefaultAnchor);
    static DriftSpec space_only(double beta, double amplitude = 1.0, std::size_t d = 1);

    /// Documented bounds on the three terms of the C_b^{alpha,beta} norm.
    double sup_bound() const;
    double time_seminorm_bound() const;
    double space_seminorm_bound() const;

    /// Effective regularity alpha ∧ (beta/2) of the randomised scheme's rate.
    double gamma() const;
    bool time_dependent() const;
};

/// Compiled evaluator for a DriftSpec. Immutable and shareable across threads.
class Drift {
public:
    explicit Drift(DriftSpec spec);

    const DriftSpec& spec() const noexcept { return spec_; }
    std::size_t d() const noexcept { return spec_.d; }

    /// Writes f(t,x) into out. No allocation; t is range-checked.
    void eval(double t, std::span<const double> x, std::span<double> out) const;
    std::vector<double> operator()(double t, std::span<const double> x) const;

    /// First component of f; the scalar g1 used by the I2 probe.
    double eval_component(double t, std::span<const double> x, std::size_t l) const;

private:
    double time_factor(double t) const;
    double space_factor(double x) const;

    DriftSpec spec_;
    std::vector<double> weierstrass_weights_;  // c_L 2^{-k alpha}
};

std::vector<double> eval_drift(const DriftSpec& spec, double t, std::span<const double> x);

enum class ObservableKind { UnitScalar, SmoothDecay };

std::string_view to_string(ObservableKind kind);
ObservableKind parse_observable_kind(std::string_view name);

struct ObservableSpec {
    ObservableKind kind = ObservableKind::UnitScalar;
    std::size_t d = 1;
};

/// UnitScalar: 1. SmoothDecay: cos(t) (1 + |x|^2)^{-1/2}.
double eval_observable(const ObservableSpec& spec, double t, std::span<const double> x);

struct HolderProbe {
    double time_seminorm = 0.0;
    double space_seminorm = 0.0;
};

/// Largest observed Hölder difference quotients over n_pairs random triples.
/// Lower bounds for the true seminorms. Separations are drawn log-uniformly in
/// [1e-6, 1] so both coarse and fine scales are visited.
HolderProbe probe_holder_seminorms(const DriftSpec& spec, std::size_t n_pairs, const RngStream& stream);

}  // namespace sderand
