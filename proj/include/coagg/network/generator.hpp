#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "coagg/lti/partial_fractions.hpp"
#include "coagg/lti/state_space.hpp"

namespace coagg {

/// Swing dynamics 1/(m s + d), frequency deviation per power imbalance.
struct Swing {
    double m = 0.0;
    double d = 0.0;
};

/// Swing dynamics with a first-order turbine droop loop,
/// g^{-1}(s) = m s + d + r_inv/(tau s + 1).
struct SwingTurbine {
    double m = 0.0;
    double d = 0.0;
    double r_inv = 0.0;
    double tau = 0.0;
};

/// Droop-controlled inverter k_p/(tau_p s + 1).
struct DroopInverter {
    double k_p = 0.0;
    double tau_p = 0.0;
};

using GeneratorModel = std::variant<Swing, SwingTurbine, DroopInverter>;

inline void validate(const GeneratorModel& gen) {
    std::visit(
        [](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Swing>) {
                if (!(g.m > 0.0)) throw ValidationError("swing: m must be > 0");
                if (!(g.d >= 0.0)) throw ValidationError("swing: d must be >= 0");
            } else if constexpr (std::is_same_v<T, SwingTurbine>) {
                if (!(g.m > 0.0)) throw ValidationError("swing_turbine: m must be > 0");
                if (!(g.d >= 0.0)) throw ValidationError("swing_turbine: d must be >= 0");
                if (!(g.r_inv >= 0.0)) throw ValidationError("swing_turbine: r_inv must be >= 0");
                if (!(g.tau > 0.0)) throw ValidationError("swing_turbine: tau must be > 0");
            } else {
                if (!(g.k_p > 0.0)) throw ValidationError("droop_inverter: k_p must be > 0");
                if (!(g.tau_p > 0.0)) throw ValidationError("droop_inverter: tau_p must be > 0");
            }
        },
        gen);
}

inline TransferFunction generator_transfer(const GeneratorModel& gen) {
    validate(gen);
    if (const auto* s = std::get_if<Swing>(&gen))
        return TransferFunction::make({1.0}, {s->m, s->d});
    if (const auto* st = std::get_if<SwingTurbine>(&gen))
        return TransferFunction::make(
            {st->tau, 1.0},
            {st->m * st->tau, st->m + st->d * st->tau, st->d + st->r_inv});
    const auto& inv = std::get<DroopInverter>(gen);
    return TransferFunction::make({inv.k_p}, {inv.tau_p, 1.0});
}

/// Inertia/damping pair of the equivalent swing representation.
inline std::pair<double, double> swing_equivalent(const GeneratorModel& gen) {
    if (const auto* s = std::get_if<Swing>(&gen)) return {s->m, s->d};
    if (const auto* st = std::get_if<SwingTurbine>(&gen)) return {st->m, st->d};
    const auto& inv = std::get<DroopInverter>(gen);
    return {inv.tau_p / inv.k_p, 1.0 / inv.k_p};
}

/// Turbine lag r_inv/(tau s + 1) if the generator has one.
inline std::optional<FirstOrderTerm> turbine_term(const GeneratorModel& gen) {
    if (const auto* st = std::get_if<SwingTurbine>(&gen))
        if (st->r_inv > 0.0) return FirstOrderTerm{st->r_inv, st->tau};
    return std::nullopt;
}

/// g^{-1}(s), evaluated directly from the parameters.
inline Complex generator_inverse_at(const GeneratorModel& gen, Complex s) {
    if (const auto* sw = std::get_if<Swing>(&gen)) return sw->m * s + sw->d;
    if (const auto* st = std::get_if<SwingTurbine>(&gen))
        return st->m * s + st->d + st->r_inv / (st->tau * s + 1.0);
    const auto& inv = std::get<DroopInverter>(gen);
    return (inv.tau_p * s + 1.0) / inv.k_p;
}

inline StateSpace generator_state_space(const GeneratorModel& gen) {
    validate(gen);
    if (const auto* s = std::get_if<Swing>(&gen)) {
        Eigen::MatrixXd A(1, 1);
        A << -s->d / s->m;
        Eigen::VectorXd B(1);
        B << 1.0 / s->m;
        Eigen::RowVectorXd C(1);
        C << 1.0;
        return StateSpace{A, B, C, 0.0};
    }
    if (const auto* st = std::get_if<SwingTurbine>(&gen)) {
        Eigen::MatrixXd A(2, 2);
        A << -st->d / st->m, -1.0 / st->m, st->r_inv / st->tau, -1.0 / st->tau;
        Eigen::VectorXd B(2);
        B << 1.0 / st->m, 0.0;
        Eigen::RowVectorXd C(2);
        C << 1.0, 0.0;
        return StateSpace{A, B, C, 0.0};
    }
    const auto& inv = std::get<DroopInverter>(gen);
    Eigen::MatrixXd A(1, 1);
    A << -1.0 / inv.tau_p;
    Eigen::VectorXd B(1);
    B << inv.k_p / inv.tau_p;
    Eigen::RowVectorXd C(1);
    C << 1.0;
    return StateSpace{A, B, C, 0.0};
}

}  // namespace coagg
