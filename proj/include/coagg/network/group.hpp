#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "coagg/network/generator.hpp"

namespace coagg {

/// A set of generators assumed to swing coherently. Aggregate inertia and
/// damping may be pinned explicitly when only the totals are known.
struct CoherentGroup {
    std::vector<GeneratorModel> generators;
    std::optional<double> inertia_override;
    std::optional<double> damping_override;

    int size() const { return static_cast<int>(generators.size()); }
};

inline void validate(const CoherentGroup& group) {
    if (group.generators.empty()) throw ValidationError("group has no generators");
    for (const GeneratorModel& g : group.generators) validate(g);
    if (group.inertia_override && !(*group.inertia_override > 0.0))
        throw ValidationError("aggregate inertia override must be > 0");
    if (group.damping_override && !(*group.damping_override >= 0.0))
        throw ValidationError("aggregate damping override must be >= 0");
}

inline double aggregate_inertia(const CoherentGroup& group) {
    if (group.inertia_override) return *group.inertia_override;
    double m = 0.0;
    for (const GeneratorModel& g : group.generators) m += swing_equivalent(g).first;
    return m;
}

inline double aggregate_damping(const CoherentGroup& group) {
    if (group.damping_override) return *group.damping_override;
    double d = 0.0;
    for (const GeneratorModel& g : group.generators) d += swing_equivalent(g).second;
    return d;
}

/// Per-generator equivalent inertias, used for center-of-inertia weighting.
inline std::vector<double> effective_inertias(const CoherentGroup& group) {
    std::vector<double> ms;
    ms.reserve(group.generators.size());
    for (const GeneratorModel& g : group.generators) ms.push_back(swing_equivalent(g).first);
    return ms;
}

/// Turbine lags of the group, with equal time constants merged exactly
/// (droop coefficients add) so shared lags collapse instead of producing
/// numerically repeated poles.
inline std::vector<FirstOrderTerm> aggregate_turbine_terms(const CoherentGroup& group) {
    std::vector<FirstOrderTerm> terms;
    for (const GeneratorModel& g : group.generators) {
        std::optional<FirstOrderTerm> t = turbine_term(g);
        if (!t) continue;
        bool merged = false;
        for (FirstOrderTerm& have : terms) {
            if (std::abs(have.time_constant - t->time_constant) <=
                1e-9 * std::max(have.time_constant, t->time_constant)) {
                have.time_constant = (have.gain * have.time_constant +
                                      t->gain * t->time_constant) /
                                     (have.gain + t->gain);
                have.gain += t->gain;
                merged = true;
                break;
            }
        }
        if (!merged) terms.push_back(*t);
    }
    std::sort(terms.begin(), terms.end(), [](const FirstOrderTerm& a, const FirstOrderTerm& b) {
        return a.time_constant < b.time_constant;
    });
    return terms;
}

/// Sum of the group's turbine lags over a common denominator.
inline TransferFunction aggregate_turbine(const CoherentGroup& group) {
    validate(group);
    return to_transfer(PartialFractionTerms{aggregate_turbine_terms(group), 0.0});
}

/// Assembles 1/(m s + d + g_t(s)) for a strictly proper (or zero) g_t.
inline TransferFunction aggregate_from_parts(double m, double d, const TransferFunction& g_t) {
    if (!(m > 0.0)) throw ValidationError("aggregate inertia must be > 0");
    if (!g_t.strictly_proper() && !g_t.is_zero())
        throw ValidationError("turbine dynamics must be strictly proper");
    Poly den = poly_add(poly_mul({m, d}, g_t.den), g_t.num);
    return TransferFunction::make(g_t.den, den);
}

/// Exact aggregate frequency dynamics (sum of the generator admittances,
/// inverted): 1/(m_hat s + d_hat + sum_i r_i/(tau_i s + 1)).
inline TransferFunction coherent_aggregate(const CoherentGroup& group) {
    validate(group);
    return aggregate_from_parts(aggregate_inertia(group), aggregate_damping(group),
                                aggregate_turbine(group));
}

}  // namespace coagg
