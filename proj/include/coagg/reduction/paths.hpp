#pragma once

#include "coagg/network/group.hpp"
#include "coagg/reduction/fwbt.hpp"

namespace coagg {

/// DC-emphasis weight used when reducing the aggregate turbine dynamics.
inline FrequencyWeight default_turbine_weight() {
    return FrequencyWeight::make(TransferFunction::make({1.0, 3e-2}, {1.0, 1e-4}));
}

/// DC-emphasis weight used when reducing the full aggregate.
inline FrequencyWeight default_closed_loop_weight() {
    return FrequencyWeight::make(TransferFunction::make({1.0, 8e-2}, {1.0, 1e-4}));
}

/// Order-k approximation that reduces only the aggregate turbine dynamics
/// to order k-1 and closes the loop with the exact aggregate swing part.
inline TransferFunction reduce_turbine_path(const CoherentGroup& group, int k,
                                            const FrequencyWeight& w) {
    if (k < 2) throw WrongOrder("turbine-path reduction needs order k >= 2");
    TransferFunction g_t = aggregate_turbine(group);
    double m = aggregate_inertia(group), d = aggregate_damping(group);
    if (g_t.is_zero()) {
        if (k > 1) throw OrderTooHigh("group has no turbine dynamics to keep");
        return aggregate_from_parts(m, d, g_t);
    }
    StateSpace reduced = fw_balanced_truncation(minimal_state_space(g_t), w, k - 1);
    return aggregate_from_parts(m, d, transfer_of(reduced));
}

/// Order-k approximation obtained by balancing the full aggregate directly.
inline TransferFunction reduce_closed_loop_path(const CoherentGroup& group, int k,
                                                const FrequencyWeight& w) {
    if (k < 2) throw WrongOrder("closed-loop reduction needs order k >= 2");
    TransferFunction g_hat = coherent_aggregate(group);
    StateSpace reduced = fw_balanced_truncation(minimal_state_space(g_hat), w, k);
    return transfer_of(reduced);
}

/// Rescales the numerator so the reduced model matches the original DC gain.
inline TransferFunction match_dc(const TransferFunction& reduced,
                                 const TransferFunction& original) {
    double have = dc_gain(reduced);
    if (have == 0.0) throw NumericalError("reduced model has zero DC gain");
    return tf_scale(reduced, dc_gain(original) / have);
}

}  // namespace coagg
