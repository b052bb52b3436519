#pragma once

#include <cmath>
#include <vector>

#include "coagg/lti/response.hpp"

namespace coagg {

/// Inertia-weighted mean of per-generator signals on a shared time grid.
inline Trajectory coi_trajectory(const std::vector<double>& inertias,
                                 const std::vector<Trajectory>& signals) {
    if (signals.empty() || inertias.size() != signals.size())
        throw ValidationError("need one inertia per signal");
    double total = 0.0;
    for (double m : inertias) {
        if (!(m > 0.0)) throw ValidationError("inertias must be > 0");
        total += m;
    }
    const Trajectory& ref = signals.front();
    for (const Trajectory& s : signals) {
        if (s.times.size() != ref.times.size() || s.dt != ref.dt)
            throw GridMismatch("signals must share one time grid");
        for (std::size_t k = 0; k < s.times.size(); ++k)
            if (std::abs(s.times[k] - ref.times[k]) > 1e-9 * ref.dt)
                throw GridMismatch("signals must share one time grid");
    }
    Trajectory out;
    out.dt = ref.dt;
    out.times = ref.times;
    out.values.assign(ref.values.size(), 0.0);
    for (std::size_t i = 0; i < signals.size(); ++i)
        for (std::size_t k = 0; k < out.values.size(); ++k)
            out.values[k] += inertias[i] * signals[i].values[k] / total;
    return out;
}

}  // namespace coagg
