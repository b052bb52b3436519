#pragma once

#include <cmath>
#include <utility>

#include "coagg/lti/norms.hpp"
#include "coagg/lti/response.hpp"

namespace coagg {

/// L2 and Linf norms of the step response mismatch between two stable
/// models, reported per unit of step amplitude so the numbers do not
/// depend on the disturbance size. Both models must share the DC gain
/// (relative gap 1e-9) unless the check is explicitly waived.
inline std::pair<double, double> step_error_norms(const TransferFunction& original,
                                                  const TransferFunction& reduced,
                                                  double amplitude, double horizon,
                                                  double dt, bool check_dc = true) {
    if (check_dc) {
        double g0 = dc_gain(original), g1 = dc_gain(reduced);
        if (std::abs(g0 - g1) > 1e-9 * std::max(1.0, std::abs(g0)))
            throw DCMismatch("models disagree at DC; rescale before comparing");
    }
    if (amplitude == 0.0) return {0.0, 0.0};
    Trajectory yo = step_response(original, amplitude, horizon, dt);
    Trajectory yr = step_response(reduced, amplitude, horizon, dt);
    double sq = 0.0, peak = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < yo.values.size(); ++k) {
        double e = yo.values[k] - yr.values[k];
        peak = std::max(peak, std::abs(e));
        double e2 = e * e;
        if (k > 0) sq += 0.5 * (prev + e2) * dt;
        prev = e2;
    }
    double scale = std::abs(amplitude);
    return {std::sqrt(sq) / scale, peak / scale};
}

/// H-infinity norm of the mismatch, formed over the common denominator.
inline double hinf_diff(const TransferFunction& original, const TransferFunction& reduced) {
    return hinf_norm(tf_sub(original, reduced));
}

}  // namespace coagg
