#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coagg/metrics/error_norms.hpp"
#include "coagg/reduction/interpret.hpp"
#include "coagg/reduction/paths.hpp"

namespace coagg {

enum class ReductionPath { Turbine, ClosedLoop };

/// When the reduced model is rescaled to the exact DC gain: before all
/// metrics, only for the step metrics (H-inf stays on the raw model), or
/// never.
enum class DcPolicy { Before, After, Off };

struct MethodSpec {
    ReductionPath path = ReductionPath::Turbine;
    int order = 2;
    FrequencyWeight weight;
    std::string label;
};

inline std::string path_tag(ReductionPath p) {
    return p == ReductionPath::Turbine ? "tb" : "cl";
}

struct SimulationSettings {
    double step = -0.1;
    double horizon = 200.0;
    double dt = 1e-3;
};

struct ErrorTriple {
    double l2 = 0.0;
    double linf = 0.0;
    double hinf = 0.0;
};

struct ComparisonRow {
    std::string label;
    ReductionPath path = ReductionPath::Turbine;
    int order = 0;
    TransferFunction reduced;    // raw reduction output
    TransferFunction evaluated;  // model used for the step metrics
    ErrorTriple errors;
    double dc_gap = 0.0;  // relative DC mismatch of the raw reduction
    std::optional<EquivalentGenerator> interpretation;
};

struct ComparisonReport {
    TransferFunction aggregate;
    std::vector<ComparisonRow> rows;
    SimulationSettings sim;
    DcPolicy policy = DcPolicy::After;
};

inline TransferFunction run_reduction(const CoherentGroup& group, const MethodSpec& m) {
    return m.path == ReductionPath::Turbine
               ? reduce_turbine_path(group, m.order, m.weight)
               : reduce_closed_loop_path(group, m.order, m.weight);
}

/// Reduces the group with every requested method and quantifies the
/// mismatch against the exact aggregate.
inline ComparisonReport compare_models(const CoherentGroup& group,
                                       const std::vector<MethodSpec>& methods,
                                       const SimulationSettings& sim = {},
                                       DcPolicy policy = DcPolicy::After) {
    ComparisonReport report;
    report.aggregate = coherent_aggregate(group);
    report.sim = sim;
    report.policy = policy;
    double g0 = dc_gain(report.aggregate);
    for (const MethodSpec& m : methods) {
        ComparisonRow row;
        row.label = m.label.empty() ? path_tag(m.path) + std::to_string(m.order) : m.label;
        row.path = m.path;
        row.order = m.order;
        row.reduced = run_reduction(group, m);
        row.dc_gap = std::abs(dc_gain(row.reduced) - g0) / std::max(1.0, std::abs(g0));
        row.evaluated = policy == DcPolicy::Off ? row.reduced
                                                : match_dc(row.reduced, report.aggregate);
        auto [l2, linf] = step_error_norms(report.aggregate, row.evaluated, sim.step,
                                           sim.horizon, sim.dt,
                                           /*check_dc=*/policy != DcPolicy::Off);
        row.errors.l2 = l2;
        row.errors.linf = linf;
        const TransferFunction& hinf_model =
            policy == DcPolicy::Before ? row.evaluated : row.reduced;
        row.errors.hinf = hinf_diff(report.aggregate, hinf_model);
        if ((row.order == 2 || row.order == 3) &&
            row.reduced.num_degree() == row.order - 1)
            row.interpretation = interpret_reduced(row.reduced);
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct SweepPoint {
    double m_hat = 0.0;
    ComparisonReport report;
};

/// Repeats the comparison while sweeping the aggregate inertia.
inline std::vector<SweepPoint> inertia_sweep(const CoherentGroup& group,
                                             const std::vector<double>& m_values,
                                             const std::vector<MethodSpec>& methods,
                                             const SimulationSettings& sim = {},
                                             DcPolicy policy = DcPolicy::After) {
    std::vector<SweepPoint> out;
    for (double m : m_values) {
        if (!(m > 0.0)) throw ValidationError("swept inertias must be > 0");
        CoherentGroup g = group;
        g.inertia_override = m;
        out.push_back({m, compare_models(g, methods, sim, policy)});
    }
    return out;
}

}  // namespace coagg
