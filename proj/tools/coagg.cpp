#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coagg/metrics/compare.hpp"
#include "coagg/network/coherence.hpp"
#include "coagg/scenario.hpp"

namespace {

std::string g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& csv, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw coagg::ValidationError("bad " + what + " value '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct Options {
    std::string scenario_path;
    std::string out_dir = ".";
    std::string methods_csv;
    std::string weight_name;
    std::string rescale = "after";
    std::string scales_csv = "1,10,100";
    std::string mhat_csv;
    std::optional<double> step, horizon, dt, eta0;
    std::optional<int> order;
};

coagg::DcPolicy policy_of(const std::string& s) {
    if (s == "before") return coagg::DcPolicy::Before;
    if (s == "after") return coagg::DcPolicy::After;
    if (s == "off") return coagg::DcPolicy::Off;
    throw coagg::ValidationError("--rescale-dc must be before, after or off");
}

std::vector<coagg::MethodSpec> select_methods(const coagg::Scenario& scn, const Options& opt) {
    using coagg::ReductionPath;
    std::vector<coagg::ReductionRequest> reqs;
    if (!opt.methods_csv.empty()) {
        std::size_t pos = 0;
        while (pos <= opt.methods_csv.size()) {
            std::size_t comma = opt.methods_csv.find(',', pos);
            std::string tok = opt.methods_csv.substr(
                pos, comma == std::string::npos ? comma : comma - pos);
            coagg::ReductionRequest r;
            if (tok.rfind("tb", 0) == 0)
                r.path = ReductionPath::Turbine;
            else if (tok.rfind("cl", 0) == 0)
                r.path = ReductionPath::ClosedLoop;
            else
                throw coagg::ValidationError("bad method '" + tok + "', expected tbK or clK");
            try {
                std::size_t used = 0;
                r.order = std::stoi(tok.substr(2), &used);
                if (used != tok.size() - 2) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw coagg::ValidationError("bad method '" + tok + "', expected tbK or clK");
            }
            reqs.push_back(r);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } else if (opt.order) {
        reqs.push_back({ReductionPath::Turbine, *opt.order, ""});
        reqs.push_back({ReductionPath::ClosedLoop, *opt.order, ""});
    } else if (!scn.reductions.empty()) {
        reqs = scn.reductions;
    } else {
        reqs = {{ReductionPath::Turbine, 2, ""},
                {ReductionPath::Turbine, 3, ""},
                {ReductionPath::ClosedLoop, 2, ""},
                {ReductionPath::ClosedLoop, 3, ""}};
    }
    std::vector<coagg::MethodSpec> methods;
    for (const coagg::ReductionRequest& r : reqs) {
        coagg::MethodSpec m;
        m.path = r.path;
        m.order = r.order;
        std::string name = !opt.weight_name.empty() ? opt.weight_name
                           : r.weight_name.empty()
                               ? (r.path == ReductionPath::Turbine ? "W_tb" : "W_cl")
                               : r.weight_name;
        auto it = scn.weights.find(name);
        if (it == scn.weights.end())
            throw coagg::ValidationError("unknown weight '" + name + "'");
        m.weight = it->second;
        m.label = coagg::path_tag(r.path) + std::to_string(r.order);
        methods.push_back(std::move(m));
    }
    return methods;
}

coagg::SimulationSettings select_sim(const coagg::Scenario& scn, const Options& opt) {
    coagg::SimulationSettings sim = scn.sim;
    if (opt.step) sim.step = *opt.step;
    if (opt.horizon) sim.horizon = *opt.horizon;
    if (opt.dt) sim.dt = *opt.dt;
    if (!(sim.dt > 0.0) || !(sim.horizon >= sim.dt))
        throw coagg::ValidationError("simulation needs dt > 0 and horizon >= dt");
    return sim;
}

std::ofstream open_csv(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    std::filesystem::path p = std::filesystem::path(opt.out_dir) / name;
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw coagg::Error("cannot write " + p.string());
    return out;
}

void write_tf_rows(std::ofstream& out, const std::string& label,
                   const coagg::TransferFunction& g) {
    int dn = static_cast<int>(g.num.size()) - 1;
    for (std::size_t i = 0; i < g.num.size(); ++i)
        out << label << ",num," << dn - static_cast<int>(i) << ',' << g10(g.num[i]) << '\n';
    int dd = static_cast<int>(g.den.size()) - 1;
    for (std::size_t i = 0; i < g.den.size(); ++i)
        out << label << ",den," << dd - static_cast<int>(i) << ',' << g10(g.den[i]) << '\n';
}

void cmd_aggregate(const coagg::Scenario& scn, const Options& opt) {
    coagg::TransferFunction ghat = coagg::coherent_aggregate(scn.group);
    coagg::TransferFunction gt = coagg::aggregate_turbine(scn.group);
    std::ofstream tf = open_csv(opt, "aggregate_tf.csv");
    tf << "model,part,power_of_s[-],coefficient[-]\n";
    write_tf_rows(tf, "g_hat", ghat);
    write_tf_rows(tf, "g_t", gt);
    std::ofstream params = open_csv(opt, "aggregate_params.csv");
    params << "name,value\n";
    params << "m_hat[s]," << g10(coagg::aggregate_inertia(scn.group)) << '\n';
    params << "d_hat[pu]," << g10(coagg::aggregate_damping(scn.group)) << '\n';
    params << "order[-]," << ghat.order() << '\n';
    params << "dc_gain[pu]," << g10(coagg::dc_gain(ghat)) << '\n';
}

void write_interpretation(std::ofstream& out, const std::string& label,
                          const coagg::TransferFunction& g) {
    bool fits = (g.order() == 2 || g.order() == 3) && g.num_degree() == g.order() - 1;
    out << label << ",interpretable[-]," << (fits ? 1 : 0) << '\n';
    if (!fits) return;
    coagg::EquivalentGenerator eq = coagg::interpret_reduced(g);
    out << label << ",m[s]," << g10(eq.m) << '\n';
    out << label << ",d[pu]," << g10(eq.d) << '\n';
    for (std::size_t i = 0; i < eq.turbines.size(); ++i) {
        out << label << ",r_inv_" << i + 1 << "[pu]," << g10(eq.turbines[i].gain) << '\n';
        out << label << ",tau_" << i + 1 << "[s]," << g10(eq.turbines[i].time_constant) << '\n';
    }
    out << label << ",residual_flag[-]," << (eq.residual_flag ? 1 : 0) << '\n';
}

void cmd_reduce(const coagg::Scenario& scn, const Options& opt) {
    std::vector<coagg::MethodSpec> methods = select_methods(scn, opt);
    std::ofstream tf = open_csv(opt, "reduced_tf.csv");
    tf << "model,part,power_of_s[-],coefficient[-]\n";
    std::ofstream interp = open_csv(opt, "interpretation.csv");
    interp << "model,field,value\n";
    for (const coagg::MethodSpec& m : methods) {
        coagg::TransferFunction reduced = coagg::run_reduction(scn.group, m);
        write_tf_rows(tf, m.label, reduced);
        write_interpretation(interp, m.label, reduced);
    }
}

void cmd_respond(const coagg::Scenario& scn, const Options& opt) {
    coagg::SimulationSettings sim = select_sim(scn, opt);
    coagg::DcPolicy policy = policy_of(opt.rescale);
    std::vector<coagg::MethodSpec> methods = select_methods(scn, opt);
    coagg::TransferFunction ghat = coagg::coherent_aggregate(scn.group);
    std::vector<std::string> labels{"g_hat"};
    std::vector<coagg::Trajectory> trajs{
        coagg::step_response(ghat, sim.step, sim.horizon, sim.dt)};
    for (const coagg::MethodSpec& m : methods) {
        coagg::TransferFunction reduced = coagg::run_reduction(scn.group, m);
        if (policy != coagg::DcPolicy::Off) reduced = coagg::match_dc(reduced, ghat);
        labels.push_back(m.label);
        trajs.push_back(coagg::step_response(reduced, sim.step, sim.horizon, sim.dt));
    }
    std::ofstream out = open_csv(opt, "responses.csv");
    out << "time[s]";
    for (const std::string& l : labels) out << ',' << l << "[pu]";
    out << '\n';
    for (std::size_t k = 0; k < trajs.front().times.size(); ++k) {
        out << g10(trajs.front().times[k]);
        for (const coagg::Trajectory& t : trajs) out << ',' << g10(t.values[k]);
        out << '\n';
    }
}

void write_comparison_rows(std::ofstream& out, const std::string& prefix,
                           const coagg::ComparisonReport& report) {
    for (const coagg::ComparisonRow& row : report.rows) {
        out << prefix << row.label << ',' << coagg::path_tag(row.path) << ',' << row.order
            << ',' << g10(row.errors.l2) << ',' << g10(row.errors.linf) << ','
            << g10(row.errors.hinf) << ',' << g10(row.dc_gap) << ',';
        if (row.interpretation)
            out << (row.interpretation->residual_flag ? 1 : 0);
        out << '\n';
    }
}

void cmd_compare(const coagg::Scenario& scn, const Options& opt) {
    coagg::SimulationSettings sim = select_sim(scn, opt);
    coagg::ComparisonReport report = coagg::compare_models(
        scn.group, select_methods(scn, opt), sim, policy_of(opt.rescale));
    std::ofstream out = open_csv(opt, "comparison.csv");
    out << "model,path,order[-],l2_per_unit_step[sqrt_s],linf_per_unit_step[-],"
           "hinf[-],dc_gap_rel[-],residual_flag[-]\n";
    write_comparison_rows(out, "", report);
}

void cmd_sweep(const coagg::Scenario& scn, const Options& opt) {
    coagg::SimulationSettings sim = select_sim(scn, opt);
    std::vector<double> mhats;
    if (!opt.mhat_csv.empty()) {
        mhats = parse_list(opt.mhat_csv, "--mhat");
    } else {
        double m0 = coagg::aggregate_inertia(scn.group);
        mhats = {0.5 * m0, m0, 2.0 * m0};
    }
    std::vector<coagg::SweepPoint> points = coagg::inertia_sweep(
        scn.group, mhats, select_methods(scn, opt), sim, policy_of(opt.rescale));
    std::ofstream out = open_csv(opt, "sweep.csv");
    out << "m_hat[s],model,metric,value\n";
    for (const coagg::SweepPoint& pt : points) {
        for (const coagg::ComparisonRow& row : pt.report.rows) {
            out << g10(pt.m_hat) << ',' << row.label << ",l2_per_unit_step[sqrt_s],"
                << g10(row.errors.l2) << '\n';
            out << g10(pt.m_hat) << ',' << row.label << ",linf_per_unit_step[-],"
                << g10(row.errors.linf) << '\n';
            out << g10(pt.m_hat) << ',' << row.label << ",hinf[-]," << g10(row.errors.hinf)
                << '\n';
            out << g10(pt.m_hat) << ',' << row.label << ",dc_gap_rel[-]," << g10(row.dc_gap)
                << '\n';
        }
    }
}

void cmd_coherence(const coagg::Scenario& scn, const Options& opt) {
    if (!scn.network)
        throw coagg::ValidationError("scenario has no [network] section");
    double eta0 = opt.eta0 ? *opt.eta0 : scn.eta0;
    coagg::BandConstants bc = coagg::band_constants(scn.group, eta0, scn.grid_size);
    std::ofstream consts = open_csv(opt, "coherence_constants.csv");
    consts << "name,value\n";
    consts << "eta0[pu]," << g10(eta0) << '\n';
    consts << "grid_points_per_side[-]," << scn.grid_size << '\n';
    consts << "M1[-]," << g10(bc.M1) << '\n';
    consts << "M2[-]," << g10(bc.M2) << '\n';
    std::ofstream out = open_csv(opt, "coherence.csv");
    out << "scale[-],lambda2[pu],gap[-],bound[-],bound_applicable[-]\n";
    for (double alpha : parse_list(opt.scales_csv, "--scales")) {
        coagg::NetworkSpec net = scn.network->scaled(alpha);
        double gap = coagg::coherence_gap(scn.group, net, eta0, scn.grid_size);
        out << g10(alpha) << ',' << g10(net.lambda2()) << ',' << g10(gap) << ',';
        try {
            out << g10(coagg::lemma2_bound(bc.M1, bc.M2, net.lambda2(), eta0)) << ",1\n";
        } catch (const coagg::NotApplicable&) {
            out << ",0\n";
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Aggregate frequency dynamics of coherent generator groups:"
                 " exact aggregation, weighted balanced reduction, and error metrics"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", opt.scenario_path, "scenario file")->required();
        cmd->add_option("--out", opt.out_dir, "output directory");
        return cmd;
    };
    auto add_methods = [&](CLI::App* cmd) {
        cmd->add_option("--methods", opt.methods_csv, "comma list like tb2,tb3,cl2,cl3");
        cmd->add_option("--order", opt.order, "reduce both paths to this order");
        cmd->add_option("--weight", opt.weight_name, "weight name for every method");
        return cmd;
    };
    auto add_sim = [&](CLI::App* cmd) {
        cmd->add_option("--step", opt.step, "step amplitude [pu]");
        cmd->add_option("--horizon", opt.horizon, "simulation horizon [s]");
        cmd->add_option("--dt", opt.dt, "simulation step [s]");
        cmd->add_option("--rescale-dc", opt.rescale, "before|after|off (default after)");
        return cmd;
    };

    CLI::App* agg = add_common(app.add_subcommand("aggregate", "exact aggregate model"));
    (void)agg;
    add_methods(add_common(app.add_subcommand("reduce", "reduced models + interpretation")));
    add_sim(add_methods(add_common(app.add_subcommand("respond", "step response traces"))));
    add_sim(add_methods(add_common(app.add_subcommand("compare", "reduction error metrics"))));
    CLI::App* sweep = add_sim(add_methods(
        add_common(app.add_subcommand("sweep", "error metrics across aggregate inertias"))));
    sweep->add_option("--mhat", opt.mhat_csv, "comma list of aggregate inertias [s]");
    CLI::App* coh = add_common(
        app.add_subcommand("coherence", "coherence gap and bound across coupling scales"));
    coh->add_option("--eta0", opt.eta0, "band edge [pu]");
    coh->add_option("--scales", opt.scales_csv, "comma list of coupling scale factors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    coagg::Scenario scn = coagg::load_scenario(opt.scenario_path);
    if (app.got_subcommand("aggregate"))
        cmd_aggregate(scn, opt);
    else if (app.got_subcommand("reduce"))
        cmd_reduce(scn, opt);
    else if (app.got_subcommand("respond"))
        cmd_respond(scn, opt);
    else if (app.got_subcommand("compare"))
        cmd_compare(scn, opt);
    else if (app.got_subcommand("sweep"))
        cmd_sweep(scn, opt);
    else
        cmd_coherence(scn, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const coagg::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coagg::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coagg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
