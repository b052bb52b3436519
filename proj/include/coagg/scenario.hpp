#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coagg/metrics/compare.hpp"
#include "coagg/network/laplacian.hpp"

namespace coagg {

struct ReductionRequest {
    ReductionPath path = ReductionPath::Turbine;
    int order = 2;
    std::string weight_name;  // empty means the path default
};

/// One self-contained study: a coherent group, optionally the coupling
/// network, named weighting filters, simulation settings and the list of
/// reductions to run.
struct Scenario {
    CoherentGroup group;
    std::optional<NetworkSpec> network;
    std::map<std::string, FrequencyWeight> weights;
    SimulationSettings sim;
    double eta0 = 5.0;
    int grid_size = 200;
    std::vector<ReductionRequest> reductions;
};

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

inline std::string scn_trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> scn_split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

inline double scn_number(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) parse_fail(line, "bad number '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(line, "bad number '" + tok + "'");
    }
}

inline int scn_integer(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) parse_fail(line, "bad integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(line, "bad integer '" + tok + "'");
    }
}

struct PendingGenerator {
    std::string type;
    std::map<std::string, double> kv;
    int line = 0;
};

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    using detail::parse_fail;
    std::vector<detail::PendingGenerator> pending;
    std::optional<double> m_hat, d_hat;
    std::vector<Edge> edges;
    std::vector<std::vector<double>> lap_rows;
    std::vector<std::string> net_lines;
    std::map<std::string, FrequencyWeight> weights;
    Scenario scn;

    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::scn_trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(line_no, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "generators" && section != "network" && section != "weights" &&
                section != "simulation" && section != "reduction")
                parse_fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "expected key = value");
        std::string key = detail::scn_trim(line.substr(0, eq));
        std::string value = detail::scn_trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) parse_fail(line_no, "expected key = value");

        if (section == "generators") {
            if (key == "m_hat" || key == "d_hat") {
                auto& slot = key == "m_hat" ? m_hat : d_hat;
                if (slot) parse_fail(line_no, key + " given twice");
                slot = detail::scn_number(value, line_no);
            } else if (key == "gen") {
                std::vector<std::string> toks = detail::scn_split(value);
                detail::PendingGenerator pg;
                pg.line = line_no;
                pg.type = toks.front();
                if (pg.type != "swing" && pg.type != "swing_turbine" &&
                    pg.type != "droop_inverter")
                    parse_fail(line_no, "unknown generator type '" + pg.type + "'");
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    std::size_t mid = toks[i].find('=');
                    if (mid == std::string::npos)
                        parse_fail(line_no, "expected field=value, got '" + toks[i] + "'");
                    std::string field = toks[i].substr(0, mid);
                    if (pg.kv.count(field)) parse_fail(line_no, "field '" + field + "' given twice");
                    bool known =
                        (pg.type == "swing" && (field == "m" || field == "d")) ||
                        (pg.type == "swing_turbine" &&
                         (field == "m" || field == "d" || field == "r_inv" || field == "tau")) ||
                        (pg.type == "droop_inverter" && (field == "k_p" || field == "tau_p"));
                    if (!known)
                        parse_fail(line_no, "unknown field '" + field + "' for " + pg.type);
                    pg.kv[field] = detail::scn_number(toks[i].substr(mid + 1), line_no);
                }
                pending.push_back(std::move(pg));
            } else {
                parse_fail(line_no, "unknown key '" + key + "' in [generators]");
            }
        } else if (section == "network") {
            net_lines.push_back(raw);
            if (key == "edge") {
                std::vector<std::string> toks = detail::scn_split(value);
                if (toks.size() != 3) parse_fail(line_no, "edge needs: node node weight");
                int a = detail::scn_integer(toks[0], line_no);
                int b = detail::scn_integer(toks[1], line_no);
                edges.push_back({a - 1, b - 1, detail::scn_number(toks[2], line_no)});
            } else if (key == "laplacian_row") {
                std::vector<double> row;
                for (const std::string& tok : detail::scn_split(value))
                    row.push_back(detail::scn_number(tok, line_no));
                lap_rows.push_back(std::move(row));
            } else {
                parse_fail(line_no, "unknown key '" + key + "' in [network]");
            }
        } else if (section == "weights") {
            if (weights.count(key)) parse_fail(line_no, "weight '" + key + "' given twice");
            std::size_t slash = value.find('/');
            if (slash == std::string::npos)
                parse_fail(line_no, "weight needs numerator / denominator");
            Poly num, den;
            for (const std::string& tok : detail::scn_split(value.substr(0, slash)))
                num.push_back(detail::scn_number(tok, line_no));
            for (const std::string& tok : detail::scn_split(value.substr(slash + 1)))
                den.push_back(detail::scn_number(tok, line_no));
            if (num.empty() || den.empty())
                parse_fail(line_no, "weight needs numerator / denominator");
            weights.emplace(key, FrequencyWeight::make(TransferFunction::make(num, den)));
        } else if (section == "simulation") {
            if (key == "step")
                scn.sim.step = detail::scn_number(value, line_no);
            else if (key == "horizon")
                scn.sim.horizon = detail::scn_number(value, line_no);
            else if (key == "dt")
                scn.sim.dt = detail::scn_number(value, line_no);
            else if (key == "eta0")
                scn.eta0 = detail::scn_number(value, line_no);
            else if (key == "grid_size")
                scn.grid_size = detail::scn_integer(value, line_no);
            else
                parse_fail(line_no, "unknown key '" + key + "' in [simulation]");
        } else if (section == "reduction") {
            if (key != "method") parse_fail(line_no, "unknown key '" + key + "' in [reduction]");
            std::vector<std::string> toks = detail::scn_split(value);
            if (toks.size() != 2 && toks.size() != 3)
                parse_fail(line_no, "method needs: path order [weight]");
            ReductionRequest req;
            if (toks[0] == "tb" || toks[0] == "turbine")
                req.path = ReductionPath::Turbine;
            else if (toks[0] == "cl" || toks[0] == "closed_loop")
                req.path = ReductionPath::ClosedLoop;
            else
                parse_fail(line_no, "unknown reduction path '" + toks[0] + "'");
            req.order = detail::scn_integer(toks[1], line_no);
            if (toks.size() == 3) req.weight_name = toks[2];
            scn.reductions.push_back(std::move(req));
        } else {
            parse_fail(line_no, "key outside of any section");
        }
    }

    if (pending.empty()) throw ValidationError("scenario defines no generators");
    double n = static_cast<double>(pending.size());
    for (const detail::PendingGenerator& pg : pending) {
        auto field = [&](const char* name) -> std::optional<double> {
            auto it = pg.kv.find(name);
            if (it != pg.kv.end()) return it->second;
            return std::nullopt;
        };
        auto require = [&](const char* name) {
            std::optional<double> v = field(name);
            if (!v) parse_fail(pg.line, std::string("missing field '") + name + "'");
            return *v;
        };
        if (pg.type == "droop_inverter") {
            scn.group.generators.push_back(DroopInverter{require("k_p"), require("tau_p")});
            continue;
        }
        std::optional<double> m = field("m"), d = field("d");
        if (!m && m_hat) m = *m_hat / n;
        if (!d && d_hat) d = *d_hat / n;
        if (!m) parse_fail(pg.line, "missing field 'm' (no m_hat to share)");
        if (!d) parse_fail(pg.line, "missing field 'd' (no d_hat to share)");
        if (pg.type == "swing")
            scn.group.generators.push_back(Swing{*m, *d});
        else
            scn.group.generators.push_back(
                SwingTurbine{*m, *d, require("r_inv"), require("tau")});
    }
    scn.group.inertia_override = m_hat;
    scn.group.damping_override = d_hat;
    validate(scn.group);

    if (!edges.empty() && !lap_rows.empty())
        throw ValidationError("network given both as edges and laplacian rows");
    if (!edges.empty()) {
        scn.network = NetworkSpec::from_edges(scn.group.size(), edges, net_lines);
    } else if (!lap_rows.empty()) {
        int nn = static_cast<int>(lap_rows.size());
        if (nn != scn.group.size())
            throw ValidationError("laplacian size must match the generator count");
        Eigen::MatrixXd L(nn, nn);
        for (int i = 0; i < nn; ++i) {
            if (static_cast<int>(lap_rows[static_cast<std::size_t>(i)].size()) != nn)
                throw ValidationError("laplacian rows must have one entry per node");
            for (int j = 0; j < nn; ++j)
                L(i, j) = lap_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        scn.network = NetworkSpec::from_laplacian(L, net_lines);
    }

    if (!weights.count("W_tb")) weights.emplace("W_tb", default_turbine_weight());
    if (!weights.count("W_cl")) weights.emplace("W_cl", default_closed_loop_weight());
    scn.weights = std::move(weights);

    if (!(scn.sim.dt > 0.0) || !(scn.sim.horizon >= scn.sim.dt))
        throw ValidationError("simulation needs dt > 0 and horizon >= dt");
    if (!(scn.eta0 > 0.0)) throw ValidationError("eta0 must be > 0");
    if (scn.grid_size < 2) throw ValidationError("grid_size must be >= 2");
    for (const ReductionRequest& r : scn.reductions) {
        if (r.order < 2) throw ValidationError("reduction orders must be >= 2");
        if (!r.weight_name.empty() && !scn.weights.count(r.weight_name))
            throw ValidationError("unknown weight '" + r.weight_name + "'");
    }
    return scn;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

/// Reduction requests resolved against the named weights.
inline std::vector<MethodSpec> resolve_methods(const Scenario& scn) {
    std::vector<MethodSpec> out;
    for (const ReductionRequest& r : scn.reductions) {
        MethodSpec m;
        m.path = r.path;
        m.order = r.order;
        std::string name = r.weight_name.empty()
                               ? (r.path == ReductionPath::Turbine ? "W_tb" : "W_cl")
                               : r.weight_name;
        m.weight = scn.weights.at(name);
        m.label = path_tag(r.path) + std::to_string(r.order);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace coagg
