// Instance/result serialization (JSON) and the scenario comparison report
// (results.json + summary.csv with declared per-passenger denominators).
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gatesched/core.hpp"
#include "gatesched/objectives.hpp"
#include "gatesched/solve_result.hpp"

namespace gatesched {

namespace detail {

inline nlohmann::json params_to_json(const GlobalParams& p) {
    return {{"v_m", p.walk_speed},
            {"v_taxi", p.taxi_speed},
            {"t_pb", p.pushback_time},
            {"t_buff", p.buffer_time},
            {"t_dly", p.taxi_delay},
            {"conflict_fit", {{"a", p.conflict_fit.scale}, {"b", p.conflict_fit.decay}}}};
}

inline GlobalParams params_from_json(const nlohmann::json& j) {
    GlobalParams p;
    p.walk_speed = j.at("v_m").get<double>();
    p.taxi_speed = j.at("v_taxi").get<double>();
    p.pushback_time = j.at("t_pb").get<double>();
    p.buffer_time = j.at("t_buff").get<double>();
    p.taxi_delay = j.at("t_dly").get<double>();
    p.conflict_fit.scale = j.at("conflict_fit").at("a").get<double>();
    p.conflict_fit.decay = j.at("conflict_fit").at("b").get<double>();
    return p;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParamError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

inline nlohmann::json parse_json(const std::string& text, const std::string& path) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace detail

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : inst.gates)
        gates.push_back({{"id", g.id},
                         {"d_s", g.dist_security},
                         {"d_b", g.dist_bagclaim},
                         {"r", g.ramp_pos}});
    nlohmann::json flights = nlohmann::json::array();
    for (const Flight& f : inst.flights)
        flights.push_back({{"id", f.id},
                           {"t_in", f.in_time},
                           {"t_out", f.out_time},
                           {"n_o", f.origin_pax},
                           {"n_d", f.dest_pax},
                           {"n_in", f.arr_pax},
                           {"n_out", f.dep_pax}});
    nlohmann::json transfers = nlohmann::json::array();
    for (const Transfer& t : inst.transfers.entries())
        transfers.push_back({t.from, t.to, t.pax});
    return {{"params", detail::params_to_json(inst.params)},
            {"gates", gates},
            {"gate_dist", inst.gate_dist},
            {"flights", flights},
            {"transfers", transfers}};
}

inline Instance instance_from_json(const nlohmann::json& j, const std::string& context) {
    Instance inst;
    try {
        inst.params = detail::params_from_json(j.at("params"));
        for (const auto& jg : j.at("gates")) {
            Gate g;
            g.id = jg.at("id").get<int>();
            g.dist_security = jg.at("d_s").get<double>();
            g.dist_bagclaim = jg.at("d_b").get<double>();
            g.ramp_pos = jg.at("r").get<double>();
            inst.gates.push_back(g);
        }
        inst.gate_dist = j.at("gate_dist").get<std::vector<double>>();
        for (const auto& jf : j.at("flights")) {
            Flight f;
            f.id = jf.at("id").get<int>();
            f.in_time = jf.at("t_in").get<double>();
            f.out_time = jf.at("t_out").get<double>();
            f.origin_pax = jf.at("n_o").get<int>();
            f.dest_pax = jf.at("n_d").get<int>();
            f.arr_pax = jf.at("n_in").get<int>();
            f.dep_pax = jf.at("n_out").get<int>();
            inst.flights.push_back(f);
        }
        std::vector<Transfer> ts;
        for (const auto& jt : j.at("transfers")) {
            if (!jt.is_array() || jt.size() != 3)
                throw ParseError(context + ": transfers entries must be [i, k, n] triples");
            ts.push_back({jt[0].get<int>(), jt[1].get<int>(), jt[2].get<int>()});
        }
        inst.transfers = TransferMatrix(std::move(ts));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    detail::write_file(path, instance_to_json(inst).dump(2) + "\n");
}

inline Instance load_instance(const std::string& path) {
    const nlohmann::json j = detail::parse_json(detail::read_file(path), path);
    Instance inst = instance_from_json(j, path);
    const std::vector<std::string> bad = validate_instance(inst);
    if (!bad.empty()) {
        std::string msg = path + ": invalid instance:";
        for (const std::string& b : bad) msg += "\n  - " + b;
        throw ValidationError(msg);
    }
    return inst;
}

inline nlohmann::json result_to_json(const SolveResult& r, const ScenarioWeights& w,
                                     const std::string& label) {
    return {{"scenario", label},
            {"weights", {{"w_pax", w.pax}, {"w_taxi", w.taxi}, {"w_robust", w.robust}}},
            {"assignment", r.assignment.gate_of},
            {"breakdown",
             {{"pax", r.breakdown.pax},
              {"taxi", r.breakdown.taxi},
              {"robust", r.breakdown.robust},
              {"composite", r.breakdown.composite}}},
            {"iterations", r.iterations},
            {"best_iteration", r.best_iteration},
            {"restarts", r.restarts_used},
            {"wall_time_sec", r.wall_time}};
}

inline void save_result(const SolveResult& r, const ScenarioWeights& w, const std::string& label,
                        const std::string& path) {
    detail::write_file(path, result_to_json(r, w, label).dump(2) + "\n");
}

// Reads a gate vector from either a result file ({"assignment": [...]})
// or a bare JSON array; checks totality against the instance.
inline Assignment load_assignment(const std::string& path, const Instance& inst) {
    const nlohmann::json j = detail::parse_json(detail::read_file(path), path);
    Assignment asg;
    try {
        const nlohmann::json& arr = j.is_array() ? j : j.at("assignment");
        asg.gate_of = arr.get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!assignment_total(inst, asg))
        throw ValidationError(path + ": assignment does not map every flight to an existing gate");
    return asg;
}

struct ReportEntry {
    std::string label;
    ScenarioWeights weights;
    SolveResult result;
};

// Writes results.json (full breakdowns + assignments) and summary.csv (one
// row per scenario; per-passenger denominators declared in the header).
inline void write_report(const std::vector<ReportEntry>& entries, const Instance& inst,
                         const std::string& dir) {
    if (entries.empty()) throw ParamError("write_report: no results");
    const PaxTotals totals = total_passengers(inst);
    const long long arrivals = total_arrival_passengers(inst);
    const double transit_den = totals.transit > 0 ? static_cast<double>(totals.transit) : 1.0;
    const double movement_den = totals.movement > 0 ? static_cast<double>(totals.movement) : 1.0;
    const double arrival_den = arrivals > 0 ? static_cast<double>(arrivals) : 1.0;

    nlohmann::json scenarios = nlohmann::json::array();
    std::string csv =
        "# transit_per_pax = pax / transit passengers (sum n_o + n_d + transfers); "
        "taxi_per_pax = taxi / movement legs (sum n_in + n_out); "
        "conflict_per_pax = robust / arrival passengers (sum n_in)\n"
        "scenario,transit_per_pax,taxi_per_pax,conflict_per_pax,composite,iterations,wall_time\n";
    for (const ReportEntry& e : entries) {
        nlohmann::json row = result_to_json(e.result, e.weights, e.label);
        row["transit_per_pax"] = e.result.breakdown.pax / transit_den;
        row["taxi_per_pax"] = e.result.breakdown.taxi / movement_den;
        row["conflict_per_pax"] = e.result.breakdown.robust / arrival_den;
        scenarios.push_back(std::move(row));

        csv += e.label + ',' + detail::fmt_double(e.result.breakdown.pax / transit_den) + ',' +
               detail::fmt_double(e.result.breakdown.taxi / movement_den) + ',' +
               detail::fmt_double(e.result.breakdown.robust / arrival_den) + ',' +
               detail::fmt_double(e.result.breakdown.composite) + ',' +
               std::to_string(e.result.iterations) + ',' +
               detail::fmt_double(e.result.wall_time) + '\n';
    }

    const nlohmann::json doc = {
        {"denominators",
         {{"transit", totals.transit}, {"movement", totals.movement}, {"arrival", arrivals}}},
        {"scenarios", scenarios}};
    detail::write_file(dir + "/results.json", doc.dump(2) + "\n");
    detail::write_file(dir + "/summary.csv", csv);
}

}  // namespace gatesched
