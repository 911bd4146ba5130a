// gatesched command line: generate instances, solve/compare scenarios,
// calibrate the conflict kernel, validate instance files.
//
// Exit codes: 0 success, 2 usage/parameter/file errors, 3 infeasible
// instance, 4 calibration failure.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gatesched/gatesched.hpp"

namespace gs = gatesched;

namespace {

gs::ScenarioWeights parse_weights(const std::string& text) {
    double a = 0, b = 0, c = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &a, &b, &c, &tail) != 3)
        throw gs::ParamError("--weights expects three comma-separated numbers, got '" + text + "'");
    gs::ScenarioWeights w{a, b, c};
    if (!gs::weights_valid(w))
        throw gs::ParamError("weights must be nonnegative and not all zero: '" + text + "'");
    return w;
}

std::vector<int> parse_scenarios(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (cur.empty()) throw gs::ParamError("bad --scenarios list: '" + text + "'");
            int s = 0;
            try {
                s = std::stoi(cur);
            } catch (const std::exception&) {
                throw gs::ParamError("bad scenario number: '" + cur + "'");
            }
            if (s < 1 || s > gs::kNumScenarios)
                throw gs::ParamError("scenario must be 1..5, got " + cur);
            out.push_back(s);
            cur.clear();
        } else {
            cur += text[i];
        }
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    double from = 0, to = 0, step = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &from, &to, &step, &tail) != 3 ||
        !(step > 0.0) || to < from)
        throw gs::ParamError("--grid expects FROM:TO:STEP with step > 0, got '" + text + "'");
    std::vector<double> grid;
    for (double s = from; s <= to + 1e-9; s += step) grid.push_back(s);
    return grid;
}

gs::DelayDist parse_delay(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    std::vector<double> ps;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1), cur;
        for (std::size_t i = 0; i <= rest.size(); ++i) {
            if (i == rest.size() || rest[i] == ',') {
                try {
                    ps.push_back(std::stod(cur));
                } catch (const std::exception&) {
                    throw gs::ParamError(flag + ": bad parameter '" + cur + "' in '" + text + "'");
                }
                cur.clear();
            } else {
                cur += rest[i];
            }
        }
    }
    gs::DelayDist d;
    auto param = [&](std::size_t i) { return i < ps.size() ? ps[i] : 0.0; };
    if (family == "const" || family == "constant") {
        d.family = gs::DelayFamily::constant;
        d.p0 = param(0);
    } else if (family == "exp" || family == "exponential") {
        d.family = gs::DelayFamily::exponential;
        d.p0 = param(0);
    } else if (family == "lognormal" || family == "lognorm") {
        d.family = gs::DelayFamily::lognormal;
        d.p0 = param(0);
        d.p1 = param(1);
        d.p2 = param(2);
    } else {
        throw gs::ParamError(flag + ": unknown family '" + family +
                             "' (const:V | exp:RATE | lognormal:MU,SIGMA[,SHIFT])");
    }
    gs::validate_delay_dist(d, flag);
    return d;
}

void print_result(const std::string& label, const gs::ScenarioWeights& w, const gs::SolveResult& r) {
    std::printf("%s: weights (%g, %g, %g)\n", label.c_str(), w.pax, w.taxi, w.robust);
    std::printf("  pax       = %.9g pax-min\n", r.breakdown.pax);
    std::printf("  taxi      = %.9g pax-min\n", r.breakdown.taxi);
    std::printf("  robust    = %.9g pax-min\n", r.breakdown.robust);
    std::printf("  composite = %.9g\n", r.breakdown.composite);
    std::printf("  iterations=%lld best_at=%lld restarts=%d wall=%.3fs\n",
                r.iterations, r.best_iteration, r.restarts_used, r.wall_time);
}

struct TabuFlags {
    long long max_iter = gs::TabuParams{}.max_iter;
    long long stall_limit = gs::TabuParams{}.stall_limit;
    int tenure = gs::TabuParams{}.tenure;
    int exchange_period = gs::TabuParams{}.exchange_period;
    int exchange_candidates = gs::TabuParams{}.exchange_candidates;
    int restarts = gs::TabuParams{}.restarts;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-iter", max_iter, "iteration cap per restart");
        cmd->add_option("--stall-limit", stall_limit, "stop after this many non-improving iterations");
        cmd->add_option("--tenure", tenure, "tabu tenure in iterations");
        cmd->add_option("--exchange-period", exchange_period, "iterations between exchange sampling");
        cmd->add_option("--exchange-candidates", exchange_candidates, "exchange samples per period");
        cmd->add_option("--restarts", restarts, "independent restarts");
    }

    gs::TabuParams params(std::uint64_t seed) const {
        gs::TabuParams p;
        p.max_iter = max_iter;
        p.stall_limit = stall_limit;
        p.tenure = tenure;
        p.exchange_period = exchange_period;
        p.exchange_candidates = exchange_candidates;
        p.restarts = restarts;
        p.rng_seed = seed;
        return p;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"gate assignment optimization toolkit"};
    app.require_subcommand(1);

    // ----- gen -----
    auto* gen = app.add_subcommand("gen", "generate a synthetic hub instance");
    gs::GenParams gp;
    std::string gen_out;
    gen->add_option("--out", gen_out, "output instance file")->required();
    gen->add_option("--seed", gp.rng_seed, "rng seed");
    gen->add_option("--flights", gp.n_flights, "number of flights");
    gen->add_option("--gates", gp.n_gates, "number of gates");
    gen->add_option("--banks", gp.n_banks, "number of arrival banks");
    gen->add_option("--day-span", gp.day_span, "minutes of scheduled operation");
    gen->add_option("--turn-min", gp.turn_min, "minimum turn time, min");
    gen->add_option("--turn-max", gp.turn_max, "maximum turn time, min");
    gen->add_option("--transfer-fraction", gp.transfer_fraction,
                    "share of arriving passengers connecting onward");
    gen->add_option("--seats-min", gp.seats_min, "minimum seats");
    gen->add_option("--seats-max", gp.seats_max, "maximum seats");
    gen->add_option("--concourse-length", gp.concourse_length, "concourse length, m");
    gen->add_option("--checkpoint-pos", gp.checkpoint_pos, "security checkpoint position, m");
    gen->add_option("--bagclaim-pos", gp.bagclaim_pos, "baggage claim position, m");
    gen->add_option("--spot-offset", gp.spot_offset, "spot-to-concourse lane offset, m");
    gen->add_option("--buffer-time", gp.params.buffer_time, "gate separation buffer, min");
    gen->callback([&] {
        const gs::Instance inst = gs::generate(gp);
        gs::save_instance(inst, gen_out);
        std::printf("wrote %d flights / %d gates to %s\n", inst.n_flights(), inst.n_gates(),
                    gen_out.c_str());
    });

    // ----- validate -----
    auto* val = app.add_subcommand("validate", "check an instance file");
    std::string val_path;
    val->add_option("instance", val_path, "instance file")->required();
    val->callback([&] {
        const gs::Instance inst = gs::load_instance(val_path);
        std::printf("ok: %d flights, %d gates, %zu transfer entries\n", inst.n_flights(),
                    inst.n_gates(), inst.transfers.entries().size());
    });

    // ----- solve -----
    auto* solve = app.add_subcommand("solve", "run tabu search under one weight vector");
    std::string solve_inst, solve_weights, solve_out;
    int solve_scenario = 0;
    std::uint64_t solve_seed = 0;
    bool solve_normalize = false;
    TabuFlags solve_tabu;
    solve->add_option("--instance", solve_inst, "instance file")->required();
    solve->add_option("--scenario", solve_scenario, "weight preset 1..5");
    solve->add_option("--weights", solve_weights, "custom weights Wp,Wt,Wr");
    solve->add_option("--seed", solve_seed, "rng seed");
    solve->add_option("--out", solve_out, "write the result file here");
    solve->add_flag("--normalize", solve_normalize,
                    "scale weights by single-objective optima before solving");
    solve_tabu.attach(solve);
    solve->callback([&] {
        if ((solve_scenario != 0) == !solve_weights.empty())
            throw gs::ParamError("pass exactly one of --scenario or --weights");
        const gs::Instance inst = gs::load_instance(solve_inst);
        gs::ScenarioWeights w = solve_scenario != 0 ? gs::scenario_weights(solve_scenario)
                                                    : parse_weights(solve_weights);
        std::string label =
            solve_scenario != 0 ? gs::scenario_label(solve_scenario) : std::string("custom");

        if (solve_normalize) {
            // one pure run per objective; optima rescale the weight vector
            double opt[3];
            for (int s = 1; s <= 3; ++s) {
                const gs::SolveResult r = gs::solve(inst, gs::scenario_weights(s),
                                                    solve_tabu.params(gs::mix_seed(solve_seed, 100 + s)));
                opt[s - 1] = s == 1 ? r.breakdown.pax : s == 2 ? r.breakdown.taxi : r.breakdown.robust;
            }
            w.pax = opt[0] > 0.0 ? w.pax / opt[0] : w.pax;
            w.taxi = opt[1] > 0.0 ? w.taxi / opt[1] : w.taxi;
            w.robust = opt[2] > 0.0 ? w.robust / opt[2] : w.robust;
            std::printf("normalized weights: (%g, %g, %g)\n", w.pax, w.taxi, w.robust);
            label += "-normalized";
        }

        const gs::SolveResult r = gs::solve(inst, w, solve_tabu.params(solve_seed));
        print_result(label, w, r);
        if (!solve_out.empty()) gs::save_result(r, w, label, solve_out);
    });

    // ----- compare -----
    auto* cmp = app.add_subcommand("compare", "run several scenarios and write the report");
    std::string cmp_inst, cmp_scenarios = "1,2,3,4,5", cmp_out, cmp_baseline;
    std::uint64_t cmp_seed = 0;
    TabuFlags cmp_tabu;
    cmp->add_option("--instance", cmp_inst, "instance file")->required();
    cmp->add_option("--scenarios", cmp_scenarios, "comma-separated scenario list");
    cmp->add_option("--seed", cmp_seed, "rng seed (per-scenario seeds derived from it)");
    cmp->add_option("--out", cmp_out, "report directory")->required();
    cmp->add_option("--baseline", cmp_baseline, "assignment file to evaluate as a baseline row");
    cmp_tabu.attach(cmp);
    cmp->callback([&] {
        const gs::Instance inst = gs::load_instance(cmp_inst);
        const std::vector<int> scen = parse_scenarios(cmp_scenarios);
        std::filesystem::create_directories(cmp_out);

        std::vector<gs::ReportEntry> entries;
        if (!cmp_baseline.empty()) {
            const gs::Assignment base = gs::load_assignment(cmp_baseline, inst);
            gs::ReportEntry e;
            e.label = "baseline";
            e.weights = {1.0, 1.0, 1.0};  // raw sum; the row reports unweighted metrics anyway
            e.result.assignment = base;
            e.result.breakdown = gs::obj_composite(inst, base, e.weights);
            e.result.restarts_used = 0;
            entries.push_back(std::move(e));
        }
        for (int s : scen) {
            const gs::ScenarioWeights w = gs::scenario_weights(s);
            const gs::SolveResult r =
                gs::solve(inst, w, cmp_tabu.params(gs::mix_seed(cmp_seed, static_cast<std::uint64_t>(s))));
            print_result(gs::scenario_label(s), w, r);
            gs::save_result(r, w, gs::scenario_label(s), cmp_out + "/result_" + gs::scenario_label(s) + ".json");
            entries.push_back({gs::scenario_label(s), w, r});
        }
        gs::write_report(entries, inst, cmp_out);
        std::printf("report written to %s\n", cmp_out.c_str());
    });

    // ----- calibrate -----
    auto* cal = app.add_subcommand("calibrate", "fit the conflict kernel from a delay model");
    std::string cal_dep, cal_arr, cal_grid = "0:120:5", cal_apply;
    std::uint64_t cal_seed = 0;
    long long cal_samples = 100000;
    cal->add_option("--dep-delay", cal_dep, "departure delay, FAMILY:PARAMS")->required();
    cal->add_option("--arr-delay", cal_arr, "arrival delay, FAMILY:PARAMS")->required();
    cal->add_option("--grid", cal_grid, "separation grid FROM:TO:STEP, min");
    cal->add_option("--samples", cal_samples, "Monte Carlo samples per grid point");
    cal->add_option("--seed", cal_seed, "rng seed");
    cal->add_option("--apply", cal_apply, "instance file whose conflict_fit gets patched");
    cal->callback([&] {
        gs::DelayModel model;
        model.dep_delay = parse_delay(cal_dep, "--dep-delay");
        model.arr_delay = parse_delay(cal_arr, "--arr-delay");
        model.rng_seed = cal_seed;
        const std::vector<double> grid = parse_grid(cal_grid);

        const gs::CalibrationResult res = gs::calibrate_diag(model, grid, cal_samples);
        std::printf("sep,conditional_duration,conflict_probability,mean_overlap\n");
        for (const gs::CalibrationPoint& pt : res.points)
            std::printf("%g,%.9g,%.9g,%.9g\n", pt.sep, pt.estimate.conditional_duration,
                        pt.estimate.conflict_probability, pt.estimate.mean_overlap());
        std::printf("fit: a=%.9g b=%.9g (log R^2=%.4f, points=%d%s)\n", res.fit.fit.scale,
                    res.fit.fit.decay, res.fit.log_r2, res.fit.points_used,
                    res.fit.decay_clamped ? ", decay clamped to 1" : "");

        if (!cal_apply.empty()) {
            gs::Instance inst = gs::load_instance(cal_apply);
            inst.params.conflict_fit = res.fit.fit;
            gs::save_instance(inst, cal_apply);
            std::printf("patched conflict_fit in %s\n", cal_apply.c_str());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gatesched::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const gatesched::FitError& e) {
        std::fprintf(stderr, "calibration failed: %s\n", e.what());
        return 4;
    } catch (const gatesched::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
