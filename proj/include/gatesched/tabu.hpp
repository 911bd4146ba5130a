// Tabu Search over feasible assignments: full insert neighborhood every
// iteration (intensification), sampled interval-exchange moves every
// exchange_period iterations (diversification), attribute tabu memory
// (flight, from_gate) with aspiration, stall/iteration stopping, restarts.
#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gatesched/core.hpp"
#include "gatesched/feasibility.hpp"
#include "gatesched/objectives.hpp"
#include "gatesched/solve_result.hpp"

namespace gatesched {

struct TabuParams {
    long long max_iter = 5000;
    long long stall_limit = 500;  // iterations past the last best before stopping
    int tenure = 10;              // iterations a reversed move stays tabu
    int exchange_period = 50;
    int exchange_candidates = 20;
    int restarts = 1;
    std::uint64_t rng_seed = 0;
};

inline void validate_tabu_params(const TabuParams& p) {
    if (p.max_iter < 1 || p.stall_limit < 1 || p.exchange_period < 1 ||
        p.exchange_candidates < 1 || p.restarts < 1 || p.tenure < 0)
        throw ParamError("tabu params: counts must be >= 1 (tenure >= 0)");
}

struct InsertMove {
    int flight = -1;
    int gate = -1;
    double delta = 0.0;
};

struct ExchangeMove {
    int gate_a = -1, gate_b = -1;
    double t1 = 0.0, t2 = 0.0;
    double delta = 0.0;
    std::vector<std::pair<int, int>> moves;  // (flight, new_gate)
};

namespace detail {

// First-fit in flight time order; `gate_order` fills the candidate gate
// order for one flight. Succeeds whenever any feasible assignment exists
// (intervals expanded by the buffer form an interval graph, for which
// left-endpoint-order greedy coloring is optimal under any color order).
template <class GateOrder>
Assignment first_fit(const Instance& inst, GateOrder&& gate_order) {
    const double buff = inst.params.buffer_time;
    Assignment asg;
    asg.gate_of.assign(static_cast<std::size_t>(inst.n_flights()), -1);
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(inst.n_gates()));
    std::vector<int> order;
    for (const Flight& f : inst.flights) {
        gate_order(order);
        int chosen = -1;
        for (int g : order) {
            const std::vector<int>& list = lists[static_cast<std::size_t>(g)];
            // appended flights have the latest t_in, so the last occupant
            // alone decides compatibility
            if (list.empty() ||
                is_pair_compatible(inst.flights[static_cast<std::size_t>(list.back())], f, buff)) {
                chosen = g;
                break;
            }
        }
        if (chosen < 0)
            throw InfeasibleError("no feasible gate for flight " + std::to_string(f.id) +
                                  " (t_in=" + std::to_string(f.in_time) +
                                  "): schedule needs more simultaneous gates");
        asg[f.id] = chosen;
        lists[static_cast<std::size_t>(chosen)].push_back(f.id);
    }
    return asg;
}

inline Assignment random_first_fit(const Instance& inst, std::mt19937_64& rng) {
    std::vector<int> base(static_cast<std::size_t>(inst.n_gates()));
    std::iota(base.begin(), base.end(), 0);
    return first_fit(inst, [&](std::vector<int>& order) {
        order = base;
        std::shuffle(order.begin(), order.end(), rng);
    });
}

// All flight occupancy boundaries (t_in and t_out), sorted; exchange
// windows snap to these so every distinct group partition is reachable.
inline std::vector<double> occupancy_boundaries(const Instance& inst) {
    std::vector<double> b;
    b.reserve(static_cast<std::size_t>(2 * inst.n_flights()));
    for (const Flight& f : inst.flights) {
        b.push_back(f.in_time);
        b.push_back(f.out_time);
    }
    std::sort(b.begin(), b.end());
    return b;
}

// Samples n_candidates exchange moves against the evaluator's current
// state; keeps only non-empty, feasibility-preserving swaps. Consumes a
// fixed number of rng draws per candidate.
inline void sample_exchanges(const DeltaEvaluator& ev, const std::vector<double>& bounds,
                             int n_candidates, std::mt19937_64& rng,
                             std::vector<ExchangeMove>& out) {
    out.clear();
    const Instance& inst = ev.instance();
    const int g_count = inst.n_gates();
    const int b_count = static_cast<int>(bounds.size());
    if (g_count < 2 || b_count < 2) return;

    std::uniform_int_distribution<int> gate_dist(0, g_count - 1);
    std::uniform_int_distribution<int> gate_dist2(0, g_count - 2);
    std::uniform_int_distribution<int> bound_dist(0, b_count - 1);
    std::uniform_int_distribution<int> bound_dist2(0, b_count - 2);

    for (int c = 0; c < n_candidates; ++c) {
        int ga = gate_dist(rng);
        int gb = gate_dist2(rng);
        if (gb >= ga) ++gb;
        if (ga > gb) std::swap(ga, gb);
        int bi = bound_dist(rng);
        int bj = bound_dist2(rng);
        if (bj >= bi) ++bj;
        const double t1 = std::min(bounds[static_cast<std::size_t>(bi)],
                                   bounds[static_cast<std::size_t>(bj)]);
        const double t2 = std::max(bounds[static_cast<std::size_t>(bi)],
                                   bounds[static_cast<std::size_t>(bj)]);

        ExchangeMove ex;
        ex.gate_a = ga;
        ex.gate_b = gb;
        ex.t1 = t1;
        ex.t2 = t2;
        auto in_window = [&](int f) {
            const Flight& fl = inst.flights[static_cast<std::size_t>(f)];
            return fl.in_time >= t1 && fl.out_time <= t2;
        };
        for (int f : ev.gate_lists()[static_cast<std::size_t>(ga)])
            if (in_window(f)) ex.moves.emplace_back(f, gb);
        for (int f : ev.gate_lists()[static_cast<std::size_t>(gb)])
            if (in_window(f)) ex.moves.emplace_back(f, ga);
        if (ex.moves.empty()) continue;
        if (!ev.moves_feasible(ex.moves)) continue;
        ex.delta = ev.moves_delta(ex.moves);
        out.push_back(std::move(ex));
    }
}

}  // namespace detail

// Deterministic greedy first-fit start: flights in time order, lowest
// compatible gate index. Throws InfeasibleError naming the first
// unplaceable flight.
inline Assignment initial_solution(const Instance& inst) {
    std::vector<int> base(static_cast<std::size_t>(inst.n_gates()));
    std::iota(base.begin(), base.end(), 0);
    return detail::first_fit(inst, [&](std::vector<int>& order) { order = base; });
}

// Full feasibility-filtered insert neighborhood with deltas, ordered by
// (flight, gate).
inline std::vector<InsertMove> insert_neighbors(const Instance& inst, const Assignment& asg,
                                                const ScenarioWeights& w) {
    DeltaEvaluator ev(inst, w);
    ev.reset(asg);
    std::vector<InsertMove> out;
    std::vector<std::pair<int, double>> tmp;
    for (int f = 0; f < inst.n_flights(); ++f) {
        ev.insert_deltas(f, tmp);
        for (auto [g, d] : tmp) out.push_back({f, g, d});
    }
    return out;
}

// Sampled interval-exchange neighborhood (see detail::sample_exchanges).
inline std::vector<ExchangeMove> exchange_neighbors(const Instance& inst, const Assignment& asg,
                                                    const ScenarioWeights& w, int n_candidates,
                                                    std::mt19937_64& rng) {
    DeltaEvaluator ev(inst, w);
    ev.reset(asg);
    std::vector<ExchangeMove> out;
    detail::sample_exchanges(ev, detail::occupancy_boundaries(inst), n_candidates, rng, out);
    return out;
}

namespace detail {

struct RunResult {
    Assignment best;
    double best_composite = 0.0;
    long long iterations = 0;
    long long best_iteration = 0;
};

inline RunResult tabu_run(DeltaEvaluator& ev, const Assignment& start, const TabuParams& params,
                          const std::vector<double>& bounds, std::mt19937_64& rng) {
    const Instance& inst = ev.instance();
    const int g_count = inst.n_gates();
    ev.reset(start);

    RunResult run;
    run.best = start;
    run.best_composite = ev.composite();

    // tabu_until[f*G+g] >= iter means "f back to g" is currently tabu
    std::vector<long long> tabu_until(
        static_cast<std::size_t>(inst.n_flights()) * static_cast<std::size_t>(g_count), 0);

    std::vector<std::pair<int, double>> deltas;
    std::vector<ExchangeMove> exchanges;
    long long stall = 0;

    for (long long iter = 1; iter <= params.max_iter; ++iter) {
        const double cur = ev.composite();
        bool have_admissible = false, have_fallback = false;
        InsertMove pick_ins, fb_ins;
        const ExchangeMove* pick_ex = nullptr;
        const ExchangeMove* fb_ex = nullptr;
        double pick_delta = 0.0, fb_delta = 0.0;

        auto consider = [&](double delta, bool tabu, const InsertMove* ins, const ExchangeMove* ex) {
            const bool admissible = !tabu || cur + delta < run.best_composite;  // aspiration
            if (admissible) {
                if (!have_admissible || delta < pick_delta) {
                    have_admissible = true;
                    pick_delta = delta;
                    if (ins) {
                        pick_ins = *ins;
                        pick_ex = nullptr;
                    } else {
                        pick_ex = ex;
                    }
                }
            } else if (!have_fallback || delta < fb_delta) {
                have_fallback = true;
                fb_delta = delta;
                if (ins) {
                    fb_ins = *ins;
                    fb_ex = nullptr;
                } else {
                    fb_ex = ex;
                }
            }
        };

        bool any_insert = false;
        for (int f = 0; f < inst.n_flights(); ++f) {
            ev.insert_deltas(f, deltas);
            for (auto [g, d] : deltas) {
                any_insert = true;
                const InsertMove mv{f, g, d};
                const bool tabu =
                    tabu_until[static_cast<std::size_t>(f) * static_cast<std::size_t>(g_count) +
                               static_cast<std::size_t>(g)] >= iter;
                consider(d, tabu, &mv, nullptr);
            }
        }

        // exchanges on the diversification cadence, and also whenever the
        // insert neighborhood is empty (fully packed gates)
        if (iter % params.exchange_period == 0 || !any_insert) {
            sample_exchanges(ev, bounds, params.exchange_candidates, rng, exchanges);
            for (const ExchangeMove& ex : exchanges) {
                bool tabu = false;
                for (auto [fl, g] : ex.moves) {
                    if (tabu_until[static_cast<std::size_t>(fl) * static_cast<std::size_t>(g_count) +
                                   static_cast<std::size_t>(g)] >= iter) {
                        tabu = true;
                        break;
                    }
                }
                consider(ex.delta, tabu, nullptr, &ex);
            }
        }

        if (!have_admissible && !have_fallback) break;  // nowhere to go

        // when everything is tabu and nothing aspirates, take the least
        // bad tabu move rather than cycling in place
        const bool use_fallback = !have_admissible;
        const double applied_delta = use_fallback ? fb_delta : pick_delta;
        if (use_fallback) {
            pick_ins = fb_ins;
            pick_ex = fb_ex;
        }

        if (pick_ex) {
            for (auto [fl, g] : pick_ex->moves) {
                const int from = ev.assignment()[fl];
                tabu_until[static_cast<std::size_t>(fl) * static_cast<std::size_t>(g_count) +
                           static_cast<std::size_t>(from)] = iter + params.tenure;
            }
            ev.apply_moves(pick_ex->moves, applied_delta);
        } else {
            const int from = ev.assignment()[pick_ins.flight];
            tabu_until[static_cast<std::size_t>(pick_ins.flight) * static_cast<std::size_t>(g_count) +
                       static_cast<std::size_t>(from)] = iter + params.tenure;
            ev.apply_insert(pick_ins.flight, pick_ins.gate, applied_delta);
        }
        run.iterations = iter;

        // improvements must clear a drift guard; candidates are then
        // re-evaluated in full so best-so-far holds exact values only
        const double tol = 1e-9 + 1e-10 * std::abs(run.best_composite);
        bool improved = false;
        if (ev.composite() < run.best_composite - tol) {
            const double truth = ev.resync();
            if (truth < run.best_composite) {
                run.best_composite = truth;
                run.best = ev.assignment();
                run.best_iteration = iter;
                stall = 0;
                improved = true;
            }
        }
        if (!improved && ++stall >= params.stall_limit) break;
    }
    return run;
}

}  // namespace detail

// Full Tabu Search with restarts. Restart 0 starts from the deterministic
// greedy solution; later restarts from randomized first-fit. The reported
// breakdown is a full re-evaluation of the returned assignment.
inline SolveResult solve(const Instance& inst, const ScenarioWeights& w, const TabuParams& params) {
    if (!weights_valid(w)) throw ParamError("solve: weights must be nonnegative, not all zero");
    validate_tabu_params(params);
    const auto t0 = std::chrono::steady_clock::now();

    DeltaEvaluator ev(inst, w);
    const std::vector<double> bounds = detail::occupancy_boundaries(inst);

    detail::RunResult best;
    bool have_best = false;
    long long total_iters = 0;

    for (int r = 0; r < params.restarts; ++r) {
        std::mt19937_64 rng(mix_seed(params.rng_seed, static_cast<std::uint64_t>(r)));
        const Assignment start = r == 0 ? initial_solution(inst) : detail::random_first_fit(inst, rng);
        detail::RunResult run = detail::tabu_run(ev, start, params, bounds, rng);
        total_iters += run.iterations;
        if (!have_best || run.best_composite < best.best_composite) {
            best = std::move(run);
            have_best = true;
        }
    }

    SolveResult res;
    res.assignment = best.best;
    res.breakdown = obj_composite(inst, best.best, w);
    res.iterations = total_iters;
    res.best_iteration = best.best_iteration;
    res.restarts_used = params.restarts;
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace gatesched
