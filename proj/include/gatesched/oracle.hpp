// Exhaustive reference solver for test-scale instances (|G|^|F| bounded).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gatesched/core.hpp"
#include "gatesched/feasibility.hpp"
#include "gatesched/objectives.hpp"
#include "gatesched/solve_result.hpp"

namespace gatesched {

inline constexpr long long kDefaultOracleLimit = 10'000'000;

// Enumerates every total assignment in lexicographic gate-vector order,
// keeps the feasible minimum-composite one; first hit wins ties, which is
// exactly the lexicographically smallest optimal gate vector.
inline SolveResult exhaustive_solve(const Instance& inst, const ScenarioWeights& w,
                                    long long limit = kDefaultOracleLimit) {
    if (!weights_valid(w)) throw ParamError("exhaustive_solve: invalid weights");
    const int f_count = inst.n_flights();
    const int g_count = inst.n_gates();
    if (f_count == 0) throw ParamError("exhaustive_solve: empty instance");
    if (g_count == 0) throw InfeasibleError("exhaustive_solve: no gates");

    double space = 1.0;
    for (int i = 0; i < f_count; ++i) {
        space *= g_count;
        if (space > static_cast<double>(limit))
            throw LimitError("exhaustive_solve: " + std::to_string(g_count) + "^" +
                             std::to_string(f_count) + " assignments exceed limit " +
                             std::to_string(limit));
    }

    Assignment asg;
    asg.gate_of.assign(static_cast<std::size_t>(f_count), 0);
    Assignment best;
    double best_composite = 0.0;
    bool found = false;
    long long enumerated = 0, best_index = -1;

    for (;;) {
        ++enumerated;
        if (is_feasible(inst, asg)) {
            const double composite = obj_composite(inst, asg, w).composite;
            if (!found || composite < best_composite) {
                found = true;
                best = asg;
                best_composite = composite;
                best_index = enumerated - 1;
            }
        }
        // odometer increment, last flight fastest
        int pos = f_count - 1;
        while (pos >= 0 && asg[pos] == g_count - 1) asg[pos--] = 0;
        if (pos < 0) break;
        ++asg[pos];
    }

    if (!found) throw InfeasibleError("exhaustive_solve: no feasible assignment exists");

    SolveResult res;
    res.assignment = best;
    res.breakdown = obj_composite(inst, best, w);
    res.iterations = enumerated;
    res.best_iteration = best_index;
    res.restarts_used = 1;
    res.wall_time = 0.0;
    return res;
}

}  // namespace gatesched
