#pragma once

#include "gatesched/core.hpp"
#include "gatesched/objectives.hpp"

namespace gatesched {

struct SolveResult {
    Assignment assignment;
    ObjectiveBreakdown breakdown;      // full re-evaluation of `assignment`
    long long iterations = 0;          // total across restarts
    long long best_iteration = 0;      // iteration that produced the incumbent
    int restarts_used = 0;
    double wall_time = 0.0;            // seconds; the only nondeterministic field
};

}  // namespace gatesched
