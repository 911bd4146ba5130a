// Buffer-time separation constraints: two flights may share a gate only if
// their occupancies are separated by at least the buffer time.
#pragma once

#include <tuple>
#include <vector>

#include "gatesched/core.hpp"

namespace gatesched {

// True iff fi and fk can share a gate: one must vacate at least t_buff
// minutes before the other arrives. Separation exactly equal to the buffer
// is compatible. Equivalent to the product form
// (t_out(i) - t_in(k) + t_buff)(t_out(k) - t_in(i) + t_buff) <= 0.
inline bool is_pair_compatible(const Flight& fi, const Flight& fk, double t_buff) {
    return fi.out_time + t_buff <= fk.in_time || fk.out_time + t_buff <= fi.in_time;
}

namespace detail {

// Flights of each gate in id order. Ids follow in_time order, so each list
// is time-sorted; a feasible gate's list has consecutive gaps >= buffer,
// which makes pairwise compatibility checkable on neighbors only.
inline std::vector<std::vector<int>> flights_by_gate(const Instance& inst, const Assignment& asg) {
    std::vector<std::vector<int>> by_gate(static_cast<std::size_t>(inst.n_gates()));
    for (int f = 0; f < inst.n_flights(); ++f)
        by_gate[static_cast<std::size_t>(asg[f])].push_back(f);
    return by_gate;
}

inline bool gate_list_feasible(const Instance& inst, const std::vector<int>& flights) {
    for (std::size_t i = 1; i < flights.size(); ++i) {
        const Flight& prev = inst.flights[static_cast<std::size_t>(flights[i - 1])];
        const Flight& next = inst.flights[static_cast<std::size_t>(flights[i])];
        if (!is_pair_compatible(prev, next, inst.params.buffer_time)) return false;
    }
    return true;
}

}  // namespace detail

inline bool is_feasible(const Instance& inst, const Assignment& asg) {
    for (const auto& list : detail::flights_by_gate(inst, asg))
        if (!detail::gate_list_feasible(inst, list)) return false;
    return true;
}

struct GateViolation {
    int flight_a = 0;
    int flight_b = 0;
    int gate = 0;

    bool operator==(const GateViolation&) const = default;
};

// Every incompatible co-gated pair; empty iff is_feasible.
inline std::vector<GateViolation> gate_violation_pairs(const Instance& inst, const Assignment& asg) {
    std::vector<GateViolation> out;
    const auto by_gate = detail::flights_by_gate(inst, asg);
    for (int g = 0; g < inst.n_gates(); ++g) {
        const auto& list = by_gate[static_cast<std::size_t>(g)];
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t k = i + 1; k < list.size(); ++k) {
                const Flight& fi = inst.flights[static_cast<std::size_t>(list[i])];
                const Flight& fk = inst.flights[static_cast<std::size_t>(list[k])];
                if (!is_pair_compatible(fi, fk, inst.params.buffer_time))
                    out.push_back({list[i], list[k], g});
            }
    }
    return out;
}

}  // namespace gatesched
