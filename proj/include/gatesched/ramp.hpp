// Single-lane ramp abstraction: unimpeded taxi times from gate geometry and
// the pairwise blocking classification behind the taxi-delay objective.
// The spot sits at lane position 0 and each gate at its ramp_pos; an
// arrival taxis inbound over [0, r], a departure pushes back and taxis
// outbound over the same segment.
#pragma once

#include <algorithm>
#include <vector>

#include "gatesched/core.hpp"

namespace gatesched {

enum class MovementKind { arrival, departure };

enum class BlockingKind { none, push_back, taxi };

// One taxi process. Arrivals are inbound, departures outbound; the time
// window covers the whole unimpeded taxi (departures include push-back).
struct Movement {
    int flight = 0;
    MovementKind kind = MovementKind::arrival;
    int gate = 0;
    double window_start = 0.0;
    double window_end = 0.0;
    double lane_extent = 0.0;  // occupies lane segment [0, lane_extent]
    int pax = 0;               // arr_pax for arrivals, dep_pax for departures
};

struct UnimpededTimes {
    double taxi_in = 0.0;   // spot -> gate
    double taxi_out = 0.0;  // push-back + gate -> spot
};

inline UnimpededTimes unimpeded_times(const Gate& gate, const GlobalParams& params) {
    const double travel = gate.ramp_pos / params.taxi_speed;
    return {travel, params.pushback_time + travel};
}

inline Movement make_movement(const Flight& f, const Gate& g, MovementKind kind,
                              const GlobalParams& params) {
    const UnimpededTimes u = unimpeded_times(g, params);
    Movement m;
    m.flight = f.id;
    m.kind = kind;
    m.gate = g.id;
    m.lane_extent = g.ramp_pos;
    if (kind == MovementKind::arrival) {
        m.window_start = f.in_time - u.taxi_in;
        m.window_end = f.in_time;
        m.pax = f.arr_pax;
    } else {
        m.window_start = f.out_time;
        m.window_end = f.out_time + u.taxi_out;
        m.pax = f.dep_pax;
    }
    return m;
}

// Two movements per flight, arrival first.
inline std::vector<Movement> movements(const Instance& inst, const Assignment& asg) {
    std::vector<Movement> out;
    out.reserve(static_cast<std::size_t>(inst.n_flights()) * 2);
    for (const Flight& f : inst.flights) {
        const Gate& g = inst.gates[static_cast<std::size_t>(asg[f.id])];
        out.push_back(make_movement(f, g, MovementKind::arrival, inst.params));
        out.push_back(make_movement(f, g, MovementKind::departure, inst.params));
    }
    return out;
}

namespace detail {

inline bool intervals_overlap(double s1, double e1, double s2, double e2) {
    return std::min(e1, e2) > std::max(s1, s2);
}

// True when `other` crosses gate position `pos` strictly: a movement that
// terminates exactly at the pushing aircraft's gate stops there and does
// not pass through.
inline bool crosses_position(const Movement& other, double pos) {
    return pos > 0.0 && pos < other.lane_extent;
}

inline bool pushback_blocked(const Movement& dep, const Movement& other, const GlobalParams& params) {
    if (dep.kind != MovementKind::departure) return false;
    const double pb_start = dep.window_start;
    const double pb_end = dep.window_start + params.pushback_time;
    return intervals_overlap(pb_start, pb_end, other.window_start, other.window_end) &&
           crosses_position(other, dep.lane_extent);
}

}  // namespace detail

// Classifies the interference between two movements of distinct flights.
// Push-back blocking: a taxiing aircraft crosses a departure's gate
// position while it pushes back. Taxi blocking: opposite directions on the
// lane with overlapping windows and overlapping segments. Symmetric in its
// arguments; push-back takes precedence.
inline BlockingKind taxi_conflict(const Movement& m1, const Movement& m2, const GlobalParams& params) {
    if (m1.flight == m2.flight) return BlockingKind::none;
    if (detail::pushback_blocked(m1, m2, params) || detail::pushback_blocked(m2, m1, params))
        return BlockingKind::push_back;
    if (m1.kind != m2.kind &&
        detail::intervals_overlap(m1.window_start, m1.window_end, m2.window_start, m2.window_end) &&
        std::min(m1.lane_extent, m2.lane_extent) > 0.0)
        return BlockingKind::taxi;
    return BlockingKind::none;
}

struct BlockingPair {
    Movement first;
    Movement second;
    BlockingKind kind = BlockingKind::none;
};

// All unordered movement pairs with a non-none classification; the taxi
// objective's delay term sums (pax1 + pax2) * t_dly over this list.
inline std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Assignment& asg) {
    std::vector<BlockingPair> out;
    const std::vector<Movement> mv = movements(inst, asg);
    for (std::size_t i = 0; i < mv.size(); ++i)
        for (std::size_t k = i + 1; k < mv.size(); ++k) {
            const BlockingKind kind = taxi_conflict(mv[i], mv[k], inst.params);
            if (kind != BlockingKind::none) out.push_back({mv[i], mv[k], kind});
        }
    return out;
}

}  // namespace gatesched
