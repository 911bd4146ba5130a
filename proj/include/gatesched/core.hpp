// Domain types for gate assignment instances: gates, flights (aircraft
// turns), transfer passengers, global parameters, assignments, scenario
// weights, plus instance validation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gatesched {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters (generator, delay model, weights, CLI).
struct ParamError : Error {
    using Error::Error;
};

// An instance whose data violates a structural invariant.
struct ValidationError : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

// No feasible gate / no feasible assignment exists.
struct InfeasibleError : Error {
    using Error::Error;
};

// Conflict-model fit cannot be computed (too few usable points).
struct FitError : Error {
    using Error::Error;
};

// Problem too large for exhaustive enumeration.
struct LimitError : Error {
    using Error::Error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent seed for substream `stream` of `seed`. Used for
// solver restarts, per-scenario runs and per-grid-point Monte Carlo draws,
// so that adding streams never perturbs existing ones.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

struct Gate {
    int id = 0;
    double dist_security = 0.0;  // checkpoint -> gate walking distance, m
    double dist_bagclaim = 0.0;  // gate -> baggage claim walking distance, m
    double ramp_pos = 0.0;       // spot -> gate distance along the ramp lane, m
};

// One aircraft turn: an arrival movement followed by a departure movement
// at the same gate. Times are real-valued minutes since midnight of the
// schedule day; turns spanning midnight simply have out_time > 1440.
struct Flight {
    int id = 0;
    double in_time = 0.0;   // scheduled gate-in, min
    double out_time = 0.0;  // scheduled gate-out, min
    int origin_pax = 0;     // start their journey here
    int dest_pax = 0;       // end their journey here
    int arr_pax = 0;        // on board during taxi-in (dest + inbound transfers)
    int dep_pax = 0;        // on board during taxi-out (origin + outbound transfers)
};

struct Transfer {
    int from = 0;  // arrive on this flight
    int to = 0;    // depart on this flight
    int pax = 0;
};

// Sparse directed transfer counts. Entries are canonicalized on
// construction: sorted by (from, to), duplicates merged, zero counts
// dropped.
class TransferMatrix {
public:
    TransferMatrix() = default;

    explicit TransferMatrix(std::vector<Transfer> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const Transfer& a, const Transfer& b) {
            return std::pair{a.from, a.to} < std::pair{b.from, b.to};
        });
        std::vector<Transfer> merged;
        merged.reserve(entries_.size());
        for (const Transfer& t : entries_) {
            if (!merged.empty() && merged.back().from == t.from && merged.back().to == t.to) {
                merged.back().pax += t.pax;
            } else {
                merged.push_back(t);
            }
        }
        std::erase_if(merged, [](const Transfer& t) { return t.pax == 0; });
        entries_ = std::move(merged);
    }

    const std::vector<Transfer>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Passengers arriving on `from` and departing on `to`.
    int count(int from, int to) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{from, to},
                                   [](const Transfer& t, const std::pair<int, int>& key) {
                                       return std::pair{t.from, t.to} < key;
                                   });
        if (it != entries_.end() && it->from == from && it->to == to) return it->pax;
        return 0;
    }

    // Sum over k of n_{flight,k} (outbound connections of an arrival).
    int total_from(int flight) const {
        int sum = 0;
        for (auto it = first_of(flight); it != entries_.end() && it->from == flight; ++it)
            sum += it->pax;
        return sum;
    }

    // Sum over i of n_{i,flight} (inbound connections of a departure).
    int total_to(int flight) const {
        int sum = 0;
        for (const Transfer& t : entries_)
            if (t.to == flight) sum += t.pax;
        return sum;
    }

private:
    std::vector<Transfer>::const_iterator first_of(int flight) const {
        return std::lower_bound(entries_.begin(), entries_.end(), flight,
                                [](const Transfer& t, int f) { return t.from < f; });
    }

    std::vector<Transfer> entries_;
};

// Exponential gate-conflict duration kernel: expected conflict minutes at
// gate separation s is scale * decay^s.
struct ConflictFit {
    double scale = 0.0;  // expected conflict duration at zero separation, min
    double decay = 1.0;  // per-minute decay base, in (0, 1]
};

struct GlobalParams {
    double walk_speed = 60.0;     // passenger moving speed, m/min
    double taxi_speed = 500.0;    // aircraft ramp taxi speed, m/min
    double pushback_time = 2.0;   // push-back duration, min
    double buffer_time = 15.0;    // required gate separation, min
    double taxi_delay = 1.0;      // delay per blocking event, min
    ConflictFit conflict_fit{12.0, 0.9};
};

struct ScenarioWeights {
    double pax = 0.0;
    double taxi = 0.0;
    double robust = 0.0;
};

inline bool weights_valid(const ScenarioWeights& w) {
    return w.pax >= 0.0 && w.taxi >= 0.0 && w.robust >= 0.0 &&
           (w.pax > 0.0 || w.taxi > 0.0 || w.robust > 0.0);
}

inline constexpr int kNumScenarios = 5;

// The five benchmark weight presets: single-objective scenarios 1-3, the
// transit/taxi balance 4, and the all-objective balance 5.
inline ScenarioWeights scenario_weights(int scenario) {
    switch (scenario) {
        case 1: return {1.0, 0.0, 0.0};
        case 2: return {0.0, 1.0, 0.0};
        case 3: return {0.0, 0.0, 1.0};
        case 4: return {0.5, 0.5, 0.0};
        case 5: return {0.4, 0.4, 0.2};
    }
    throw ParamError("scenario must be 1..5, got " + std::to_string(scenario));
}

inline std::string scenario_label(int scenario) { return "S" + std::to_string(scenario); }

// Immutable problem description. Flights are sorted by in_time (ties by
// out_time, then id) and ids equal positions, so id order is time order.
struct Instance {
    std::vector<Gate> gates;
    std::vector<double> gate_dist;  // row-major |G| x |G| walking distances, m
    std::vector<Flight> flights;
    TransferMatrix transfers;
    GlobalParams params;

    int n_gates() const { return static_cast<int>(gates.size()); }
    int n_flights() const { return static_cast<int>(flights.size()); }

    double gate_distance(int j, int l) const {
        return gate_dist[static_cast<std::size_t>(j) * gates.size() + static_cast<std::size_t>(l)];
    }
};

// Total map flight id -> gate id; the solver's decision variable.
struct Assignment {
    std::vector<int> gate_of;

    int operator[](int flight) const { return gate_of[static_cast<std::size_t>(flight)]; }
    int& operator[](int flight) { return gate_of[static_cast<std::size_t>(flight)]; }
    int size() const { return static_cast<int>(gate_of.size()); }

    bool operator==(const Assignment&) const = default;
};

// True iff `asg` maps every flight of `inst` to an existing gate.
inline bool assignment_total(const Instance& inst, const Assignment& asg) {
    if (asg.size() != inst.n_flights()) return false;
    for (int g : asg.gate_of)
        if (g < 0 || g >= inst.n_gates()) return false;
    return true;
}

// Checks every structural invariant; returns one message per violation
// (empty = ok). Violations are data, not failures.
inline std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> bad;
    const int n_gates = inst.n_gates();
    const int n_flights = inst.n_flights();

    for (int j = 0; j < n_gates; ++j) {
        const Gate& g = inst.gates[static_cast<std::size_t>(j)];
        if (g.id != j)
            bad.push_back("gate " + std::to_string(j) + ": id " + std::to_string(g.id) +
                          " does not match position");
        if (g.dist_security < 0.0) bad.push_back("gate " + std::to_string(j) + ": d_s < 0");
        if (g.dist_bagclaim < 0.0) bad.push_back("gate " + std::to_string(j) + ": d_b < 0");
        if (g.ramp_pos < 0.0) bad.push_back("gate " + std::to_string(j) + ": r < 0");
    }

    if (inst.gate_dist.size() != static_cast<std::size_t>(n_gates) * static_cast<std::size_t>(n_gates)) {
        bad.push_back("gate_dist: expected " + std::to_string(n_gates * n_gates) + " entries, got " +
                      std::to_string(inst.gate_dist.size()));
    } else {
        for (int j = 0; j < n_gates; ++j) {
            if (inst.gate_distance(j, j) != 0.0)
                bad.push_back("gate_dist: nonzero diagonal at gate " + std::to_string(j));
            for (int l = 0; l < n_gates; ++l) {
                if (inst.gate_distance(j, l) < 0.0) {
                    bad.push_back("gate_dist: negative entry (" + std::to_string(j) + "," +
                                  std::to_string(l) + ")");
                }
                if (l > j && inst.gate_distance(j, l) != inst.gate_distance(l, j))
                    bad.push_back("gate_dist: asymmetric at (" + std::to_string(j) + "," +
                                  std::to_string(l) + ")");
            }
        }
    }

    for (int i = 0; i < n_flights; ++i) {
        const Flight& f = inst.flights[static_cast<std::size_t>(i)];
        const std::string tag = "flight " + std::to_string(i);
        if (f.id != i) bad.push_back(tag + ": id " + std::to_string(f.id) + " does not match position");
        if (!(f.out_time > f.in_time)) bad.push_back(tag + ": t_out > t_in violated");
        if (f.origin_pax < 0 || f.dest_pax < 0 || f.arr_pax < 0 || f.dep_pax < 0)
            bad.push_back(tag + ": negative passenger count");
        if (f.arr_pax < f.dest_pax) bad.push_back(tag + ": n_in < n_d");
        if (f.dep_pax < f.origin_pax) bad.push_back(tag + ": n_out < n_o");
        if (i > 0) {
            const Flight& p = inst.flights[static_cast<std::size_t>(i - 1)];
            if (std::pair{p.in_time, p.out_time} > std::pair{f.in_time, f.out_time})
                bad.push_back(tag + ": not sorted by (t_in, t_out)");
        }
    }

    for (const Transfer& t : inst.transfers.entries()) {
        const std::string tag = "transfer (" + std::to_string(t.from) + "," + std::to_string(t.to) + ")";
        if (t.from < 0 || t.from >= n_flights || t.to < 0 || t.to >= n_flights) {
            bad.push_back(tag + ": flight id out of range");
            continue;
        }
        if (t.pax < 0) bad.push_back(tag + ": negative count");
        if (t.from == t.to) bad.push_back(tag + ": self transfer");
        else if (t.pax > 0 &&
                 !(inst.flights[static_cast<std::size_t>(t.from)].in_time <
                   inst.flights[static_cast<std::size_t>(t.to)].out_time))
            bad.push_back(tag + ": connection departs before arrival (t_in(i) < t_out(k) violated)");
    }

    for (int i = 0; i < n_flights; ++i) {
        const Flight& f = inst.flights[static_cast<std::size_t>(i)];
        const int out_conn = inst.transfers.total_from(i);
        const int in_conn = inst.transfers.total_to(i);
        if (f.arr_pax != f.dest_pax + out_conn)
            bad.push_back("flight " + std::to_string(i) + ": n_in (" + std::to_string(f.arr_pax) +
                          ") != n_d + outbound transfers (" + std::to_string(f.dest_pax + out_conn) + ")");
        if (f.dep_pax != f.origin_pax + in_conn)
            bad.push_back("flight " + std::to_string(i) + ": n_out (" + std::to_string(f.dep_pax) +
                          ") != n_o + inbound transfers (" + std::to_string(f.origin_pax + in_conn) + ")");
    }

    const GlobalParams& p = inst.params;
    if (!(p.walk_speed > 0.0)) bad.push_back("params: v_m must be > 0");
    if (!(p.taxi_speed > 0.0)) bad.push_back("params: v_taxi must be > 0");
    if (p.pushback_time < 0.0) bad.push_back("params: t_pb must be >= 0");
    if (p.buffer_time < 0.0) bad.push_back("params: t_buff must be >= 0");
    if (p.taxi_delay < 0.0) bad.push_back("params: t_dly must be >= 0");
    if (p.conflict_fit.scale < 0.0) bad.push_back("params: conflict fit a must be >= 0");
    if (!(p.conflict_fit.decay > 0.0 && p.conflict_fit.decay <= 1.0))
        bad.push_back("params: conflict fit b must be in (0, 1]");

    return bad;
}

struct PaxTotals {
    long long transit = 0;   // O&D walkers plus each transfer counted once
    long long movement = 0;  // every arrival and departure leg
};

inline PaxTotals total_passengers(const Instance& inst) {
    PaxTotals t;
    for (const Flight& f : inst.flights) {
        t.transit += f.origin_pax + f.dest_pax;
        t.movement += f.arr_pax + f.dep_pax;
    }
    for (const Transfer& tr : inst.transfers.entries()) t.transit += tr.pax;
    return t;
}

// Denominator for the per-passenger conflict metric: total arrival
// passengers sum n_in.
inline long long total_arrival_passengers(const Instance& inst) {
    long long sum = 0;
    for (const Flight& f : inst.flights) sum += f.arr_pax;
    return sum;
}

}  // namespace gatesched
