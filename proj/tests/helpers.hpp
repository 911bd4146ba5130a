#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gatesched/core.hpp"
#include "gatesched/feasibility.hpp"
#include "gatesched/generate.hpp"

namespace gatesched::test {

// Unique scratch directory, removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("gatesched_test_" + std::to_string(counter.fetch_add(1)) + "_" +
                std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline bool same_instance(const Instance& a, const Instance& b) {
    if (a.n_gates() != b.n_gates() || a.n_flights() != b.n_flights()) return false;
    for (int g = 0; g < a.n_gates(); ++g) {
        const Gate &x = a.gates[static_cast<std::size_t>(g)], &y = b.gates[static_cast<std::size_t>(g)];
        if (x.id != y.id || x.dist_security != y.dist_security ||
            x.dist_bagclaim != y.dist_bagclaim || x.ramp_pos != y.ramp_pos)
            return false;
    }
    if (a.gate_dist != b.gate_dist) return false;
    for (int f = 0; f < a.n_flights(); ++f) {
        const Flight &x = a.flights[static_cast<std::size_t>(f)], &y = b.flights[static_cast<std::size_t>(f)];
        if (x.id != y.id || x.in_time != y.in_time || x.out_time != y.out_time ||
            x.origin_pax != y.origin_pax || x.dest_pax != y.dest_pax || x.arr_pax != y.arr_pax ||
            x.dep_pax != y.dep_pax)
            return false;
    }
    const auto &ta = a.transfers.entries(), &tb = b.transfers.entries();
    if (ta.size() != tb.size()) return false;
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (ta[i].from != tb[i].from || ta[i].to != tb[i].to || ta[i].pax != tb[i].pax)
            return false;
    const GlobalParams &pa = a.params, &pb = b.params;
    return pa.walk_speed == pb.walk_speed && pa.taxi_speed == pb.taxi_speed &&
           pa.pushback_time == pb.pushback_time && pa.buffer_time == pb.buffer_time &&
           pa.taxi_delay == pb.taxi_delay && pa.conflict_fit.scale == pb.conflict_fit.scale &&
           pa.conflict_fit.decay == pb.conflict_fit.decay;
}

inline Gate make_gate(int id, double d_s, double d_b, double r) {
    return Gate{id, d_s, d_b, r};
}

inline Flight make_flight(int id, double in, double out, int n_o, int n_d, int n_in, int n_out) {
    return Flight{id, in, out, n_o, n_d, n_in, n_out};
}

inline Instance make_instance(std::vector<Gate> gates, std::vector<double> dist,
                              std::vector<Flight> flights, std::vector<Transfer> transfers,
                              GlobalParams params = {}) {
    Instance inst;
    inst.gates = std::move(gates);
    inst.gate_dist = std::move(dist);
    inst.flights = std::move(flights);
    inst.transfers = TransferMatrix(std::move(transfers));
    inst.params = params;
    return inst;
}

// Worked walking example: two flights, one transfer, hand-computable distances.
//   gate 0: d_s=100 d_b=50   gate 1: d_s=200 d_b=150   d(0,1)=300
//   flight 0 (A): n_o=10 n_d=5, 20 pax connect A->B, so n_in=25 n_out=10
//   flight 1 (B): n_o=0  n_d=0, n_in=0 n_out=20
// Times keep A,B gate-compatible under the default 15 min buffer.
inline Instance pax_example() {
    GlobalParams p;
    p.walk_speed = 50.0;
    return make_instance(
        {make_gate(0, 100, 50, 0), make_gate(1, 200, 150, 300)},
        {0, 300, 300, 0},
        {make_flight(0, 600, 640, 10, 5, 25, 10), make_flight(1, 660, 700, 0, 0, 0, 20)},
        {{0, 1, 20}}, p);
}

// Two co-gatable flights separated by 20 min, later one lands 100 pax.
inline Instance robust_example() {
    return make_instance(
        {make_gate(0, 100, 100, 0), make_gate(1, 200, 200, 100)},
        {0, 100, 100, 0},
        {make_flight(0, 600, 640, 10, 10, 10, 10), make_flight(1, 660, 720, 100, 100, 100, 100)},
        {});
}

// Deterministic small instance family for property tests.
inline Instance random_instance(std::uint64_t seed, int flights = 0, int gates = 0) {
    GenParams gp;
    std::mt19937_64 rng(seed);
    gp.n_flights = flights ? flights : 8 + static_cast<int>(rng() % 20);
    gp.n_gates = gates ? gates : 3 + static_cast<int>(rng() % 4);
    gp.n_banks = 2 + static_cast<int>(rng() % 2);
    gp.transfer_fraction = 0.25;
    gp.rng_seed = seed;
    return generate(gp);
}

// Random feasible assignment via per-flight gate shuffling; throws if none found.
inline Assignment random_feasible(const Instance& inst, std::mt19937_64& rng) {
    std::vector<int> order(inst.n_flights());
    for (int i = 0; i < inst.n_flights(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& fa = inst.flights[a];
        const auto& fb = inst.flights[b];
        return std::tie(fa.in_time, fa.out_time, fa.id) < std::tie(fb.in_time, fb.out_time, fb.id);
    });
    Assignment asg;
    asg.gate_of.assign(inst.n_flights(), -1);
    std::vector<std::vector<int>> lists(inst.n_gates());
    std::vector<int> gates(inst.n_gates());
    for (int g = 0; g < inst.n_gates(); ++g) gates[g] = g;
    for (int f : order) {
        std::shuffle(gates.begin(), gates.end(), rng);
        bool placed = false;
        for (int g : gates) {
            if (lists[g].empty() ||
                is_pair_compatible(inst.flights[lists[g].back()], inst.flights[f],
                                   inst.params.buffer_time)) {
                lists[g].push_back(f);
                asg.gate_of[f] = g;
                placed = true;
                break;
            }
        }
        if (!placed) throw InfeasibleError("test fixture: no feasible gate");
    }
    return asg;
}

struct Fixture {
    Instance inst;
    Assignment asg;
};

// First seed at or after seed0 whose generated instance admits a feasible
// assignment; keeps single-fixture tests independent of generator luck.
inline Fixture first_good_fixture(std::uint64_t seed0, int flights, int gates,
                                  std::mt19937_64& rng) {
    for (std::uint64_t s = seed0; s < seed0 + 64; ++s) {
        try {
            Instance inst = random_instance(s, flights, gates);
            Assignment asg = random_feasible(inst, rng);
            return {std::move(inst), std::move(asg)};
        } catch (const Error&) {
        }
    }
    throw std::runtime_error("no usable generator seed in range");
}

}  // namespace gatesched::test
