// Seeded synthetic hub-schedule generator: gates along a linear concourse,
// arrivals clustered into Gaussian banks, transfers flowing bank m to bank
// m+1 under a 30-minute minimum connection.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gatesched/core.hpp"

namespace gatesched {

inline constexpr double kMinConnectMinutes = 30.0;

struct GenParams {
    int n_flights = 60;
    int n_gates = 12;
    int n_banks = 3;
    double day_span = 1080.0;  // minutes of scheduled operation
    double turn_min = 25.0;
    double turn_max = 55.0;
    double transfer_fraction = 0.4;  // share of each arrival's passengers connecting onward
    int seats_min = 80;
    int seats_max = 180;
    double concourse_length = 1200.0;
    double checkpoint_pos = 0.0;     // security checkpoint position along the concourse
    double bagclaim_pos = 1200.0;    // baggage claim position
    double spot_offset = 150.0;      // lane distance from the spot to concourse position 0
    GlobalParams params;             // copied into the generated instance
    std::uint64_t rng_seed = 0;
};

inline void validate_gen_params(const GenParams& p) {
    auto fail = [](const std::string& msg) { throw ParamError("gen params: " + msg); };
    if (p.n_flights < 1) fail("n_flights must be >= 1");
    if (p.n_gates < 1) fail("n_gates must be >= 1");
    if (p.n_banks < 1) fail("n_banks must be >= 1");
    if (!(p.day_span > 0.0)) fail("day_span must be > 0");
    if (!(p.turn_min > 0.0) || p.turn_max < p.turn_min) fail("need 0 < turn_min <= turn_max");
    if (p.transfer_fraction < 0.0 || p.transfer_fraction > 1.0)
        fail("transfer_fraction must be in [0, 1]");
    if (p.seats_min < 0 || p.seats_max < p.seats_min) fail("need 0 <= seats_min <= seats_max");
    if (p.concourse_length < 0.0) fail("concourse_length must be >= 0");
    if (p.checkpoint_pos < 0.0 || p.bagclaim_pos < 0.0) fail("positions must be >= 0");
    if (p.spot_offset < 0.0) fail("spot_offset must be >= 0");
    if (p.transfer_fraction > 0.0 && p.n_banks < 2)
        fail("transfers need at least 2 banks (no valid connection pairs otherwise)");
}

inline Instance generate(const GenParams& p) {
    validate_gen_params(p);
    std::mt19937_64 rng(p.rng_seed);

    Instance inst;
    inst.params = p.params;

    // Gates evenly spaced in the concourse interior; the ramp lane runs
    // parallel, so one position drives walking and taxi distances alike.
    std::vector<double> pos(static_cast<std::size_t>(p.n_gates));
    for (int j = 0; j < p.n_gates; ++j) {
        const double x = p.concourse_length * (j + 1) / (p.n_gates + 1);
        pos[static_cast<std::size_t>(j)] = x;
        inst.gates.push_back({j, std::abs(x - p.checkpoint_pos), std::abs(x - p.bagclaim_pos),
                              p.spot_offset + x});
    }
    inst.gate_dist.resize(static_cast<std::size_t>(p.n_gates) * static_cast<std::size_t>(p.n_gates));
    for (int j = 0; j < p.n_gates; ++j)
        for (int l = 0; l < p.n_gates; ++l)
            inst.gate_dist[static_cast<std::size_t>(j) * static_cast<std::size_t>(p.n_gates) +
                           static_cast<std::size_t>(l)] =
                std::abs(pos[static_cast<std::size_t>(j)] - pos[static_cast<std::size_t>(l)]);

    // Arrival banks: Gaussian clusters centered evenly across the day.
    struct Draft {
        double in, out;
        int seats, bank;
    };
    const double sigma = p.day_span / (5.0 * p.n_banks);
    std::uniform_real_distribution<double> turn_dist(p.turn_min, p.turn_max);
    std::uniform_int_distribution<int> seat_dist(p.seats_min, p.seats_max);
    std::vector<Draft> drafts;
    drafts.reserve(static_cast<std::size_t>(p.n_flights));
    for (int i = 0; i < p.n_flights; ++i) {
        const int bank = i % p.n_banks;
        const double center = p.day_span * (bank + 1) / (p.n_banks + 1);
        std::normal_distribution<double> in_dist(center, sigma);
        const double in = std::clamp(in_dist(rng), 0.0, p.day_span);
        drafts.push_back({in, in + turn_dist(rng), seat_dist(rng), bank});
    }
    std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        return std::tie(a.in, a.out, a.bank) < std::tie(b.in, b.out, b.bank);
    });

    for (int i = 0; i < p.n_flights; ++i) {
        const Draft& d = drafts[static_cast<std::size_t>(i)];
        Flight f;
        f.id = i;
        f.in_time = d.in;
        f.out_time = d.out;
        f.arr_pax = d.seats;  // full flights in and out
        f.dep_pax = d.seats;
        inst.flights.push_back(f);
    }

    // Transfer allocation: each non-final-bank arrival owes
    // floor(fraction * seats) connecting passengers, placed in random
    // chunks on next-bank departures with spare seats and a feasible
    // connection. Unplaceable budgets are an error, not silently dropped.
    std::vector<int> inbound(static_cast<std::size_t>(p.n_flights), 0);
    std::vector<Transfer> transfers;
    for (int i = 0; i < p.n_flights; ++i) {
        const Draft& d = drafts[static_cast<std::size_t>(i)];
        if (d.bank >= p.n_banks - 1) continue;
        int budget = static_cast<int>(p.transfer_fraction * d.seats);
        std::vector<int> receivers;
        for (int k = 0; k < p.n_flights; ++k)
            if (drafts[static_cast<std::size_t>(k)].bank == d.bank + 1 &&
                inst.flights[static_cast<std::size_t>(k)].out_time >=
                    d.in + kMinConnectMinutes)
                receivers.push_back(k);
        while (budget > 0) {
            std::vector<int> open;
            for (int k : receivers)
                if (inbound[static_cast<std::size_t>(k)] <
                    drafts[static_cast<std::size_t>(k)].seats)
                    open.push_back(k);
            if (open.empty())
                throw ParamError("gen: transfer budget of flight " + std::to_string(i) +
                                 " unsatisfiable: no onward flight with capacity");
            const int k = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
            const int cap = drafts[static_cast<std::size_t>(k)].seats -
                            inbound[static_cast<std::size_t>(k)];
            const int chunk =
                std::min({budget, cap, std::uniform_int_distribution<int>(5, 30)(rng)});
            transfers.push_back({i, k, chunk});
            inbound[static_cast<std::size_t>(k)] += chunk;
            budget -= chunk;
        }
    }
    inst.transfers = TransferMatrix(std::move(transfers));

    for (int i = 0; i < p.n_flights; ++i) {
        Flight& f = inst.flights[static_cast<std::size_t>(i)];
        f.dest_pax = f.arr_pax - inst.transfers.total_from(i);
        f.origin_pax = f.dep_pax - inst.transfers.total_to(i);
    }

    const std::vector<std::string> bad = validate_instance(inst);
    if (!bad.empty())
        throw ValidationError("gen: produced invalid instance: " + bad.front() + " (+" +
                              std::to_string(bad.size() - 1) + " more)");
    return inst;
}

}  // namespace gatesched
