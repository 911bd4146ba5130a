#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "gatesched/objectives.hpp"
#include "gatesched/oracle.hpp"
#include "helpers.hpp"

using namespace gatesched;
using namespace gatesched::test;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// decay^n by repeated multiplication, independent of std::pow
double pow_by_mult(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

TEST_CASE("walking objective: hand-computed two-flight example", "[objectives]") {
    const auto inst = pax_example();  // v_m = 50
    // A at gate 0, B at gate 1:
    //   A origin 10 * 100 + dest 5 * 50 = 1250 m, transfer 20 * 300 = 6000 m
    CHECK(obj_pax(inst, Assignment{{0, 1}}) == Catch::Approx(145.0).epsilon(1e-12));
    // co-gated: transfer walk vanishes
    CHECK(obj_pax(inst, Assignment{{0, 0}}) == Catch::Approx(25.0).epsilon(1e-12));
    // B's gate alone does not matter (B carries no O&D pax)
    CHECK(obj_pax(inst, Assignment{{1, 1}}) ==
          Catch::Approx((10 * 200 + 5 * 150) / 50.0).epsilon(1e-12));
}

TEST_CASE("walking objective is zero without passengers", "[objectives]") {
    auto inst = pax_example();
    for (Flight& f : inst.flights) f = make_flight(f.id, f.in_time, f.out_time, 0, 0, 0, 0);
    inst.transfers = TransferMatrix(std::vector<Transfer>{});
    CHECK(obj_pax(inst, Assignment{{0, 1}}) == 0.0);
}

TEST_CASE("taxi objective: unimpeded movement example", "[objectives]") {
    GlobalParams p;
    p.taxi_speed = 300.0;
    p.pushback_time = 1.0;
    // u_in = 2, u_out = 3; 100 pax in, 120 out -> 100*2 + 120*3 = 560
    auto inst = make_instance({make_gate(0, 0, 0, 600)}, {0},
                              {make_flight(0, 100, 200, 0, 0, 100, 120)}, {}, p);
    CHECK(obj_taxi(inst, Assignment{{0}}) == Catch::Approx(560.0).epsilon(1e-12));
}

TEST_CASE("taxi objective: blocking surcharge", "[objectives]") {
    GlobalParams p;
    p.taxi_speed = 100.0;
    p.pushback_time = 1.0;
    p.taxi_delay = 1.0;
    // departure (50 pax) pushes back [600,601]; arrival (100 pax) crosses its
    // gate position in that window -> one blocking event
    auto inst = make_instance(
        {make_gate(0, 0, 0, 100), make_gate(1, 0, 0, 200)}, {0, 100, 100, 0},
        {make_flight(0, 500, 600, 0, 0, 0, 50), make_flight(1, 601.5, 700, 0, 0, 100, 0)}, {}, p);
    const Assignment asg{{0, 1}};
    // linear terms: 50 * u_out(g0) + 100 * u_in(g1) = 50*2 + 100*2 = 300
    CHECK(obj_taxi(inst, asg) == Catch::Approx(450.0).epsilon(1e-12));  // +150 delay
    inst.params.taxi_delay = 0.0;
    CHECK(obj_taxi(inst, asg) == Catch::Approx(300.0).epsilon(1e-12));
    inst.params.taxi_delay = 2.5;
    CHECK(obj_taxi(inst, asg) == Catch::Approx(300.0 + 150.0 * 2.5).epsilon(1e-12));
}

TEST_CASE("robustness objective: co-gated exponential exposure", "[objectives]") {
    auto inst = robust_example();
    inst.params.conflict_fit = {10.0, 0.9};
    // separation 660 - 640 = 20 min, 100 arriving pax on the later flight
    const double expected = 100.0 * 10.0 * pow_by_mult(0.9, 20);
    CHECK(expected == Catch::Approx(121.5766545905693).epsilon(1e-12));  // frozen
    CHECK(obj_robust(inst, Assignment{{0, 0}}) == Catch::Approx(expected).epsilon(1e-12));
    // different gates: no shared-gate exposure
    CHECK(obj_robust(inst, Assignment{{0, 1}}) == 0.0);
    // zero scale turns the objective off
    inst.params.conflict_fit = {0.0, 0.9};
    CHECK(obj_robust(inst, Assignment{{0, 0}}) == 0.0);
}

TEST_CASE("robustness clamps negative separations to zero", "[objectives]") {
    auto inst = robust_example();
    inst.params.conflict_fit = {10.0, 0.9};
    inst.flights[1].in_time = 630.0;  // overlaps the earlier flight
    CHECK(obj_robust(inst, Assignment{{0, 0}}) == Catch::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("robustness sums all co-gated ordered pairs, not just neighbours", "[objectives]") {
    GlobalParams p;
    p.conflict_fit = {10.0, 0.9};
    auto inst = make_instance(
        {make_gate(0, 0, 0, 0)}, {0},
        {make_flight(0, 0, 100, 0, 0, 0, 0), make_flight(1, 120, 220, 0, 10, 10, 0),
         make_flight(2, 240, 340, 0, 20, 20, 0)},
        {}, p);
    // pairs: (0,1) sep 20, (0,2) sep 140, (1,2) sep 20
    const double expected = 10 * 10 * pow_by_mult(0.9, 20) + 20 * 10 * pow_by_mult(0.9, 140) +
                            20 * 10 * pow_by_mult(0.9, 20);
    CHECK(obj_robust(inst, Assignment{{0, 0, 0}}) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("robustness decreases when a pair is separated further", "[objectives]") {
    auto inst = robust_example();
    inst.params.conflict_fit = {10.0, 0.9};
    double prev = obj_robust(inst, Assignment{{0, 0}});
    for (double shift : {10.0, 20.0, 50.0, 200.0}) {
        auto later = inst;
        later.flights[1].in_time += shift;
        later.flights[1].out_time += shift;
        const double cur = obj_robust(later, Assignment{{0, 0}});
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("composite weights the three parts", "[objectives]") {
    const auto inst = pax_example();
    const Assignment asg{{0, 1}};
    const auto b = obj_composite(inst, asg, {0.4, 0.4, 0.2});
    CHECK(b.composite ==
          Catch::Approx(0.4 * b.pax + 0.4 * b.taxi + 0.2 * b.robust).epsilon(1e-15));
    // single-objective scenarios reduce to the raw value
    CHECK(obj_composite(inst, asg, {1, 0, 0}).composite == b.pax);
    CHECK(obj_composite(inst, asg, {0, 1, 0}).composite == b.taxi);
    CHECK(obj_composite(inst, asg, {0, 0, 1}).composite == b.robust);
    // all parts are nonnegative
    CHECK(b.pax >= 0.0);
    CHECK(b.taxi >= 0.0);
    CHECK(b.robust >= 0.0);
}

TEST_CASE("doubling the weights doubles the composite exactly", "[objectives]") {
    std::mt19937_64 rng(23);
    int done = 0;
    for (std::uint64_t seed = 0; done < 6 && seed < 20; ++seed) {
        try {
            const auto inst = random_instance(seed);
            const auto asg = random_feasible(inst, rng);
            const auto b1 = obj_composite(inst, asg, {0.25, 0.5, 0.125});
            const auto b2 = obj_composite(inst, asg, {0.5, 1.0, 0.25});
            REQUIRE(b2.composite == 2.0 * b1.composite);
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    REQUIRE(done == 6);
}

TEST_CASE("objectives are invariant under gate relabelling", "[objectives]") {
    std::mt19937_64 rng(29);
    int done = 0;
    for (std::uint64_t seed = 0; done < 6 && seed < 20; ++seed) {
        Instance inst;
        Assignment asg;
        try {
            inst = random_instance(seed);
            asg = random_feasible(inst, rng);
        } catch (const Error&) {
            continue;
        }
        const int g_count = inst.n_gates();
        std::vector<int> perm(g_count);
        for (int g = 0; g < g_count; ++g) perm[g] = g;
        std::shuffle(perm.begin(), perm.end(), rng);  // new index of old gate g

        Instance relab = inst;
        for (int g = 0; g < g_count; ++g) {
            relab.gates[perm[g]] = inst.gates[g];
            relab.gates[perm[g]].id = perm[g];
            for (int h = 0; h < g_count; ++h)
                relab.gate_dist[static_cast<std::size_t>(perm[g]) * g_count + perm[h]] =
                    inst.gate_distance(g, h);
        }
        Assignment relab_asg = asg;
        for (int f = 0; f < inst.n_flights(); ++f) relab_asg[f] = perm[asg[f]];

        const auto a = obj_composite(inst, asg, {0.4, 0.4, 0.2});
        const auto b = obj_composite(relab, relab_asg, {0.4, 0.4, 0.2});
        CHECK(rel_err(b.pax, a.pax) < 1e-12);
        CHECK(rel_err(b.taxi, a.taxi) < 1e-12);
        CHECK(rel_err(b.robust, a.robust) < 1e-12);
        ++done;
    }
    REQUIRE(done == 6);
}

TEST_CASE("delta_insert matches full recomputation", "[objectives][delta]") {
    std::mt19937_64 rng(31);
    const ScenarioWeights w{0.4, 0.4, 0.2};
    long long checked = 0;
    for (std::uint64_t seed = 0; checked < 10000 && seed < 60; ++seed) {
        Instance inst;
        Assignment asg;
        try {
            inst = random_instance(seed);
            asg = random_feasible(inst, rng);
        } catch (const Error&) {
            continue;
        }
        const double base = obj_composite(inst, asg, w).composite;
        for (int n = 0; n < 250; ++n) {
            const int fl = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_flights()));
            const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates()));
            const double delta = delta_insert(inst, asg, fl, g, w);
            Assignment next = asg;
            next[fl] = g;
            const double full = obj_composite(inst, next, w).composite;
            CAPTURE(seed, n, fl, g);
            REQUIRE(rel_err(base + delta, full) < 1e-9);
            ++checked;
        }
    }
    REQUIRE(checked >= 10000);
}

TEST_CASE("delta_insert of the identity move is exactly zero", "[objectives][delta]") {
    std::mt19937_64 rng(37);
    const auto [inst, asg] = first_good_fixture(1, 0, 0, rng);
    for (int f = 0; f < inst.n_flights(); ++f)
        CHECK(delta_insert(inst, asg, f, asg[f], {1, 1, 1}) == 0.0);
}

TEST_CASE("delta_moves matches full recomputation on batches", "[objectives][delta]") {
    std::mt19937_64 rng(41);
    const ScenarioWeights w{0.4, 0.4, 0.2};
    long long checked = 0;
    for (std::uint64_t seed = 0; checked < 2000 && seed < 60; ++seed) {
        Instance inst;
        Assignment asg;
        try {
            inst = random_instance(seed);
            asg = random_feasible(inst, rng);
        } catch (const Error&) {
            continue;
        }
        const double base = obj_composite(inst, asg, w).composite;
        std::vector<int> pool(static_cast<std::size_t>(inst.n_flights()));
        for (int f = 0; f < inst.n_flights(); ++f) pool[static_cast<std::size_t>(f)] = f;
        for (int n = 0; n < 100; ++n) {
            // batches address distinct flights, as the solver's exchanges do
            const int batch = 1 + static_cast<int>(rng() % 4);
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<std::pair<int, int>> moves;
            Assignment next = asg;
            for (int b = 0; b < batch; ++b) {
                const int fl = pool[static_cast<std::size_t>(b)];
                const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates()));
                moves.emplace_back(fl, g);
                next[fl] = g;
            }
            const double delta = delta_moves(inst, asg, moves, w);
            const double full = obj_composite(inst, next, w).composite;
            CAPTURE(seed, n);
            REQUIRE(rel_err(base + delta, full) < 1e-9);
            ++checked;
        }
    }
    REQUIRE(checked >= 2000);
}

TEST_CASE("delta_moves trivia", "[objectives][delta]") {
    std::mt19937_64 rng(43);
    const auto [inst, asg] = first_good_fixture(2, 0, 0, rng);
    const ScenarioWeights w{1, 1, 1};
    SECTION("empty batch") {
        CHECK(delta_moves(inst, asg, {}, w) == 0.0);
    }
    SECTION("all no-ops") {
        std::vector<std::pair<int, int>> moves{{0, asg[0]}, {1, asg[1]}};
        CHECK(delta_moves(inst, asg, moves, w) == 0.0);
    }
    SECTION("swap and swap back") {
        std::vector<std::pair<int, int>> there{{0, (asg[0] + 1) % inst.n_gates()}};
        Assignment mid = asg;
        mid[0] = there[0].second;
        std::vector<std::pair<int, int>> back{{0, asg[0]}};
        const double d1 = delta_moves(inst, asg, there, w);
        const double d2 = delta_moves(inst, mid, back, w);
        CHECK(d1 + d2 == Catch::Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("DeltaEvaluator mirrors the free-function deltas", "[objectives][delta]") {
    std::mt19937_64 rng(47);
    const ScenarioWeights w{0.4, 0.4, 0.2};
    int done = 0;
    for (std::uint64_t seed = 0; done < 10 && seed < 40; ++seed) {
        Instance inst;
        Assignment asg;
        try {
            inst = random_instance(seed);
            asg = random_feasible(inst, rng);
        } catch (const Error&) {
            continue;
        }
        DeltaEvaluator ev(inst, w);
        ev.reset(asg);
        REQUIRE(rel_err(ev.composite(), obj_composite(inst, asg, w).composite) < 1e-12);

        std::vector<std::pair<int, double>> cands;
        for (int f = 0; f < inst.n_flights(); ++f) {
            ev.insert_deltas(f, cands);
            std::size_t seen = 0;
            for (int g = 0; g < inst.n_gates(); ++g) {
                if (g == asg[f]) continue;
                Assignment next = asg;
                next[f] = g;
                const bool feas = is_feasible(inst, next);
                REQUIRE(ev.insert_feasible(f, g) == feas);
                if (!feas) continue;
                REQUIRE(seen < cands.size());
                REQUIRE(cands[seen].first == g);
                REQUIRE(rel_err(cands[seen].second, delta_insert(inst, asg, f, g, w)) < 1e-9);
                REQUIRE(rel_err(ev.insert_delta(f, g), cands[seen].second) < 1e-12);
                ++seen;
            }
            REQUIRE(seen == cands.size());
        }

        // batched moves agree with delta_moves
        for (int n = 0; n < 50; ++n) {
            const int f1 = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_flights()));
            const int f2 = (f1 + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                         inst.n_flights() - 1))) %
                           inst.n_flights();
            std::vector<std::pair<int, int>> moves{
                {f1, static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates()))},
                {f2, static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates()))}};
            REQUIRE(rel_err(ev.moves_delta(moves), delta_moves(inst, asg, moves, w)) < 1e-9);
        }
        ++done;
    }
    REQUIRE(done >= 8);
}

TEST_CASE("DeltaEvaluator applied moves track the true composite", "[objectives][delta]") {
    std::mt19937_64 rng(53);
    const ScenarioWeights w{0.4, 0.4, 0.2};
    auto [inst, asg] = first_good_fixture(3, 16, 5, rng);
    DeltaEvaluator ev(inst, w);
    ev.reset(asg);
    for (int step = 0; step < 400; ++step) {
        const int f = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_flights()));
        const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates()));
        if (g == asg[f] || !ev.insert_feasible(f, g)) continue;
        ev.apply_insert(f, g, ev.insert_delta(f, g));
        asg[f] = g;
        REQUIRE(ev.assignment() == asg);
    }
    const double true_composite = obj_composite(inst, asg, w).composite;
    CHECK(rel_err(ev.composite(), true_composite) < 1e-9);  // bounded drift
    CHECK(ev.resync() == Catch::Approx(true_composite).epsilon(1e-15));
    // gate lists stay consistent with the assignment
    const auto& lists = ev.gate_lists();
    int listed = 0;
    for (int g = 0; g < inst.n_gates(); ++g)
        for (int f : lists[g]) {
            REQUIRE(asg[f] == g);
            ++listed;
        }
    REQUIRE(listed == inst.n_flights());
}

TEST_CASE("DeltaEvaluator batched apply with exchange-style swaps", "[objectives][delta]") {
    std::mt19937_64 rng(59);
    const ScenarioWeights w{0.5, 0.5, 0};
    auto [inst, asg] = first_good_fixture(4, 12, 6, rng);
    DeltaEvaluator ev(inst, w);
    ev.reset(asg);
    std::vector<int> pool(static_cast<std::size_t>(inst.n_flights()));
    for (int f = 0; f < inst.n_flights(); ++f) pool[static_cast<std::size_t>(f)] = f;
    int applied = 0;
    for (int step = 0; step < 600 && applied < 15; ++step) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::pair<int, int>> moves;
        for (int b = 0; b < 3; ++b)
            moves.emplace_back(pool[static_cast<std::size_t>(b)],
                               static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n_gates())));
        if (!ev.moves_feasible(moves)) continue;
        const double delta = ev.moves_delta(moves);
        ev.apply_moves(moves, delta);
        for (auto [fl, g] : moves) asg[fl] = g;
        REQUIRE(is_feasible(inst, asg));
        REQUIRE(ev.assignment() == asg);
        ++applied;
    }
    REQUIRE(applied >= 15);
    CHECK(rel_err(ev.composite(), obj_composite(inst, asg, w).composite) < 1e-9);
}
