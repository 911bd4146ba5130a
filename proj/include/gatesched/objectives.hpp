// The three passenger-weighted objectives (transit, taxi, robustness),
// their weighted composite, and incremental delta evaluation for local
// search moves. DeltaEvaluator is the solver's fast path: it caches the
// gate-independent robustness kernel, per-gate taxi times, transfer
// adjacency and current movements so a full insert neighborhood costs
// O(F·(F + G·local)) per iteration instead of O(F²·G).
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "gatesched/core.hpp"
#include "gatesched/feasibility.hpp"
#include "gatesched/ramp.hpp"

namespace gatesched {

struct ObjectiveBreakdown {
    double pax = 0.0;
    double taxi = 0.0;
    double robust = 0.0;
    double composite = 0.0;
};

// Transit time: O&D walking plus transfer walking, passenger-minutes.
inline double obj_pax(const Instance& inst, const Assignment& asg) {
    double meters = 0.0;
    for (const Flight& f : inst.flights) {
        const Gate& g = inst.gates[static_cast<std::size_t>(asg[f.id])];
        meters += f.origin_pax * g.dist_security + f.dest_pax * g.dist_bagclaim;
    }
    for (const Transfer& t : inst.transfers.entries())
        meters += t.pax * inst.gate_distance(asg[t.from], asg[t.to]);
    return meters / inst.params.walk_speed;
}

// Taxi time: unimpeded in/out legs plus a fixed delay per blocking pair,
// each weighted by the passengers aboard.
inline double obj_taxi(const Instance& inst, const Assignment& asg) {
    double total = 0.0;
    for (const Flight& f : inst.flights) {
        const auto u = unimpeded_times(inst.gates[static_cast<std::size_t>(asg[f.id])], inst.params);
        total += f.arr_pax * u.taxi_in + f.dep_pax * u.taxi_out;
    }
    for (const BlockingPair& bp : blocking_pairs(inst, asg))
        total += (bp.first.pax + bp.second.pax) * inst.params.taxi_delay;
    return total;
}

// Expected conflict cost of one co-gated pair: the earlier flight is the
// lower index (flights are time-ordered), the later flight's arrival
// passengers wait out the conflict. Negative separations (transiently
// infeasible states) clamp to zero.
inline double robust_pair_term(const Flight& earlier, const Flight& later, const ConflictFit& fit) {
    const double sep = std::max(0.0, later.in_time - earlier.out_time);
    return later.arr_pax * fit.scale * std::pow(fit.decay, sep);
}

// Robustness: expected gate-conflict passenger-minutes over all co-gated
// pairs (not only adjacent ones; the kernel decay makes far pairs small).
inline double obj_robust(const Instance& inst, const Assignment& asg) {
    const ConflictFit& fit = inst.params.conflict_fit;
    if (fit.scale == 0.0) return 0.0;
    double total = 0.0;
    const int n = inst.n_flights();
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (asg[i] == asg[k])
                total += robust_pair_term(inst.flights[static_cast<std::size_t>(i)],
                                          inst.flights[static_cast<std::size_t>(k)], fit);
    return total;
}

inline ObjectiveBreakdown obj_composite(const Instance& inst, const Assignment& asg,
                                        const ScenarioWeights& w) {
    ObjectiveBreakdown b;
    b.pax = obj_pax(inst, asg);
    b.taxi = obj_taxi(inst, asg);
    b.robust = obj_robust(inst, asg);
    b.composite = w.pax * b.pax + w.taxi * b.taxi + w.robust * b.robust;
    return b;
}

namespace detail {

// Taxi-delay terms of one of `flight`'s movements against every other
// flight's movements, with `flight` evaluated at gate `g`.
inline double delay_terms_at(const Instance& inst, const Assignment& asg, int flight, const Gate& g) {
    const Flight& f = inst.flights[static_cast<std::size_t>(flight)];
    const Movement own[2] = {make_movement(f, g, MovementKind::arrival, inst.params),
                             make_movement(f, g, MovementKind::departure, inst.params)};
    double total = 0.0;
    for (const Flight& other : inst.flights) {
        if (other.id == flight) continue;
        const Gate& og = inst.gates[static_cast<std::size_t>(asg[other.id])];
        for (MovementKind kind : {MovementKind::arrival, MovementKind::departure}) {
            const Movement m = make_movement(other, og, kind, inst.params);
            for (const Movement& o : own)
                if (taxi_conflict(o, m, inst.params) != BlockingKind::none)
                    total += (o.pax + m.pax) * inst.params.taxi_delay;
        }
    }
    return total;
}

}  // namespace detail

// Composite change of reassigning `flight` to `new_gate`, touching only
// terms involving the moved flight: O(F + G + transfers of the flight).
// Defined as 0 for the identity move.
inline double delta_insert(const Instance& inst, const Assignment& asg, int flight, int new_gate,
                           const ScenarioWeights& w) {
    const int old_gate = asg[flight];
    if (new_gate == old_gate) return 0.0;

    const Flight& f = inst.flights[static_cast<std::size_t>(flight)];
    const Gate& go = inst.gates[static_cast<std::size_t>(old_gate)];
    const Gate& gn = inst.gates[static_cast<std::size_t>(new_gate)];
    const GlobalParams& p = inst.params;

    double d_pax = f.origin_pax * (gn.dist_security - go.dist_security) +
                   f.dest_pax * (gn.dist_bagclaim - go.dist_bagclaim);
    for (const Transfer& t : inst.transfers.entries()) {
        if (t.from == flight && t.to != flight)
            d_pax += t.pax * (inst.gate_distance(new_gate, asg[t.to]) -
                              inst.gate_distance(old_gate, asg[t.to]));
        else if (t.to == flight && t.from != flight)
            d_pax += t.pax * (inst.gate_distance(asg[t.from], new_gate) -
                              inst.gate_distance(asg[t.from], old_gate));
    }
    d_pax /= p.walk_speed;

    const UnimpededTimes uo = unimpeded_times(go, p);
    const UnimpededTimes un = unimpeded_times(gn, p);
    double d_taxi = f.arr_pax * (un.taxi_in - uo.taxi_in) + f.dep_pax * (un.taxi_out - uo.taxi_out);
    d_taxi += detail::delay_terms_at(inst, asg, flight, gn) -
              detail::delay_terms_at(inst, asg, flight, go);

    double d_robust = 0.0;
    const ConflictFit& fit = p.conflict_fit;
    if (fit.scale != 0.0) {
        for (const Flight& other : inst.flights) {
            if (other.id == flight) continue;
            const Flight& earlier = other.id < flight ? other : f;
            const Flight& later = other.id < flight ? f : other;
            if (asg[other.id] == old_gate) d_robust -= robust_pair_term(earlier, later, fit);
            if (asg[other.id] == new_gate) d_robust += robust_pair_term(earlier, later, fit);
        }
    }

    return w.pax * d_pax + w.taxi * d_taxi + w.robust * d_robust;
}

// Composite change of applying a batch of reassignments at once (the
// exchange move's delta). Pairs with both endpoints moved are counted
// once. Identity entries are ignored. O(|moves|·F).
inline double delta_moves(const Instance& inst, const Assignment& asg,
                          std::span<const std::pair<int, int>> moves, const ScenarioWeights& w) {
    std::vector<std::pair<int, int>> real;  // (flight, new_gate), deduped no-ops
    for (auto [fl, g] : moves)
        if (g != asg[fl]) real.emplace_back(fl, g);
    if (real.empty()) return 0.0;

    const GlobalParams& p = inst.params;
    std::vector<int> target = asg.gate_of;
    std::vector<char> moved(static_cast<std::size_t>(inst.n_flights()), 0);
    for (auto [fl, g] : real) {
        target[static_cast<std::size_t>(fl)] = g;
        moved[static_cast<std::size_t>(fl)] = 1;
    }

    double d_pax = 0.0, d_taxi = 0.0, d_robust = 0.0;
    for (auto [fl, g] : real) {
        const Flight& f = inst.flights[static_cast<std::size_t>(fl)];
        const Gate& go = inst.gates[static_cast<std::size_t>(asg[fl])];
        const Gate& gn = inst.gates[static_cast<std::size_t>(g)];
        d_pax += f.origin_pax * (gn.dist_security - go.dist_security) +
                 f.dest_pax * (gn.dist_bagclaim - go.dist_bagclaim);
        const UnimpededTimes uo = unimpeded_times(go, p);
        const UnimpededTimes un = unimpeded_times(gn, p);
        d_taxi += f.arr_pax * (un.taxi_in - uo.taxi_in) + f.dep_pax * (un.taxi_out - uo.taxi_out);
    }

    for (const Transfer& t : inst.transfers.entries()) {
        if (t.from == t.to) continue;
        if (!moved[static_cast<std::size_t>(t.from)] && !moved[static_cast<std::size_t>(t.to)]) continue;
        d_pax += t.pax * (inst.gate_distance(target[static_cast<std::size_t>(t.from)],
                                             target[static_cast<std::size_t>(t.to)]) -
                          inst.gate_distance(asg[t.from], asg[t.to]));
    }
    d_pax /= p.walk_speed;

    const ConflictFit& fit = p.conflict_fit;
    for (auto [fl, g] : real) {
        const Flight& f = inst.flights[static_cast<std::size_t>(fl)];
        const Gate& g_old = inst.gates[static_cast<std::size_t>(asg[fl])];
        const Gate& g_new = inst.gates[static_cast<std::size_t>(g)];
        const Movement own_old[2] = {make_movement(f, g_old, MovementKind::arrival, p),
                                     make_movement(f, g_old, MovementKind::departure, p)};
        const Movement own_new[2] = {make_movement(f, g_new, MovementKind::arrival, p),
                                     make_movement(f, g_new, MovementKind::departure, p)};
        for (const Flight& other : inst.flights) {
            if (other.id == fl) continue;
            // a pair of two moved flights is handled by the lower id only
            if (moved[static_cast<std::size_t>(other.id)] && other.id < fl) continue;
            const Gate& og_old = inst.gates[static_cast<std::size_t>(asg[other.id])];
            const Gate& og_new = inst.gates[static_cast<std::size_t>(target[static_cast<std::size_t>(other.id)])];
            for (MovementKind kind : {MovementKind::arrival, MovementKind::departure}) {
                const Movement m_old = make_movement(other, og_old, kind, p);
                const Movement m_new = make_movement(other, og_new, kind, p);
                for (int s = 0; s < 2; ++s) {
                    if (taxi_conflict(own_old[s], m_old, p) != BlockingKind::none)
                        d_taxi -= (own_old[s].pax + m_old.pax) * p.taxi_delay;
                    if (taxi_conflict(own_new[s], m_new, p) != BlockingKind::none)
                        d_taxi += (own_new[s].pax + m_new.pax) * p.taxi_delay;
                }
            }
            if (fit.scale != 0.0) {
                const Flight& earlier = other.id < fl ? other : f;
                const Flight& later = other.id < fl ? f : other;
                if (asg[other.id] == asg[fl]) d_robust -= robust_pair_term(earlier, later, fit);
                if (target[static_cast<std::size_t>(other.id)] == g)
                    d_robust += robust_pair_term(earlier, later, fit);
            }
        }
    }

    return w.pax * d_pax + w.taxi * d_taxi + w.robust * d_robust;
}

// Stateful incremental evaluator bound to one instance and one weight
// vector. Holds the current assignment plus caches; the solver applies
// accepted moves through it. Deltas agree with delta_insert/delta_moves
// up to floating-point regrouping.
class DeltaEvaluator {
public:
    DeltaEvaluator(const Instance& inst, const ScenarioWeights& w) : inst_(&inst), w_(w) {
        const int f_count = inst.n_flights();
        const int g_count = inst.n_gates();

        u_in_.resize(static_cast<std::size_t>(g_count));
        u_out_.resize(static_cast<std::size_t>(g_count));
        max_u_in_ = max_u_out_ = 0.0;
        for (int g = 0; g < g_count; ++g) {
            const UnimpededTimes u = unimpeded_times(inst.gates[static_cast<std::size_t>(g)], inst.params);
            u_in_[static_cast<std::size_t>(g)] = u.taxi_in;
            u_out_[static_cast<std::size_t>(g)] = u.taxi_out;
            max_u_in_ = std::max(max_u_in_, u.taxi_in);
            max_u_out_ = std::max(max_u_out_, u.taxi_out);
        }

        adj_.resize(static_cast<std::size_t>(f_count));
        for (const Transfer& t : inst.transfers.entries()) {
            if (t.from == t.to) continue;
            adj_[static_cast<std::size_t>(t.from)].emplace_back(t.to, t.pax);
            adj_[static_cast<std::size_t>(t.to)].emplace_back(t.from, t.pax);
        }

        // Gate-independent robustness kernel, symmetric storage.
        kernel_.assign(static_cast<std::size_t>(f_count) * static_cast<std::size_t>(f_count), 0.0);
        const ConflictFit& fit = inst.params.conflict_fit;
        if (fit.scale != 0.0) {
            for (int i = 0; i < f_count; ++i)
                for (int k = i + 1; k < f_count; ++k) {
                    const double v = robust_pair_term(inst.flights[static_cast<std::size_t>(i)],
                                                      inst.flights[static_cast<std::size_t>(k)], fit);
                    kernel_[idx(i, k)] = v;
                    kernel_[idx(k, i)] = v;
                }
        }
    }

    void reset(const Assignment& asg) {
        cur_ = asg;
        const int f_count = inst_->n_flights();
        gate_lists_.assign(static_cast<std::size_t>(inst_->n_gates()), {});
        for (int f = 0; f < f_count; ++f)
            gate_lists_[static_cast<std::size_t>(asg[f])].push_back(f);  // id order = time order
        movs_.clear();
        movs_.reserve(static_cast<std::size_t>(2 * f_count));
        for (const Flight& f : inst_->flights) {
            const Gate& g = inst_->gates[static_cast<std::size_t>(asg[f.id])];
            movs_.push_back(make_movement(f, g, MovementKind::arrival, inst_->params));
            movs_.push_back(make_movement(f, g, MovementKind::departure, inst_->params));
        }
        composite_ = obj_composite(*inst_, cur_, w_).composite;
    }

    const Instance& instance() const { return *inst_; }
    const ScenarioWeights& weights() const { return w_; }
    const Assignment& assignment() const { return cur_; }
    double composite() const { return composite_; }
    const std::vector<std::vector<int>>& gate_lists() const { return gate_lists_; }

    // Insert feasibility at the target gate: compatibility with the
    // would-be predecessor and successor suffices (time-ordered lists,
    // separation is transitive along the order).
    bool insert_feasible(int flight, int gate) const {
        if (gate == cur_[flight]) return true;
        const std::vector<int>& list = gate_lists_[static_cast<std::size_t>(gate)];
        const Flight& f = inst_->flights[static_cast<std::size_t>(flight)];
        const double buff = inst_->params.buffer_time;
        const auto pos = std::lower_bound(list.begin(), list.end(), flight);
        if (pos != list.begin() &&
            !is_pair_compatible(inst_->flights[static_cast<std::size_t>(*std::prev(pos))], f, buff))
            return false;
        if (pos != list.end() &&
            !is_pair_compatible(f, inst_->flights[static_cast<std::size_t>(*pos)], buff))
            return false;
        return true;
    }

    double insert_delta(int flight, int gate) const {
        if (gate == cur_[flight]) return 0.0;
        const OldSide old_side = old_terms(flight);
        return candidate_delta(flight, gate, old_side);
    }

    // All feasible target gates of one flight with their deltas, gates in
    // ascending order. The old-side terms are computed once per flight.
    void insert_deltas(int flight, std::vector<std::pair<int, double>>& out) const {
        out.clear();
        const int cur_gate = cur_[flight];
        const OldSide old_side = old_terms(flight);
        for (int g = 0; g < inst_->n_gates(); ++g) {
            if (g == cur_gate || !insert_feasible(flight, g)) continue;
            out.emplace_back(g, candidate_delta(flight, g, old_side));
        }
    }

    // Batch-move delta via the cached kernel; counterpart of delta_moves.
    double moves_delta(std::span<const std::pair<int, int>> moves) const {
        std::vector<std::pair<int, int>> real;
        for (auto [fl, g] : moves)
            if (g != cur_[fl]) real.emplace_back(fl, g);
        if (real.empty()) return 0.0;

        const GlobalParams& p = inst_->params;
        std::vector<int> target = cur_.gate_of;
        std::vector<char> moved(static_cast<std::size_t>(inst_->n_flights()), 0);
        for (auto [fl, g] : real) {
            target[static_cast<std::size_t>(fl)] = g;
            moved[static_cast<std::size_t>(fl)] = 1;
        }

        double d_pax = 0.0, d_taxi = 0.0, d_robust = 0.0;
        for (auto [fl, g] : real) {
            const Flight& f = inst_->flights[static_cast<std::size_t>(fl)];
            const Gate& go = inst_->gates[static_cast<std::size_t>(cur_[fl])];
            const Gate& gn = inst_->gates[static_cast<std::size_t>(g)];
            d_pax += f.origin_pax * (gn.dist_security - go.dist_security) +
                     f.dest_pax * (gn.dist_bagclaim - go.dist_bagclaim);
            d_taxi += f.arr_pax * (u_in_[static_cast<std::size_t>(g)] -
                                   u_in_[static_cast<std::size_t>(cur_[fl])]) +
                      f.dep_pax * (u_out_[static_cast<std::size_t>(g)] -
                                   u_out_[static_cast<std::size_t>(cur_[fl])]);
            for (auto [other, pax] : adj_[static_cast<std::size_t>(fl)]) {
                if (moved[static_cast<std::size_t>(other)] && other < fl) continue;
                d_pax += pax * (inst_->gate_distance(g, target[static_cast<std::size_t>(other)]) -
                                inst_->gate_distance(cur_[fl], cur_[other]));
            }

            const Movement own_old[2] = {make_movement(f, go, MovementKind::arrival, p),
                                         make_movement(f, go, MovementKind::departure, p)};
            const Movement own_new[2] = {make_movement(f, gn, MovementKind::arrival, p),
                                         make_movement(f, gn, MovementKind::departure, p)};
            for (const Flight& other : inst_->flights) {
                if (other.id == fl) continue;
                if (moved[static_cast<std::size_t>(other.id)] && other.id < fl) continue;
                const Movement* m_old[2] = {&movs_[static_cast<std::size_t>(2 * other.id)],
                                            &movs_[static_cast<std::size_t>(2 * other.id + 1)]};
                Movement moved_arr, moved_dep;
                const Movement* m_new[2] = {m_old[0], m_old[1]};
                if (moved[static_cast<std::size_t>(other.id)]) {
                    const Gate& og = inst_->gates[static_cast<std::size_t>(
                        target[static_cast<std::size_t>(other.id)])];
                    moved_arr = make_movement(other, og, MovementKind::arrival, p);
                    moved_dep = make_movement(other, og, MovementKind::departure, p);
                    m_new[0] = &moved_arr;
                    m_new[1] = &moved_dep;
                }
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t) {
                        if (taxi_conflict(own_old[s], *m_old[t], p) != BlockingKind::none)
                            d_taxi -= (own_old[s].pax + m_old[t]->pax) * p.taxi_delay;
                        if (taxi_conflict(own_new[s], *m_new[t], p) != BlockingKind::none)
                            d_taxi += (own_new[s].pax + m_new[t]->pax) * p.taxi_delay;
                    }
                if (cur_[other.id] == cur_[fl]) d_robust -= kernel_[idx(fl, other.id)];
                if (target[static_cast<std::size_t>(other.id)] == g)
                    d_robust += kernel_[idx(fl, other.id)];
            }
        }
        return w_.pax * d_pax / p.walk_speed + w_.taxi * d_taxi + w_.robust * d_robust;
    }

    // Whether applying the batch leaves every affected gate feasible.
    bool moves_feasible(std::span<const std::pair<int, int>> moves) const {
        std::vector<int> affected;
        for (auto [fl, g] : moves) {
            if (g == cur_[fl]) continue;
            affected.push_back(g);
            affected.push_back(cur_[fl]);
        }
        if (affected.empty()) return true;
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        std::vector<int> target = cur_.gate_of;
        for (auto [fl, g] : moves) target[static_cast<std::size_t>(fl)] = g;
        std::vector<int> list;
        for (int g : affected) {
            list.clear();
            for (int f = 0; f < inst_->n_flights(); ++f)
                if (target[static_cast<std::size_t>(f)] == g) list.push_back(f);
            if (!detail::gate_list_feasible(*inst_, list)) return false;
        }
        return true;
    }

    void apply_insert(int flight, int gate, double delta) {
        apply_move_state(flight, gate);
        composite_ += delta;
    }

    // Replaces the accumulated composite with a full re-evaluation; the
    // solver calls this on improvements so accumulated rounding drift
    // never survives into best-so-far bookkeeping.
    double resync() {
        composite_ = obj_composite(*inst_, cur_, w_).composite;
        return composite_;
    }

    void apply_moves(std::span<const std::pair<int, int>> moves, double delta) {
        for (auto [fl, g] : moves)
            if (g != cur_[fl]) apply_move_state(fl, g);
        composite_ += delta;
    }

private:
    struct OldSide {
        double pax_meters = 0.0;  // linear + transfer walking at the old gate
        double taxi = 0.0;        // unimpeded + delay terms at the old gate
        double robust = 0.0;
        std::vector<int> relevant;  // movement indices that can interact with
                                    // the flight's windows at any gate
    };

    std::size_t idx(int i, int k) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(inst_->n_flights()) +
               static_cast<std::size_t>(k);
    }

    // Movements whose windows can overlap either of `f`'s windows at any
    // candidate gate; sound because every blocking classification implies
    // window overlap and candidate windows lie inside the max-u envelope.
    void collect_relevant(const Flight& f, std::vector<int>& out) const {
        out.clear();
        const double arr_lo = f.in_time - max_u_in_, arr_hi = f.in_time;
        const double dep_lo = f.out_time, dep_hi = f.out_time + max_u_out_;
        const int m_count = static_cast<int>(movs_.size());
        for (int m = 0; m < m_count; ++m) {
            if (movs_[static_cast<std::size_t>(m)].flight == f.id) continue;
            const double s = movs_[static_cast<std::size_t>(m)].window_start;
            const double e = movs_[static_cast<std::size_t>(m)].window_end;
            if ((e > arr_lo && s < arr_hi) || (e > dep_lo && s < dep_hi))
                out.push_back(m);
        }
    }

    OldSide old_terms(int flight) const {
        const Flight& f = inst_->flights[static_cast<std::size_t>(flight)];
        const int g0 = cur_[flight];
        const Gate& go = inst_->gates[static_cast<std::size_t>(g0)];
        const GlobalParams& p = inst_->params;

        OldSide o;
        o.pax_meters = f.origin_pax * go.dist_security + f.dest_pax * go.dist_bagclaim;
        for (auto [other, pax] : adj_[static_cast<std::size_t>(flight)])
            o.pax_meters += pax * inst_->gate_distance(g0, cur_[other]);

        o.taxi = f.arr_pax * u_in_[static_cast<std::size_t>(g0)] +
                 f.dep_pax * u_out_[static_cast<std::size_t>(g0)];
        collect_relevant(f, o.relevant);
        const Movement* own[2] = {&movs_[static_cast<std::size_t>(2 * flight)],
                                  &movs_[static_cast<std::size_t>(2 * flight + 1)]};
        for (int m : o.relevant)
            for (const Movement* s : own)
                if (taxi_conflict(*s, movs_[static_cast<std::size_t>(m)], p) != BlockingKind::none)
                    o.taxi += (s->pax + movs_[static_cast<std::size_t>(m)].pax) * p.taxi_delay;

        for (int k : gate_lists_[static_cast<std::size_t>(g0)])
            if (k != flight) o.robust += kernel_[idx(flight, k)];
        return o;
    }

    double candidate_delta(int flight, int gate, const OldSide& old_side) const {
        const Flight& f = inst_->flights[static_cast<std::size_t>(flight)];
        const Gate& gn = inst_->gates[static_cast<std::size_t>(gate)];
        const GlobalParams& p = inst_->params;

        double pax_meters = f.origin_pax * gn.dist_security + f.dest_pax * gn.dist_bagclaim;
        for (auto [other, pax] : adj_[static_cast<std::size_t>(flight)])
            pax_meters += pax * inst_->gate_distance(gate, cur_[other]);

        double taxi = f.arr_pax * u_in_[static_cast<std::size_t>(gate)] +
                      f.dep_pax * u_out_[static_cast<std::size_t>(gate)];
        const Movement own[2] = {make_movement(f, gn, MovementKind::arrival, p),
                                 make_movement(f, gn, MovementKind::departure, p)};
        for (int m : old_side.relevant)
            for (const Movement& s : own)
                if (taxi_conflict(s, movs_[static_cast<std::size_t>(m)], p) != BlockingKind::none)
                    taxi += (s.pax + movs_[static_cast<std::size_t>(m)].pax) * p.taxi_delay;

        double robust = 0.0;
        for (int k : gate_lists_[static_cast<std::size_t>(gate)])
            if (k != flight) robust += kernel_[idx(flight, k)];

        return w_.pax * (pax_meters - old_side.pax_meters) / p.walk_speed +
               w_.taxi * (taxi - old_side.taxi) + w_.robust * (robust - old_side.robust);
    }

    void apply_move_state(int flight, int gate) {
        std::vector<int>& from = gate_lists_[static_cast<std::size_t>(cur_[flight])];
        from.erase(std::lower_bound(from.begin(), from.end(), flight));
        std::vector<int>& to = gate_lists_[static_cast<std::size_t>(gate)];
        to.insert(std::lower_bound(to.begin(), to.end(), flight), flight);
        cur_[flight] = gate;
        const Flight& f = inst_->flights[static_cast<std::size_t>(flight)];
        const Gate& g = inst_->gates[static_cast<std::size_t>(gate)];
        movs_[static_cast<std::size_t>(2 * flight)] =
            make_movement(f, g, MovementKind::arrival, inst_->params);
        movs_[static_cast<std::size_t>(2 * flight + 1)] =
            make_movement(f, g, MovementKind::departure, inst_->params);
    }

    const Instance* inst_;
    ScenarioWeights w_;
    Assignment cur_;
    double composite_ = 0.0;

    std::vector<double> u_in_, u_out_;
    double max_u_in_ = 0.0, max_u_out_ = 0.0;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // flight -> (other, pax)
    std::vector<double> kernel_;                         // F x F robustness terms
    std::vector<std::vector<int>> gate_lists_;           // gate -> sorted flight ids
    std::vector<Movement> movs_;                         // 2 per flight: arrival, departure
};

}  // namespace gatesched
