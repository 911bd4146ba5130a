// Gate-conflict model: Monte Carlo estimation of the expected conflict
// duration between consecutive gate users under parametric delay
// distributions, and the log-linear fit of the exponential kernel
// scale * decay^separation used by the robustness objective.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gatesched/core.hpp"

namespace gatesched {

enum class DelayFamily { constant, exponential, lognormal };

// Parametric delay distribution, minutes. Meaning of (p0, p1, p2):
//   constant:    value = p0
//   exponential: rate = p0 (mean 1/p0)
//   lognormal:   log-mean = p0, log-sigma = p1, shift = p2
// Negative delays (early arrivals) are expressible via constant < 0 or a
// negative shift.
struct DelayDist {
    DelayFamily family = DelayFamily::constant;
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

struct DelayModel {
    DelayDist dep_delay;
    DelayDist arr_delay;
    std::uint64_t rng_seed = 0;
};

inline void validate_delay_dist(const DelayDist& d, const std::string& which) {
    switch (d.family) {
        case DelayFamily::constant:
            return;
        case DelayFamily::exponential:
            if (!(d.p0 > 0.0)) throw ParamError(which + ": exponential rate must be > 0");
            return;
        case DelayFamily::lognormal:
            if (!(d.p1 > 0.0)) throw ParamError(which + ": lognormal sigma must be > 0");
            return;
    }
    throw ParamError(which + ": unknown delay family");
}

inline double sample_delay(const DelayDist& d, std::mt19937_64& rng) {
    switch (d.family) {
        case DelayFamily::constant:
            return d.p0;
        case DelayFamily::exponential:
            return std::exponential_distribution<double>(d.p0)(rng);
        case DelayFamily::lognormal:
            return d.p2 + std::lognormal_distribution<double>(d.p0, d.p1)(rng);
    }
    return 0.0;
}

// Kernel evaluation: expected conflict duration at the given scheduled
// separation.
inline double expected_conflict_duration(double sep, const ConflictFit& fit) {
    return fit.scale * std::pow(fit.decay, sep);
}

struct OverlapEstimate {
    double conditional_duration = 0.0;  // E[overlap | overlap > 0], 0 if never positive
    double conflict_probability = 0.0;  // P(overlap > 0)

    // Mean over all samples of the positive part; what the kernel fit uses.
    double mean_overlap() const { return conditional_duration * conflict_probability; }
};

// Draws n pairs (departure delay of the earlier flight, arrival delay of
// the later one); the conflict overlap sample is dep_delay - sep -
// arr_delay. Each (seed, sep) pair gets its own substream, so grid points
// are independent and reproducible in any evaluation order.
inline OverlapEstimate estimate_overlap_mc(const DelayModel& model, double sep, long long n_samples) {
    if (n_samples < 1) throw ParamError("estimate_overlap_mc: n_samples must be >= 1");
    validate_delay_dist(model.dep_delay, "dep_delay");
    validate_delay_dist(model.arr_delay, "arr_delay");

    std::mt19937_64 rng(mix_seed(model.rng_seed, std::bit_cast<std::uint64_t>(sep)));
    double sum = 0.0;
    long long positive = 0;
    for (long long i = 0; i < n_samples; ++i) {
        const double dep = sample_delay(model.dep_delay, rng);
        const double arr = sample_delay(model.arr_delay, rng);
        const double overlap = dep - sep - arr;
        if (overlap > 0.0) {
            sum += overlap;
            ++positive;
        }
    }
    OverlapEstimate est;
    est.conflict_probability = static_cast<double>(positive) / static_cast<double>(n_samples);
    est.conditional_duration = positive > 0 ? sum / static_cast<double>(positive) : 0.0;
    return est;
}

struct ExponentialFit {
    ConflictFit fit;
    double log_r2 = 0.0;        // R^2 of the regression in log space
    bool decay_clamped = false; // true when the unclamped slope was positive
    int points_used = 0;
};

// Least squares of ln(duration) on separation. Points with non-positive
// (or vanishing) durations are dropped first.
inline ExponentialFit fit_exponential_diag(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<double, double>> usable;  // (sep, ln duration)
    for (const auto& [sep, dur] : points)
        if (dur > 1e-12) usable.emplace_back(sep, std::log(dur));

    bool distinct = false;
    for (std::size_t i = 1; i < usable.size(); ++i)
        if (usable[i].first != usable[0].first) distinct = true;
    if (usable.size() < 2 || !distinct)
        throw FitError("fit_exponential: need at least 2 usable points with distinct separations (got " +
                       std::to_string(usable.size()) + " usable)");

    const double n = static_cast<double>(usable.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : usable) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : usable) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    ExponentialFit out;
    out.points_used = static_cast<int>(usable.size());
    out.decay_clamped = slope > 0.0;
    out.fit.scale = std::exp(intercept);
    out.fit.decay = out.decay_clamped ? 1.0 : std::exp(slope);

    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& [x, y] : usable) {
        const double pred = intercept + slope * x;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - my) * (y - my);
    }
    out.log_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return out;
}

inline ConflictFit fit_exponential(std::span<const std::pair<double, double>> points) {
    return fit_exponential_diag(points).fit;
}

struct CalibrationPoint {
    double sep = 0.0;
    OverlapEstimate estimate;
};

struct CalibrationResult {
    std::vector<CalibrationPoint> points;
    ExponentialFit fit;
};

// Runs the Monte Carlo estimator over the separation grid and fits the
// kernel to the mean overlap (conditional duration weighted by conflict
// probability); grid points where no conflict ever occurs drop out of the
// fit. Deterministic given the model seed.
inline CalibrationResult calibrate_diag(const DelayModel& model, std::span<const double> sep_grid,
                                        long long n_samples) {
    if (sep_grid.empty()) throw ParamError("calibrate: empty separation grid");
    CalibrationResult out;
    std::vector<std::pair<double, double>> points;
    for (double sep : sep_grid) {
        const OverlapEstimate est = estimate_overlap_mc(model, sep, n_samples);
        out.points.push_back({sep, est});
        points.emplace_back(sep, est.mean_overlap());
    }
    out.fit = fit_exponential_diag(points);
    return out;
}

inline ConflictFit calibrate(const DelayModel& model, std::span<const double> sep_grid,
                             long long n_samples) {
    return calibrate_diag(model, sep_grid, n_samples).fit.fit;
}

// Default grid: 0 to 120 minutes in steps of 5.
inline std::vector<double> default_calibration_grid() {
    std::vector<double> grid;
    for (int s = 0; s <= 120; s += 5) grid.push_back(static_cast<double>(s));
    return grid;
}

}  // namespace gatesched
