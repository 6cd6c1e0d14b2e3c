#pragma once

#include "curvelab/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace curvelab {

struct LevelSweep {
    double weighted_integral = 0.0;  // integral over y of the weighted crossing count
    std::size_t max_crossings = 0;   // largest unweighted crossing count of a single level
};

/// Sweeps the levels of the piecewise-linear function through `values` from below.
/// Step i crosses level y iff min <= y < max of its endpoint values (half-open, so apexes are
/// counted once). Flat steps cross nothing. `step_weights` has one entry per step.
inline LevelSweep sweep_levels(std::span<const double> values, std::span<const double> step_weights) {
    if (values.size() < 2) return {};
    if (step_weights.size() + 1 != values.size()) throw InputError("need one weight per step");

    struct Event {
        double level;
        double weight;
        int count;
    };
    std::vector<Event> events;
    events.reserve(2 * step_weights.size());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double lo = std::min(values[i], values[i + 1]);
        const double hi = std::max(values[i], values[i + 1]);
        if (lo == hi) continue;
        events.push_back({lo, step_weights[i], 1});
        events.push_back({hi, -step_weights[i], -1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.level < b.level; });

    LevelSweep sweep;
    double active_weight = 0.0;
    long active_count = 0;
    for (std::size_t e = 0; e < events.size();) {
        const double y = events[e].level;
        while (e < events.size() && events[e].level == y) {
            active_weight += events[e].weight;
            active_count += events[e].count;
            ++e;
        }
        sweep.max_crossings = std::max(sweep.max_crossings, static_cast<std::size_t>(std::max(0L, active_count)));
        if (e < events.size()) sweep.weighted_integral += active_weight * (events[e].level - y);
    }
    return sweep;
}

inline LevelSweep sweep_levels(std::span<const double> values) {
    std::vector<double> ones(values.size() > 0 ? values.size() - 1 : 0, 1.0);
    return sweep_levels(values, ones);
}

} // namespace curvelab
