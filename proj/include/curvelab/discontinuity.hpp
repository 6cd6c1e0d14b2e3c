#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvelab {

struct DiscontinuityProfile {
    double epsilon = 0.0;
    double delta = 0.0;
    double measure_estimate = 0.0;  // area in the time square
    std::size_t pair_count = 0;     // ordered grid pairs in the set
};

namespace detail {

inline void require_grid(std::span<const double> times, std::size_t value_count) {
    if (times.size() < 2) throw InputError("need at least two samples");
    if (times.size() != value_count) throw InputError("time and value counts differ");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw InputError("times must be finite");
        if (i > 0 && !(times[i] > times[i - 1])) throw InputError("times must be strictly increasing");
    }
}

/// Length of the Voronoi cell of each grid time inside [t_0, t_{N-1}].
inline std::vector<double> cell_widths(std::span<const double> times) {
    const std::size_t n = times.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? times[0] : 0.5 * (times[i - 1] + times[i]);
        const double right = i + 1 == n ? times[n - 1] : 0.5 * (times[i] + times[i + 1]);
        w[i] = right - left;
    }
    return w;
}

struct AbsDifference {
    double operator()(double a, double b) const { return std::abs(a - b); }
};

} // namespace detail

/// Grid estimate of the planar measure of {(t', t'') : |t' - t''| < delta, dist(f(t'), f(t'')) >= epsilon}.
/// Each ordered pair of grid times in the set contributes the product of their cell widths.
template <class V, class Dist>
DiscontinuityProfile discontinuity_measure(std::span<const double> times, std::span<const V> values, double epsilon,
                                           double delta, Dist dist) {
    detail::require_grid(times, values.size());
    if (!(epsilon > 0.0) || !(delta > 0.0)) throw InputError("epsilon and delta must be positive");
    const auto w = detail::cell_widths(times);

    DiscontinuityProfile profile{epsilon, delta, 0.0, 0};
    std::size_t hi = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        // Pairs (i, j) with j > i and t_j - t_i < delta; each is counted in both orders.
        hi = std::max(hi, i + 1);
        while (hi < times.size() && times[hi] - times[i] < delta) ++hi;
        for (std::size_t j = i + 1; j < hi; ++j)
            if (dist(values[i], values[j]) >= epsilon) {
                profile.measure_estimate += 2.0 * w[i] * w[j];
                profile.pair_count += 2;
            }
    }
    return profile;
}

inline DiscontinuityProfile discontinuity_measure(std::span<const double> times, std::span<const double> values,
                                                  double epsilon, double delta) {
    return discontinuity_measure(times, values, epsilon, delta, detail::AbsDifference{});
}

inline DiscontinuityProfile discontinuity_measure(const SampledCurve& curve, double epsilon, double delta) {
    const MetricSpace& space = curve.space();
    return discontinuity_measure(curve.times(), curve.samples(), epsilon, delta,
                                 [&](PointId a, PointId b) { return space.distance(a, b); });
}

template <class V>
struct Representative {
    std::vector<V> values;
    std::vector<std::size_t> modified;  // grid indices changed at any scale, ascending
    double modified_fraction = 0.0;
};

/// Density-based cleanup down a decreasing schedule of scales. At scale eps the window of t_i is
/// every grid time within eps of t_i. A value is kept when more than half of its window lies
/// within eps of it. Otherwise the densest cluster (window members within eps of some member,
/// ties to the centre nearest t_i) is located; if it holds more than half of the window, the value
/// is replaced by the cluster member nearest in time to t_i, provided that member is at least eps
/// away. All replacements at one scale read the previous scale's values.
/// Returns nullopt when the final discontinuity measure, taken at the last eps with delta equal to
/// one and a half grid steps, still exceeds the area of one grid cell.
template <class V, class Dist>
std::optional<Representative<V>> continuous_representative(std::span<const double> times, std::span<const V> values,
                                                           std::span<const double> schedule, Dist dist) {
    detail::require_grid(times, values.size());
    const std::size_t n = times.size();
    const double h = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((times[i] - times[i - 1]) - h) > 1e-6 * h) throw InputError("samples must lie on a uniform grid");
    if (schedule.empty()) throw ScheduleError("epsilon schedule is empty");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0) || !std::isfinite(schedule[k])) throw ScheduleError("scales must be positive");
        if (k > 0 && !(schedule[k] < schedule[k - 1])) throw ScheduleError("scales must be strictly decreasing");
    }

    std::vector<V> current(values.begin(), values.end());
    std::vector<bool> touched(n, false);
    std::vector<std::size_t> cluster, best;
    const double slack = 1e-9 * (times[n - 1] - times[0]);  // keeps grid times at exactly eps inside

    for (double eps : schedule) {
        std::vector<V> next = current;
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            while (times[i] - times[lo] > eps + slack) ++lo;
            hi = std::max(hi, i);
            while (hi + 1 < n && times[hi + 1] - times[i] <= eps + slack) ++hi;
            const std::size_t window = hi - lo + 1;
            if (window < 3)
                throw ScheduleError("window at scale " + std::to_string(eps) + " holds fewer than 3 samples");

            auto support = [&](std::size_t c, std::vector<std::size_t>* members) {
                std::size_t count = 0;
                for (std::size_t j = lo; j <= hi; ++j)
                    if (dist(current[c], current[j]) < eps) {
                        ++count;
                        if (members) members->push_back(j);
                    }
                return count;
            };
            if (2 * support(i, nullptr) > window) continue;

            best.clear();
            std::size_t best_offset = 0;
            for (std::size_t c = lo; c <= hi; ++c) {
                cluster.clear();
                support(c, &cluster);
                const std::size_t offset = c > i ? c - i : i - c;
                if (cluster.size() > best.size() || (cluster.size() == best.size() && offset < best_offset)) {
                    best.swap(cluster);
                    best_offset = offset;
                }
            }
            if (2 * best.size() <= window) continue;

            std::size_t nearest = best.front();
            for (std::size_t a : best)
                if ((a > i ? a - i : i - a) < (nearest > i ? nearest - i : i - nearest)) nearest = a;
            if (dist(current[i], current[nearest]) >= eps) {
                next[i] = current[nearest];
                touched[i] = true;
            }
        }
        current.swap(next);
    }

    const auto final_profile =
        discontinuity_measure(times, std::span<const V>(current), schedule.back(), 1.5 * h, dist);
    if (final_profile.measure_estimate > h * h) return std::nullopt;

    Representative<V> rep;
    rep.values = std::move(current);
    for (std::size_t i = 0; i < n; ++i)
        if (touched[i]) rep.modified.push_back(i);
    rep.modified_fraction = static_cast<double>(rep.modified.size()) / static_cast<double>(n);
    return rep;
}

inline std::optional<Representative<double>> continuous_representative(std::span<const double> times,
                                                                       std::span<const double> values,
                                                                       std::span<const double> schedule) {
    return continuous_representative(times, values, schedule, detail::AbsDifference{});
}

} // namespace curvelab
