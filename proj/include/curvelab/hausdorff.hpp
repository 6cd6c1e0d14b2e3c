#pragma once

#include "curvelab/errors.hpp"
#include "curvelab/metric_space.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <unordered_set>
#include <vector>

namespace curvelab {

namespace detail {

inline std::vector<PointId> distinct_in_order(std::span<const PointId> ids) {
    std::vector<PointId> out;
    std::unordered_set<PointId> seen;
    for (PointId id : ids)
        if (seen.insert(id).second) out.push_back(id);
    return out;
}

/// Distance from each target point to its nearest other target point (0 for a singleton).
inline std::vector<double> nearest_neighbour_gaps(const MetricSpace& space, std::span<const PointId> target) {
    std::vector<double> gaps(target.size(), 0.0);
    if (target.size() < 2) return gaps;
    for (std::size_t i = 0; i < target.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < target.size(); ++j)
            if (j != i) best = std::min(best, space.distance(target[i], target[j]));
        gaps[i] = best;
    }
    return gaps;
}

} // namespace detail

struct ContentEstimate {
    double value = 0.0;
    double resolution = 0.0;      // largest nearest-neighbour gap of the target
    std::size_t cover_size = 0;   // number of covering sets
};

/// Covering estimate of the 1-dimensional Hausdorff content at scale `delta` of the set the
/// finite `target` samples.
///
/// A finite set has zero content, so the target is read as a sampling of a continuum at
/// resolution rho (the largest nearest-neighbour gap). Each target point stands for its
/// rho/2-neighbourhood. The points are grouped around a greedy maximal separated net of
/// radius (delta - rho)/2 (delta/2 when rho >= delta); each group contributes its diameter
/// plus its own local gap, capped at delta. When rho < delta every enlarged group has
/// diameter below delta, so the sum bounds the content of the sampled continuum from above.
inline ContentEstimate hausdorff1_content_estimate(const MetricSpace& space, std::span<const PointId> target,
                                                   double delta) {
    if (!(delta > 0.0)) throw InputError("Hausdorff content needs a positive scale delta");
    if (target.empty()) throw InputError("Hausdorff content of an empty target");
    for (PointId p : target)
        if (!space.contains(p)) throw InputError("content target is not a point of the space");

    const auto points = detail::distinct_in_order(target);
    ContentEstimate est;
    if (points.size() == 1) {
        est.cover_size = 1;
        return est;
    }

    const auto gaps = detail::nearest_neighbour_gaps(space, points);
    const double rho = *std::max_element(gaps.begin(), gaps.end());
    est.resolution = rho;
    const double radius = rho < delta ? 0.5 * (delta - rho) : 0.5 * delta;
    const auto net = maximal_separated_net(space, points, radius);

    std::vector<std::vector<std::size_t>> groups(net.members.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t best = 0;
        double best_d = space.distance(points[i], net.members[0]);
        for (std::size_t m = 1; m < net.members.size(); ++m) {
            const double d = space.distance(points[i], net.members[m]);
            if (d < best_d) {
                best_d = d;
                best = m;
            }
        }
        groups[best].push_back(i);
    }

    for (const auto& group : groups) {
        double diam = 0.0;
        double local_gap = 0.0;
        for (std::size_t a = 0; a < group.size(); ++a) {
            local_gap = std::max(local_gap, gaps[group[a]]);
            for (std::size_t b = a + 1; b < group.size(); ++b)
                diam = std::max(diam, space.distance(points[group[a]], points[group[b]]));
        }
        est.value += std::min(delta, diam + local_gap);
    }
    est.cover_size = groups.size();
    return est;
}

inline double hausdorff1_content(const MetricSpace& space, std::span<const PointId> target, double delta) {
    return hausdorff1_content_estimate(space, target, delta).value;
}

} // namespace curvelab
