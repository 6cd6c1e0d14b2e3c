#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvelab {

namespace detail {

inline double pair_quotient(const MetricSpace& space, PointId a, PointId b, double va, double vb) {
    const double d = space.distance(a, b);
    if (d == 0.0) {
        if (va != vb)
            throw InfiniteConstantError("point " + space.label(a) + " carries two different values; "
                                        "the Lipschitz constant is infinite");
        return 0.0;
    }
    return std::abs(va - vb) / d;
}

} // namespace detail

/// Exact global Lipschitz constant of finitely many (point, value) pairs.
inline double lip_constant(const MetricSpace& space, std::span<const PointId> points, std::span<const double> values) {
    if (points.size() != values.size()) throw InputError("point and value counts differ");
    if (points.size() < 2) throw InputError("Lipschitz constant needs at least two points");
    double lip = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            lip = std::max(lip, detail::pair_quotient(space, points[i], points[j], values[i], values[j]));
    return lip;
}

/// Boundary data of a real function on a finite support E together with a Lipschitz bound L.
/// Construction enforces |h(e) - h(e')| <= L d(e,e') on E.
class LipschitzSample {
public:
    LipschitzSample(SpaceHandle space, std::vector<PointId> support, std::vector<double> values, double lipschitz)
        : space_(std::move(space)), support_(std::move(support)), values_(std::move(values)), lip_(lipschitz) {
        if (!space_) throw InputError("Lipschitz sample has no metric space");
        if (support_.empty()) throw InputError("Lipschitz sample has an empty support");
        if (support_.size() != values_.size()) throw InputError("support and value counts differ");
        if (!(lip_ >= 0.0) || !std::isfinite(lip_)) throw InputError("Lipschitz bound must be finite and nonnegative");
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (!space_->contains(support_[i])) throw InputError("support point is not a point of the space");
            if (!std::isfinite(values_[i])) throw InputError("sample value is not finite");
        }
        const double actual = support_.size() > 1 ? lip_constant(*space_, support_, values_) : 0.0;
        // L * d is rounded once, so allow one part in 1e12.
        if (actual > lip_ * (1.0 + 1e-12))
            throw InconsistentDataError("declared Lipschitz bound " + std::to_string(lip_) +
                                        " is below the sample's Lipschitz constant " + std::to_string(actual));
    }

    const MetricSpace& space() const noexcept { return *space_; }
    const SpaceHandle& space_handle() const noexcept { return space_; }
    std::span<const PointId> support() const noexcept { return support_; }
    std::span<const double> values() const noexcept { return values_; }
    double lipschitz() const noexcept { return lip_; }

private:
    SpaceHandle space_;
    std::vector<PointId> support_;
    std::vector<double> values_;
    double lip_;
};

enum class Envelope { upper, lower, average };

/// McShane-Whitney extension evaluated at `query`.
/// upper: min_e h(e) + L d(q,e); lower: max_e h(e) - L d(q,e); average: their mean.
/// All three are L-Lipschitz on the whole space and agree with the data on the support.
inline double mcshane_extend(const LipschitzSample& sample, PointId query, Envelope envelope = Envelope::upper) {
    const auto& space = sample.space();
    if (!space.contains(query)) throw InputError("extension query is not a point of the space");
    const double L = sample.lipschitz();
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    const auto support = sample.support();
    const auto values = sample.values();
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] == query) return values[i];
        const double d = space.distance(query, support[i]);
        upper = std::min(upper, values[i] + L * d);
        lower = std::max(lower, values[i] - L * d);
    }
    switch (envelope) {
    case Envelope::upper: return upper;
    case Envelope::lower: return lower;
    case Envelope::average: return 0.5 * (upper + lower);
    }
    return upper;
}

inline std::vector<double> extend_to_points(const LipschitzSample& sample, std::span<const PointId> points,
                                            Envelope envelope = Envelope::upper) {
    std::vector<double> out;
    out.reserve(points.size());
    for (PointId p : points) out.push_back(mcshane_extend(sample, p, envelope));
    return out;
}

/// The extension tabulated on every point of the space, indexed by point id.
inline std::vector<double> extend_to_space(const LipschitzSample& sample, Envelope envelope = Envelope::upper) {
    std::vector<double> out(sample.space().size());
    for (PointId p = 0; p < out.size(); ++p) out[p] = mcshane_extend(sample, p, envelope);
    return out;
}

/// Distance probes h_k = d(x_k, .) centred on a farthest-point ordering of a curve's samples.
struct ProbeFamily {
    std::vector<PointId> centers;
    std::size_t requested = 0;
    bool clamped = false;  // fewer distinct samples than requested

    double evaluate(const MetricSpace& space, std::size_t k, PointId x) const {
        return space.distance(centers[k], x);
    }
};

inline ProbeFamily probe_family(const SampledCurve& curve, std::size_t n) {
    if (n == 0) throw InputError("probe family needs at least one probe");
    const auto& space = curve.space();
    std::vector<PointId> pool;
    {
        std::vector<bool> seen(space.size(), false);
        for (PointId p : curve.samples())
            if (!seen[p]) {
                seen[p] = true;
                pool.push_back(p);
            }
    }
    ProbeFamily family;
    family.requested = n;
    family.clamped = n > pool.size();
    const std::size_t count = std::min(n, pool.size());

    std::vector<double> gap(pool.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> taken(pool.size(), false);
    std::size_t next = 0;
    for (std::size_t c = 0; c < count; ++c) {
        taken[next] = true;
        family.centers.push_back(pool[next]);
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (taken[i]) continue;
            gap[i] = std::min(gap[i], space.distance(pool[i], pool[next]));
            if (gap[i] > far_d) {
                far_d = gap[i];
                far = i;
            }
        }
        next = far;
    }
    return family;
}

/// sup_k |(h_k o gamma)(t+h) - (h_k o gamma)(t-h)| / 2h with the window convention of metric_speed.
inline double speed_via_probes(const SampledCurve& curve, const ProbeFamily& probes, double t, double window,
                               Quotient side = Quotient::symmetric) {
    if (probes.centers.empty()) throw InputError("probe family is empty");
    const auto [lo, hi] = window_indices(curve, t, window, side);
    const auto& space = curve.space();
    const double dt = curve.time(hi) - curve.time(lo);
    double best = 0.0;
    for (std::size_t k = 0; k < probes.centers.size(); ++k) {
        const double diff = probes.evaluate(space, k, curve.sample(hi)) - probes.evaluate(space, k, curve.sample(lo));
        best = std::max(best, std::abs(diff) / dt);
    }
    return best;
}

/// Largest quotient |f(y) - f(x)| / d(x,y) over y != x with d(x,y) <= radius; 0 when x is isolated
/// at this radius.
template <class F>
double local_lip_estimate(F&& f, const MetricSpace& space, PointId x, double radius) {
    if (!(radius > 0.0)) throw InputError("local Lipschitz radius must be positive");
    if (!space.contains(x)) throw InputError("point is not in the space");
    const double fx = f(x);
    double best = 0.0;
    for (PointId y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        const double d = space.distance(x, y);
        if (d > radius) continue;
        best = std::max(best, std::abs(f(y) - fx) / d);
    }
    return best;
}

} // namespace curvelab
