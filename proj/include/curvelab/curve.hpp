#pragma once

#include "curvelab/errors.hpp"
#include "curvelab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace curvelab {

/// A curve gamma: [a,b] -> X known at finitely many times. It stands for the
/// piecewise-geodesic interpolant of its samples; consecutive samples may repeat.
class SampledCurve {
public:
    SampledCurve(SpaceHandle space, std::vector<double> times, std::vector<PointId> samples)
        : space_(std::move(space)), times_(std::move(times)), samples_(std::move(samples)) {
        if (!space_) throw InputError("curve has no metric space");
        if (times_.size() != samples_.size())
            throw InputError("curve has " + std::to_string(times_.size()) + " times but " +
                             std::to_string(samples_.size()) + " samples");
        if (times_.size() < 2) throw InputError("curve needs at least two samples");
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!std::isfinite(times_[i])) throw InputError("curve time " + std::to_string(i) + " is not finite");
            if (i > 0 && !(times_[i] > times_[i - 1]))
                throw InputError("curve times must be strictly increasing (index " + std::to_string(i) + ")");
            if (!space_->contains(samples_[i]))
                throw InputError("curve sample " + std::to_string(i) + " is not a point of the space");
        }
    }

    /// Builds the Euclidean space spanned by the given coordinates (duplicates merged) and the curve on it.
    static SampledCurve from_coordinates(std::vector<double> times, const std::vector<std::vector<double>>& coords) {
        if (coords.empty()) throw InputError("curve needs at least two samples");
        EuclideanPointSet points(coords.front().size());
        std::vector<PointId> ids;
        ids.reserve(coords.size());
        for (const auto& c : coords) ids.push_back(points.add(c));
        return SampledCurve(share(points.build()), std::move(times), std::move(ids));
    }

    const MetricSpace& space() const noexcept { return *space_; }
    const SpaceHandle& space_handle() const noexcept { return space_; }
    std::span<const double> times() const noexcept { return times_; }
    std::span<const PointId> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return times_.size(); }
    double start() const noexcept { return times_.front(); }
    double end() const noexcept { return times_.back(); }
    PointId sample(std::size_t i) const { return samples_[i]; }
    double time(std::size_t i) const { return times_[i]; }

    /// Chord length d(gamma(t_i), gamma(t_{i+1})).
    double step_length(std::size_t i) const { return space_->distance(samples_[i], samples_[i + 1]); }

    /// Exact sample injectivity.
    bool is_simple() const {
        std::unordered_set<PointId> seen;
        for (PointId p : samples_)
            if (!seen.insert(p).second) return false;
        return true;
    }

    /// Grid index of time `t`, or npos when `t` is not a grid time.
    std::size_t index_of(double t) const {
        auto it = std::lower_bound(times_.begin(), times_.end(), t);
        if (it == times_.end() || *it != t) return npos;
        return static_cast<std::size_t>(it - times_.begin());
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    SpaceHandle space_;
    std::vector<double> times_;
    std::vector<PointId> samples_;
};

/// Ordered knots a = t_0 < ... < t_N = b taken from a curve's time grid.
class Partition {
public:
    explicit Partition(std::vector<double> knots) : knots_(std::move(knots)) {
        if (knots_.empty()) throw InputError("partition has no knots");
        for (std::size_t i = 1; i < knots_.size(); ++i)
            if (!(knots_[i] > knots_[i - 1])) throw InputError("partition knots must be strictly increasing");
    }

    static Partition finest(const SampledCurve& curve) {
        return Partition({curve.times().begin(), curve.times().end()});
    }

    std::span<const double> knots() const noexcept { return knots_; }

    /// Grid indices of the knots; throws when a knot misses the grid or the ends are wrong.
    std::vector<std::size_t> indices(const SampledCurve& curve) const {
        if (knots_.front() != curve.start() || knots_.back() != curve.end())
            throw InputError("partition must start at a and end at b");
        std::vector<std::size_t> idx;
        idx.reserve(knots_.size());
        for (double k : knots_) {
            const std::size_t i = curve.index_of(k);
            if (i == SampledCurve::npos) throw InputError("partition knot is not on the curve's time grid");
            idx.push_back(i);
        }
        return idx;
    }

private:
    std::vector<double> knots_;
};

inline double variation_over_indices(const SampledCurve& curve, std::span<const std::size_t> indices) {
    double sum = 0.0;
    for (std::size_t i = 1; i < indices.size(); ++i)
        sum += curve.space().distance(curve.sample(indices[i - 1]), curve.sample(indices[i]));
    return sum;
}

inline double variation_over_partition(const SampledCurve& curve, const Partition& part) {
    const auto idx = part.indices(curve);
    return variation_over_indices(curve, idx);
}

/// Variation over the finest partition; by refinement monotonicity it dominates every coarser one.
inline double total_variation(const SampledCurve& curve) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) sum += curve.step_length(i);
    return sum;
}

/// Cumulative chord lengths s_0 = 0, ..., s_M = l(gamma).
inline std::vector<double> arc_length_coordinates(const SampledCurve& curve) {
    std::vector<double> s(curve.size(), 0.0);
    for (std::size_t i = 1; i < curve.size(); ++i) s[i] = s[i - 1] + curve.step_length(i - 1);
    return s;
}

/// Unit-speed reparametrization on the sample grid. Zero-length steps are collapsed.
inline SampledCurve arc_length_reparam(const SampledCurve& curve) {
    std::vector<double> s{0.0};
    std::vector<PointId> ids{curve.sample(0)};
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double step = curve.space().distance(ids.back(), curve.sample(i));
        if (step == 0.0) continue;
        s.push_back(s.back() + step);
        ids.push_back(curve.sample(i));
    }
    if (ids.size() < 2) throw DegenerateInputError("curve has zero length; arc-length parametrization is undefined");
    return SampledCurve(curve.space_handle(), std::move(s), std::move(ids));
}

enum class Quotient { symmetric, left, right };

/// Grid indices (lo, hi) of the extreme grid times inside the difference window around `t`.
inline std::pair<std::size_t, std::size_t> window_indices(const SampledCurve& curve, double t, double window,
                                                          Quotient side = Quotient::symmetric) {
    const double a = curve.start();
    const double b = curve.end();
    if (!(window > 0.0)) throw InputError("speed window must be positive");
    if (!(t >= a && t <= b)) throw InputError("time " + std::to_string(t) + " lies outside [a,b]");
    const double span = b - a;
    const double limit = side == Quotient::symmetric ? 0.5 * span : span;
    if (window > limit) throw InputError("speed window is too large for the curve's time interval");

    const double slack = 1e-9 * span;
    const double lo_t = side == Quotient::right ? t : t - window;
    const double hi_t = side == Quotient::left ? t : t + window;
    const auto times = curve.times();
    const auto lo_it = std::lower_bound(times.begin(), times.end(), lo_t - slack);
    const auto hi_it = std::upper_bound(times.begin(), times.end(), hi_t + slack);
    if (lo_it == times.end() || hi_it == times.begin())
        throw InputError("speed window contains no grid times");
    const std::size_t lo = static_cast<std::size_t>(lo_it - times.begin());
    const std::size_t hi = static_cast<std::size_t>(hi_it - times.begin()) - 1;
    if (hi <= lo) throw InputError("speed window contains fewer than two grid times");
    return {lo, hi};
}

/// Difference quotient d(gamma(t-h), gamma(t+h)) / 2h at grid resolution, clipped to [a,b]
/// (hence one-sided at the endpoints).
inline double metric_speed(const SampledCurve& curve, double t, double window,
                           Quotient side = Quotient::symmetric) {
    const auto [lo, hi] = window_indices(curve, t, window, side);
    return curve.space().distance(curve.sample(lo), curve.sample(hi)) / (curve.time(hi) - curve.time(lo));
}

struct CurveStats {
    double total_variation = 0.0;
    bool is_simple = false;
    std::vector<double> speed_profile;  // per-interval chord quotients
};

inline CurveStats curve_stats(const SampledCurve& curve) {
    CurveStats stats;
    stats.is_simple = curve.is_simple();
    stats.speed_profile.reserve(curve.size() - 1);
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double step = curve.step_length(i);
        stats.total_variation += step;
        stats.speed_profile.push_back(step / (curve.time(i + 1) - curve.time(i)));
    }
    return stats;
}

/// Ratio (arc between the two grid neighbours) / (their distance) at every interior sample.
inline std::vector<double> chord_arc_profile(const SampledCurve& curve) {
    if (!curve.is_simple()) throw InputError("chord-arc profile needs a simple curve");
    if (total_variation(curve) == 0.0) throw DegenerateInputError("chord-arc profile needs a curve of positive length");
    std::vector<double> ratios;
    ratios.reserve(curve.size() > 2 ? curve.size() - 2 : 0);
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double arc = curve.step_length(i - 1) + curve.step_length(i);
        const double chord = curve.space().distance(curve.sample(i - 1), curve.sample(i + 1));
        ratios.push_back(arc / chord);
    }
    return ratios;
}

/// Largest arc/chord ratio over all sample pairs of a simple curve. The defect is this ratio minus 1.
inline double chord_arc_constant(const SampledCurve& curve) {
    const auto s = arc_length_coordinates(curve);
    double worst = 1.0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        for (std::size_t j = i + 1; j < curve.size(); ++j) {
            const double chord = curve.space().distance(curve.sample(i), curve.sample(j));
            if (chord == 0.0) continue;
            worst = std::max(worst, (s[j] - s[i]) / chord);
        }
    return worst;
}

} // namespace curvelab
