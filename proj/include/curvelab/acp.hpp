#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

namespace curvelab {

enum class AcVerdict { consistent, inconsistent, inconclusive };

inline std::string_view to_string(AcVerdict v) {
    switch (v) {
    case AcVerdict::consistent: return "consistent";
    case AcVerdict::inconsistent: return "inconsistent";
    case AcVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct AcpReport {
    double p = 1.0;
    double norm_estimate = 0.0;        // on the finest grid
    double normalized_estimate = 0.0;  // power mean: norm / (b - a)^{1/p}
    AcVerdict verdict = AcVerdict::inconclusive;
    std::vector<double> estimates;         // one per grid, coarse to fine
    std::vector<double> refinement_trend;  // relative change between consecutive grids
    std::vector<std::size_t> grid_sizes;
};

/// Exact curve t -> map(t) in R^n on [a, b], sampled on demand.
struct CurveOracle {
    std::function<std::vector<double>(double)> map;
    double a = 0.0;
    double b = 1.0;

    /// Uniform grid of n samples including both endpoints.
    SampledCurve sample(std::size_t n) const {
        if (n < 2) throw InputError("a sampled curve needs at least two samples");
        if (!(b > a)) throw InputError("oracle interval is empty");
        std::vector<double> times(n);
        std::vector<std::vector<double>> coords(n);
        for (std::size_t i = 0; i < n; ++i) {
            times[i] = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            coords[i] = map(times[i]);
        }
        return SampledCurve::from_coordinates(std::move(times), coords);
    }
};

inline constexpr double acp_stability = 0.05;

/// Grid estimate of the L_p norm of the metric speed: (sum_i (d_i / dt_i)^p dt_i)^{1/p},
/// or max_i d_i / dt_i for p = infinity. `indices` selects a subgrid (all samples when empty).
inline double speed_norm_estimate(const SampledCurve& curve, double p, std::span<const std::size_t> indices = {}) {
    if (!(p >= 1.0)) throw InputError("p must lie in [1, inf]");
    std::vector<std::size_t> all;
    if (indices.empty()) {
        all.resize(curve.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        indices = all;
    }
    const MetricSpace& space = curve.space();
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
        const std::size_t i = indices[k], j = indices[k + 1];
        const double dt = curve.time(j) - curve.time(i);
        const double q = space.distance(curve.sample(i), curve.sample(j)) / dt;
        if (std::isinf(p)) acc = std::max(acc, q);
        else if (q > 0.0) acc += std::pow(q, p) * dt;
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

namespace detail {

inline double relative_change(double coarse, double fine) {
    const double scale = std::max(std::abs(coarse), std::abs(fine));
    return scale == 0.0 ? 0.0 : std::abs(fine - coarse) / scale;
}

inline void finish_report(AcpReport& r, double length) {
    r.norm_estimate = r.estimates.back();
    r.normalized_estimate = std::isinf(r.p) ? r.norm_estimate : r.norm_estimate / std::pow(length, 1.0 / r.p);
    for (std::size_t k = 1; k < r.estimates.size(); ++k)
        r.refinement_trend.push_back(relative_change(r.estimates[k - 1], r.estimates[k]));
}

} // namespace detail

/// AC_p verdict from a refinement oracle: consistent iff every consecutive pair of grids changes
/// the estimate by at most 5%.
inline AcpReport ac_p_test(const CurveOracle& oracle, double p, std::vector<std::size_t> grid_sizes = {1'000, 10'000, 100'000}) {
    if (grid_sizes.size() < 2) throw InputError("an AC_p verdict needs at least two grids");
    if (!std::is_sorted(grid_sizes.begin(), grid_sizes.end()) ||
        std::adjacent_find(grid_sizes.begin(), grid_sizes.end()) != grid_sizes.end())
        throw InputError("grid sizes must be strictly increasing");
    AcpReport r;
    r.p = p;
    r.grid_sizes = grid_sizes;
    for (std::size_t n : grid_sizes) r.estimates.push_back(speed_norm_estimate(oracle.sample(n), p));
    detail::finish_report(r, oracle.b - oracle.a);
    const bool stable = std::all_of(r.refinement_trend.begin(), r.refinement_trend.end(),
                                    [](double c) { return c <= acp_stability; });
    r.verdict = stable ? AcVerdict::consistent : AcVerdict::inconsistent;
    return r;
}

/// Without an oracle the finer grid is the curve itself and the coarser grid keeps every other
/// sample (plus the last). An unstable estimate cannot be told apart from under-resolution, so it
/// is reported as inconclusive.
inline AcpReport ac_p_test(const SampledCurve& curve, double p) {
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i < curve.size(); i += 2) coarse.push_back(i);
    if (coarse.back() != curve.size() - 1) coarse.push_back(curve.size() - 1);

    AcpReport r;
    r.p = p;
    r.grid_sizes = {coarse.size(), curve.size()};
    r.estimates = {speed_norm_estimate(curve, p, coarse), speed_norm_estimate(curve, p)};
    detail::finish_report(r, curve.end() - curve.start());
    r.verdict = r.refinement_trend.front() <= acp_stability ? AcVerdict::consistent : AcVerdict::inconclusive;
    return r;
}

} // namespace curvelab
