#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/digest.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/hausdorff.hpp"
#include "curvelab/levels.hpp"
#include "curvelab/lipschitz.hpp"
#include "curvelab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvelab {

/// Outcome of one numerical check. `pass` is derived: |residual| <= tolerance.
struct CheckReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string context;

    CheckReport() = default;
    CheckReport(std::string name_, double lhs_, double rhs_, double residual_, double tolerance_, std::string context_)
        : name(std::move(name_)), lhs(lhs_), rhs(rhs_), residual(residual_), tolerance(tolerance_),
          pass(std::abs(residual_) <= tolerance_), context(std::move(context_)) {}

    const char* verdict() const noexcept { return pass ? "pass" : "fail"; }
};

/// |lhs - rhs| / max(|lhs|, |rhs|), and 0 when both vanish.
inline double relative_gap(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

namespace detail {

inline void digest_curve(Digest& d, const SampledCurve& curve) {
    d.add(to_string(curve.space().kind()));
    d.add_all(curve.times());
    for (PointId p : curve.samples()) {
        if (curve.space().kind() == MetricKind::euclidean) d.add_all(curve.space().coordinates(p));
        else d.add(curve.space().label(p));
    }
}

inline void digest_sample(Digest& d, const LipschitzSample& h) {
    for (PointId p : h.support()) {
        if (h.space().kind() == MetricKind::euclidean) d.add_all(h.space().coordinates(p));
        else d.add(h.space().label(p));
    }
    d.add_all(h.values());
    d.add(h.lipschitz());
}

} // namespace detail

inline std::string curve_digest(const SampledCurve& curve) {
    Digest d;
    detail::digest_curve(d, curve);
    return d.hex();
}

inline std::string curve_sample_digest(const SampledCurve& curve, const LipschitzSample& h) {
    Digest d;
    detail::digest_curve(d, curve);
    detail::digest_sample(d, h);
    return d.hex();
}

namespace defaults {
inline constexpr double contraction_rel = 1e-12;
inline constexpr double identity_rel = 1e-6;
} // namespace defaults

/// V(h o gamma) <= L_h V(gamma). h is evaluated through its McShane extension, which agrees
/// with the data wherever h is given. The residual is the excess of lhs over rhs.
inline CheckReport check_contraction(const SampledCurve& curve, const LipschitzSample& h,
                                     double rel_tol = defaults::contraction_rel) {
    const auto values = extend_to_points(h, curve.samples());
    double lhs = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) lhs += std::abs(values[i] - values[i - 1]);
    const double rhs = h.lipschitz() * total_variation(curve);
    return {"contraction", lhs, rhs, std::max(0.0, lhs - rhs), rel_tol * rhs, curve_sample_digest(curve, h)};
}

/// Area formula on the arc-length grid:
///   lhs = sum over steps of theta * J * ds, with J = |d(h o gamma_s)| / ds,
///   rhs = integral over levels y of the theta-weighted number of steps crossing y.
/// theta is given per sample; a step carries the mean of its endpoint weights.
inline CheckReport area_formula_check(const SampledCurve& curve, const LipschitzSample& h,
                                      std::span<const double> theta, double rel_tol = defaults::identity_rel) {
    if (!curve.is_simple()) throw InputError("area formula check needs a simple curve");
    if (theta.size() != curve.size()) throw InputError("theta needs one weight per sample");
    for (double w : theta)
        if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("theta weights must be finite and nonnegative");

    const auto values = extend_to_points(h, curve.samples());
    std::vector<double> weights(curve.size() - 1);
    double lhs = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        weights[i] = 0.5 * (theta[i] + theta[i + 1]);
        const double ds = curve.step_length(i);
        const double jacobian = std::abs(values[i + 1] - values[i]) / ds;
        lhs += weights[i] * jacobian * ds;
    }
    const double rhs = sweep_levels(values, weights).weighted_integral;

    Digest d;
    detail::digest_curve(d, curve);
    detail::digest_sample(d, h);
    d.add_all(theta);
    return {"area", lhs, rhs, relative_gap(lhs, rhs), rel_tol, d.hex()};
}

inline CheckReport area_formula_check(const SampledCurve& curve, const LipschitzSample& h,
                                      double rel_tol = defaults::identity_rel) {
    const std::vector<double> ones(curve.size(), 1.0);
    return area_formula_check(curve, h, ones, rel_tol);
}

struct ImageMeasure {
    double weighted_length = 0.0;  // sum over image pieces of multiplicity x length
    double image_length = 0.0;     // H^1 of the image, each piece counted once
    std::size_t max_multiplicity = 0;
};

/// Decomposes the image into the geodesic pieces between consecutive distinct samples and
/// counts how often the curve traverses each piece.
inline ImageMeasure image_multiplicity(const SampledCurve& curve) {
    std::map<std::pair<PointId, PointId>, std::size_t> pieces;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        PointId u = curve.sample(i), v = curve.sample(i + 1);
        if (u == v) continue;
        if (v < u) std::swap(u, v);
        ++pieces[{u, v}];
    }
    ImageMeasure m;
    for (const auto& [piece, count] : pieces) {
        const double len = curve.space().distance(piece.first, piece.second);
        m.weighted_length += static_cast<double>(count) * len;
        m.image_length += len;
        m.max_multiplicity = std::max(m.max_multiplicity, count);
    }
    return m;
}

/// V(gamma) against the integral of the multiplicity function over the image.
inline CheckReport variation_integral_check(const SampledCurve& curve, double rel_tol = defaults::identity_rel) {
    const double lhs = total_variation(curve);
    const double rhs = image_multiplicity(curve).weighted_length;
    return {"varint", lhs, rhs, relative_gap(lhs, rhs), rel_tol, curve_digest(curve)};
}

/// Grid-index interval [first, last] of a union of grid intervals.
struct GridInterval {
    std::size_t first;
    std::size_t last;
};

/// Lipschitz-consistency certificate for the Luzin N property on a small time set:
/// lhs = H^1_delta content of gamma(null_set), rhs = L * |null_set| where L is the largest step
/// quotient outside the null set (all steps if the null set covers everything). The tolerance
/// allows one boundary cell per interval, 2 L h_max each, where h_max is the longest step inside.
inline CheckReport luzin_n_probe(const SampledCurve& curve, std::span<const GridInterval> null_set, double delta) {
    if (!(delta > 0.0)) throw InputError("Luzin probe needs a positive delta");
    std::vector<bool> inside_step(curve.size() - 1, false);
    std::vector<PointId> image;
    double measure = 0.0;
    double longest = 0.0;
    for (const auto& iv : null_set) {
        if (iv.first > iv.last || iv.last >= curve.size()) throw InputError("null-set interval is out of range");
        measure += curve.time(iv.last) - curve.time(iv.first);
        for (std::size_t i = iv.first; i <= iv.last; ++i) image.push_back(curve.sample(i));
        for (std::size_t i = iv.first; i < iv.last; ++i) {
            inside_step[i] = true;
            longest = std::max(longest, curve.time(i + 1) - curve.time(i));
        }
    }

    double lip_outside = 0.0, lip_all = 0.0;
    bool any_outside = false;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double q = curve.step_length(i) / (curve.time(i + 1) - curve.time(i));
        lip_all = std::max(lip_all, q);
        if (!inside_step[i]) {
            lip_outside = std::max(lip_outside, q);
            any_outside = true;
        }
    }
    const double lip = any_outside ? lip_outside : lip_all;
    const double lhs = image.empty() ? 0.0 : hausdorff1_content(curve.space(), image, delta);
    const double rhs = lip * measure;
    const double tol = 2.0 * lip * longest * static_cast<double>(null_set.size());

    Digest d;
    detail::digest_curve(d, curve);
    for (const auto& iv : null_set) d.add(static_cast<std::uint64_t>(iv.first)).add(static_cast<std::uint64_t>(iv.last));
    d.add(delta);
    return {"luzin", lhs, rhs, std::max(0.0, lhs - rhs), tol, d.hex()};
}

} // namespace curvelab
