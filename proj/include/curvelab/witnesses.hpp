#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/levels.hpp"
#include "curvelab/lipschitz.hpp"
#include "curvelab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvelab {

/// Continuous triangle wave of period 2*tooth with range [0, tooth] and slope +1 on
/// [2k tooth, (2k+1) tooth], -1 on [(2k+1) tooth, (2k+2) tooth].
inline double triangle_wave(double t, double tooth) {
    const double r = std::fmod(t, 2.0 * tooth);
    return r <= tooth ? r : 2.0 * tooth - r;
}

enum class Relation { at_most, at_least };

/// A property of a realized witness, checked numerically at construction time.
struct Certificate {
    std::string name;
    double value;
    Relation relation;
    double bound;

    bool satisfied() const { return relation == Relation::at_most ? value <= bound : value >= bound; }
};

struct WitnessFunction {
    LipschitzSample realization;
    std::vector<Certificate> certificates;
    std::map<std::string, double> diagnostics;

    bool all_satisfied() const {
        return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.satisfied(); });
    }

    std::optional<Certificate> certificate(const std::string& name) const {
        for (const auto& c : certificates)
            if (c.name == name) return c;
        return std::nullopt;
    }
};

namespace detail {

inline void require_simple_with_length(const SampledCurve& curve, const char* who) {
    if (!curve.is_simple()) throw InputError(std::string(who) + " needs a simple curve");
    if (total_variation(curve) == 0.0) throw DegenerateInputError(std::string(who) + " needs a curve of positive length");
}

inline double sum_abs_increments(std::span<const double> v) {
    double sum = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) sum += std::abs(v[i] - v[i - 1]);
    return sum;
}

/// Wraps arc-length values along a simple curve into a witness with the shared certificates.
inline WitnessFunction realize_arc_witness(const SampledCurve& curve, const std::vector<double>& values,
                                           double amplitude, double variation_floor) {
    const std::vector<PointId> support(curve.samples().begin(), curve.samples().end());
    const double tv = total_variation(curve);
    const double lip = lip_constant(curve.space(), support, values);
    const double chord_arc = chord_arc_constant(curve);
    const double v = sum_abs_increments(values);
    double sup = 0.0;
    for (double x : values) sup = std::max(sup, std::abs(x));

    WitnessFunction w{LipschitzSample(curve.space_handle(), support, values, lip), {}, {}};
    w.certificates.push_back({"sup_abs", sup, Relation::at_most, amplitude});
    // Bounds that hold with equality in exact arithmetic get one part in 1e12 for rounding.
    w.certificates.push_back({"lipschitz_on_image", lip, Relation::at_most, chord_arc * (1.0 + 1e-12)});
    w.certificates.push_back({"variation_recovered", v, Relation::at_least, variation_floor});
    w.certificates.push_back({"variation_contracted", v, Relation::at_most, tv * (1.0 + 1e-12)});
    w.diagnostics["total_variation"] = tv;
    w.diagnostics["chord_arc_defect"] = chord_arc - 1.0;
    w.diagnostics["variation_of_composition"] = v;
    w.diagnostics["remainder"] = tv - v;
    w.diagnostics["max_level_crossings"] = static_cast<double>(sweep_levels(values).max_crossings);
    return w;
}

} // namespace detail

/// g(x) = triangle_wave(s(x), tooth) where s is the arc-length coordinate along a simple curve.
/// Certified: sup|g| <= tooth, Lip(g) on the image <= 1 + chord-arc defect,
/// V(g o gamma) >= l(gamma) - 2 tooth on the sample grid, and V(g o gamma) <= l(gamma).
/// The variation floor only holds when the grid resolves the teeth; otherwise the
/// certificate is reported as unsatisfied.
inline WitnessFunction sawtooth_witness(const SampledCurve& curve, double tooth) {
    if (!(tooth > 0.0)) throw InputError("tooth must be positive");
    detail::require_simple_with_length(curve, "sawtooth witness");
    const auto s = arc_length_coordinates(curve);
    const double length = s.back();
    if (tooth > length) throw InputError("tooth exceeds the curve length");

    std::vector<double> values;
    values.reserve(s.size());
    for (double x : s) values.push_back(triangle_wave(x, tooth));

    auto w = detail::realize_arc_witness(curve, values, tooth, length - 2.0 * tooth);
    w.diagnostics["tooth"] = tooth;
    w.diagnostics["tooth_count"] = std::ceil(length / tooth);
    return w;
}

/// Slope +-1 zigzag of arc length whose turning points sit on samples. Each step changes the
/// value by exactly its chord, so V(g o gamma) = l(gamma) on the grid. Needs every step <= tooth/2.
inline std::vector<double> grid_aligned_sawtooth(const SampledCurve& curve, double tooth) {
    std::vector<double> values{0.0};
    values.reserve(curve.size());
    double direction = 1.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double step = curve.step_length(i);
        const double g = values.back();
        if (direction > 0.0 && g + step > tooth) direction = -1.0;
        else if (direction < 0.0 && g - step < 0.0) direction = 1.0;
        values.push_back(std::clamp(g + direction * step, 0.0, tooth));
    }
    return values;
}

/// A sawtooth with tooth = slack/2, so that V(g o gamma) >= l(gamma) - slack and |g| <= slack/2.
/// When every grid step is at most tooth/2 the teeth are snapped to the grid (no grid loss);
/// otherwise the plain triangle wave is used and the certificates report what was achieved.
inline WitnessFunction variation_preserving_witness(const SampledCurve& curve, double slack) {
    if (!(slack > 0.0)) throw InputError("slack must be positive");
    detail::require_simple_with_length(curve, "variation-preserving witness");
    const double length = total_variation(curve);
    const double tooth = std::min(0.5 * slack, length);

    double max_step = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) max_step = std::max(max_step, curve.step_length(i));

    WitnessFunction w = [&] {
        if (max_step <= 0.5 * tooth) {
            auto aligned = detail::realize_arc_witness(curve, grid_aligned_sawtooth(curve, tooth), tooth,
                                                       length - slack);
            aligned.diagnostics["grid_aligned"] = 1.0;
            return aligned;
        }
        auto plain = sawtooth_witness(curve, tooth);
        for (auto& c : plain.certificates)
            if (c.name == "variation_recovered") c.bound = length - slack;
        plain.diagnostics["grid_aligned"] = 0.0;
        return plain;
    }();
    w.diagnostics["tooth"] = tooth;
    w.diagnostics["slack"] = slack;
    return w;
}

/// Values (-1)^k eps_k at points x_1..x_N (k counted from 1), Lipschitz bound 1.
/// Requires d(x_i, x_j) >= eps_i + eps_j for i != j, which makes the sample 1-Lipschitz.
/// Any curve visiting x_1..x_N in order then has V(h o gamma) >= sum_k (eps_k + eps_{k+1}).
inline WitnessFunction alternating_separated_witness(const SpaceHandle& space, std::span<const PointId> points,
                                                     std::span<const double> radii) {
    if (!space) throw InputError("alternating witness needs a metric space");
    if (points.empty()) throw InputError("alternating witness needs at least one point");
    if (points.size() != radii.size()) throw InputError("point and radius counts differ");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!space->contains(points[i])) throw InputError("witness point is not a point of the space");
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InputError("witness radii must be positive");
    }
    double worst_jump = -std::numeric_limits<double>::infinity();
    double worst_gap = -std::numeric_limits<double>::infinity();
    std::vector<double> values(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) values[k] = (k % 2 == 0 ? -1.0 : 1.0) * radii[k];

    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = space->distance(points[i], points[j]);
            const double reach = radii[i] + radii[j];
            if (d < reach)
                throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are closer than the sum of their radii (" + std::to_string(d) + " < " +
                                 std::to_string(reach) + ")");
            worst_jump = std::max(worst_jump, std::abs(values[i] - values[j]) - reach);
            worst_gap = std::max(worst_gap, reach - d);
        }

    double bound = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) bound += radii[k] + radii[k + 1];
    const double ordered = detail::sum_abs_increments(values);
    const double lip = points.size() > 1 ? lip_constant(*space, {points.begin(), points.end()}, values) : 0.0;

    WitnessFunction w{LipschitzSample(space, {points.begin(), points.end()}, values, 1.0), {}, {}};
    w.certificates.push_back({"lipschitz_on_support", lip, Relation::at_most, 1.0});
    if (points.size() > 1) {
        w.certificates.push_back({"jump_within_radii", worst_jump, Relation::at_most, 0.0});
        w.certificates.push_back({"radii_within_distance", worst_gap, Relation::at_most, 0.0});
    }
    w.certificates.push_back({"ordered_variation", ordered, Relation::at_least, bound});
    w.diagnostics["variation_lower_bound"] = bound;
    return w;
}

/// V(h o gamma) over the finest partition, with h the McShane extension of the witness.
inline double composed_variation(const WitnessFunction& w, const SampledCurve& curve,
                                 Envelope envelope = Envelope::upper) {
    const auto values = extend_to_points(w.realization, curve.samples(), envelope);
    return detail::sum_abs_increments(values);
}

} // namespace curvelab
