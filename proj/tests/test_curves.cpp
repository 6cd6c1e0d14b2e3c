#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace curvelab;
using Catch::Approx;

namespace {

SampledCurve l_polyline() { return SampledCurve::from_coordinates({0.0, 0.5, 1.0}, {{0, 0}, {1, 0}, {1, 1}}); }

SampledCurve circle(std::size_t n) {
    std::vector<double> t(n + 1);
    gen::Coords pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(n);
        const double a = 2.0 * std::numbers::pi * t[i];
        pts[i] = {std::cos(a), std::sin(a)};
    }
    pts[n] = pts[0];
    return SampledCurve::from_coordinates(t, pts);
}

SampledCurve line(std::size_t n) {
    gen::Coords pts;
    for (double t : gen::unit_times(n)) pts.push_back({t, 0.0});
    return SampledCurve::from_coordinates(gen::unit_times(n), pts);
}

} // namespace

TEST_CASE("curve construction validates its inputs", "[curve][errors]") {
    const auto space = share(MetricSpace::from_euclidean({{0.0}, {1.0}}));
    CHECK_THROWS_AS(SampledCurve(space, {0.0}, {0}), InputError);
    CHECK_THROWS_AS(SampledCurve(space, {0.0, 0.0}, {0, 1}), InputError);
    CHECK_THROWS_AS(SampledCurve(space, {1.0, 0.0}, {0, 1}), InputError);
    CHECK_THROWS_AS(SampledCurve(space, {0.0, 1.0}, {0, 2}), InputError);
    CHECK_THROWS_AS(SampledCurve(space, {0.0, INFINITY}, {0, 1}), InputError);
    CHECK_THROWS_AS(SampledCurve(space, {0.0, 1.0}, {0}), InputError);
    CHECK_THROWS_AS(SampledCurve(nullptr, {0.0, 1.0}, {0, 1}), InputError);
}

TEST_CASE("variation of the L-polyline", "[variation]") {
    const auto c = l_polyline();
    CHECK(variation_over_partition(c, Partition({0.0, 0.5, 1.0})) == 2.0);
    CHECK(variation_over_partition(c, Partition({0.0, 1.0})) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(total_variation(c) == 2.0);
    CHECK_THROWS_AS(variation_over_partition(c, Partition({0.0, 0.25, 1.0})), InputError);
    CHECK_THROWS_AS(variation_over_partition(c, Partition({0.5, 1.0})), InputError);
    CHECK_THROWS_AS(Partition({0.0, 0.0}), InputError);
}

TEST_CASE("constant curve has zero variation on every partition", "[variation]") {
    const auto space = share(MetricSpace::from_euclidean({{3.0, 4.0}}));
    const SampledCurve c(space, {0.0, 0.3, 0.6, 1.0}, {0, 0, 0, 0});
    for (const auto& idx : gen::all_grid_partitions(c.size())) CHECK(variation_over_indices(c, idx) == 0.0);
    CHECK(total_variation(c) == 0.0);
    CHECK(c.is_simple() == false);
}

TEST_CASE("360-gon approximates the circumference", "[variation]") {
    const auto c = circle(360);
    const double chord_sum = 360.0 * 2.0 * std::sin(std::numbers::pi / 360.0);
    CHECK(total_variation(c) == Approx(chord_sum).epsilon(1e-12));
    CHECK(std::abs(total_variation(c) - 2.0 * std::numbers::pi) < 1e-3);
}

TEST_CASE("refinement never decreases variation", "[variation][property]") {
    gen::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const auto space = gen::random_space(rng, gen::index(rng, 2, 10));
        const auto c = gen::random_curve(rng, space, gen::index(rng, 2, 8));
        const auto parts = gen::all_grid_partitions(c.size());
        std::vector<double> v;
        for (const auto& p : parts) v.push_back(variation_over_indices(c, p));
        for (std::size_t a = 0; a < parts.size(); ++a) {
            CHECK(v[a] <= total_variation(c) * (1 + 1e-12));
            for (std::size_t b = 0; b < parts.size(); ++b)
                if (gen::is_refinement(parts[a], parts[b])) REQUIRE(v[b] <= v[a] * (1 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("arc-length reparametrization", "[reparam]") {
    const auto r = arc_length_reparam(l_polyline());
    CHECK(std::vector<double>(r.times().begin(), r.times().end()) == std::vector<double>{0.0, 1.0, 2.0});

    const auto lc = line(11);
    const auto lr = arc_length_reparam(lc);
    REQUIRE(lr.size() == lc.size());
    for (std::size_t i = 0; i < lc.size(); ++i) CHECK(lr.time(i) == Approx(lc.time(i)).margin(1e-15));

    const auto repeated =
        SampledCurve::from_coordinates({0.0, 1.0, 2.0, 3.0}, {{0, 0}, {1, 0}, {1, 0}, {1, 2}});
    const auto rr = arc_length_reparam(repeated);
    CHECK(rr.size() == 3);
    CHECK(total_variation(rr) == total_variation(repeated));

    const auto space = share(MetricSpace::from_euclidean({{0.0}}));
    CHECK_THROWS_AS(arc_length_reparam(SampledCurve(space, {0.0, 1.0}, {0, 0})), DegenerateInputError);
}

TEST_CASE("reparametrization preserves length and has unit speed", "[reparam][property]") {
    gen::Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const auto space = gen::random_space(rng, gen::index(rng, 2, 20));
        const auto c = gen::random_curve(rng, space, gen::index(rng, 2, 60));
        if (total_variation(c) == 0.0) continue;
        const auto r = arc_length_reparam(c);
        CHECK(total_variation(r) == Approx(total_variation(c)).epsilon(1e-12));
        CHECK(r.end() == Approx(total_variation(c)).epsilon(1e-12));
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            REQUIRE(r.step_length(i) / (r.time(i + 1) - r.time(i)) == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("metric speed", "[speed]") {
    const auto lc = line(101);
    for (double t : {0.1, 0.37, 0.5, 0.9}) CHECK(metric_speed(lc, t, 0.05) == Approx(1.0).epsilon(1e-12));
    CHECK(metric_speed(lc, 0.0, 0.05) == Approx(1.0).epsilon(1e-12));
    CHECK(metric_speed(lc, 0.5, 0.05, Quotient::left) == Approx(1.0).epsilon(1e-12));
    CHECK(metric_speed(lc, 0.5, 0.05, Quotient::right) == Approx(1.0).epsilon(1e-12));

    const auto space = share(MetricSpace::from_euclidean({{1.0, 1.0}}));
    const SampledCurve constant(space, {0.0, 0.5, 1.0}, {0, 0, 0});
    CHECK(metric_speed(constant, 0.5, 0.5) == 0.0);

    CHECK_THROWS_AS(metric_speed(lc, 0.5, 0.6), InputError);
    CHECK_THROWS_AS(metric_speed(lc, 0.5, 0.0), InputError);
    CHECK_THROWS_AS(metric_speed(lc, 1.5, 0.1), InputError);
    CHECK_THROWS_AS(metric_speed(lc, 0.5, 0.001), InputError);
}

TEST_CASE("speed on the dense circle", "[speed]") {
    const auto c = circle(20000);
    for (double t : {0.1, 0.25, 0.5, 0.77}) CHECK(std::abs(metric_speed(c, t, 1e-3) - 2.0 * std::numbers::pi) < 1e-2);
}

TEST_CASE("integrated speed matches total variation", "[speed][property]") {
    const std::size_t n = 4001;
    gen::Coords pts;
    const auto t = gen::unit_times(n);
    for (double x : t) pts.push_back({x, 0.3 * std::sin(3.0 * x), x * x});
    const auto c = SampledCurve::from_coordinates(t, pts);
    const std::size_t m = 201;
    const double h = 0.005;
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double a = static_cast<double>(k) / (m - 1), b = static_cast<double>(k + 1) / (m - 1);
        integral += 0.5 * (metric_speed(c, a, h) + metric_speed(c, b, h)) * (b - a);
    }
    CHECK(integral == Approx(total_variation(c)).epsilon(0.02));
}

TEST_CASE("Hausdorff content examples", "[content]") {
    gen::Coords pts;
    for (double x : gen::unit_times(1001)) pts.push_back({x});
    const auto seg = share(MetricSpace::from_euclidean(pts));
    std::vector<PointId> all(seg->size());
    for (PointId p = 0; p < all.size(); ++p) all[p] = p;
    const double v = hausdorff1_content(*seg, all, 0.01);
    CHECK(v >= 1.0);
    CHECK(v <= 1.1);

    const std::vector<PointId> one{500};
    for (double d : {1e-6, 0.1, 10.0}) CHECK(hausdorff1_content(*seg, one, d) == 0.0);

    const auto two = MetricSpace::from_euclidean({{0.0}, {1.0}});
    const std::vector<PointId> both{0, 1};
    CHECK(hausdorff1_content(two, both, 0.1) <= 0.2);

    CHECK_THROWS_AS(hausdorff1_content(two, both, 0.0), InputError);
    CHECK_THROWS_AS(hausdorff1_content(two, std::span<const PointId>{}, 0.1), InputError);
}

TEST_CASE("content tracks length on simple curves at grid resolution", "[content][property]") {
    gen::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto v = gen::densify(gen::monotone_polyline(rng, gen::index(rng, 1, 8)), 0.01);
        const auto c = gen::polyline_curve(v);
        double h = 0.0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) h = std::max(h, c.step_length(i));
        const double content = hausdorff1_content(c.space(), c.samples(), h);
        CHECK(content == Approx(gen::polyline_length(v)).epsilon(0.1));
    }
}

TEST_CASE("chord-arc profile", "[chordarc]") {
    for (double r : chord_arc_profile(line(20))) CHECK(r == Approx(1.0).epsilon(1e-12));

    const double a = 0.7;
    const auto corner = SampledCurve::from_coordinates({0, 1, 2}, {{0, 0}, {a, 0}, {a, a}});
    const auto p = chord_arc_profile(corner);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == Approx(std::sqrt(2.0)).epsilon(1e-12));

    // Ratios approach 1 on a refined smooth arc.
    double previous = INFINITY;
    for (std::size_t n : {10, 100, 1000}) {
        gen::Coords pts;
        for (double t : gen::unit_times(n)) pts.push_back({std::cos(t), std::sin(t)});
        const auto arc = SampledCurve::from_coordinates(gen::unit_times(n), pts);
        const auto ratios = chord_arc_profile(arc);
        const double worst = *std::max_element(ratios.begin(), ratios.end());
        CHECK(worst >= 1.0);
        CHECK(worst < previous);
        previous = worst;
    }
    CHECK(previous - 1.0 < 1e-6);

    const auto space = share(MetricSpace::from_euclidean({{0.0}, {1.0}}));
    CHECK_THROWS_AS(chord_arc_profile(SampledCurve(space, {0, 1, 2}, {0, 1, 0})), InputError);
}

TEST_CASE("curve statistics", "[curve]") {
    const auto stats = curve_stats(l_polyline());
    CHECK(stats.total_variation == 2.0);
    CHECK(stats.is_simple);
    CHECK(stats.speed_profile == std::vector<double>{2.0, 2.0});
}
