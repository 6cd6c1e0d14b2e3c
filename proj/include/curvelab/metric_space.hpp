#pragma once

#include "curvelab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curvelab {

using PointId = std::size_t;
using DistanceTable = std::vector<std::vector<double>>;

enum class MetricKind { matrix, euclidean, graph };

inline std::string_view to_string(MetricKind kind) {
    switch (kind) {
    case MetricKind::matrix: return "matrix";
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::graph: return "graph";
    }
    return "unknown";
}

enum class Axiom { zero_diagonal, symmetry, triangle, positivity };

inline std::string_view to_string(Axiom axiom) {
    switch (axiom) {
    case Axiom::zero_diagonal: return "zero_diagonal";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle";
    case Axiom::positivity: return "positivity";
    }
    return "unknown";
}

/// One witnessed axiom failure. For the triangle axiom the witness is (i, k, j) with
/// d(i,k) > d(i,j) + d(j,k); for pair axioms only the first two entries are meaningful.
struct Violation {
    Axiom axiom;
    std::array<PointId, 3> witness;
    double excess;
};

struct ValidationReport {
    bool pass = true;
    double tolerance = 0.0;
    std::vector<Violation> violations;          // first witnesses, capped per axiom
    std::map<Axiom, std::size_t> violation_counts;

    std::optional<Violation> first(Axiom axiom) const {
        for (const auto& v : violations)
            if (v.axiom == axiom) return v;
        return std::nullopt;
    }
};

namespace detail {

inline bool all_integral(const DistanceTable& table) {
    for (const auto& row : table)
        for (double v : row)
            if (v != std::floor(v)) return false;
    return true;
}

} // namespace detail

/// Tolerance used when validating `table`: zero for integer tables, otherwise 1e-9 times
/// the largest entry.
inline double default_metric_tolerance(const DistanceTable& table) {
    if (detail::all_integral(table)) return 0.0;
    double scale = 0.0;
    for (const auto& row : table)
        for (double v : row) scale = std::max(scale, std::abs(v));
    return 1e-9 * scale;
}

/// Checks the four metric axioms on a raw square table. Throws InputError when the table is
/// not square or holds non-finite entries; axiom failures are reported, not thrown.
inline ValidationReport validate_metric(const DistanceTable& table,
                                        std::optional<double> tolerance = std::nullopt) {
    const std::size_t n = table.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw InputError("distance table is not square: row " + std::to_string(i) + " has " +
                             std::to_string(table[i].size()) + " entries, expected " +
                             std::to_string(n));
        for (double v : table[i])
            if (!std::isfinite(v))
                throw InputError("distance table has a non-finite entry in row " + std::to_string(i));
    }

    ValidationReport report;
    report.tolerance = tolerance.value_or(default_metric_tolerance(table));
    const double tol = report.tolerance;
    constexpr std::size_t kWitnessCap = 16;

    auto record = [&](Axiom axiom, std::array<PointId, 3> w, double excess) {
        report.pass = false;
        auto& count = report.violation_counts[axiom];
        if (count < kWitnessCap) report.violations.push_back({axiom, w, excess});
        ++count;
    };

    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(table[i][i]) > tol) record(Axiom::zero_diagonal, {i, i, i}, std::abs(table[i][i]));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(table[i][j] - table[j][i]);
            if (gap > tol) record(Axiom::symmetry, {i, j, j}, gap);
            if (table[i][j] <= tol) record(Axiom::positivity, {i, j, j}, tol - table[i][j]);
            if (table[j][i] <= tol && table[i][j] > tol) record(Axiom::positivity, {j, i, i}, tol - table[j][i]);
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double excess = table[i][k] - (table[i][j] + table[j][k]);
                if (excess > tol) record(Axiom::triangle, {i, k, j}, excess);
            }
        }
    return report;
}

struct WeightedEdge {
    PointId u;
    PointId v;
    double weight;
};

/// A finite metric space. Matrix and graph spaces keep a dense distance table; Euclidean
/// spaces keep coordinates and compute distances on demand so that large point clouds
/// stay cheap. Immutable after construction.
class MetricSpace {
public:
    static MetricSpace from_matrix(const DistanceTable& table, std::vector<std::string> labels = {}) {
        const auto report = validate_metric(table);
        if (!report.pass) {
            const auto& v = report.violations.front();
            throw InputError("distance table violates the " + std::string(to_string(v.axiom)) +
                             " axiom at (" + std::to_string(v.witness[0]) + "," +
                             std::to_string(v.witness[1]) + "," + std::to_string(v.witness[2]) + ")");
        }
        MetricSpace space(MetricKind::matrix, table.size(), std::move(labels));
        const std::size_t n = table.size();
        space.matrix_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) space.matrix_[i * n + j] = 0.5 * (table[i][j] + table[j][i]);
        return space;
    }

    /// Coordinates must be pairwise distinct (positivity of the metric).
    static MetricSpace from_euclidean(const std::vector<std::vector<double>>& points,
                                      std::vector<std::string> labels = {}) {
        const std::size_t dim = points.empty() ? 0 : points.front().size();
        std::map<std::vector<double>, PointId> seen;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].size() != dim)
                throw InputError("Euclidean point " + std::to_string(i) + " has dimension " +
                                 std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
            for (double c : points[i])
                if (!std::isfinite(c)) throw InputError("Euclidean point " + std::to_string(i) + " has a non-finite coordinate");
            auto [it, inserted] = seen.emplace(points[i], i);
            if (!inserted)
                throw InputError("Euclidean points " + std::to_string(it->second) + " and " + std::to_string(i) +
                                 " coincide (positivity axiom)");
        }
        MetricSpace space(MetricKind::euclidean, points.size(), std::move(labels));
        space.dimension_ = dim;
        space.coords_.reserve(points.size() * dim);
        for (const auto& p : points) space.coords_.insert(space.coords_.end(), p.begin(), p.end());
        return space;
    }

    /// Shortest-path metric of a connected, positively weighted, undirected graph.
    static MetricSpace from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                  std::vector<std::string> labels = {}) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const std::size_t n = vertex_count;
        std::vector<double> d(n * n, inf);
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
        for (const auto& e : edges) {
            if (e.u >= n || e.v >= n) throw InputError("graph edge references an unknown vertex");
            if (!(e.weight > 0.0) || !std::isfinite(e.weight))
                throw InputError("graph edge weights must be positive and finite");
            if (e.u == e.v) continue;
            d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
            d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.weight);
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const double dik = d[i * n + k];
                if (dik == inf) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    const double via = dik + d[k * n + j];
                    if (via < d[i * n + j]) d[i * n + j] = via;
                }
            }
        DistanceTable table(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i * n + j] == inf)
                    throw InputError("graph is disconnected: no path between vertices " + std::to_string(i) +
                                     " and " + std::to_string(j));
                table[i][j] = d[i * n + j];
            }
        MetricSpace space = from_matrix(table, std::move(labels));
        space.kind_ = MetricKind::graph;
        return space;
    }

    std::size_t size() const noexcept { return size_; }
    MetricKind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return dimension_; }

    double distance(PointId i, PointId j) const {
        if (kind_ == MetricKind::euclidean) {
            const double* a = coords_.data() + i * dimension_;
            const double* b = coords_.data() + j * dimension_;
            double sum = 0.0;
            for (std::size_t c = 0; c < dimension_; ++c) {
                const double diff = a[c] - b[c];
                sum += diff * diff;
            }
            return std::sqrt(sum);
        }
        return matrix_[i * size_ + j];
    }

    std::span<const double> coordinates(PointId i) const {
        if (kind_ != MetricKind::euclidean) return {};
        return {coords_.data() + i * dimension_, dimension_};
    }

    const std::string& label(PointId i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::optional<PointId> find(std::string_view label) const {
        if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
        return std::nullopt;
    }

    bool contains(PointId i) const noexcept { return i < size_; }

private:
    MetricSpace(MetricKind kind, std::size_t n, std::vector<std::string> labels)
        : kind_(kind), size_(n), labels_(std::move(labels)) {
        if (labels_.empty()) {
            labels_.reserve(n);
            for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
        }
        if (labels_.size() != n)
            throw InputError("label count " + std::to_string(labels_.size()) + " does not match point count " +
                             std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (!index_.emplace(labels_[i], i).second) throw InputError("duplicate point label '" + labels_[i] + "'");
    }

    MetricKind kind_;
    std::size_t size_ = 0;
    std::size_t dimension_ = 0;
    std::vector<double> matrix_;
    std::vector<double> coords_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, PointId> index_;
};

using SpaceHandle = std::shared_ptr<const MetricSpace>;

inline SpaceHandle share(MetricSpace space) {
    return std::make_shared<const MetricSpace>(std::move(space));
}

/// Collects Euclidean points, merging exact duplicates, then freezes them into a MetricSpace.
class EuclideanPointSet {
public:
    explicit EuclideanPointSet(std::size_t dimension) : dimension_(dimension) {}

    PointId add(std::span<const double> coords, std::string label = {}) {
        if (coords.size() != dimension_)
            throw InputError("point has dimension " + std::to_string(coords.size()) + ", expected " +
                             std::to_string(dimension_));
        std::vector<double> key(coords.begin(), coords.end());
        if (auto it = ids_.find(key); it != ids_.end()) return it->second;
        const PointId id = points_.size();
        ids_.emplace(key, id);
        points_.push_back(std::move(key));
        labels_.push_back(std::move(label));
        return id;
    }

    std::optional<PointId> find(std::span<const double> coords) const {
        if (auto it = ids_.find(std::vector<double>(coords.begin(), coords.end())); it != ids_.end()) return it->second;
        return std::nullopt;
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }

    /// Unlabelled points get their index as label, or "p<index>" when that string is taken.
    MetricSpace build() const {
        std::vector<std::string> labels = labels_;
        std::unordered_map<std::string, bool> taken;
        for (const auto& l : labels)
            if (!l.empty()) taken[l] = true;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].empty()) continue;
            std::string candidate = std::to_string(i);
            if (taken.count(candidate)) candidate = "p" + candidate;
            labels[i] = candidate;
            taken[candidate] = true;
        }
        return MetricSpace::from_euclidean(points_, std::move(labels));
    }

private:
    std::size_t dimension_;
    std::vector<std::vector<double>> points_;
    std::vector<std::string> labels_;
    std::map<std::vector<double>, PointId> ids_;
};

struct SeparatedNet {
    double epsilon;
    std::vector<PointId> members;
};

/// Greedy maximal epsilon-separated subset of `candidates`, scanned in the given order.
/// Every rejected candidate lies strictly within epsilon of an admitted member.
inline SeparatedNet maximal_separated_net(const MetricSpace& space, std::span<const PointId> candidates,
                                          double epsilon) {
    if (candidates.empty()) throw InputError("separated net needs at least one candidate");
    if (!(epsilon > 0.0)) throw InputError("separated net needs a positive epsilon");
    SeparatedNet net{epsilon, {}};
    for (PointId c : candidates) {
        if (!space.contains(c)) throw InputError("candidate " + std::to_string(c) + " is not a point of the space");
        const bool admit = std::all_of(net.members.begin(), net.members.end(),
                                       [&](PointId m) { return space.distance(c, m) >= epsilon; });
        if (admit) net.members.push_back(c);
    }
    return net;
}

/// Nearest member of `target` to `x`; ties go to the lowest point id.
inline PointId metric_projection(const MetricSpace& space, PointId x, std::span<const PointId> target) {
    if (target.empty()) throw InputError("metric projection onto an empty set");
    PointId best = target.front();
    double best_d = space.distance(x, best);
    for (PointId y : target.subspan(1)) {
        const double d = space.distance(x, y);
        if (d < best_d || (d == best_d && y < best)) {
            best = y;
            best_d = d;
        }
    }
    return best;
}

} // namespace curvelab
