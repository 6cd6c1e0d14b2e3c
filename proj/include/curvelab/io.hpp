#pragma once

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/lipschitz.hpp"
#include "curvelab/metric_space.hpp"
#include "curvelab/verify.hpp"
#include "curvelab/witnesses.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace curvelab::io {

using nlohmann::json;

/// Shortest round-trip decimal; integral values keep a trailing ".0" so "2" prints as "2.0".
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

inline double parse_number(std::string_view text, std::string_view what) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw InputError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return value;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
}

/// Writes to a sibling temporary file and renames it over the target.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError("cannot move output into place at " + path.string());
    }
}

// ---------------------------------------------------------------------------------------------
// Raw documents

struct SpaceDocument {
    MetricKind kind = MetricKind::matrix;
    std::vector<std::string> labels;
    DistanceTable matrix;
    std::vector<std::vector<double>> points;
    std::vector<WeightedEdge> edges;
    std::size_t vertex_count = 0;
};

namespace detail {

inline std::vector<double> number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw InputError(what + " must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline std::string point_label(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InputError("point identifiers must be strings or integers");
}

} // namespace detail

inline SpaceDocument parse_space(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc.contains("data"))
        throw InputError("space document needs \"kind\" and \"data\"");
    SpaceDocument s;
    const std::string kind = doc.at("kind").is_string() ? doc.at("kind").get<std::string>() : "";
    if (doc.contains("points")) {
        if (!doc.at("points").is_array()) throw InputError("\"points\" must be an array");
        for (const auto& p : doc.at("points")) s.labels.push_back(detail::point_label(p));
    }
    const json& data = doc.at("data");
    if (!data.is_array()) throw InputError("\"data\" must be an array");

    if (kind == "matrix") {
        s.kind = MetricKind::matrix;
        for (const auto& row : data) s.matrix.push_back(detail::number_array(row, "matrix row"));
    } else if (kind == "euclidean") {
        s.kind = MetricKind::euclidean;
        for (const auto& row : data) s.points.push_back(detail::number_array(row, "coordinate array"));
    } else if (kind == "graph") {
        s.kind = MetricKind::graph;
        if (s.labels.empty()) throw InputError("graph spaces need a \"points\" list");
        s.vertex_count = s.labels.size();
        auto vertex = [&](const json& j) -> PointId {
            if (j.is_number_integer()) {
                const long long k = j.get<long long>();
                if (k < 0 || static_cast<std::size_t>(k) >= s.vertex_count) throw InputError("edge endpoint out of range");
                return static_cast<PointId>(k);
            }
            if (j.is_string())
                for (std::size_t i = 0; i < s.labels.size(); ++i)
                    if (s.labels[i] == j.get<std::string>()) return i;
            throw InputError("unknown edge endpoint " + j.dump());
        };
        for (const auto& e : data) {
            if (!e.is_array() || e.size() != 3 || !e[2].is_number())
                throw InputError("graph edges are [u, v, weight] triples");
            s.edges.push_back({vertex(e[0]), vertex(e[1]), e[2].get<double>()});
        }
    } else {
        throw InputError("unknown space kind '" + kind + "'");
    }
    return s;
}

inline MetricSpace build_space(const SpaceDocument& s) {
    switch (s.kind) {
    case MetricKind::matrix: return MetricSpace::from_matrix(s.matrix, s.labels);
    case MetricKind::euclidean: return MetricSpace::from_euclidean(s.points, s.labels);
    case MetricKind::graph: return MetricSpace::from_graph(s.vertex_count, s.edges, s.labels);
    }
    throw InputError("unknown space kind");
}

struct CurveTable {
    std::vector<double> times;
    std::vector<std::string> ids;                // "t,point_id" form
    std::vector<std::vector<double>> coords;     // "t,x1,...,xn" form
    bool euclidean() const { return !coords.empty(); }
};

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (auto& c : cells) {
        while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.remove_prefix(1);
        while (!c.empty() && (c.back() == ' ' || c.back() == '\t' || c.back() == '\r')) c.remove_suffix(1);
    }
    return cells;
}

inline CurveTable parse_curve_csv(std::istream& in, const std::string& source = "curve") {
    std::string line;
    if (!std::getline(in, line)) throw InputError(source + ": empty curve file");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t") throw InputError(source + ": header must start with \"t\"");
    const bool by_id = header.size() == 2 && header[1] == "point_id";

    CurveTable table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw InputError(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                             " fields, expected " + std::to_string(header.size()));
        table.times.push_back(parse_number(cells[0], "time"));
        if (by_id) {
            table.ids.emplace_back(cells[1]);
        } else {
            std::vector<double> x;
            for (std::size_t k = 1; k < cells.size(); ++k) x.push_back(parse_number(cells[k], "coordinate"));
            table.coords.push_back(std::move(x));
        }
    }
    if (table.times.size() < 2) throw DegenerateInputError(source + ": a curve needs at least two samples");
    return table;
}

struct SampleDocument {
    std::vector<json> support;  // labels, indices or coordinate arrays
    std::vector<double> values;
    double lipschitz = 0.0;
};

inline SampleDocument parse_sample(const json& doc) {
    if (!doc.is_object() || !doc.contains("support") || !doc.contains("values") || !doc.contains("L"))
        throw InputError("Lipschitz sample needs \"support\", \"values\" and \"L\"");
    SampleDocument s;
    if (!doc.at("support").is_array()) throw InputError("\"support\" must be an array");
    for (const auto& p : doc.at("support")) s.support.push_back(p);
    s.values = detail::number_array(doc.at("values"), "\"values\"");
    if (!doc.at("L").is_number()) throw InputError("\"L\" must be a number");
    s.lipschitz = doc.at("L").get<double>();
    if (s.values.size() != s.support.size()) throw InputError("support and values differ in length");
    return s;
}

// ---------------------------------------------------------------------------------------------
// Assembly: one metric space shared by the curve, the samples and any extra points.

/// Collects inputs that refer to points, then builds a single space. With a Euclidean space or a
/// coordinate curve, all coordinates go into one point set (exact duplicates merge); otherwise
/// points are resolved by label against the given space.
class SceneBuilder {
public:
    explicit SceneBuilder(std::optional<SpaceDocument> space) : doc_(std::move(space)) {
        if (doc_ && doc_->kind == MetricKind::euclidean) start_euclidean(doc_->points.empty() ? 0 : doc_->points.front().size());
    }

    void set_curve(CurveTable table) {
        if (table.euclidean()) {
            if (doc_ && doc_->kind != MetricKind::euclidean)
                throw InputError("coordinate curve given with a " + std::string(to_string(doc_->kind)) + " space");
            start_euclidean(table.coords.front().size());
        } else if (!doc_) {
            throw InputError("a \"t,point_id\" curve needs --space");
        }
        curve_ = std::move(table);
    }

    /// Point given by label, index or coordinate array; the token resolves after build().
    std::size_t add_point(const json& ref) {
        refs_.push_back(ref);
        return refs_.size() - 1;
    }

    std::size_t add_sample(SampleDocument s) {
        samples_.push_back(std::move(s));
        return samples_.size() - 1;
    }

    void build() {
        if (euclid_) {
            if (doc_)
                for (std::size_t i = 0; i < doc_->points.size(); ++i)
                    euclid_->add(doc_->points[i], i < doc_->labels.size() ? doc_->labels[i] : std::string{});
            const bool by_label = curve_ && !curve_->euclidean();
            if (curve_ && !by_label)
                for (const auto& x : curve_->coords) curve_ids_.push_back(euclid_->add(x));
            auto coord_ref = [&](const json& j) -> std::optional<PointId> {
                if (!j.is_array()) return std::nullopt;
                return euclid_->add(detail::number_array(j, "coordinate array"));
            };
            for (const auto& r : refs_) pending_refs_.push_back(coord_ref(r));
            for (const auto& s : samples_) {
                std::vector<std::optional<PointId>> ids;
                for (const auto& r : s.support) ids.push_back(coord_ref(r));
                pending_support_.push_back(std::move(ids));
            }
            space_ = share(euclid_->build());
            if (by_label)
                for (const auto& id : curve_->ids) curve_ids_.push_back(resolve_label(id));
        } else {
            if (!doc_) throw InputError("no metric space given");
            space_ = share(build_space(*doc_));
            if (curve_)
                for (const auto& id : curve_->ids) curve_ids_.push_back(resolve_label(id));
            pending_refs_.assign(refs_.size(), std::nullopt);
            for (const auto& s : samples_) pending_support_.emplace_back(s.support.size());
        }
        for (std::size_t k = 0; k < refs_.size(); ++k)
            point_ids_.push_back(pending_refs_[k] ? *pending_refs_[k] : resolve_json(refs_[k]));
        for (std::size_t k = 0; k < samples_.size(); ++k) {
            std::vector<PointId> support;
            for (std::size_t i = 0; i < samples_[k].support.size(); ++i)
                support.push_back(pending_support_[k][i] ? *pending_support_[k][i] : resolve_json(samples_[k].support[i]));
            built_samples_.emplace_back(space_, std::move(support), samples_[k].values, samples_[k].lipschitz);
        }
    }

    const SpaceHandle& space() const { return space_; }
    PointId point(std::size_t token) const { return point_ids_.at(token); }
    const LipschitzSample& sample(std::size_t token) const { return built_samples_.at(token); }

    SampledCurve curve() const {
        if (!curve_) throw InputError("no curve given");
        return SampledCurve(space_, curve_->times, curve_ids_);
    }

private:
    void start_euclidean(std::size_t dim) {
        if (dim == 0) throw InputError("Euclidean points need at least one coordinate");
        if (euclid_ && euclid_->dimension() != dim) throw InputError("coordinate dimensions disagree");
        if (!euclid_) euclid_.emplace(dim);
    }

    PointId resolve_label(const std::string& label) const {
        if (auto id = space_->find(label)) return *id;
        throw InputError("unknown point '" + label + "'");
    }

    PointId resolve_json(const json& j) const {
        if (j.is_string()) return resolve_label(j.get<std::string>());
        if (j.is_number_integer()) {
            const long long k = j.get<long long>();
            if (auto id = space_->find(std::to_string(k))) return *id;
            if (k >= 0 && space_->contains(static_cast<PointId>(k))) return static_cast<PointId>(k);
        }
        throw InputError("cannot resolve point " + j.dump());
    }

    std::optional<SpaceDocument> doc_;
    std::optional<EuclideanPointSet> euclid_;
    std::optional<CurveTable> curve_;
    std::vector<json> refs_;
    std::vector<SampleDocument> samples_;

    SpaceHandle space_;
    std::vector<PointId> curve_ids_;
    std::vector<std::optional<PointId>> pending_refs_;
    std::vector<std::vector<std::optional<PointId>>> pending_support_;
    std::vector<PointId> point_ids_;
    std::vector<LipschitzSample> built_samples_;
};

// ---------------------------------------------------------------------------------------------
// Output

inline json point_json(const MetricSpace& space, PointId p) {
    if (space.kind() == MetricKind::euclidean) {
        const auto c = space.coordinates(p);
        return json(std::vector<double>(c.begin(), c.end()));
    }
    return json(space.label(p));
}

inline json sample_json(const LipschitzSample& h) {
    json support = json::array();
    for (PointId p : h.support()) support.push_back(point_json(h.space(), p));
    return json{{"support", support},
                {"values", std::vector<double>(h.values().begin(), h.values().end())},
                {"L", h.lipschitz()}};
}

inline json witness_json(const WitnessFunction& w) {
    json doc = sample_json(w.realization);
    json certs = json::array();
    for (const auto& c : w.certificates)
        certs.push_back({{"name", c.name},
                         {"value", c.value},
                         {"relation", c.relation == Relation::at_most ? "<=" : ">="},
                         {"bound", c.bound},
                         {"satisfied", c.satisfied()}});
    doc["certificates"] = certs;
    json diag = json::object();
    for (const auto& [k, v] : w.diagnostics) diag[k] = v;
    doc["diagnostics"] = diag;
    return doc;
}

inline json report_json(const CheckReport& r) {
    return json{{"name", r.name},           {"lhs", r.lhs},         {"rhs", r.rhs},
                {"residual", r.residual},   {"tolerance", r.tolerance}, {"verdict", r.verdict()},
                {"context", r.context}};
}

inline std::string value_table_csv(const MetricSpace& space, std::span<const PointId> points,
                                   std::span<const double> values) {
    std::string out = "point_id,value\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (space.kind() == MetricKind::euclidean) {
            out += '"';
            const auto c = space.coordinates(points[i]);
            for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + format_number(c[k]);
            out += '"';
        } else {
            out += space.label(points[i]);
        }
        out += ',' + format_number(values[i]) + '\n';
    }
    return out;
}

inline std::string summary_csv_header() { return "name,verdict,lhs,rhs,residual,tolerance,context\n"; }

inline std::string summary_csv_row(const CheckReport& r) {
    return r.name + ',' + r.verdict() + ',' + format_number(r.lhs) + ',' + format_number(r.rhs) + ',' +
           format_number(r.residual) + ',' + format_number(r.tolerance) + ',' + r.context + '\n';
}

} // namespace curvelab::io
