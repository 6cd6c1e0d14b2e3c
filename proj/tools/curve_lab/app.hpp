#pragma once

#include "curvelab/curvelab.hpp"
#include "curvelab/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace curve_lab {

namespace fs = std::filesystem;
using namespace curvelab;
using io::json;

enum Status : int { ok = 0, check_failed = 1, input_error = 2 };

struct Outcome {
    int status = ok;
    std::vector<CheckReport> reports;
};

/// CURVE_LAB_TOLERANCE, unless a --tolerance flag was given.
inline std::optional<double> tolerance_override(std::optional<double> flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("CURVE_LAB_TOLERANCE"); env && *env) {
        const double v = io::parse_number(env, "CURVE_LAB_TOLERANCE");
        if (!(v >= 0.0)) throw InputError("CURVE_LAB_TOLERANCE must be nonnegative");
        return v;
    }
    return std::nullopt;
}

inline double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    const double p = io::parse_number(text, "p");
    if (!(p >= 1.0)) throw InputError("p must lie in [1, inf]");
    return p;
}

inline std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    for (auto cell : io::split_csv_line(text)) out.push_back(io::parse_number(cell, what));
    return out;
}

inline std::string curve_csv(const SampledCurve& curve) {
    const MetricSpace& space = curve.space();
    std::string out = "t";
    if (space.kind() == MetricKind::euclidean)
        for (std::size_t k = 1; k <= space.dimension(); ++k) out += ",x" + std::to_string(k);
    else
        out += ",point_id";
    out += '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out += io::format_number(curve.time(i));
        if (space.kind() == MetricKind::euclidean)
            for (double x : space.coordinates(curve.sample(i))) out += ',' + io::format_number(x);
        else
            out += ',' + space.label(curve.sample(i));
        out += '\n';
    }
    return out;
}

class App {
public:
    App(std::ostream& out, std::ostream& err, fs::path base) : out_(out), err_(err), base_(std::move(base)) {}

    Outcome execute(std::vector<std::string> args) {
        CLI::App app{"Metric-space curve toolkit: variations, Lipschitz witnesses and numerical checks", "curve-lab"};
        app.set_help_flag("--help", "Print this help message and exit");  // -h would shadow --h
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--seed", seed_, "Seed for randomized spot checks")->default_val(0);
        app.add_option("--tolerance", tolerance_flag_, "Override the default tolerance of checks");
        define(app);

        if (!args.empty() && !args.front().empty() && args.front()[0] != '-' && 
            app.get_subcommands([&](CLI::App* sub) { return sub->check_name(args.front()); }).empty()) {
            err_ << "error: unknown command '" << args.front() << "'\n\n" << app.help();
            return {input_error, {}};
        }
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp&) {
            out_ << app.help();
            return {};
        } catch (const CLI::CallForAllHelp&) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return {};
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n\n" << app.help();
            return {input_error, {}};
        }

        try {
            tolerance_ = tolerance_override(tolerance_flag_);
            action_();
        } catch (const HorizonError& e) {
            err_ << "horizon reached: " << e.what() << '\n';
            outcome_.status = std::max<int>(outcome_.status, check_failed);
        } catch (const InputError& e) {
            err_ << "input error: " << e.what() << '\n';
            outcome_.status = input_error;
        } catch (const Error& e) {
            err_ << "error: " << e.what() << '\n';
            outcome_.status = input_error;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << '\n';
            outcome_.status = input_error;
        }
        return outcome_;
    }

private:
    // ---- option plumbing --------------------------------------------------------------------

    fs::path resolve(const std::string& p) const {
        fs::path path(p);
        return base_.empty() || path.is_absolute() ? path : base_ / path;
    }

    std::optional<io::SpaceDocument> space_document() const {
        if (space_path_.empty()) return std::nullopt;
        const auto path = resolve(space_path_);
        return io::parse_space(io::parse_json(io::read_file(path), path.string()));
    }

    io::CurveTable curve_table() const {
        const auto path = resolve(curve_path_);
        std::ifstream in(path);
        if (!in) throw InputError("cannot open " + path.string());
        return io::parse_curve_csv(in, path.string());
    }

    io::SampleDocument sample_document() const {
        const auto path = resolve(h_path_);
        return io::parse_sample(io::parse_json(io::read_file(path), path.string()));
    }

    /// Space + curve (+ optional Lipschitz sample) sharing one metric space.
    io::SceneBuilder scene(bool with_sample) const {
        io::SceneBuilder builder(space_document());
        builder.set_curve(curve_table());
        if (with_sample) builder.add_sample(sample_document());
        builder.build();
        return builder;
    }

    void write_output(const std::string& content) const {
        if (!out_path_.empty()) io::write_atomic(resolve(out_path_), content);
    }

    void emit(const CheckReport& report) {
        out_ << io::report_json(report).dump() << '\n';
        if (!out_path_.empty()) write_output(io::report_json(report).dump() + '\n');
        outcome_.reports.push_back(report);
        if (!report.pass) outcome_.status = std::max<int>(outcome_.status, check_failed);
    }

    void emit_witness(const WitnessFunction& w) {
        for (const auto& c : w.certificates)
            out_ << c.name << ' ' << io::format_number(c.value) << (c.relation == Relation::at_most ? " <= " : " >= ")
                 << io::format_number(c.bound) << (c.satisfied() ? " ok" : " FAILED") << '\n';
        write_output(io::witness_json(w).dump(2) + '\n');
        if (!w.all_satisfied()) outcome_.status = check_failed;
    }

    static Quotient parse_side(const std::string& side) {
        if (side == "symmetric") return Quotient::symmetric;
        if (side == "left") return Quotient::left;
        if (side == "right") return Quotient::right;
        throw InputError("unknown quotient side '" + side + "'");
    }

    CLI::App* command(CLI::App& parent, const std::string& name, const std::string& help,
                      std::function<void()> action) {
        auto* sub = parent.add_subcommand(name, help);
        sub->callback([this, action = std::move(action)] { action_ = action; });
        return sub;
    }

    void curve_options(CLI::App* sub) {
        sub->add_option("--curve", curve_path_, "Curve CSV (t,point_id or t,x1,...,xn)")->required();
        sub->add_option("--space", space_path_, "Metric space JSON");
    }

    // ---- commands ---------------------------------------------------------------------------

    void define(CLI::App& app) {
        auto* vm = command(app, "validate-metric", "Check the metric axioms of a space", [this] { validate_metric_cmd(); });
        vm->add_option("--space", space_path_, "Metric space JSON")->required();

        auto* var = command(app, "variation", "Total variation of a curve", [this] { variation_cmd(); });
        curve_options(var);
        var->add_option("--partition", partition_, "Comma-separated partition knots on the grid");
        var->add_option("--out", out_path_, "Write curve statistics JSON");

        auto* speed = command(app, "speed", "Windowed metric speed", [this] { speed_cmd(); });
        curve_options(speed);
        speed->add_option("--t", t_, "Time")->required();
        speed->add_option("--window", window_, "Window half-width")->required()->check(CLI::PositiveNumber);
        speed->add_option("--side", side_, "symmetric, left or right")->default_val("symmetric");

        auto* rep = command(app, "reparam", "Arc-length reparametrization", [this] { reparam_cmd(); });
        curve_options(rep);
        rep->add_option("--out", out_path_, "Write the reparametrized curve CSV");

        auto* content = command(app, "content", "Hausdorff 1-content of the curve image", [this] { content_cmd(); });
        curve_options(content);
        content->add_option("--delta", delta_, "Covering scale")->required()->check(CLI::PositiveNumber);

        auto* ext = command(app, "extend", "McShane extension of a Lipschitz sample", [this] { extend_cmd(); });
        ext->add_option("--space", space_path_, "Metric space JSON")->required();
        ext->add_option("--h", h_path_, "Lipschitz sample JSON")->required();
        ext->add_option("--envelope", envelope_, "upper, lower or average")->default_val("upper");
        ext->add_option("--out", out_path_, "Write the value table CSV");

        auto* probes = command(app, "probes", "Farthest-point distance probes along a curve", [this] { probes_cmd(); });
        curve_options(probes);
        probes->add_option("--count", count_, "Number of probes")->required()->check(CLI::PositiveNumber);
        probes->add_option("--t", t_, "Also report the probe speed at this time");
        probes->add_option("--window", window_, "Window half-width for --t")->check(CLI::PositiveNumber);

        auto* saw = command(app, "sawtooth", "Sawtooth witness along a simple curve", [this] { sawtooth_cmd(); });
        curve_options(saw);
        auto* tooth = saw->add_option("--tooth", tooth_, "Tooth width")->check(CLI::PositiveNumber);
        auto* slack = saw->add_option("--slack", slack_, "Variation-preserving witness with this slack")
                          ->check(CLI::PositiveNumber);
        tooth->excludes(slack);
        saw->add_option("--out", out_path_, "Write the witness JSON");

        auto* alt = command(app, "altwitness", "Alternating witness on separated points", [this] { altwitness_cmd(); });
        alt->add_option("--space", space_path_, "Metric space JSON")->required();
        alt->add_option("--points", points_path_, "JSON {\"points\": [...], \"radii\": [...]}")->required();
        alt->add_option("--out", out_path_, "Write the witness JSON");

        auto* forge = command(app, "forge", "Series forge on the diagonal toy problem", [this] { forge_cmd(); });
        forge->add_option("--depth", depth_, "Number of terms")->required()->check(CLI::PositiveNumber);
        forge->add_option("--horizon", horizon_, "Budget of functional evaluations")->default_val(1'000'000);
        forge->add_option("--audit", audit_, "Random spot checks of the functionals")->default_val(0);
        forge->add_option("--out", out_path_, "Write the forge JSON");

        auto* check = app.add_subcommand("check", "Numerical checks producing reports");
        check->require_subcommand(1);

        auto* contraction = command(*check, "contraction", "V(h o gamma) <= L V(gamma)", [this] { contraction_cmd(); });
        curve_options(contraction);
        contraction->add_option("--h", h_path_, "Lipschitz sample JSON")->required();
        contraction->add_option("--out", out_path_, "Write the report line");

        auto* area = command(*check, "area", "Area formula along a simple curve", [this] { area_cmd(); });
        curve_options(area);
        area->add_option("--h", h_path_, "Lipschitz sample JSON")->required();
        area->add_option("--theta", theta_, "Constant weight")->default_val(1.0)->check(CLI::NonNegativeNumber);
        area->add_option("--out", out_path_, "Write the report line");

        auto* varint = command(*check, "varint", "Variation against the multiplicity integral", [this] { varint_cmd(); });
        curve_options(varint);
        varint->add_option("--out", out_path_, "Write the report line");

        auto* disc = command(*check, "disc", "Measure of the discontinuity pair set", [this] { disc_cmd(); });
        curve_options(disc);
        disc->add_option("--epsilon", epsilon_, "Value gap")->required()->check(CLI::PositiveNumber);
        disc->add_option("--delta", delta_, "Time gap")->required()->check(CLI::PositiveNumber);
        disc->add_option("--out", out_path_, "Write the report line");

        auto* acp = command(*check, "acp", "AC_p consistency of the speed", [this] { acp_cmd(); });
        curve_options(acp);
        acp->add_option("--p", p_text_, "Exponent in [1, inf]")->required();
        acp->add_option("--out", out_path_, "Write the report line");

        auto* luzin = command(*check, "luzin", "Luzin N probe on a small time set", [this] { luzin_cmd(); });
        curve_options(luzin);
        luzin->add_option("--null", null_set_, "Time intervals a:b on the grid, comma separated")->required();
        luzin->add_option("--delta", delta_, "Content scale")->required()->check(CLI::PositiveNumber);
        luzin->add_option("--out", out_path_, "Write the report line");

        auto* recover = command(app, "recover", "Continuous representative by density cleanup", [this] { recover_cmd(); });
        curve_options(recover);
        recover->add_option("--schedule", schedule_, "Decreasing scales, comma separated")->required();
        recover->add_option("--out", out_path_, "Write the cleaned curve CSV");

        auto* report = command(app, "report", "Run a bundle of commands and aggregate check reports",
                               [this] { report_cmd(); });
        report->add_option("--config", config_path_, "JSON {\"runs\": [[argv...], ...]}")->required();
        report->add_option("--out", out_path_, "Output prefix for .jsonl and .csv")->required();
    }

    void validate_metric_cmd() {
        const auto doc = *space_document();
        json result;
        if (doc.kind == MetricKind::matrix) {
            const auto report = validate_metric(doc.matrix, tolerance_);
            auto label = [&](PointId i) { return i < doc.labels.size() ? doc.labels[i] : std::to_string(i); };
            json violations = json::array();
            for (const auto& v : report.violations) {
                json witness = json::array();
                const std::size_t arity = v.axiom == Axiom::triangle ? 3 : v.axiom == Axiom::symmetry ? 2 : 1;
                for (std::size_t k = 0; k < arity; ++k) witness.push_back(label(v.witness[k]));
                violations.push_back({{"axiom", to_string(v.axiom)}, {"witness", witness}, {"excess", v.excess}});
            }
            json counts = json::object();
            for (const auto& [axiom, n] : report.violation_counts) counts[std::string(to_string(axiom))] = n;
            result = {{"kind", "matrix"}, {"pass", report.pass}, {"tolerance", report.tolerance},
                      {"violations", violations}, {"violation_counts", counts}};
            if (!report.pass) outcome_.status = check_failed;
        } else {
            const auto space = io::build_space(doc);
            result = {{"kind", to_string(space.kind())}, {"pass", true}, {"points", space.size()}};
        }
        out_ << result.dump() << '\n';
    }

    void variation_cmd() {
        const auto curve = scene(false).curve();
        double v;
        if (!partition_.empty()) {
            const Partition part(parse_number_list(partition_, "partition knot"));
            v = variation_over_partition(curve, part);
        } else {
            v = total_variation(curve);
        }
        out_ << io::format_number(v) << '\n';
        if (!out_path_.empty()) {
            const auto stats = curve_stats(curve);
            const json doc{{"total_variation", stats.total_variation},
                           {"is_simple", stats.is_simple},
                           {"speed_profile", stats.speed_profile}};
            write_output(doc.dump(2) + '\n');
        }
    }

    void speed_cmd() {
        const auto curve = scene(false).curve();
        out_ << io::format_number(metric_speed(curve, *t_, *window_, parse_side(side_))) << '\n';
    }

    void reparam_cmd() {
        const auto curve = arc_length_reparam(scene(false).curve());
        out_ << io::format_number(curve.end()) << '\n';
        write_output(curve_csv(curve));
    }

    void content_cmd() {
        const auto curve = scene(false).curve();
        out_ << io::format_number(hausdorff1_content(curve.space(), curve.samples(), delta_)) << '\n';
    }

    void extend_cmd() {
        io::SceneBuilder builder(space_document());
        builder.add_sample(sample_document());
        builder.build();
        Envelope env;
        if (envelope_ == "upper") env = Envelope::upper;
        else if (envelope_ == "lower") env = Envelope::lower;
        else if (envelope_ == "average") env = Envelope::average;
        else throw InputError("unknown envelope '" + envelope_ + "'");
        const auto values = extend_to_space(builder.sample(0), env);
        std::vector<PointId> all(builder.space()->size());
        for (PointId p = 0; p < all.size(); ++p) all[p] = p;
        const auto table = io::value_table_csv(*builder.space(), all, values);
        if (out_path_.empty()) out_ << table;
        else write_output(table);
    }

    void probes_cmd() {
        const auto curve = scene(false).curve();
        const auto family = probe_family(curve, count_);
        json centers = json::array();
        for (PointId c : family.centers) centers.push_back(io::point_json(curve.space(), c));
        json doc{{"requested", family.requested}, {"clamped", family.clamped}, {"centers", centers}};
        if (t_) {
            if (!window_) throw InputError("--t needs --window");
            doc["t"] = *t_;
            doc["probe_speed"] = speed_via_probes(curve, family, *t_, *window_);
            doc["metric_speed"] = metric_speed(curve, *t_, *window_);
        }
        out_ << doc.dump() << '\n';
    }

    void sawtooth_cmd() {
        const auto curve = scene(false).curve();
        if (tooth_) emit_witness(sawtooth_witness(curve, *tooth_));
        else if (slack_) emit_witness(variation_preserving_witness(curve, *slack_));
        else throw InputError("sawtooth needs --tooth or --slack");
    }

    void altwitness_cmd() {
        const auto path = resolve(points_path_);
        const json doc = io::parse_json(io::read_file(path), path.string());
        if (!doc.is_object() || !doc.contains("points") || !doc.contains("radii") || !doc.at("points").is_array())
            throw InputError("points file needs \"points\" and \"radii\"");
        io::SceneBuilder builder(space_document());
        std::vector<std::size_t> tokens;
        for (const auto& p : doc.at("points")) tokens.push_back(builder.add_point(p));
        builder.build();
        std::vector<PointId> points;
        for (auto t : tokens) points.push_back(builder.point(t));
        const auto radii = io::detail::number_array(doc.at("radii"), "\"radii\"");
        emit_witness(alternating_separated_witness(builder.space(), points, radii));
    }

    void forge_cmd() {
        auto problem = diagonal_toy_problem();
        problem.horizon = horizon_;
        const auto result = banach_steinhaus_forge(problem, depth_);
        bool certified = result.sup_value >= static_cast<double>(depth_) - 1.0;
        json levels = json::array();
        for (const auto& l : result.levels) {
            certified = certified && l.smallness <= l.smallness_bound && l.growth >= l.growth_bound;
            levels.push_back({{"j", l.j},
                              {"smallness", l.smallness},
                              {"smallness_bound", l.smallness_bound},
                              {"growth", l.growth},
                              {"growth_bound", l.growth_bound},
                              {"chain_value", l.chain_value}});
        }
        json doc{{"depth", depth_},          {"alphas", result.alphas},   {"indices", result.indices},
                 {"levels", levels},         {"sup_value", result.sup_value}, {"evaluations", result.evaluations},
                 {"certified", certified}};
        if (audit_ > 0) {
            const auto audit = audit_forge_problem(problem, std::max<std::size_t>(result.indices.back(), 2), audit_, seed_);
            doc["audit"] = {{"samples", audit_},
                            {"seed", seed_},
                            {"homogeneity_gap", audit.worst_homogeneity_gap},
                            {"subadditivity_gap", audit.worst_subadditivity_gap}};
            certified = certified && audit.passed();
        }
        out_ << "sup " << io::format_number(result.sup_value) << " over " << result.indices.size() << " terms"
             << (certified ? " certified" : " NOT certified") << '\n';
        write_output(doc.dump(2) + '\n');
        if (!certified) outcome_.status = check_failed;
    }

    void contraction_cmd() {
        const auto s = scene(true);
        emit(tolerance_ ? check_contraction(s.curve(), s.sample(0), *tolerance_)
                        : check_contraction(s.curve(), s.sample(0)));
    }

    void area_cmd() {
        const auto s = scene(true);
        const auto curve = s.curve();
        const std::vector<double> theta(curve.size(), theta_);
        emit(area_formula_check(curve, s.sample(0), theta, tolerance_.value_or(defaults::identity_rel)));
    }

    void varint_cmd() {
        emit(variation_integral_check(scene(false).curve(), tolerance_.value_or(defaults::identity_rel)));
    }

    void disc_cmd() {
        const auto curve = scene(false).curve();
        const auto profile = discontinuity_measure(curve, epsilon_, delta_);
        const double h = (curve.end() - curve.start()) / static_cast<double>(curve.size() - 1);
        Digest d;
        d.add(curve_digest(curve)).add(epsilon_).add(delta_);
        emit(CheckReport("disc", profile.measure_estimate, 0.0, profile.measure_estimate, tolerance_.value_or(h * h),
                         d.hex()));
    }

    void acp_cmd() {
        const auto curve = scene(false).curve();
        const double p = parse_p(p_text_);
        const auto r = ac_p_test(curve, p);
        Digest d;
        d.add(curve_digest(curve)).add(p);
        const CheckReport report("acp", r.estimates.back(), r.estimates.front(), r.refinement_trend.front(),
                                 tolerance_.value_or(acp_stability), d.hex());
        if (!report.pass) err_ << "verdict: inconclusive (estimate unstable under coarsening)\n";
        emit(report);
    }

    void luzin_cmd() {
        const auto curve = scene(false).curve();
        std::vector<GridInterval> intervals;
        for (auto cell : io::split_csv_line(null_set_)) {
            const auto colon = cell.find(':');
            if (colon == std::string_view::npos) throw InputError("null-set intervals are written a:b");
            const double a = io::parse_number(cell.substr(0, colon), "interval start");
            const double b = io::parse_number(cell.substr(colon + 1), "interval end");
            const auto i = curve.index_of(a), j = curve.index_of(b);
            if (i == SampledCurve::npos || j == SampledCurve::npos)
                throw InputError("null-set interval ends must be grid times");
            intervals.push_back({i, j});
        }
        auto report = luzin_n_probe(curve, intervals, delta_);
        if (tolerance_) report = CheckReport(report.name, report.lhs, report.rhs, report.residual, *tolerance_, report.context);
        emit(report);
    }

    void recover_cmd() {
        const auto curve = scene(false).curve();
        const auto schedule = parse_number_list(schedule_, "scale");
        const MetricSpace& space = curve.space();
        const auto rep = continuous_representative(curve.times(), curve.samples(), std::span<const double>(schedule),
                                                   [&](PointId a, PointId b) { return space.distance(a, b); });
        if (!rep) {
            out_ << json{{"found", false}}.dump() << '\n';
            outcome_.status = check_failed;
            return;
        }
        out_ << json{{"found", true}, {"modified_count", rep->modified.size()}, {"modified_fraction", rep->modified_fraction}}
                    .dump()
             << '\n';
        write_output(curve_csv(SampledCurve(curve.space_handle(), {curve.times().begin(), curve.times().end()},
                                            rep->values)));
    }

    void report_cmd() {
        const auto path = resolve(config_path_);
        const json config = io::parse_json(io::read_file(path), path.string());
        if (!config.is_object() || !config.contains("runs") || !config.at("runs").is_array())
            throw InputError("config needs a \"runs\" array");
        const fs::path dir = path.parent_path();

        std::vector<CheckReport> reports;
        int status = ok;
        std::size_t index = 0;
        for (const auto& run : config.at("runs")) {
            ++index;
            std::vector<std::string> argv;
            if (run.is_array())
                for (const auto& a : run)
                    if (a.is_string()) argv.push_back(a.get<std::string>());
            if (argv.empty() || argv.size() != run.size()) {
                err_ << "run " << index << ": runs are non-empty arrays of strings\n";
                status = input_error;
                continue;
            }
            if (argv.front() == "report") {
                err_ << "run " << index << ": nested report bundles are not supported\n";
                status = input_error;
                continue;
            }
            std::ostringstream sink, sub_err;
            App sub(sink, sub_err, dir);
            const auto result = sub.execute(argv);
            if (!sub_err.str().empty()) err_ << "run " << index << ": " << sub_err.str();
            reports.insert(reports.end(), result.reports.begin(), result.reports.end());
            status = std::max(status, result.status);
        }

        std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
            return std::tie(a.name, a.context) < std::tie(b.name, b.context);
        });
        std::string lines, csv = io::summary_csv_header();
        for (const auto& r : reports) lines += io::report_json(r).dump() + '\n';
        for (bool failing : {true, false})
            for (const auto& r : reports)
                if (r.pass != failing) csv += io::summary_csv_row(r);
        const fs::path prefix = resolve(out_path_);
        io::write_atomic(fs::path(prefix.string() + ".jsonl"), lines);
        io::write_atomic(fs::path(prefix.string() + ".csv"), csv);

        const auto failed = std::count_if(reports.begin(), reports.end(), [](const CheckReport& r) { return !r.pass; });
        out_ << reports.size() << " checks, " << failed << " failed\n";
        outcome_.status = std::max(outcome_.status, status);
    }

    std::ostream& out_;
    std::ostream& err_;
    fs::path base_;
    Outcome outcome_;
    std::function<void()> action_;

    std::uint64_t seed_ = 0;
    std::optional<double> tolerance_flag_;
    std::optional<double> tolerance_;

    std::string space_path_, curve_path_, h_path_, out_path_, points_path_, config_path_;
    std::string partition_, side_ = "symmetric", envelope_ = "upper", p_text_, null_set_, schedule_;
    std::optional<double> t_, window_, tooth_, slack_;
    double delta_ = 0.0, epsilon_ = 0.0, theta_ = 1.0;
    std::size_t count_ = 0, depth_ = 0, horizon_ = 1'000'000, audit_ = 0;
};

/// Runs one command line (without the program name). Relative paths resolve against `base`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const fs::path& base = {}) {
    App app(out, err, base);
    return app.execute(args).status;
}

} // namespace curve_lab
