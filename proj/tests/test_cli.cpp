#include "curve_lab/app.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

class Workdir {
public:
    Workdir() {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("curve-lab-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(dir_);
        write("l.csv", "t,point_id\n0,o\n1,e\n2,c\n");
        write("plane.json", R"({"kind": "euclidean", "points": ["o", "e", "c"], "data": [[0, 0], [1, 0], [1, 1]]})");
        std::string seg = "t,x1,x2\n";
        for (int i = 0; i <= 100; ++i) seg += std::to_string(i / 100.0) + ',' + std::to_string(i / 100.0) + ",0\n";
        write("seg.csv", seg);
        std::string back = "t,x1\n";
        for (int i = 0; i <= 20; ++i) back += std::to_string(i) + ',' + std::to_string(i <= 10 ? i / 10.0 : (20 - i) / 10.0) + '\n';
        write("back.csv", back);
        write("probe.json", R"({"support": [[0, 0]], "values": [0], "L": 1})");
        write("fake.json", R"({"support": [[0, 0], [1, 0]], "values": [0, 3], "L": 1})");
        write("bad.json", R"({"kind": "matrix", "data": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]})");
        write("good.json", R"({"kind": "matrix", "data": [[0, 1], [1, 0]]})");
        std::string step = "t,x1\n";
        for (int i = 0; i <= 200; ++i) step += std::to_string(i / 200.0) + ',' + (i < 100 ? "0" : "1") + '\n';
        write("step.csv", step);
    }
    ~Workdir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    void write(const std::string& name, const std::string& content) const { std::ofstream(dir_ / name) << content; }

    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    bool exists(const std::string& name) const { return fs::exists(dir_ / name); }

    Result run(std::vector<std::string> args) const {
        std::ostringstream out, err;
        const int status = curve_lab::run(args, out, err, dir_);
        return {status, out.str(), err.str()};
    }

private:
    fs::path dir_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("variation of the L-polyline", "[cli]") {
    const Workdir w;
    const auto r = w.run({"variation", "--curve", "l.csv", "--space", "plane.json"});
    CHECK(r.status == 0);
    CHECK(r.out == "2.0\n");
}

TEST_CASE("sawtooth witness writes its certificates", "[cli]") {
    const Workdir w;
    const auto r = w.run({"sawtooth", "--curve", "seg.csv", "--tooth", "0.25", "--out", "w.json"});
    CHECK(r.status == 0);
    REQUIRE(w.exists("w.json"));
    CHECK_FALSE(w.exists("w.json.tmp"));
    const auto doc = curvelab::io::json::parse(w.read("w.json"));
    bool found = false;
    for (const auto& c : doc.at("certificates"))
        if (c.at("name") == "variation_recovered") {
            found = true;
            CHECK(c.at("value").get<double>() >= 1.0 - 1e-12);
            CHECK(c.at("satisfied").get<bool>());
        }
    CHECK(found);
}

TEST_CASE("exit status contract", "[cli]") {
    const Workdir w;
    CHECK(w.run({"check", "contraction", "--curve", "seg.csv", "--h", "fake.json"}).status == 2);
    CHECK(w.run({"check", "contraction", "--curve", "seg.csv", "--h", "probe.json"}).status == 0);
    CHECK(w.run({"validate-metric", "--space", "bad.json"}).status == 1);
    CHECK(w.run({"validate-metric", "--space", "good.json"}).status == 0);
    CHECK(w.run({"variation", "--curve", "missing.csv"}).status == 2);
    CHECK(w.run({"speed", "--curve", "seg.csv", "--t", "0.5"}).status == 2);
    CHECK(w.run({"sawtooth", "--curve", "seg.csv", "--tooth", "-1"}).status == 2);
    CHECK(w.run({"forge", "--depth", "8", "--horizon", "20"}).status == 1);
    CHECK(w.run({"forge", "--depth", "4"}).status == 0);
    CHECK(w.run({"recover", "--curve", "step.csv", "--schedule", "0.05,0.02"}).status == 1);
    CHECK(w.run({"recover", "--curve", "step.csv", "--schedule", "0.02,0.05"}).status == 2);
    CHECK(w.run({"check", "disc", "--curve", "step.csv", "--epsilon", "0.5", "--delta", "0.1"}).status == 1);
    CHECK(w.run({"check", "disc", "--curve", "seg.csv", "--epsilon", "0.5", "--delta", "0.1"}).status == 0);
    CHECK(w.run({"check", "varint", "--curve", "back.csv"}).status == 0);
    CHECK(w.run({"check", "acp", "--curve", "seg.csv", "--p", "inf"}).status == 0);
    CHECK(w.run({"check", "luzin", "--curve", "seg.csv", "--null", "0.1:0.2", "--delta", "0.02"}).status == 0);
    CHECK(w.run({"check", "luzin", "--curve", "seg.csv", "--null", "0.105:0.2", "--delta", "0.02"}).status == 2);
}

TEST_CASE("unknown commands print usage and exit 2", "[cli]") {
    const Workdir w;
    const auto r = w.run({"bogus"});
    CHECK(r.status == 2);
    CHECK(r.err.find("unknown command") != std::string::npos);
    CHECK(r.err.find("validate-metric") != std::string::npos);
    CHECK(w.run({}).status == 2);
    CHECK(w.run({"check", "nothing", "--curve", "seg.csv"}).status == 2);
    CHECK(w.run({"--help"}).status == 0);
}

TEST_CASE("check output is one JSON report line", "[cli]") {
    const Workdir w;
    const auto r = w.run({"check", "varint", "--curve", "back.csv", "--out", "varint.jsonl"});
    REQUIRE(r.status == 0);
    CHECK(count_lines(r.out) == 1);
    const auto line = curvelab::io::json::parse(r.out);
    CHECK(line.at("name") == "varint");
    CHECK(line.at("lhs").get<double>() == Catch::Approx(2.0));
    CHECK(line.at("rhs").get<double>() == Catch::Approx(2.0));
    CHECK(line.at("verdict") == "pass");
    CHECK(line.at("context").get<std::string>().size() == 16);
    CHECK(w.read("varint.jsonl") == r.out);
}

TEST_CASE("tolerance overrides", "[cli]") {
    const Workdir w;
    const std::vector<std::string> disc{"check", "disc", "--curve", "step.csv", "--epsilon", "0.5", "--delta", "0.1"};
    CHECK(w.run(disc).status == 1);

    auto with_flag = disc;
    with_flag.insert(with_flag.begin(), {"--tolerance", "1"});
    CHECK(w.run(with_flag).status == 0);

    ::setenv("CURVE_LAB_TOLERANCE", "1", 1);
    CHECK(w.run(disc).status == 0);
    auto tight = disc;
    tight.insert(tight.begin(), {"--tolerance", "0"});
    CHECK(w.run(tight).status == 1);
    ::setenv("CURVE_LAB_TOLERANCE", "nope", 1);
    CHECK(w.run(disc).status == 2);
    ::unsetenv("CURVE_LAB_TOLERANCE");
}

TEST_CASE("empty report bundle", "[cli][report]") {
    const Workdir w;
    w.write("empty.json", R"({"runs": []})");
    const auto r = w.run({"report", "--config", "empty.json", "--out", "summary"});
    CHECK(r.status == 0);
    CHECK(w.read("summary.jsonl").empty());
    CHECK(w.read("summary.csv") == curvelab::io::summary_csv_header());
}

TEST_CASE("passing report bundle", "[cli][report]") {
    const Workdir w;
    w.write("pass.json", R"({"runs": [
        ["check", "contraction", "--curve", "seg.csv", "--h", "probe.json"],
        ["check", "varint", "--curve", "seg.csv"],
        ["check", "area", "--curve", "seg.csv", "--h", "probe.json"]
    ]})");
    const auto r = w.run({"report", "--config", "pass.json", "--out", "summary"});
    CHECK(r.status == 0);
    const auto lines = w.read("summary.jsonl");
    CHECK(count_lines(lines) == 3);
    std::istringstream in(lines);
    std::string line, previous;
    while (std::getline(in, line)) {
        const auto name = curvelab::io::json::parse(line).at("name").get<std::string>();
        CHECK(previous <= name);
        previous = name;
    }
}

TEST_CASE("mixed report bundle lists failures first", "[cli][report]") {
    const Workdir w;
    w.write("mixed.json", R"({"runs": [
        ["check", "varint", "--curve", "seg.csv"],
        ["check", "disc", "--curve", "step.csv", "--epsilon", "0.5", "--delta", "0.1"],
        ["check", "acp", "--curve", "seg.csv", "--p", "1"]
    ]})");
    const auto r = w.run({"report", "--config", "mixed.json", "--out", "summary"});
    CHECK(r.status == 1);
    std::istringstream csv(w.read("summary.csv"));
    std::string header, first, second;
    std::getline(csv, header);
    std::getline(csv, first);
    std::getline(csv, second);
    CHECK(first.rfind("disc,fail,", 0) == 0);
    CHECK(second.find(",pass,") != std::string::npos);
}

TEST_CASE("input errors inside a bundle keep partial results", "[cli][report]") {
    const Workdir w;
    w.write("partial.json", R"({"runs": [
        ["check", "varint", "--curve", "seg.csv"],
        ["check", "contraction", "--curve", "seg.csv", "--h", "fake.json"],
        ["report", "--config", "partial.json", "--out", "again"]
    ]})");
    const auto r = w.run({"report", "--config", "partial.json", "--out", "summary"});
    CHECK(r.status == 2);
    CHECK(count_lines(w.read("summary.jsonl")) == 1);
    CHECK_FALSE(w.exists("again.jsonl"));
}

TEST_CASE("identical runs reproduce artifacts byte for byte", "[cli][report]") {
    const Workdir w;
    w.write("bundle.json", R"({"runs": [
        ["check", "acp", "--curve", "seg.csv", "--p", "2"],
        ["check", "varint", "--curve", "back.csv"],
        ["check", "luzin", "--curve", "seg.csv", "--null", "0.1:0.2", "--delta", "0.02"]
    ]})");
    REQUIRE(w.run({"report", "--config", "bundle.json", "--out", "one"}).status == 0);
    REQUIRE(w.run({"report", "--config", "bundle.json", "--out", "two"}).status == 0);
    CHECK(w.read("one.jsonl") == w.read("two.jsonl"));
    CHECK(w.read("one.csv") == w.read("two.csv"));

    REQUIRE(w.run({"sawtooth", "--curve", "seg.csv", "--slack", "0.1", "--out", "a.json"}).status == 0);
    REQUIRE(w.run({"sawtooth", "--curve", "seg.csv", "--slack", "0.1", "--out", "b.json"}).status == 0);
    CHECK(w.read("a.json") == w.read("b.json"));
}

TEST_CASE("other subcommands run on the demo inputs", "[cli]") {
    const Workdir w;
    CHECK(w.run({"speed", "--curve", "seg.csv", "--t", "0.5", "--window", "0.1"}).status == 0);
    CHECK(w.run({"reparam", "--curve", "l.csv", "--space", "plane.json", "--out", "r.csv"}).status == 0);
    CHECK(w.read("r.csv") == "t,x1,x2\n0.0,0.0,0.0\n1.0,1.0,0.0\n2.0,1.0,1.0\n");
    CHECK(w.run({"content", "--curve", "seg.csv", "--delta", "0.02"}).status == 0);
    CHECK(w.run({"probes", "--curve", "seg.csv", "--count", "3"}).status == 0);
    CHECK(w.run({"extend", "--space", "plane.json", "--h", "probe.json", "--out", "v.csv"}).status == 0);
    CHECK(w.read("v.csv").rfind("point_id,value\n", 0) == 0);
    w.write("sep.json", R"({"points": [[0, 0], [1, 0]], "radii": [0.5, 0.5]})");
    w.write("line.json", R"({"kind": "euclidean", "data": [[0, 0], [1, 0]]})");
    CHECK(w.run({"altwitness", "--space", "line.json", "--points", "sep.json"}).status == 0);
    w.write("close.json", R"({"points": [[0, 0], [1, 0]], "radii": [0.6, 0.5]})");
    CHECK(w.run({"altwitness", "--space", "line.json", "--points", "close.json"}).status == 2);
}
