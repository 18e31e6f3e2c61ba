#include "qmcoh/cli.hpp"
#include "qmcoh/quasimonoidal.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace qmcoh;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) {
        if (l == line) return true;
    }
    return false;
}

// Fresh scratch directory, removed on scope exit.
struct Scratch {
    Scratch() : path(fs::temp_directory_path() / ("qmcoh_cli_test_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~Scratch() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    fs::path path;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

const char* kTrivialV4 = "skeleton\ncover elem:2^2\nbase elem:2^2\ngrading 0 1 2 3\nassociator\n"
                         "cochain\ngroup elem:2^2\ndegree 3\ncoeff qz\nend\nend\n";

} // namespace

TEST_CASE("coh examples") {
    for (const auto& [label, degree, line] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"cyclic:5", "4", "H^4 = 0"}, {"sym:3", "4", "H^4 = 0"}, {"cyclic:2", "1", "H^1 = Z/2"},
             {"elem:2^2", "4", "H^4 = Z/2 + Z/2"}}) {
        const Run r = run({"--no-timing", "coh", "--group", label, "--degree", degree});
        CAPTURE(label);
        CHECK(r.code == 0);
        CHECK(has_line(r.out, line));
        CHECK(r.out.find("time_seconds") == std::string::npos);
    }
    const Run timed = run({"coh", "--group", "cyclic:2", "--degree", "1"});
    CHECK(timed.out.find("time_seconds: ") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"coh", "--group", "cyclic:13", "--degree", "4"}).code == 2);
    CHECK(run({"coh", "--group", "nonsense:3", "--degree", "1"}).code == 1);
    CHECK(run({"coh", "--group", "cyclic:3"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"witt", "--group", "elem:2^2", "--expr", "pow("}).code == 1);
    CHECK(run({"lift", "--group", "elem:2^2", "--omega", "1,x"}).code == 1);
    // no cover of order <= 4 kills a non-trivial class of the Klein four group
    const Run ex = run({"lift", "--group", "elem:2^2", "--omega", "1,0", "--max-cover", "4"});
    CHECK(ex.code == 3);
    CHECK(ex.err.rfind("error: ", 0) == 0);

    Scratch dir;
    const std::string bad = dir.file("bad.skel");
    write_file(bad, "skeleton\ncover cyclic:4\nbase cyclic:2\ngrading 0 1 0 1\nassociator\n"
                    "cochain\ngroup cyclic:4\ndegree 3\ncoeff qz\nentry 1 1 1 1/2\nend\nend\n");
    CHECK(run({"defect", "--skeleton", bad}).code == 3);
    CHECK(run({"defect", "--skeleton", dir.file("missing.skel")}).code == 1);
}

TEST_CASE("defect of the trivial skeleton") {
    Scratch dir;
    const std::string skel = dir.file("trivial.skel");
    write_file(skel, kTrivialV4);
    const Run r = run({"--no-timing", "defect", "--skeleton", skel});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "defect_support: 0"));
    CHECK(has_line(r.out, "class: 0 0"));
    CHECK(r.out.find("cochain\n") != std::string::npos);
}

TEST_CASE("lift with empty coordinates") {
    const Run r = run({"--no-timing", "lift", "--group", "cyclic:4", "--omega"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "cover: cyclic:4"));
    CHECK(has_line(r.out, "omega: -"));
    CHECK(has_line(r.out, "surjections_tested: 0"));
    std::istringstream doc(r.out.substr(r.out.find("skeleton\n")));
    CHECK(parse_skeleton(doc).associator.is_zero());
}

TEST_CASE("witt example") {
    const Run r = run({"--no-timing", "witt", "--group", "elem:2^2", "--expr", "pow(H4(1,0), 4)"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "identity: true"));
    CHECK(has_line(r.out, "admits_minimal_extension: true"));
    CHECK(has_line(r.out, "w_part: 1"));
}

TEST_CASE("file round trips between subcommands") {
    Scratch dir;
    const std::string a = dir.file("a.skel"), b = dir.file("b.skel");
    CHECK(run({"lift", "--group", "elem:2^2", "--omega", "1,0", "--output", a}).code == 0);
    CHECK(run({"lift", "--group", "elem:2^2", "--omega", "0,1", "--output", b}).code == 0);

    const Run da = run({"--no-timing", "defect", "--skeleton", a, "--output", dir.file("a.cochain")});
    CHECK(da.code == 0);
    CHECK(has_line(da.out, "class: 1 0"));

    const std::string op = dir.file("op.skel");
    CHECK(run({"oppose", "--skeleton", a, "--output", op}).code == 0);
    CHECK(has_line(run({"--no-timing", "defect", "--skeleton", op}).out, "class: 1 0"));

    const std::string fp = dir.file("fp.skel");
    const Run f = run({"--no-timing", "fibprod", "--left", a, "--right", b, "--output", fp});
    CHECK(f.code == 0);
    CHECK(has_line(f.out, "cover_order: 16"));
    CHECK(has_line(run({"--no-timing", "defect", "--skeleton", fp}).out, "class: 1 1"));

    // twist by the generator cochains written by coh
    const std::string gens = dir.file("gens");
    CHECK(run({"coh", "--group", "elem:2^2", "--degree", "3", "--dump-generators", gens}).code == 0);
    CHECK(fs::exists(fs::path(gens) / "generator_3.cochain"));
    const std::string tw = dir.file("tw.skel");
    CHECK(run({"twist", "--skeleton", a, "--lambda", (fs::path(gens) / "generator_1.cochain").string(), "--output", tw})
              .code == 0);
    CHECK(has_line(run({"--no-timing", "defect", "--skeleton", tw}).out, "class: 1 0"));

    // the defect cochain is accepted as a twist input only with the right degree
    CHECK(run({"twist", "--skeleton", a, "--lambda", dir.file("a.cochain")}).code == 1);
}

TEST_CASE("reports are deterministic") {
    const std::vector<std::string> args = {"--no-timing", "lift", "--group", "elem:2^2", "--omega", "1,1"};
    const Run first = run(args);
    CHECK(first.code == 0);
    CHECK(run(args).out == first.out);
}

TEST_CASE("json reports") {
    const Run r = run({"--json", "--no-timing", "coh", "--group", "elem:2^2", "--degree", "4"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["summary"] == "H^4 = Z/2 + Z/2");
    CHECK(j["invariant_factors"] == nlohmann::json::array({"2", "2"}));
    CHECK(j["order"] == 4);
    CHECK_FALSE(j.contains("time_seconds"));
}
