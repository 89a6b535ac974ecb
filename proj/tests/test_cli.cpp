#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli/commands.hpp"
#include "cli/manifest.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using hypin::cli::run;
using nlohmann::json;

namespace {

// Pinned once from a reviewed rendering of l = 4, type 5.
constexpr const char* kType5SvgSha256 = "7048a99dd97b25ab120f51673e6561a4ff1cb5c3d5d3a7f83fdb48985a400501";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome hypin_run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("hypin_cli_test_" + std::to_string(std::rand()) + "_" +
                                           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

void check_manifest(const std::string& primary) {
    const auto manifest = json::parse(slurp(primary + ".manifest.json"));
    CHECK(manifest["tool"] == "hypin");
    CHECK(manifest.contains("timestamp"));
    CHECK(manifest.contains("tolerances"));
    REQUIRE(!manifest["files"].empty());
    for (const auto& f : manifest["files"]) {
        const auto bytes = slurp(f["path"].get<std::string>());
        CHECK(hypin::cli::sha256_hex(bytes) == f["sha256"].get<std::string>());
        CHECK(bytes.size() == f["bytes"].get<std::size_t>());
    }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ',' && !quoted) {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("sha256 of a known string") {
    CHECK(hypin::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(hypin::cli::format12(1.0 / 3.0) == "0.333333333333");
    CHECK(hypin::cli::round12(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("enumerate l = 4 matches the golden csv") {
    Scratch tmp;
    const auto path = tmp("e4.csv");
    const auto r = hypin_run({"enumerate", "--l", "4", "--format", "csv", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(slurp(path) == slurp(fs::path(HYPIN_GOLDEN_DIR) / "enumerate_l4.csv"));
    check_manifest(path);
}

TEST_CASE("enumerate rejects l = 3 with one diagnostic line") {
    const auto r = hypin_run({"enumerate", "--l", "3"});
    CHECK(r.code == 2);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("enumerate l = 6 json row count equals the oracle") {
    Scratch tmp;
    const auto path = tmp("e6.json");
    REQUIRE(hypin_run({"enumerate", "--l", "6", "--format", "json", "--out", path}).code == 0);
    const auto doc = json::parse(slurp(path));
    CHECK(doc["censuses"].size() == oracle::brute_force_censuses(6).size());
    CHECK(doc["count"] == doc["censuses"].size());
    check_manifest(path);
}

TEST_CASE("solve l = 4 reproduces the radius table") {
    Scratch tmp;
    const auto path = tmp("s4.csv");
    const auto r = hypin_run({"solve", "--l", "4", "--format", "csv", "--out", path});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(path));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"type", "descriptor", "w", "n", "beta", "x", "cosh_x", "polygon_area",
                                              "circle_area", "density"});
    const double table[] = {0.962423, 0.927539, 1.031718, 1.011595, 1.061275};
    for (int k = 0; k < 5; ++k) {
        const auto& row = rows[static_cast<std::size_t>(k + 1)];
        CHECK(std::abs(std::stod(row[5]) - table[k]) < 5e-6);
        CHECK(std::abs(std::stod(row[7]) - 4 * oracle::pi / 3) < 1e-9);
    }
    CHECK(rows[5][1] == "A1=4,B3=2");
    check_manifest(path);
}

TEST_CASE("solve json carries a best block against the closed form") {
    Scratch tmp;
    const auto path = tmp("s7.json");
    REQUIRE(hypin_run({"solve", "--l", "7", "--format", "json", "--out", path}).code == 0);
    const auto doc = json::parse(slurp(path));
    const double closed = std::acosh(1 / (2 * std::sin(oracle::pi / 22)));
    CHECK(std::abs(doc["best"]["x"].get<double>() - closed) < 1e-10);
    CHECK(doc["best"]["descriptor"] == "A1=7,B3=5");
    const auto manifest = json::parse(slurp(path + ".manifest.json"));
    CHECK(manifest["summary"]["best"] == doc["best"]);
}

TEST_CASE("identical runs give identical bytes") {
    Scratch tmp;
    for (const auto* fmt : {"csv", "json"}) {
        const auto a = tmp(std::string("a.") + fmt);
        const auto b = tmp(std::string("b.") + fmt);
        REQUIRE(hypin_run({"solve", "--l", "6", "--format", fmt, "--out", a}).code == 0);
        REQUIRE(hypin_run({"--threads", "3", "solve", "--l", "6", "--format", fmt, "--out", b}).code == 0);
        CHECK(slurp(a) == slurp(b));
    }
}

TEST_CASE("tolerance comes from flag, then environment, then default") {
    Scratch tmp;
    const auto path = tmp("s.json");
    ::setenv("HYPIN_TOL", "1e-3", 1);
    CHECK(hypin_run({"solve", "--l", "4", "--out", path}).code == 2);
    CHECK(hypin_run({"--tol", "1e-12", "solve", "--l", "4", "--out", path}).code == 0);
    CHECK(json::parse(slurp(path + ".manifest.json"))["tolerances"]["beta_tol"] == 1e-12);
    ::setenv("HYPIN_TOL", "1e-9", 1);
    CHECK(hypin_run({"solve", "--l", "4", "--out", path}).code == 0);
    CHECK(json::parse(slurp(path + ".manifest.json"))["tolerances"]["beta_tol"] == 1e-9);
    ::unsetenv("HYPIN_TOL");
    CHECK(hypin_run({"solve", "--l", "4", "--out", path}).code == 0);
    CHECK(json::parse(slurp(path + ".manifest.json"))["tolerances"]["beta_tol"] == 1e-13);
}

TEST_CASE("verify passes and reports margins") {
    Scratch tmp;
    const auto path = tmp("v8.json");
    const auto r = hypin_run({"verify", "--l-max", "8", "--out", path});
    CHECK(r.code == 0);
    const auto doc = json::parse(slurp(path));
    CHECK(doc["all_passed"] == true);
    bool saw_margins = false;
    for (const auto& c : doc["checks"]) {
        CHECK(c["passed"] == true);
        CHECK(c["samples"].get<long>() > 0);
        if (c["name"] == "secant_bound_margins") {
            saw_margins = true;
            CHECK(c["worst_margin"].get<double>() > 0.0);
        }
    }
    CHECK(saw_margins);
    check_manifest(path);
}

TEST_CASE("verify at l_max = 4 includes the density check") {
    Scratch tmp;
    const auto path = tmp("v4.json");
    REQUIRE(hypin_run({"verify", "--l-max", "4", "--out", path}).code == 0);
    bool found = false;
    const auto doc = json::parse(slurp(path));
    for (const auto& c : doc["checks"]) {
        if (c["name"] == "regular_density") {
            found = true;
            CHECK(c["passed"] == true);
        }
    }
    CHECK(found);
}

TEST_CASE("verify with an injected fault fails with the check name") {
    Scratch tmp;
    const auto r = hypin_run({"verify", "--l-max", "5", "--inject-fault", "beta_concavity", "--out", tmp("v.json")});
    CHECK(r.code == 4);
    CHECK(r.err.find("beta_concavity") != std::string::npos);
    CHECK(hypin_run({"verify", "--l-max", "13", "--out", tmp("v.json")}).code == 2);
    CHECK(hypin_run({"verify", "--l-max", "3", "--out", tmp("v.json")}).code == 2);
    CHECK(hypin_run({"verify", "--inject-fault", "nonsense", "--out", tmp("v.json")}).code == 2);
}

TEST_CASE("render type 5 matches the pinned hash") {
    Scratch tmp;
    const auto a = tmp("t5.svg");
    const auto b = tmp("t5_again.svg");
    REQUIRE(hypin_run({"render", "--l", "4", "--type", "5", "--out", a}).code == 0);
    REQUIRE(hypin_run({"render", "--l", "4", "--type", "5", "--out", b}).code == 0);
    CHECK(hypin::cli::sha256_hex(slurp(a)) == kType5SvgSha256);
    CHECK(slurp(a) == slurp(b));
    check_manifest(a);
    const auto summary = json::parse(slurp(a + ".manifest.json"))["summary"];
    CHECK(summary["max_side_distance_error"].get<double>() < 1e-8);
    CHECK(summary["max_vertex_angle_error"].get<double>() < 1e-6);
}

TEST_CASE("render type 1 is a hexagon; bad index is a usage error") {
    Scratch tmp;
    const auto a = tmp("t1.svg");
    const auto r = hypin_run({"render", "--l", "4", "--type", "1", "--out", a});
    REQUIRE(r.code == 0);
    CHECK(json::parse(slurp(a + ".manifest.json"))["summary"]["sides"] == 6);
    CHECK(hypin_run({"render", "--l", "4", "--type", "6", "--out", a}).code == 2);
    CHECK(hypin_run({"render", "--l", "4", "--type", "0", "--out", a}).code == 2);
}

TEST_CASE("optimize finds the regular maxima") {
    Scratch tmp;
    const double expected[] = {std::cosh(1.031718), std::cosh(1.011595), 1 / (2 * std::sin(oracle::pi / 10))};
    for (int t = 3; t <= 5; ++t) {
        const auto path = tmp("o.json");
        REQUIRE(hypin_run({"optimize", "--type", std::to_string(t), "--seed", "1", "--out", path}).code == 0);
        const auto doc = json::parse(slurp(path));
        CHECK(doc["best_verdict"] == "local_max");
        CHECK(std::abs(doc["best_objective"].get<double>() - expected[t - 3]) < 1e-5);
        CHECK(std::abs(doc["reports"][0]["x"].get<double>() - std::acosh(expected[t - 3])) < 5e-6);
        check_manifest(path);
    }
    CHECK(std::abs(json::parse(slurp(tmp("o.json")))["best_objective"].get<double>() - 1.618034) < 1e-6);
    CHECK(hypin_run({"optimize", "--type", "2"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(hypin_run({}).code == 2);
    CHECK(hypin_run({"frobnicate"}).code == 2);
    CHECK(hypin_run({"solve"}).code == 2);
    CHECK(hypin_run({"solve", "--l", "four"}).code == 2);
    CHECK(hypin_run({"enumerate", "--l", "4", "--format", "xml"}).code == 2);
    CHECK(hypin_run({"--help"}).code == 0);
}
