#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using combmod::cli::dispatch;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("combmod_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("build prints graph json") {
    auto r = run({"build", "t3", "--radius", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("vertices").size() == 10);
}

TEST_CASE("exit codes for bad input") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"build", "nothing"}).code == 2);
    CHECK(run({"build", "keyl"}).code == 2);
    auto dir = scratch("codes");
    const auto g = (dir / "g.json").string();
    REQUIRE(run({"build", "t3", "--radius", "2", "--out", g}).code == 0);
    CHECK(run({"modulus", "--graph", g, "--from", "nope", "--frontier"}).code == 2);
    CHECK(run({"modulus", "--graph", g, "--from", "t:0:"}).code == 2);
    CHECK(run({"modulus", "--graph", (dir / "missing.json").string(), "--from", "a", "--frontier"}).code == 2);
    std::ofstream(dir / "bad.json") << "{not json";
    CHECK(run({"modulus", "--graph", (dir / "bad.json").string(), "--from", "a", "--frontier"}).code == 2);
    std::ofstream(dir / "cfg.json") << R"({"C1": -1})";
    CHECK(run({"pipeline", "--config", (dir / "cfg.json").string()}).code == 2);
}

TEST_CASE("version flag") {
    auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find('.') != std::string::npos);
}

TEST_CASE("modulus report, csv and brute-force cross-check") {
    auto dir = scratch("modulus");
    const auto g = (dir / "p.json").string();
    REQUIRE(run({"build", "lattice", "--lattice", "half-cylinder", "--n", "4", "--depth", "2", "--out", g}).code == 0);
    const auto out = (dir / "m.json").string(), csv = (dir / "m.csv").string();
    auto r = run({"modulus", "--graph", g, "--from", "z:0:0", "--frontier", "--brute", "--out", out, "--csv", csv});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.at("value").get<double>() == doctest::Approx(j.at("brute_force").get<double>()).epsilon(1e-7));
    CHECK(slurp(csv).rfind("vertex,mass\n", 0) == 0);
    CHECK(fs::exists(out + ".manifest.json"));
}

TEST_CASE("replay reproduces outputs and detects changed inputs") {
    auto dir = scratch("replay");
    const auto g = (dir / "t.json").string(), out = (dir / "m.json").string();
    REQUIRE(run({"build", "t3", "--radius", "3", "--out", g}).code == 0);
    REQUIRE(run({"modulus", "--graph", g, "--from", "t:0:", "--frontier", "--out", out, "--jobs", "1"}).code == 0);
    auto r = run({"replay", "--manifest", out + ".manifest.json", "--jobs", "3", "--out-dir", (dir / "again").string()});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("identical").get<bool>());
    CHECK(slurp(dir / "again" / "m.json") == slurp(out));
    std::ofstream(g, std::ios::app) << " ";
    CHECK(run({"replay", "--manifest", out + ".manifest.json"}).code == 2);
}

TEST_CASE("verify-keyl with explicit floors") {
    auto r = run({"verify-keyl", "--floors", "1,1,2,2,2", "--kmax", "2", "--samples", "10", "--radii", "4,6"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("keyl").at("ok").get<bool>());
}
