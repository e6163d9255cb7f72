#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbkit/io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using cbkit::io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cbkit::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("CBKIT_TMP");
    fs::path dir = base ? fs::path(base) : fs::temp_directory_path() / "cbkit_cli_test";
    dir /= name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ord") {
    CHECK(trimmed(run({"ord", "add", "1", "w"}).out) == "w");
    CHECK(trimmed(run({"ord", "add", "w", "1"}).out) == "w+1");
    CHECK(trimmed(run({"ord", "fs", "w^(2)", "2"}).out) == "w*3");
    CHECK(trimmed(run({"ord", "mul", "w+1", "2"}).out) == "w*2+1");
    CHECK(trimmed(run({"ord", "cmp", "w", "w*2"}).out) == "Less");
    CHECK(trimmed(run({"ord", "sub", "w", "w*2"}).out) == "w");
    CHECK(trimmed(run({"ord", "norm", "w+w"}).out) == "w*2");

    const auto bad_sub = run({"ord", "sub", "w*2", "w"});
    CHECK(bad_sub.code == 3);
    CHECK(bad_sub.err.find("Undefined") != std::string::npos);
    CHECK(run({"ord", "fs", "w+1", "0"}).code == 3);
    CHECK(run({"ord", "add", "w^(", "1"}).code == 2);
    CHECK(run({"ord", "frobnicate", "1", "1"}).code == 2);
}

TEST_CASE("strict parsing") {
    CHECK(run({"ord", "norm", "w+w"}).code == 0);
    CHECK(run({"--strict", "ord", "norm", "w+w"}).code == 2);
    CHECK(run({"--strict", "ord", "norm", "w*2"}).code == 0);
    ::setenv("CBKIT_STRICT", "1", 1);
    const auto r = run({"ord", "norm", "1+w"});
    ::unsetenv("CBKIT_STRICT");
    CHECK(r.code == 2);
    CHECK(run({"ord", "norm", "1+w"}).code == 0);
}

TEST_CASE("space") {
    CHECK(trimmed(run({"space", "derive", "--rank", "w", "--count", "1"}).out) == R"({"rank":"w","count":1})");
    CHECK(trimmed(run({"space", "steps", "--rank", "3", "--count", "2", "--beta", "3"}).out) ==
          R"({"rank":"0","count":2})");
    CHECK(run({"space", "derive", "--rank", "w", "--count", "0"}).code == 2);

    const auto dir = scratch("space");
    spit(dir / "a.json", R"({"rank":"w","count":1})");
    spit(dir / "b.json", R"({"rank":"2","count":3})");
    spit(dir / "c.json", R"({"rank":"w","count":1})");
    CHECK(trimmed(run({"space", "homeo", (dir / "a.json").string(), (dir / "b.json").string()}).out) == "false");
    CHECK(trimmed(run({"space", "homeo", (dir / "a.json").string(), (dir / "c.json").string()}).out) == "true");
    CHECK(trimmed(run({"space", "union", (dir / "a.json").string(), (dir / "b.json").string()}).out) ==
          R"({"rank":"w","count":1})");
    CHECK(run({"space", "homeo", (dir / "a.json").string(), (dir / "nope.json").string()}).code == 2);
}

TEST_CASE("census and classcount") {
    CHECK(trimmed(run({"census", "--rank-bound", "0", "--count-bound", "5"}).out) == "[]");
    const auto c = Json::parse(run({"census", "--rank-bound", "3", "--count-bound", "2"}).out);
    CHECK(c.size() == 7);
    const auto w = Json::parse(run({"census", "--rank-bound", "w", "--count-bound", "2"}).out);
    CHECK(w.size() == 101);
    CHECK(run({"census", "--rank-bound", "w", "--count-bound", "5000"}).code == 3);
    CHECK(trimmed(run({"classcount", "finite", "4"}).out) == R"({"kind":"finite","n":5})");
    CHECK(trimmed(run({"classcount", "countable"}).out) == R"({"kind":"aleph0"})");
    CHECK(trimmed(run({"classcount", "uncountable"}).out) == R"({"kind":"aleph1"})");
    CHECK(run({"classcount", "weird"}).code == 2);
}

TEST_CASE("realize then verify") {
    const auto dir = scratch("roundtrip");
    for (const char* rank : {"0", "1", "2", "3", "w", "w+1", "w*2", "w^(2)", "w^(2)+w"}) {
        for (const char* count : {"1", "3"}) {
            CAPTURE(rank);
            CAPTURE(count);
            const auto tree = dir / (std::string("t_") + rank + "_" + count + ".json");
            const auto r = run({"realize", "--rank", rank, "--count", count, "--depth", "4", "--out", tree.string()});
            REQUIRE(r.code == 0);
            CHECK(fs::exists(tree));
            auto csv = tree;
            csv.replace_extension(".csv");
            CHECK(slurp(csv).rfind("point,den_path\n", 0) == 0);
            const auto v = run({"verify", tree.string()});
            CHECK(v.code == 0);
            const auto report = Json::parse(v.out);
            CHECK(report["ok"] == true);
            CHECK(report["char_expected"]["rank"] == rank);
        }
    }
    // A directory verifies every tree in it.
    const auto all = run({"verify", dir.string()});
    CHECK(all.code == 0);
    CHECK(Json::parse(all.out).size() == 18);
}

TEST_CASE("verify failures") {
    const auto dir = scratch("failures");
    const auto good = dir / "good.json";
    REQUIRE(run({"realize", "--rank", "2", "--out", good.string()}).code == 0);

    // Move a grandchild onto the separating sphere of annulus 0.
    Json j = Json::parse(slurp(good));
    j["children"][0]["children"][0]["center"] = "3/8";
    spit(dir / "bad.json", j.dump());
    const auto bad = run({"verify", (dir / "bad.json").string(), "--report", (dir / "report.json").string()});
    CHECK(bad.code == 1);
    const auto report = Json::parse(slurp(dir / "report.json"));
    CHECK(report["ok"] == false);
    CHECK(report.dump().find("3/8") != std::string::npos);

    // Rank annotation that the structure does not support.
    Json k = Json::parse(slurp(good));
    k["children"][1]["rank"] = "3";
    spit(dir / "lie.json", k.dump());
    CHECK(run({"verify", (dir / "lie.json").string()}).code == 1);

    CHECK(run({"verify", (dir / "missing.json").string()}).code == 2);
    spit(dir / "garbage.json", "{");
    CHECK(run({"verify", (dir / "garbage.json").string()}).code == 2);
    // Mixed batch: worst code wins.
    CHECK(run({"verify", good.string(), (dir / "bad.json").string()}).code == 1);
    CHECK(run({"verify", good.string(), (dir / "missing.json").string()}).code == 2);
    CHECK(run({"verify", scratch("empty").string()}).code == 2);
}

TEST_CASE("realize options and errors") {
    const auto printed = Json::parse(run({"realize", "--rank", "1", "--children", "3"}).out);
    CHECK(printed["children"].size() == 3);
    // A single cluster gets radius 1/2, so r_2 = 1/16.
    CHECK(printed["children"][2]["center"] == "1/16");

    const auto dir = scratch("options");
    spit(dir / "cfg.txt", "children_per_node = 2\nradius_schedule = harmonic\nside_rule = alternate\n");
    const auto cfg = Json::parse(run({"realize", "--rank", "1", "--config", (dir / "cfg.txt").string()}).out);
    CHECK(cfg["children"].size() == 2);
    CHECK(cfg["children"][1]["center"] == "-1/6");  // r_1 = (1/2) / 3, placed left

    CHECK(run({"realize", "--rank", "w+"}).code == 2);
    CHECK(run({"realize", "--rank", "1", "--count", "0"}).code == 2);
    CHECK(run({"realize", "--rank", "1", "--children", "1"}).code != 0);
    spit(dir / "bad.txt", "colour = blue\n");
    CHECK(run({"realize", "--rank", "1", "--config", (dir / "bad.txt").string()}).code == 2);
}

TEST_CASE("output is deterministic") {
    const auto dir = scratch("determinism");
    for (int i = 0; i < 2; ++i)
        REQUIRE(run({"realize", "--rank", "w*2", "--count", "2", "--depth", "3", "--out",
                     (dir / ("t" + std::to_string(i) + ".json")).string()})
                    .code == 0);
    CHECK(slurp(dir / "t0.json") == slurp(dir / "t1.json"));
    CHECK(slurp(dir / "t0.csv") == slurp(dir / "t1.csv"));
    CHECK(run({"verify", (dir / "t0.json").string()}).out == run({"verify", (dir / "t0.json").string()}).out);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"census", "--rank-bound", "w"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

}  // TEST_SUITE
