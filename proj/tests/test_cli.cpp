#include "cli.hpp"

#include "twapprox/instance_io.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twapprox;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    nlohmann::json report() const { return nlohmann::json::parse(out.substr(0, out.find('\n'))); }
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "twapprox_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("infeasible path reports status and exit 2") {
    auto p3 = write_file("p3.cvc", "p cvc 3 2\nw 2 1\ne 1 2\ne 2 3\n");
    auto r = call({"solve-cvc-exact", p3});
    CHECK(r.code == cli::kNoSolution);
    CHECK(r.report()["status"] == "infeasible");
    auto a = call({"solve-cvc-approx", p3});
    CHECK(a.code == cli::kNoSolution);
    CHECK(a.report()["status"] == "infeasible");
    CHECK(call({"oracle", p3}).code == cli::kNoSolution);
}

TEST_CASE("oracle on the triangle") {
    auto k3 = write_file("k3-t2.tss", "p tss 3 3\nw 1 2\nw 2 2\nw 3 2\ne 1 2\ne 1 3\ne 2 3\n");
    auto r = call({"oracle", k3});
    CHECK(r.code == cli::kOk);
    CHECK(r.report()["opt"] == 2);
    auto s = call({"solve-tss", k3, "--budget", "2"});
    CHECK(s.code == cli::kOk);
    CHECK(s.report()["solution"].size() == 2);
}

TEST_CASE("generator output round-trips") {
    auto inst = (scratch() / "gen.cvc").string();
    auto td = (scratch() / "gen.td").string();
    auto r = call({"gen", "--n", "10", "--k", "2", "--keep", "1.0", "--seed", "7", "--out", inst, "--td-out", td});
    REQUIRE(r.code == cli::kOk);
    auto loaded = read_instance_file(inst);
    CHECK(loaded.graph.m() == 17);
    CHECK(call({"validate-td", inst, td}).code == cli::kOk);
    auto ex = call({"solve-cvc-exact", inst, "--td", td});
    auto ap = call({"solve-cvc-approx", inst, "--td", td, "--epsilon", "1/2000"});
    auto orc = call({"oracle", inst});
    REQUIRE(ex.code == orc.code);
    if (ex.code == cli::kOk) {
        CHECK(ex.report()["opt"] == orc.report()["opt"]);
        CHECK(ap.code == cli::kOk);
        CHECK(ap.report()["instance_hash"] == ex.report()["instance_hash"]);
    }
    CHECK(call({"nice-td", inst, "--td", td}).code == cli::kOk);
}

TEST_CASE("reports carry the common fields") {
    auto k3 = write_file("k3.vds", "p vds 3 3\nw 1 1\nw 2 1\nw 3 1\ne 1 2\ne 1 3\ne 2 3\n");
    auto r = call({"solve-vds", k3, "--budget", "auto", "--seed", "5"}).report();
    for (const char* key : {"instance_hash", "seed", "width", "wall_time_s"}) CHECK(r.contains(key));
    CHECK(r["seed"] == 5);
}

TEST_CASE("input and usage errors exit 3") {
    CHECK(call({"no-such-command"}).code == cli::kInputError);
    CHECK(call({"solve-cvc-exact", "--bogus-flag", "x"}).code == cli::kInputError);
    auto bad = write_file("bad.cvc", "p cvc 2 1\ne 1 1\n");
    CHECK(call({"solve-cvc-exact", bad}).code == cli::kInputError);
    CHECK(call({"oracle", (scratch() / "missing.cvc").string()}).code == cli::kInputError);
    auto ok = write_file("edge.cvc", "p cvc 2 1\nw 1 1\ne 1 2\n");
    CHECK(call({"solve-cvc-approx", ok, "--epsilon", "-1/2"}).code == cli::kInputError);
}

TEST_CASE("resource guards exit 4") {
    std::string text = "p tss 20 19\n";
    for (int v = 1; v < 20; ++v) text += "e " + std::to_string(v) + " " + std::to_string(v + 1) + "\n";
    CHECK(call({"oracle", write_file("long.tss", text)}).code == cli::kResource);
}

TEST_CASE("sweep is deterministic") {
    auto a = call({"sweep", "--seed", "1", "--count", "4"});
    auto b = call({"sweep", "--seed", "1", "--count", "4"});
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

} // TEST_SUITE
