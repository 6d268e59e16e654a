#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hier/cli/cli.hpp"
#include "json.hpp"

using namespace hier;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hierctl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fx(const std::string& name) { return std::string(HIER_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST_CASE("multiple choice report") {
    auto r = run({"mchoice", "--input", fx("table9_mchoice.json"), "--budget", "2.9"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("result.profit: 5.5\n") != std::string::npos);
    CHECK(r.out.find("result.chosen: s11 none s31 none\n") != std::string::npos);
    CHECK(r.out.rfind("command: mchoice\n", 0) == 0);
}

TEST_CASE("json report parses") {
    auto r = run({"mchoice", "--input", fx("table9_mchoice.json"), "--budget", "4.2", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["profit"] == "7.5");
    CHECK(j["instance"] == instance_digest(fixture::read("table9_mchoice.json")));

    auto c = run({"cluster", "--input", fx("table1_cluster.json"), "--format", "json"});
    REQUIRE(c.code == kExitOk);
    auto first = nlohmann::json::parse(c.out)["result"]["steps"][0];
    CHECK(first["a"] == nlohmann::json::array({7}));
    CHECK(first["b"] == nlohmann::json::array({8}));
    CHECK(first["distance_sq"] == "2");
}

TEST_CASE("reruns are byte identical") {
    for (std::vector<std::string> args : {std::vector<std::string>{"cluster", "--input", fx("table1_cluster.json")},
                                          {"kconnect", "--input", fx("fig19_kconnect.json"), "--seed", "5"},
                                          {"morpho", "--input", fx("car_repair_morpho.json")}}) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("exit codes") {
    auto unknown = run({"frobnicate"});
    CHECK(unknown.code == kExitInput);
    CHECK_FALSE(unknown.err.empty());

    CHECK(run({"mst", "--input", "/nonexistent/file.json"}).code == kExitInput);
    CHECK(run({"mst", "--input", fx("knapsack_sample.json")}).code == kExitInput);
    CHECK(run({"knapsack", "--input", fx("knapsack_sample.json"), "--mode", "approx", "--epsilon", "2"}).code ==
          kExitInput);

    auto heavy = temp_file("hier_cli_heavy.json",
                           R"({"kind": "mchoice", "budget": "1", "groups": [[{"id": "a", "profit": "1", "weight": "5"}]]})");
    auto inf = run({"mchoice", "--input", heavy});
    CHECK(inf.code == kExitInfeasible);
    CHECK(inf.err.find("Infeasible") != std::string::npos);
}

TEST_CASE("dot output") {
    auto path = (std::filesystem::temp_directory_path() / "hier_cli_mst.dot").string();
    std::filesystem::remove(path);
    auto r = run({"mst", "--input", fx("graph_sample.json"), "--dot", path});
    CHECK(r.code == kExitOk);
    std::ifstream in(path);
    std::string head;
    std::getline(in, head);
    CHECK(head == "graph G {");
}

TEST_CASE("instance digest") {
    CHECK(instance_digest("") == "cbf29ce484222325");
    CHECK(instance_digest("a") == "af63dc4c8601ec8c");
    CHECK(instance_digest("abc") == instance_digest("abc"));
    CHECK(instance_digest("abc").size() == 16);
}
