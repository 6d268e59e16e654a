#include "doctest.h"

#include <algorithm>
#include <filesystem>

#include "fixtures.hpp"
#include "hier/core/error.hpp"
#include "hier/io/instance.hpp"

using namespace hier;

namespace {

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(HIER_FIXTURE_DIR)) {
        if (e.path().extension() == ".json") out.push_back(e.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class F>
Error catch_error(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an error");
    return Error(ErrorKind::Syntax, "");
}

}  // namespace

TEST_CASE("every fixture parses and round trips") {
    auto names = fixture_names();
    CHECK(names.size() >= 18);
    for (const auto& name : names) {
        CAPTURE(name);
        auto text = fixture::read(name);
        auto first = parse_instance(text);
        auto once = serialize(first);
        auto second = parse_instance(once);
        CHECK(kind_name(second) == kind_name(first));
        CHECK(serialize(second) == once);
        CHECK_NOTHROW(parse_instance(text, kind_name(first)));
    }
}

TEST_CASE("element table shape") {
    auto c = fixture::load<ClusterInstance>("table1_cluster.json");
    CHECK(c.table.elements.size() == 8);
    CHECK(c.table.attributes.size() == 4);
    CHECK(c.table.values.size() == 8);
    for (const auto& row : c.table.values) CHECK(row.size() == 4);
}

TEST_CASE("missing field reports its path") {
    std::string text = R"({"kind": "condense", "problem": 1, "b": "9",
        "nodes": [{"id": 0, "ram": "4"}, {"id": 1, "parent": 0, "freq": "2"}]})";
    try {
        parse_instance(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.path() == "ram.1");
    }
}

TEST_CASE("malformed json is a syntax error") {
    CHECK(catch_error([] { parse_instance("{\"kind\": \"graph\", "); }).kind() == ErrorKind::Syntax);
    CHECK(catch_error([] { parse_instance("[1, 2]"); }).kind() != ErrorKind::Syntax);
}

TEST_CASE("fractional numbers must be strings") {
    std::string bad = R"({"kind": "knapsack", "budget": 2.5, "items": [{"id": "a", "profit": "1", "weight": "1"}]})";
    CHECK_THROWS_AS(parse_instance(bad), ValidationError);
    std::string good = R"({"kind": "knapsack", "budget": "2.5", "items": [{"id": "a", "profit": "1", "weight": "1"}]})";
    auto k = std::get<KnapsackInstance>(parse_instance(good));
    CHECK(k.budget == Rational(5, 2));
    std::string whole = R"({"kind": "knapsack", "budget": 3, "items": []})";
    CHECK(std::get<KnapsackInstance>(parse_instance(whole)).budget == Rational(3));
}

TEST_CASE("declared kind must match") {
    auto text = fixture::read("knapsack_sample.json");
    CHECK_THROWS_AS(parse_instance(text, std::string("graph")), Error);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "nonsense"})"), Error);
    CHECK_THROWS_AS(parse_instance(R"({"budget": "1"})"), Error);
}
