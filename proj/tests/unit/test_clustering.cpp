#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "hier/clustering/agglomerative.hpp"
#include "hier/core/error.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace hier;

namespace {

std::vector<Rational> ints(std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) out.emplace_back(x);
    return out;
}

// Cluster representative vectors alive before each step, rebuilt from the log.
std::vector<std::vector<std::vector<Rational>>> live_vectors(const ElementTable& t, const Dendrogram& d) {
    std::map<std::vector<int>, std::vector<Rational>> live;
    for (std::size_t i = 0; i < t.elements.size(); ++i) live[{t.elements[i]}] = t.values[i];
    std::vector<std::vector<std::vector<Rational>>> out;
    for (const auto& s : d.steps) {
        std::vector<std::vector<Rational>> now;
        for (const auto& [m, z] : live) now.push_back(z);
        out.push_back(now);
        live.erase(s.a);
        live.erase(s.b);
        auto merged = s.a;
        merged.insert(merged.end(), s.b.begin(), s.b.end());
        std::sort(merged.begin(), merged.end());
        live[merged] = s.merged;
    }
    return out;
}

}  // namespace

TEST_CASE("element table fixture shape") {
    auto inst = fixture::load<ClusterInstance>("table1_cluster.json");
    CHECK(inst.table.elements.size() == 8);
    CHECK(inst.table.values.front().size() == 4);
}

TEST_CASE("distance matrix on the element table") {
    auto t = fixture::load<ClusterInstance>("table1_cluster.json").table;
    auto d = distance_matrix(t);
    CHECK(d[6][7] == Rational(2));
    // Rows 2 and 4 differ by one in each of the four attributes.
    CHECK(d[1][3] == Rational(4));
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(d[i][i] == Rational(0));
        for (std::size_t j = 0; j < 8; ++j) CHECK(d[i][j] == d[j][i]);
    }
}

TEST_CASE("pair aggregation") {
    auto t = fixture::load<ClusterInstance>("table1_cluster.json").table;
    auto avg = aggregate_pair(t.values[6], t.values[7], AggregationRule::Average);
    CHECK(avg == std::vector<Rational>{Rational(3), Rational(3), Rational(9, 2), Rational(9, 2)});
    CHECK(aggregate_pair(ints({1, 5}), ints({3, 2}), AggregationRule::Min) == ints({1, 2}));
    CHECK(aggregate_pair(ints({1, 5}), ints({3, 2}), AggregationRule::Max) == ints({3, 5}));
    for (auto rule : {AggregationRule::Average, AggregationRule::Min, AggregationRule::Max}) {
        CHECK(aggregate_pair(ints({2, 4}), ints({2, 4}), rule) == ints({2, 4}));
    }
    CHECK_THROWS_AS(aggregate_pair(ints({1}), ints({1, 2}), AggregationRule::Min), Error);
}

TEST_CASE("element table merges start with 7,8 then 2,4") {
    auto inst = fixture::load<ClusterInstance>("table1_cluster.json");
    auto d = agglomerate(inst.table, inst.config);
    REQUIRE(d.steps.size() == 7);
    CHECK(d.steps[0].a == std::vector<int>{7});
    CHECK(d.steps[0].b == std::vector<int>{8});
    CHECK(d.steps[1].a == std::vector<int>{2});
    CHECK(d.steps[1].b == std::vector<int>{4});
    CHECK(d.clusters == std::vector<std::vector<int>>{{1, 2, 3, 4, 5, 6, 7, 8}});

    auto ref = oracle::reference_merges(inst.table, AggregationRule::Average, 1);
    REQUIRE(ref.size() == d.steps.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(d.steps[i].a == ref[i].first);
        CHECK(d.steps[i].b == ref[i].second);
    }

    ClusterConfig four = inst.config;
    four.target_clusters = 4;
    auto d4 = agglomerate(inst.table, four);
    CHECK(d4.steps.size() == 4);
    CHECK(d4.clusters.size() == 4);
}

TEST_CASE("single element table has no steps") {
    ElementTable t{{1}, {}, {ints({1, 2})}};
    auto d = agglomerate(t);
    CHECK(d.steps.empty());
    CHECK(d.clusters.size() == 1);
}

TEST_CASE("invalid tables") {
    CHECK_THROWS_AS(validate(ElementTable{}), ValidationError);
    CHECK_THROWS_AS(validate(ElementTable{{1, 2}, {}, {ints({1}), ints({1, 2})}}), ValidationError);
    CHECK_THROWS_AS(validate(ElementTable{{1, 1}, {}, {ints({1}), ints({2})}}), ValidationError);
}

TEST_CASE("max distance stop") {
    ElementTable t{{1, 2, 3}, {}, {ints({0}), ints({1}), ints({10})}};
    ClusterConfig c;
    c.max_distance = Rational(2);
    auto d = agglomerate(t, c);
    CHECK(d.steps.size() == 1);
    CHECK(d.clusters.size() == 2);
}

TEST_CASE("random tables agree with the quadratic reference") {
    gen::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        auto t = gen::table(rng, gen::uniform(rng, 1, 9), gen::uniform(rng, 1, 4));
        auto rule = static_cast<AggregationRule>(gen::uniform(rng, 0, 2));
        ClusterConfig c;
        c.rule = rule;
        c.target_clusters = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        auto d = agglomerate(t, c);
        auto ref = oracle::reference_merges(t, rule, c.target_clusters);
        REQUIRE(d.steps.size() == ref.size());
        std::size_t final_count = std::max<std::size_t>(1, std::min(c.target_clusters, t.elements.size()));
        CHECK(d.steps.size() == t.elements.size() - final_count);
        auto before = live_vectors(t, d);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(d.steps[i].a == ref[i].first);
            CHECK(d.steps[i].b == ref[i].second);
            // Recorded distance is the true minimum over live pairs.
            Rational least = d.steps[i].distance_sq;
            for (std::size_t x = 0; x < before[i].size(); ++x) {
                for (std::size_t y = x + 1; y < before[i].size(); ++y) {
                    least = std::min(least, squared_distance(before[i][x], before[i][y]));
                }
            }
            CHECK(least == d.steps[i].distance_sq);
        }
    }
}

TEST_CASE("permuting rows only relabels the partitions") {
    gen::Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        // Distinct distances so the tie-break cannot depend on labels.
        ElementTable t;
        for (int i = 0; i < 6; ++i) {
            t.elements.push_back(i + 1);
            t.values.push_back({Rational(1 << i) + Rational(gen::uniform(rng, 0, 1), 1000)});
        }
        std::vector<int> perm{0, 1, 2, 3, 4, 5};
        std::shuffle(perm.begin(), perm.end(), rng);
        ElementTable p;
        for (int i = 0; i < 6; ++i) {
            p.elements.push_back(10 + i);
            p.values.push_back(t.values[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        }
        auto relabel = [&](const std::vector<int>& m) {
            std::vector<int> out;
            for (int e : m) out.push_back(perm[static_cast<std::size_t>(e - 10)] + 1);
            std::sort(out.begin(), out.end());
            return out;
        };
        auto d1 = agglomerate(t), d2 = agglomerate(p);
        REQUIRE(d1.steps.size() == d2.steps.size());
        for (std::size_t i = 0; i < d1.steps.size(); ++i) {
            std::set<std::vector<int>> s1{d1.steps[i].a, d1.steps[i].b};
            std::set<std::vector<int>> s2{relabel(d2.steps[i].a), relabel(d2.steps[i].b)};
            CHECK(s1 == s2);
        }
    }
}

TEST_CASE("ordinal variant") {
    ElementTable twins{{1, 2, 3}, {}, {ints({1, 5}), ints({4, 0}), ints({1, 5})}};
    auto d = agglomerate_ordinal(twins);
    CHECK(d.steps[0].a == std::vector<int>{1});
    CHECK(d.steps[0].b == std::vector<int>{3});

    ElementTable pair{{1, 2}, {}, {ints({0, 5}), ints({5, 0})}};
    CHECK(agglomerate_ordinal(pair).steps.size() == 1);

    gen::Rng rng(8);
    for (int trial = 0; trial < 80; ++trial) {
        auto t = gen::table(rng, 5, 3);
        auto dd = agglomerate_ordinal(t);
        auto before = live_vectors(t, dd);
        for (std::size_t i = 0; i < dd.steps.size(); ++i) {
            const auto& chosen = dd.steps[i].proximity;
            const auto& live = before[i];
            for (std::size_t x = 0; x < live.size(); ++x) {
                for (std::size_t y = x + 1; y < live.size(); ++y) {
                    bool le = true, lt = false;
                    for (std::size_t j = 0; j < chosen.size(); ++j) {
                        Rational diff = live[x][j] > live[y][j] ? live[x][j] - live[y][j] : live[y][j] - live[x][j];
                        le = le && diff <= chosen[j];
                        lt = lt || diff < chosen[j];
                    }
                    CHECK_FALSE((le && lt));
                }
            }
        }
    }
}
