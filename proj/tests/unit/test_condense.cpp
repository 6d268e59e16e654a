#include "doctest.h"

#include "fixtures.hpp"
#include "hier/condense/condense.hpp"
#include "hier/core/error.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace hier;

namespace {

OverlayTree chain(std::initializer_list<int> rams) {
    OverlayTree t(0);
    int id = 0;
    for (int r : rams) {
        if (id > 0) {
            t.add_child(id - 1, id);
            t.set_arc_weight(id, Rational(1));
        }
        t.set_node_weight(id, Rational(r));
        ++id;
    }
    return t;
}

Rational total_ram(const OverlayTree& t) {
    Rational s{0};
    for (const auto& [v, w] : t.node_weights()) s += w;
    return s;
}

Rational total_freq(const OverlayTree& t) {
    Rational s{0};
    for (const auto& [v, w] : t.arc_weights()) s += w;
    return s;
}

// Problem-1 fan reduction for a star: guess the heaviest uncondensed child,
// force heavier children into the kernel and knapsack over the rest.
Rational star_by_knapsack(const OverlayTree& t, const Rational& b) {
    Rational root = *t.node_weight(t.root());
    const auto& kids = t.children(t.root());
    Rational best{-1};
    std::vector<Rational> guesses{Rational(0)};
    for (NodeId c : kids) guesses.push_back(*t.node_weight(c));
    for (const Rational& g : guesses) {
        Rational forced_ram{0}, forced_freq{0};
        std::vector<Item> optional;
        for (NodeId c : kids) {
            Rational r = *t.node_weight(c);
            if (r > g) {
                forced_ram += r;
                forced_freq += *t.arc_weight(c);
            } else {
                optional.push_back({std::to_string(c), *t.arc_weight(c), r});
            }
        }
        Rational room = b - root - g - forced_ram;
        if (room < 0) continue;
        best = std::max(best, forced_freq + knapsack_exact(optional, room).profit);
    }
    return best;
}

}  // namespace

TEST_CASE("apply plan on the overlay fixture") {
    auto inst = fixture::load<CondenseInstance>("fig28_condense.json");
    auto c = apply_plan(inst.tree, {1, 2, 7, 10});
    CHECK(c.members.at(0) == std::vector<NodeId>{0, 1, 2});
    CHECK(c.members.at(3) == std::vector<NodeId>{3, 7});
    CHECK(c.members.at(5) == std::vector<NodeId>{5, 10});
    CHECK(*c.tree.node_weight(0) == Rational(9));
    CHECK(c.tree.children(0) == std::vector<NodeId>{3, 4, 5, 11, 12});
    CHECK(total_ram(c.tree) == total_ram(inst.tree));

    auto same = apply_plan(inst.tree, {});
    CHECK(same.tree == inst.tree);
    CHECK_THROWS_AS(apply_plan(inst.tree, {0}), Error);
    CHECK_THROWS_AS(apply_plan(inst.tree, {99}), Error);
}

TEST_CASE("chain fully condensed") {
    auto t = chain({2, 3, 4});
    auto c = apply_plan(t, {1, 2});
    CHECK(c.tree.size() == 1);
    CHECK(*c.tree.node_weight(0) == Rational(9));
}

TEST_CASE("tree and tail weights") {
    OverlayTree single(0);
    single.set_node_weight(0, Rational(5));
    CHECK(tree_weight(single) == Rational(5));

    OverlayTree star(0);
    star.set_node_weight(0, Rational(2));
    for (int i = 1; i <= 3; ++i) {
        star.add_child(0, i);
        star.set_node_weight(i, Rational(i * 2));
        star.set_arc_weight(i, Rational(1));
    }
    CHECK(tree_weight(star) == Rational(8));
    CHECK(tail_weight(star, 2) == Rational(0));

    auto t = chain({2, 3, 4});
    CHECK(tail_weight(t, 0) == Rational(7));
    CHECK(tail_weight(t, 0) + 2 == tree_weight(t));
    CHECK_THROWS_AS(tail_weight(t, 9), Error);

    gen::Rng rng(80);
    for (int i = 0; i < 50; ++i) {
        auto r = gen::overlay(rng, gen::uniform(rng, 0, 12), 4);
        CHECK(tree_weight(r) == oracle::path_max_weight(r));
        CHECK(tail_weight(r, r.root()) + *r.node_weight(r.root()) == tree_weight(r));
    }
}

TEST_CASE("plan evaluation invariants") {
    gen::Rng rng(81);
    for (int i = 0; i < 60; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 1, 9), 3);
        std::vector<NodeId> arcs;
        for (NodeId v : t.nodes()) {
            if (v != t.root()) arcs.push_back(v);
        }
        CondensePlan plan;
        for (NodeId v : arcs) {
            if (gen::uniform(rng, 0, 1)) plan.insert(v);
        }
        auto res = evaluate_plan(t, plan);
        auto ref = oracle::evaluate(t, plan);
        CHECK(res.saved == ref.saved);
        CHECK(res.kernel == ref.kernel);
        CHECK(res.tail == ref.tail);
        CHECK(res.weight == ref.weight);
        CHECK(total_ram(res.condensed.tree) == total_ram(t));
        CHECK(tree_weight(res.condensed.tree) == res.weight);
        // Uncondensed leaves survive as vertices.
        for (NodeId leaf : t.leaves()) {
            if (!plan.count(leaf)) CHECK(res.condensed.tree.has_node(leaf));
        }
        // Condensing one more arc never shortens the heaviest chain.
        for (NodeId v : arcs) {
            if (plan.count(v)) continue;
            auto more = plan;
            more.insert(v);
            CHECK(tree_weight(apply_plan(t, more).tree) >= tree_weight(res.condensed.tree));
        }
    }
}

TEST_CASE("kind one exact small") {
    auto inst = fixture::load<CondenseInstance>("fig28_condense.json");
    auto res = solve_kind1(inst.tree, inst.b);
    auto ref = oracle::condense_kind1(inst.tree, inst.b);
    CHECK(res.saved == ref.saved);
    CHECK(res.weight <= inst.b);

    auto all = solve_kind1(inst.tree, total_ram(inst.tree));
    CHECK(all.plan.size() == inst.tree.size() - 1);
    CHECK(all.saved == total_freq(inst.tree));

    // Every single condensation breaks the budget.
    OverlayTree star(0);
    star.set_node_weight(0, Rational(1));
    for (int i = 1; i <= 2; ++i) {
        star.add_child(0, i);
        star.set_node_weight(i, Rational(5));
        star.set_arc_weight(i, Rational(3));
    }
    auto none = solve_kind1(star, tree_weight(star));
    CHECK(none.plan.empty());
    CHECK(none.saved == Rational(0));

    CHECK_THROWS_AS(solve_kind1(star, Rational(1, 2)), Error);
}

TEST_CASE("kind one on stars matches the knapsack reduction") {
    gen::Rng rng(82);
    for (int i = 0; i < 40; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 1, 4), 1);
        Rational b = tree_weight(t) + gen::uniform(rng, 0, 10);
        CHECK(solve_kind1(t, b).saved == star_by_knapsack(t, b));
    }
}

TEST_CASE("exact solvers against plan enumeration") {
    gen::Rng rng(83);
    for (int i = 0; i < 60; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 1, 10), gen::uniform(rng, 1, 4));
        Rational tw = tree_weight(t);
        Rational b = tw + gen::uniform(rng, 0, 8);
        auto r1 = solve_kind1(t, b);
        CHECK(r1.saved == oracle::condense_kind1(t, b).saved);
        CHECK(r1.weight <= b);
        CHECK(r1.saved == oracle::evaluate(t, r1.plan).saved);

        Rational bm = *t.node_weight(t.root()) + gen::uniform(rng, 0, 8);
        Rational bp = tail_weight(t, t.root()) + gen::uniform(rng, 0, 3);
        auto r2 = solve_kind2(t, bm, bp);
        CHECK(r2.saved == oracle::condense_kind2(t, bm, bp).saved);
        CHECK(r2.kernel <= bm);
        CHECK(r2.tail <= bp);

        // A kernel budget that is never binding leaves only the tail constraint.
        auto loose = solve_kind2(t, total_ram(t), bp);
        CHECK(loose.saved == oracle::condense_kind2(t, total_ram(t), bp).saved);
    }
}

TEST_CASE("kind two on a star") {
    OverlayTree star(0);
    star.set_node_weight(0, Rational(2));
    int rams[] = {4, 3, 1};
    int freqs[] = {5, 4, 2};
    for (int i = 1; i <= 3; ++i) {
        star.add_child(0, i);
        star.set_node_weight(i, Rational(rams[i - 1]));
        star.set_arc_weight(i, Rational(freqs[i - 1]));
    }
    // Kernel room 5 and tail room 3: condense 1 (ram 4), leave 2 and 3 outside.
    auto r = solve_kind2(star, Rational(7), Rational(3));
    CHECK(r.plan == CondensePlan{1, 3});
    CHECK(r.kernel == Rational(7));
    CHECK(r.tail == Rational(3));
    CHECK(r.saved == Rational(7));
}

TEST_CASE("approximate modes stay inside the envelope") {
    gen::Rng rng(84);
    CondenseMode mode{CondenseMode::Kind::Approx, Rational(1, 5), Rational(1, 5)};
    for (int i = 0; i < 40; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 1, 9), gen::uniform(rng, 1, 3));
        Rational b = tree_weight(t) + gen::uniform(rng, 0, 8);
        auto r1 = solve_kind1(t, b, mode);
        CHECK(r1.weight <= (1 + mode.delta) * b);
        CHECK(r1.saved >= (1 - mode.epsilon) * oracle::condense_kind1(t, b).saved);
        CHECK(r1.saved == oracle::evaluate(t, r1.plan).saved);

        Rational bm = *t.node_weight(t.root()) + gen::uniform(rng, 0, 8);
        Rational bp = tail_weight(t, t.root()) + gen::uniform(rng, 0, 3);
        auto r2 = solve_kind2(t, bm, bp, mode);
        CHECK(r2.kernel <= (1 + mode.delta) * bm);
        CHECK(r2.tail <= (1 + mode.delta) * bp);
        CHECK(r2.saved >= (1 - mode.epsilon) * oracle::condense_kind2(t, bm, bp).saved);
    }
}

TEST_CASE("cascade corner cases") {
    gen::Rng rng(85);
    for (int i = 0; i < 20; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 1, 5), 1);
        Rational b = tree_weight(t) + gen::uniform(rng, 0, 6);
        auto c = cascade_bottom_up(t, Kind1Budget{b}, Rational(1, 10), Rational(1, 10));
        CHECK(c.saved >= Rational(9, 10) * oracle::condense_kind1(t, b).saved);
        CHECK(c.weight <= Rational(11, 10) * b);
    }
    // Equal frequencies and a generous budget condense everything.
    auto t = gen::overlay(rng, 8, 3);
    for (NodeId v : t.nodes()) {
        if (v != t.root()) t.set_arc_weight(v, Rational(2));
    }
    auto all = cascade_bottom_up(t, Kind1Budget{total_ram(t)}, Rational(1, 5), Rational(1, 5));
    CHECK(all.plan.size() == t.size() - 1);
    auto all2 = cascade_bottom_up(t, Kind2Budget{total_ram(t), Rational(0)}, Rational(1, 5), Rational(1, 5));
    CHECK(all2.plan.size() == t.size() - 1);
}

TEST_CASE("cascade on three-level trees") {
    gen::Rng rng(86);
    Rational eps{1, 5}, delta{1, 5};
    for (int i = 0; i < 40; ++i) {
        auto t = gen::overlay(rng, gen::uniform(rng, 3, 10), 3);
        Rational b = tree_weight(t) + gen::uniform(rng, 0, 8);
        auto c1 = cascade_bottom_up(t, Kind1Budget{b}, eps, delta);
        CHECK(c1.weight <= (1 + delta) * b);
        CHECK(c1.saved >= (1 - eps) * oracle::condense_kind1(t, b).saved);

        Rational bm = *t.node_weight(t.root()) + gen::uniform(rng, 0, 8);
        Rational bp = tail_weight(t, t.root()) + gen::uniform(rng, 0, 3);
        auto c2 = cascade_bottom_up(t, Kind2Budget{bm, bp}, eps, delta);
        CHECK(c2.kernel <= (1 + delta) * bm);
        CHECK(c2.tail <= (1 + delta) * bp);
        CHECK(c2.saved >= (1 - eps) * oracle::condense_kind2(t, bm, bp).saved);
    }
}

TEST_CASE("fan subproblems against exhaustive search") {
    gen::Rng rng(87);
    for (auto kind : {AuxKind::K11, AuxKind::K12, AuxKind::K13, AuxKind::K14, AuxKind::K21, AuxKind::K22,
                      AuxKind::K23, AuxKind::K24}) {
        for (int i = 0; i < 25; ++i) {
            auto inst = gen::auxiliary(rng, kind, gen::uniform(rng, 1, 4), 3);
            auto opt = oracle::auxiliary_optimum(kind, inst);
            if (!opt) {
                CHECK_THROWS_AS(solve_auxiliary(kind, inst), Error);
                continue;
            }
            auto s = solve_auxiliary(kind, inst);
            CHECK(s.selection.profit == *opt);
            if (is_kind_one(kind)) {
                CHECK(s.kernel + s.max_term <= inst.b);
            } else {
                CHECK(s.kernel <= inst.b_minus);
                CHECK(s.max_term <= inst.b_plus);
            }
            AuxMode approx{true, Rational(1, 5), Rational(1, 5)};
            auto a = solve_auxiliary(kind, inst, approx);
            CHECK(a.selection.profit >= Rational(4, 5) * *opt);
        }
    }
}

TEST_CASE("fan subproblem corner cases") {
    AuxInstance one;
    one.root_ram = Rational(1);
    one.groups = {{{"c", Rational(3), Rational(0), Rational(0), Rational(5)}}};
    // Merged: kernel 4, no max term. Unmerged: kernel 1, max term 3.
    one.b = Rational(4);
    auto s = solve_auxiliary(AuxKind::K11, one);
    CHECK(s.selection.profit == Rational(5));
    one.b = Rational(7, 2);
    CHECK_THROWS_AS(solve_auxiliary(AuxKind::K11, one), Error);

    gen::Rng rng(88);
    for (int i = 0; i < 20; ++i) {
        auto inst = gen::auxiliary(rng, AuxKind::K11, 3, 1);
        auto a = oracle::auxiliary_optimum(AuxKind::K11, inst);
        if (!a) continue;
        CHECK(solve_auxiliary(AuxKind::K13, inst).selection.profit == solve_auxiliary(AuxKind::K11, inst).selection.profit);
    }
    AuxInstance bad = one;
    bad.groups[0].push_back({"d", Rational(1), Rational(0), Rational(0), Rational(1)});
    CHECK_THROWS_AS(solve_auxiliary(AuxKind::K11, bad), ValidationError);
    CHECK_THROWS_AS(parse_aux_kind("3.1"), Error);
}

TEST_CASE("exact limit") {
    gen::Rng rng(89);
    auto big = gen::overlay(rng, 20, 3);
    CHECK_THROWS_AS(solve_kind1(big, tree_weight(big) + 5), Error);
    CondenseMode approx{CondenseMode::Kind::Approx, Rational(1, 5), Rational(1, 5)};
    CHECK_NOTHROW(solve_kind1(big, tree_weight(big) + 5, approx));
}
