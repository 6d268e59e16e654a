// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hier/cli/cli.hpp"
#include "hier/clustering/agglomerative.hpp"
#include "hier/condense/condense.hpp"
#include "hier/core/algorithms.hpp"
#include "hier/io/instance.hpp"
#include "hier/knapsack/knapsack.hpp"
#include "hier/modify/modify.hpp"
#include "hier/morpho/morpho.hpp"
#include "hier/multilayer/multilayer.hpp"
#include "hier/spanning/spanning.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace hier;

namespace {

// Collects failed checks of one criterion.
struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok && failures.size() >= 5) failures.back() = what + " (and more)";
    }
    bool ok() const { return failures.empty(); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool report(int id, const std::string& title, std::optional<double> limit, const std::function<void(Tally&)>& body) {
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
        body(t);
    } catch (const std::exception& e) {
        t.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = seconds_since(start);
    if (limit && secs >= *limit) {
        std::ostringstream msg;
        msg << "took " << secs << " s, limit " << *limit << " s";
        t.failures.push_back(msg.str());
    }
    bool pass = t.ok();
    std::printf("%s %2d %-34s checks=%-6d %.2fs", pass ? "PASS" : "FAIL", id, title.c_str(), t.checks, secs);
    if (limit) std::printf(" (limit %.0fs)", *limit);
    std::printf("\n");
    for (const auto& f : t.failures) std::printf("       - %s\n", f.c_str());
    return pass;
}

struct CliRun {
    int code = 0;
    nlohmann::json doc;
};

CliRun cli_json(std::vector<std::string> args) {
    args.insert(args.begin(), "hierctl");
    args.push_back("--format");
    args.push_back("json");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (r.code == kExitOk) r.doc = nlohmann::json::parse(out.str());
    return r;
}

std::string fx(const std::string& name) { return std::string(HIER_FIXTURE_DIR) + "/" + name; }

std::string seed_text(int i) { return "case " + std::to_string(i); }

// 1
void regional_choice(Tally& t) {
    struct Row {
        const char* budget;
        Rational profit;
        std::optional<Rational> weight;
        std::vector<std::string> picks;
    };
    std::vector<Row> rows{{"2.9", Rational(11, 2), Rational(29, 10), {"s11", "s31"}},
                          {"4.2", Rational(15, 2), std::nullopt, {"s11", "s21", "s31"}},
                          {"5.4", Rational(9), std::nullopt, {"s11", "s21", "s31", "s41"}}};
    for (const auto& row : rows) {
        auto start = std::chrono::steady_clock::now();
        auto r = cli_json({"mchoice", "--input", fx("table9_mchoice.json"), "--budget", row.budget});
        t.expect(seconds_since(start) < 1.0, std::string("b=") + row.budget + " slower than 1 s");
        t.expect(r.code == kExitOk, std::string("b=") + row.budget + " exit code");
        if (r.code != kExitOk) continue;
        const auto& res = r.doc["result"];
        t.expect(parse_rational(res["profit"].get<std::string>()) == row.profit,
                 std::string("b=") + row.budget + " profit " + res["profit"].get<std::string>());
        if (row.weight) {
            t.expect(parse_rational(res["weight"].get<std::string>()) == *row.weight,
                     std::string("b=") + row.budget + " weight");
        }
        std::vector<std::string> picks;
        for (const auto& id : res["chosen"]) {
            if (id != "none") picks.push_back(id.get<std::string>());
        }
        t.expect(picks == row.picks, std::string("b=") + row.budget + " picks");
    }
}

// 2
void merge_order(Tally& t) {
    auto r = cli_json({"cluster", "--input", fx("table1_cluster.json")});
    t.expect(r.code == kExitOk, "cluster exit code");
    if (r.code != kExitOk) return;
    const auto& steps = r.doc["result"]["steps"];
    t.expect(steps.size() == 7, "seven merges");
    if (steps.size() < 2) return;
    t.expect(steps[0]["a"] == nlohmann::json::array({7}) && steps[0]["b"] == nlohmann::json::array({8}),
             "step 1 merges {7,8}");
    t.expect(steps[1]["a"] == nlohmann::json::array({2}) && steps[1]["b"] == nlohmann::json::array({4}),
             "step 2 merges {2,4}");

    auto inst = fixture::load<ClusterInstance>("table1_cluster.json");
    auto ref = oracle::reference_merges(inst.table, inst.config.rule, 1);
    t.expect(ref.size() == steps.size(), "reference length");
    for (std::size_t i = 0; i < std::min(ref.size(), steps.size()); ++i) {
        t.expect(steps[i]["a"].get<std::vector<int>>() == ref[i].first &&
                     steps[i]["b"].get<std::vector<int>>() == ref[i].second,
                 "step " + std::to_string(i + 1) + " differs from the reference");
    }
}

// 3
void k_connectivity(Tally& t) {
    gen::Rng rng(3003);
    for (int k : {2, 3, 4}) {
        for (int i = 0; i < 50; ++i) {
            int n = gen::uniform(rng, k * (k + 1) + k, 40);
            auto sites = gen::sites(rng, n);
            for (auto scheme : {Scheme::Regional, Scheme::Distributed}) {
                auto net = build_k_connected(sites, k, scheme, static_cast<std::uint64_t>(i));
                std::string tag = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " " + seed_text(i);
                t.expect(check_layered(net).empty(), tag + " layered invariants");
                t.expect(vertex_connectivity_at_least(net.graph, k), tag + " connectivity");
            }
        }
    }
}

// 4
void fptas(Tally& t) {
    gen::Rng rng(4004);
    const Rational eps_values[] = {Rational(1, 10), Rational(3, 10)};
    for (int i = 0; i < 100; ++i) {
        auto items = gen::items(rng, gen::uniform(rng, 1, 15));
        Rational b = gen::fraction(rng, 0, 50, 2);
        Rational opt = oracle::knapsack_optimum(items, b);
        for (const auto& eps : eps_values) {
            auto s = knapsack_fptas(items, b, eps);
            t.expect(s.weight <= b && s.profit >= (1 - eps) * opt, "knapsack " + seed_text(i));
        }
    }
    for (int i = 0; i < 100; ++i) {
        auto inst = gen::choice(rng, gen::uniform(rng, 1, 5), 4);
        auto opt = oracle::choice_optimum(inst);
        t.expect(opt.has_value(), "choice instance feasible " + seed_text(i));
        if (!opt) continue;
        for (const auto& eps : eps_values) {
            auto s = multiple_choice_fptas(inst, eps);
            t.expect(s.weight <= inst.budget && s.profit >= (1 - eps) * *opt, "multiple choice " + seed_text(i));
        }
    }
}

// 5
void condense(Tally& t) {
    gen::Rng rng(5005);
    for (int i = 0; i < 200; ++i) {
        auto tree = gen::overlay(rng, gen::uniform(rng, 1, 12), gen::uniform(rng, 1, 4));
        Rational b = tree_weight(tree) + gen::uniform(rng, 0, 10);
        auto r1 = solve_kind1(tree, b);
        t.expect(r1.saved == oracle::condense_kind1(tree, b).saved && r1.weight <= b, "kind 1 " + seed_text(i));

        Rational bm = *tree.node_weight(tree.root()) + gen::uniform(rng, 0, 10);
        Rational bp = tail_weight(tree, tree.root()) + gen::uniform(rng, 0, 4);
        auto r2 = solve_kind2(tree, bm, bp);
        t.expect(r2.saved == oracle::condense_kind2(tree, bm, bp).saved && r2.kernel <= bm && r2.tail <= bp,
                 "kind 2 " + seed_text(i));
    }
    Rational eps{1, 5}, delta{1, 5};
    for (int i = 0; i < 60; ++i) {
        auto tree = gen::overlay(rng, gen::uniform(rng, 3, 12), 3);
        Rational b = tree_weight(tree) + gen::uniform(rng, 0, 10);
        auto c1 = cascade_bottom_up(tree, Kind1Budget{b}, eps, delta);
        t.expect(c1.weight <= (1 + delta) * b && c1.saved >= (1 - eps) * oracle::condense_kind1(tree, b).saved,
                 "cascade kind 1 " + seed_text(i));

        Rational bm = *tree.node_weight(tree.root()) + gen::uniform(rng, 0, 10);
        Rational bp = tail_weight(tree, tree.root()) + gen::uniform(rng, 0, 4);
        auto c2 = cascade_bottom_up(tree, Kind2Budget{bm, bp}, eps, delta);
        t.expect(c2.kernel <= (1 + delta) * bm && c2.tail <= (1 + delta) * bp &&
                     c2.saved >= (1 - eps) * oracle::condense_kind2(tree, bm, bp).saved,
                 "cascade kind 2 " + seed_text(i));
    }
}

// 6
void hotlinks(Tally& t) {
    gen::Rng rng(6006);
    for (int i = 0; i < 100; ++i) {
        auto inst = gen::hotlink(rng, gen::uniform(rng, 2, 10), gen::uniform(rng, 1, 2));
        auto ex = hotlink_exact_small(inst);
        Rational cost = expected_access_cost(inst.tree, inst.weights, ex);
        t.expect(ex.size() <= static_cast<std::size_t>(inst.k) && cost == oracle::hotlink_optimum(inst),
                 "exact " + seed_text(i));

        std::vector<Rational> rounds;
        auto gr = hotlink_greedy(inst, &rounds);
        Rational base = expected_access_cost(inst.tree, inst.weights, {});
        Rational gcost = expected_access_cost(inst.tree, inst.weights, gr);
        bool monotone = true;
        Rational last = base;
        for (const auto& r : rounds) {
            monotone = monotone && r <= last;
            last = r;
        }
        t.expect(gcost <= base && monotone && (rounds.empty() || rounds.back() == gcost), "greedy " + seed_text(i));
    }
}

// 7
void max_leaf(Tally& t) {
    gen::Rng rng(7007);
    for (int i = 0; i < 100; ++i) {
        // Leaves equal n minus the smallest connected dominating set only from n = 3 on.
        auto g = gen::connected_graph(rng, gen::uniform(rng, 3, 10), 0.3);
        std::size_t exact = oracle::max_leaves_by_cds(g);
        auto greedy = max_leaf_greedy(g);
        t.expect(is_spanning_tree(g.nodes(), greedy.edges), "greedy tree " + seed_text(i));
        t.expect(3 * greedy.leaf_count() >= exact, "greedy bound " + seed_text(i));
        t.expect(max_leaf_exact(g).leaf_count() == exact, "exact solver " + seed_text(i));
    }
}

// 8
void steiner(Tally& t) {
    gen::Rng rng(8008);
    for (int i = 0; i < 50; ++i) {
        int n = gen::uniform(rng, 2, 8);
        auto inst = gen::steiner(rng, n, gen::uniform(rng, 2, std::min(n, 4)));
        auto sol = steiner_heuristic(inst);
        Rational opt = oracle::steiner_optimum(inst);
        t.expect(sol.total >= opt && sol.total <= 2 * opt, seed_text(i));
    }
}

// 9
void assignment(Tally& t) {
    const std::vector<int> capacity{4, 6, 10, 5, 5, 5};
    const std::vector<int> bandwidth{30, 42, 45, 30, 32, 30};
    auto inst = fixture::load<AssignInstance>("tables34_assign.json");
    t.expect(inst.L && *inst.L == Rational(100), "L = 100");
    t.expect(inst.aps.size() == 6, "six access points");
    for (std::size_t j = 0; j < std::min<std::size_t>(6, inst.aps.size()); ++j) {
        t.expect(inst.aps[j].max_users == capacity[j] && inst.aps[j].bandwidth == Rational(bandwidth[j]),
                 "access point table row " + std::to_string(j + 1));
    }
    auto a = assign_users_greedy(inst.users, inst.aps, inst.L);
    std::map<NodeId, int> users;
    std::map<NodeId, Rational> load;
    for (const auto& [u, j] : a.user_to_ap) {
        auto user = std::find_if(inst.users.begin(), inst.users.end(), [&](const UserProfile& x) { return x.site.id == u; });
        auto ap = std::find_if(inst.aps.begin(), inst.aps.end(), [&](const AccessPoint& x) { return x.site.id == j; });
        if (user == inst.users.end() || ap == inst.aps.end()) {
            t.expect(false, "unknown id in assignment");
            continue;
        }
        t.expect(squared_distance(user->site, ap->site) <= *inst.L * *inst.L, "distance for user " + std::to_string(u));
        users[j] += 1;
        load[j] += user->bandwidth;
    }
    for (const auto& ap : inst.aps) {
        t.expect(users[ap.site.id] <= ap.max_users, "user count at " + std::to_string(ap.site.id));
        t.expect(load[ap.site.id] <= ap.bandwidth, "bandwidth at " + std::to_string(ap.site.id));
    }

    gen::Rng rng(9009);
    for (int i = 0; i < 100; ++i) {
        auto c = gen::assignment(rng, gen::uniform(rng, 1, 6), gen::uniform(rng, 1, 3));
        auto g = assign_users_greedy(c.users, c.aps, c.L);
        Rational opt = oracle::assignment_optimum(c.users, c.aps, c.L);
        t.expect(check_assignment(g, c.users, c.aps, c.L).empty(), "feasible " + seed_text(i));
        t.expect(2 * g.objective >= opt, "half of optimum " + seed_text(i));
    }
}

// 10
void restructure(Tally& t) {
    gen::Rng rng(10010);
    const EmbeddedKind kinds[] = {EmbeddedKind::Knapsack, EmbeddedKind::MultipleChoice, EmbeddedKind::SpanningTree};
    for (int i = 0; i < 100; ++i) {
        auto inst = gen::restructure(rng, kinds[i % 3]);
        auto ex = restructure_solve(inst, RestructureMode::ExactSmall);
        auto scan = oracle::restructure_scan(inst);
        t.expect(ex.solution == scan.solution && ex.proximity == scan.proximity, "exact vs scan " + seed_text(i));

        Rational start = proximity(inst, inst.initial, inst.goal);
        for (auto mode : {RestructureMode::ExactSmall, RestructureMode::Greedy}) {
            auto r = restructure_solve(inst, mode);
            t.expect(is_feasible(inst, r.solution), "feasible " + seed_text(i));
            t.expect(change_cost(inst.initial, r.solution, inst.costs) <= inst.change_budget, "H <= h " + seed_text(i));
            t.expect(r.proximity <= start, "proximity not worse " + seed_text(i));
        }

        auto frozen = inst;
        frozen.change_budget = Rational(0);
        for (auto& [e, c] : frozen.costs) {
            if (c.add == 0) c.add = Rational(1);
            if (c.remove == 0) c.remove = Rational(1);
        }
        t.expect(restructure_solve(frozen, RestructureMode::ExactSmall).solution == frozen.initial,
                 "zero budget keeps the start " + seed_text(i));

        auto open = inst;
        open.proximity = Proximity::SymmetricDifference;
        open.change_budget = change_cost(open.initial, open.goal, open.costs);
        t.expect(restructure_solve(open, RestructureMode::ExactSmall).solution == open.goal,
                 "full budget reaches the goal " + seed_text(i));
    }
}

// 11
void morpho(Tally& t) {
    auto h = fixture::load<MorphHierarchy>("car_repair_morpho.json");
    validate(h);
    auto all = enumerate_compositions(h);
    auto has = [](const Composition& c, const std::string& da) {
        return std::find(c.picks.begin(), c.picks.end(), da) != c.picks.end();
    };
    bool clean = true;
    for (const auto& c : all) clean = clean && !(has(c, "X2") && has(c, "F1"));
    t.expect(clean, "forbidden pair absent");
    auto feasible = oracle::morpho_feasible(h);
    t.expect(all.size() == feasible.size(), "composition count");
    std::vector<std::vector<std::string>> picks, front_picks;
    for (const auto& c : all) picks.push_back(c.picks);
    t.expect(picks == feasible, "composition list");
    for (const auto& c : pareto_filter(all)) front_picks.push_back(c.picks);
    t.expect(front_picks == oracle::morpho_pareto(h), "pareto set");
}

// 12
void mst_cross(Tally& t) {
    gen::Rng rng(12012);
    for (int i = 0; i < 500; ++i) {
        int n = gen::uniform(rng, 1, 14);
        auto g = gen::connected_graph(rng, n, 0.4);
        Rational k = mst(g).total, p = mst_prim(g).total;
        t.expect(k == p, "prim vs kruskal " + seed_text(i));
        if (n <= 7) t.expect(k == oracle::min_spanning_weight(g), "exhaustive " + seed_text(i));
    }
}

}  // namespace

int main() {
    bool ok = true;
    ok &= report(1, "regional multiple choice", 3.0, regional_choice);
    ok &= report(2, "clustering merge order", 1.0, merge_order);
    ok &= report(3, "k-connected layered networks", 30.0, k_connectivity);
    ok &= report(4, "FPTAS bounds", 60.0, fptas);
    ok &= report(5, "condense exact and cascade", 120.0, condense);
    ok &= report(6, "hotlink exact and greedy", 30.0, hotlinks);
    ok &= report(7, "max leaf greedy bound", std::nullopt, max_leaf);
    ok &= report(8, "steiner heuristic bound", std::nullopt, steiner);
    ok &= report(9, "assignment feasibility", std::nullopt, assignment);
    ok &= report(10, "restructure", std::nullopt, restructure);
    ok &= report(11, "morphological composition", std::nullopt, morpho);
    ok &= report(12, "prim, kruskal and enumeration", std::nullopt, mst_cross);
    return ok ? 0 : 1;
}
