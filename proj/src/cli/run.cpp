#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hier/cli/cli.hpp"
#include "hier/core/algorithms.hpp"
#include "hier/core/error.hpp"
#include "hier/io/instance.hpp"

namespace hier {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string input;
    std::string mode;
    std::string epsilon;
    std::string delta;
    std::string budget;
    std::optional<int> k;
    std::uint64_t seed = 1;
    std::string dot;
    std::string format = "text";
    bool timing = false;
};

struct Outcome {
    Json result = Json::object();
    Json params = Json::object();
    std::vector<std::string> warnings;
    std::optional<std::string> dot;
};

Json num(const Rational& r) {
    return to_string(r);
}

Json edges_json(const std::vector<Edge>& edges) {
    Json a = Json::array();
    for (const auto& e : edges) a.push_back({e.u, e.v, num(e.weight)});
    return a;
}

Rational flag_rational(const std::string& text, const char* flag, const Rational& fallback) {
    if (text.empty()) return fallback;
    try {
        return parse_rational(text);
    } catch (const Error& e) {
        throw ValidationError(flag, e.what());
    }
}

std::string pick_mode(const Options& o, std::initializer_list<const char*> allowed) {
    if (o.mode.empty()) return *allowed.begin();
    for (const char* m : allowed) {
        if (o.mode == m) return o.mode;
    }
    std::string list;
    for (const char* m : allowed) list += std::string(list.empty() ? "" : ", ") + m;
    throw ValidationError("--mode", "'" + o.mode + "' is not available here; use one of: " + list);
}

DotHighlight highlight_edges(const std::vector<Edge>& edges) {
    DotHighlight h;
    for (const auto& e : edges) h.edges.insert(e.key());
    return h;
}

Json tree_arcs(const RootedTree& t) {
    Json a = Json::array();
    for (const auto& [child, parent] : t.parents()) a.push_back({parent, child});
    return a;
}

// ---- handlers ----

Outcome run_cluster(const Instance& inst, const Options& o) {
    auto c = std::get<ClusterInstance>(inst);
    pick_mode(o, {"exact"});
    if (o.k) {
        if (*o.k < 1) throw ValidationError("--k", "target cluster count must be at least 1");
        c.config.target_clusters = static_cast<std::size_t>(*o.k);
    }
    Outcome out;
    out.params = {{"rule", to_string(c.config.rule)},
                  {"target_clusters", c.config.target_clusters},
                  {"ordinal", c.ordinal},
                  {"max_distance", c.config.max_distance ? num(*c.config.max_distance) : Json()}};
    Dendrogram d = c.ordinal ? agglomerate_ordinal(c.table, c.config) : agglomerate(c.table, c.config);
    Json steps = Json::array();
    for (const auto& s : d.steps) {
        Json step{{"step", s.index}, {"a", s.a}, {"b", s.b}};
        if (c.ordinal) {
            Json prox = Json::array();
            for (const auto& p : s.proximity) prox.push_back(num(p));
            step["proximity"] = prox;
        } else {
            step["distance_sq"] = num(s.distance_sq);
        }
        steps.push_back(step);
    }
    out.result["steps"] = steps;
    out.result["clusters"] = d.clusters;
    return out;
}

Outcome run_mst(const Instance& inst, const Options& o) {
    const Graph& g = std::get<GraphInstance>(inst).graph;
    pick_mode(o, {"exact"});
    Outcome out;
    out.params = {{"algorithm", "kruskal"}};
    if (g.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
    bool forest = !g.connected();
    EdgeSetSolution s = forest ? spanning_forest(g) : mst(g);
    out.result["forest"] = forest;
    out.result["edges"] = edges_json(s.edges);
    out.result["total"] = num(s.total);
    if (!forest) out.result["prim_total"] = num(mst_prim(g).total);
    out.dot = to_dot(g, highlight_edges(s.edges));
    return out;
}

Outcome run_steiner(const Instance& inst, const Options& o) {
    const auto& s = std::get<SteinerInstance>(inst);
    pick_mode(o, {"approx", "greedy"});
    Outcome out;
    out.params = {{"algorithm", "distance-network heuristic"}};
    EdgeSetSolution sol = steiner_heuristic(s);
    std::set<NodeId> used;
    for (const auto& e : sol.edges) {
        used.insert(e.u);
        used.insert(e.v);
    }
    std::vector<NodeId> extra;
    for (NodeId v : used) {
        if (!s.terminals.count(v)) extra.push_back(v);
    }
    out.result["edges"] = edges_json(sol.edges);
    out.result["total"] = num(sol.total);
    out.result["steiner_nodes"] = extra;
    DotHighlight h = highlight_edges(sol.edges);
    h.nodes = s.terminals;
    out.dot = to_dot(s.graph, h);
    return out;
}

Outcome run_maxleaf(const Instance& inst, const Options& o) {
    const Graph& g = std::get<GraphInstance>(inst).graph;
    std::string mode = pick_mode(o, {"greedy", "exact"});
    Outcome out;
    out.params = {{"mode", mode}};
    LeafTreeSolution s = mode == "exact" ? max_leaf_exact(g) : max_leaf_greedy(g);
    out.result["root"] = s.root;
    out.result["leaf_count"] = s.leaf_count();
    out.result["leaves"] = s.leaves;
    out.result["internal"] = s.internal;
    out.result["edges"] = edges_json(s.edges);
    DotHighlight h = highlight_edges(s.edges);
    h.nodes = {s.leaves.begin(), s.leaves.end()};
    out.dot = to_dot(g, h);
    return out;
}

Outcome run_kconnect(const Instance& inst, const Options& o) {
    auto s = std::get<SitesInstance>(inst);
    pick_mode(o, {"greedy"});
    if (o.k) s.k = *o.k;
    Outcome out;
    LayeredNetwork net = s.centers.empty() ? build_k_connected(s.sites, s.k, s.scheme, o.seed)
                                           : build_with_centers(s.sites, s.k, s.centers);
    out.params = {{"k", s.k},
                  {"scheme", s.centers.empty() ? to_string(s.scheme) : "given-centers"},
                  {"seed", s.centers.empty() ? Json(o.seed) : Json()}};
    out.result["centers"] = net.centers;
    out.result["backbone"] = net.backbone;
    out.result["users"] = net.users;
    out.result["edge_count"] = net.graph.edge_count();
    out.result["edges"] = edges_json(net.graph.edges());
    Json layers = Json::object();
    for (const auto& [id, layer] : net.layer) layers[std::to_string(id)] = layer;
    out.result["layers"] = layers;
    std::string problem = check_layered(net);
    out.result["structure_ok"] = problem.empty();
    if (!problem.empty()) out.warnings.push_back(problem);
    out.result["k_connected"] = vertex_connectivity_at_least(net.graph, s.k);
    DotHighlight h;
    for (const auto& c : net.centers) h.nodes.insert(c.begin(), c.end());
    out.dot = to_dot(net.graph, h);
    return out;
}

Outcome run_twolevel(const Instance& inst, const Options& o) {
    const auto& t = std::get<TwoLevelInstance>(inst);
    pick_mode(o, {"greedy"});
    Outcome out;
    out.params = {{"topology", to_string(t.topology)},
                  {"primary_mult", num(t.config.primary_mult)},
                  {"secondary_mult", num(t.config.secondary_mult)}};
    Graph g = two_level_design(t.sites, t.primary, t.topology, t.config);
    Rational total{0};
    for (const auto& e : g.edges()) total += e.weight;
    out.result["primary"] = std::vector<NodeId>(t.primary.begin(), t.primary.end());
    out.result["edges"] = edges_json(g.edges());
    out.result["total"] = num(total);
    out.dot = to_dot(g, DotHighlight{t.primary, {}});
    return out;
}

Outcome run_assign(const Instance& inst, const Options& o) {
    const auto& a = std::get<AssignInstance>(inst);
    pick_mode(o, {"greedy"});
    Outcome out;
    out.params = {{"L", a.L ? num(*a.L) : Json()}};
    out.warnings = validate(a.users, a.aps);
    Assignment res = assign_users_greedy(a.users, a.aps, a.L);
    Json pairs = Json::array();
    for (const auto& [u, j] : res.user_to_ap) pairs.push_back({u, j});
    std::vector<NodeId> left;
    for (const auto& u : a.users) {
        if (!res.user_to_ap.count(u.site.id)) left.push_back(u.site.id);
    }
    std::sort(left.begin(), left.end());
    Json loads = Json::array();
    for (const auto& [j, l] : res.loads) loads.push_back({{"ap", j}, {"users", l.users}, {"bandwidth", num(l.bandwidth)}});
    out.result["assignment"] = pairs;
    out.result["unassigned"] = left;
    out.result["loads"] = loads;
    out.result["objective"] = num(res.objective);
    std::string check = check_assignment(res, a.users, a.aps, a.L);
    out.result["feasible"] = check.empty();
    if (!check.empty()) throw std::logic_error("assignment check failed: " + check);
    return out;
}

Json selection_json(const Selection& s) {
    return Json{{"chosen", s.chosen}, {"profit", num(s.profit)}, {"weight", num(s.weight)}};
}

Outcome run_knapsack(const Instance& inst, const Options& o) {
    auto k = std::get<KnapsackInstance>(inst);
    std::string mode = pick_mode(o, {"exact", "approx"});
    k.budget = flag_rational(o.budget, "--budget", k.budget);
    Rational eps = flag_rational(o.epsilon, "--epsilon", Rational(1, 10));
    Outcome out;
    out.params = {{"mode", mode}, {"budget", num(k.budget)}, {"epsilon", mode == "approx" ? num(eps) : Json()}};
    Selection s = mode == "approx" ? knapsack_fptas(k.items, k.budget, eps) : knapsack_exact(k.items, k.budget);
    out.result = selection_json(s);
    return out;
}

Outcome run_mchoice(const Instance& inst, const Options& o) {
    auto c = std::get<ChoiceInstance>(inst);
    std::string mode = pick_mode(o, {"exact", "approx"});
    c.budget = flag_rational(o.budget, "--budget", c.budget);
    Rational eps = flag_rational(o.epsilon, "--epsilon", Rational(1, 10));
    Outcome out;
    out.params = {{"mode", mode}, {"budget", num(c.budget)}, {"epsilon", mode == "approx" ? num(eps) : Json()}};
    Selection s = mode == "approx" ? multiple_choice_fptas(c, eps) : multiple_choice_exact(c);
    out.result = selection_json(s);
    return out;
}

Outcome run_condense(const Instance& inst, const Options& o) {
    std::string mode = pick_mode(o, {"exact", "approx"});
    Rational eps = flag_rational(o.epsilon, "--epsilon", Rational(1, 10));
    Rational delta = flag_rational(o.delta, "--delta", Rational(1, 10));
    Outcome out;
    if (const auto* aux = std::get_if<AuxiliaryInstance>(&inst)) {
        AuxInstance ai = aux->instance;
        if (!o.budget.empty()) {
            if (!is_kind_one(aux->problem)) throw ValidationError("--budget", "kind-2 problems take b_minus and b_plus from the instance");
            ai.b = flag_rational(o.budget, "--budget", ai.b);
        }
        AuxMode m;
        m.approx = mode == "approx";
        m.epsilon = eps;
        m.delta = aux->problem == AuxKind::K23 && m.approx ? delta : Rational(0);
        out.params = {{"problem", to_string(aux->problem)},
                      {"mode", mode},
                      {"epsilon", m.approx ? num(eps) : Json()},
                      {"delta", m.approx && aux->problem == AuxKind::K23 ? num(delta) : Json()}};
        if (is_kind_one(aux->problem)) {
            out.params["b"] = num(ai.b);
        } else {
            out.params["b_minus"] = num(ai.b_minus);
            out.params["b_plus"] = num(ai.b_plus);
        }
        AuxSolution s = solve_auxiliary(aux->problem, ai, m);
        out.result = {{"chosen", s.selection.chosen},
                      {"profit", num(s.selection.profit)},
                      {"kernel", num(s.kernel)},
                      {"max_term", num(s.max_term)},
                      {"total", num(s.kernel + s.max_term)}};
        return out;
    }
    auto c = std::get<CondenseInstance>(inst);
    CondenseMode cm;
    cm.kind = mode == "approx" ? CondenseMode::Kind::Approx : CondenseMode::Kind::ExactSmall;
    cm.epsilon = eps;
    cm.delta = delta;
    out.params = {{"problem", c.problem}, {"mode", mode}};
    if (mode == "approx") {
        out.params["epsilon"] = num(eps);
        out.params["delta"] = num(delta);
    }
    CondenseResult r;
    if (c.problem == 1) {
        c.b = flag_rational(o.budget, "--budget", c.b);
        out.params["b"] = num(c.b);
        r = solve_kind1(c.tree, c.b, cm);
    } else {
        if (!o.budget.empty()) throw ValidationError("--budget", "kind-2 problems take b_minus and b_plus from the instance");
        out.params["b_minus"] = num(c.b_minus);
        out.params["b_plus"] = num(c.b_plus);
        r = solve_kind2(c.tree, c.b_minus, c.b_plus, cm);
    }
    out.result["plan"] = std::vector<NodeId>(r.plan.begin(), r.plan.end());
    out.result["saved"] = num(r.saved);
    out.result["kernel"] = num(r.kernel);
    out.result["tail"] = num(r.tail);
    out.result["weight"] = num(r.weight);
    Json members = Json::object();
    for (const auto& [rep, ms] : r.condensed.members) members[std::to_string(rep)] = ms;
    out.result["members"] = members;
    out.dot = to_dot(r.condensed.tree);
    return out;
}

Outcome run_hotlink(const Instance& inst, const Options& o) {
    auto h = std::get<HotlinkInstance>(inst);
    std::string mode = pick_mode(o, {"exact", "greedy"});
    if (o.k) h.k = *o.k;
    Outcome out;
    std::vector<NodeId> sources(h.sources.begin(), h.sources.end());
    if (sources.empty()) sources.push_back(h.tree.root());
    out.params = {{"mode", mode}, {"k", h.k}, {"sources", sources}};
    std::vector<Rational> rounds;
    HotlinkSet links = mode == "greedy" ? hotlink_greedy(h, &rounds) : hotlink_exact_small(h);
    Json arcs = Json::array();
    DotHighlight hl;
    for (const auto& l : links) {
        arcs.push_back({l.source, l.target});
        hl.nodes.insert(l.target);
    }
    out.result["hotlinks"] = arcs;
    out.result["cost_before"] = num(expected_access_cost(h.tree, h.weights, {}));
    out.result["cost_after"] = num(expected_access_cost(h.tree, h.weights, links));
    if (mode == "greedy") {
        Json r = Json::array();
        for (const auto& c : rounds) r.push_back(num(c));
        out.result["rounds"] = r;
    }
    out.dot = to_dot(h.tree, hl);
    return out;
}

Outcome run_augment(const Instance& inst, const Options& o) {
    auto a = std::get<AugmentInstance>(inst);
    pick_mode(o, {"exact"});
    a.budget = flag_rational(o.budget, "--budget", a.budget);
    Outcome out;
    out.params = {{"budget", num(a.budget)}};
    AugmentResult r = steiner_augment(a);
    out.result = selection_json(r.selection);
    Json added = Json::object();
    DotHighlight hl;
    for (const auto& [id, cand] : r.added) {
        added[std::to_string(id)] = cand;
        hl.nodes.insert(id);
    }
    out.result["added"] = added;
    out.result["tree"] = tree_arcs(r.tree);
    out.dot = to_dot(r.tree, hl);
    return out;
}

Outcome run_restructure(const Instance& inst, const Options& o) {
    auto s = std::get<RestructureInstance>(inst);
    std::string mode = pick_mode(o, {"exact", "greedy"});
    s.change_budget = flag_rational(o.budget, "--budget", s.change_budget);
    Outcome out;
    out.params = {{"embedded", to_string(s.kind)},
                  {"mode", mode},
                  {"proximity", to_string(s.proximity)},
                  {"change_budget", num(s.change_budget)}};
    RestructureResult r = restructure_solve(s, mode == "greedy" ? RestructureMode::Greedy : RestructureMode::ExactSmall);
    out.result["solution"] = std::vector<std::string>(r.solution.begin(), r.solution.end());
    out.result["change"] = num(r.change);
    out.result["proximity"] = num(r.proximity);
    out.result["initial_proximity"] = num(proximity(s, s.initial, s.goal));
    out.result["objective"] = num(objective(s, r.solution));
    return out;
}

Outcome run_morpho(const Instance& inst, const Options& o) {
    const auto& h = std::get<MorphHierarchy>(inst);
    pick_mode(o, {"exact"});
    Outcome out;
    out.params = {{"limit", kMorphEnumerationLimit}};
    out.warnings = validate(h);
    auto all = enumerate_compositions(h);
    auto front = pareto_filter(all);
    out.result["leaves"] = leaf_names(h);
    out.result["feasible_count"] = all.size();
    out.result["pareto_count"] = front.size();
    Json list = Json::array();
    for (const auto& c : front) {
        list.push_back({{"picks", c.picks}, {"level_counts", c.level_counts}, {"min_compatibility", c.min_compatibility}});
    }
    out.result["pareto"] = list;
    return out;
}

struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> kinds;
    std::function<Outcome(const Instance&, const Options&)> run;
};

const std::vector<Command>& commands() {
    static const std::vector<Command> list{
        {"cluster", "agglomerative clustering of an element table", {"cluster"}, run_cluster},
        {"mst", "minimum spanning tree or forest", {"graph"}, run_mst},
        {"steiner", "Steiner tree heuristic", {"steiner"}, run_steiner},
        {"maxleaf", "maximum leaf spanning tree", {"graph"}, run_maxleaf},
        {"kconnect", "layered k-connected network", {"sites"}, run_kconnect},
        {"twolevel", "two-level network design", {"twolevel"}, run_twolevel},
        {"assign", "user to access point assignment", {"assign"}, run_assign},
        {"knapsack", "0/1 knapsack", {"knapsack"}, run_knapsack},
        {"mchoice", "multiple choice problem", {"mchoice"}, run_mchoice},
        {"condense", "overlay tree condensing and its fan subproblems", {"condense", "auxiliary"}, run_condense},
        {"hotlink", "hotlink assignment", {"hotlink"}, run_hotlink},
        {"augment", "tree to Steiner tree augmentation", {"augment"}, run_augment},
        {"restructure", "solution restructuring", {"restructure"}, run_restructure},
        {"morpho", "morphological composition enumeration", {"morpho"}, run_morpho},
    };
    return list;
}

void render_text(const Json& j, const std::string& path, std::ostringstream& os) {
    auto scalar = [](const Json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return "-";
        return v.dump();
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) render_text(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
        return;
    }
    if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) {
            return v.is_primitive() && !(v.is_string() && v.get<std::string>().find(' ') != std::string::npos);
        });
        if (flat) {
            os << path << ":";
            for (const auto& v : j) os << " " << scalar(v);
            os << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", os);
        return;
    }
    os << path << ": " << scalar(j) << "\n";
}

void write_file_atomically(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw ValidationError("--dot", "cannot write " + path);
        f << text;
        if (!f) throw ValidationError("--dot", "cannot write " + path);
    }
    std::filesystem::rename(tmp, path);
}

int exit_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Infeasible: return kExitInfeasible;
        case ErrorKind::DominationViolation: return kExitInternal;
        default: return kExitInput;
    }
}

int execute(const Command& cmd, const Options& o, std::ostream& out, std::ostream& err) {
    try {
        if (o.format != "text" && o.format != "json") throw ValidationError("--format", "expected json or text");
        std::ifstream f(o.input, std::ios::binary);
        if (!f) throw ValidationError("--input", "cannot read " + o.input);
        std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        Instance inst = parse_instance(text);
        std::string kind = kind_name(inst);
        if (std::find(cmd.kinds.begin(), cmd.kinds.end(), kind) == cmd.kinds.end()) {
            throw ValidationError("kind", std::string("'") + cmd.name + "' cannot run a '" + kind + "' instance");
        }
        auto start = std::chrono::steady_clock::now();
        Outcome res = cmd.run(inst, o);
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        Json report;
        report["command"] = cmd.name;
        report["kind"] = kind;
        report["instance"] = instance_digest(text);
        report["parameters"] = res.params;
        report["result"] = res.result;
        if (!res.warnings.empty()) report["warnings"] = res.warnings;
        if (o.timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", elapsed);
            report["wall_time_ms"] = buf;
        }
        if (!o.dot.empty()) {
            if (!res.dot) throw ValidationError("--dot", std::string("'") + cmd.name + "' has no DOT rendering");
            write_file_atomically(o.dot, *res.dot);
        }
        std::ostringstream os;
        if (o.format == "json") {
            os << report.dump(2) << "\n";
        } else {
            render_text(report, "", os);
        }
        out << os.str() << std::flush;
        return kExitOk;
    } catch (const Error& e) {
        err << "hierctl " << cmd.name << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        err << "hierctl " << cmd.name << ": internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace

std::string instance_digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchy design and modification solvers", "hierctl"};
    app.require_subcommand(1);
    Options opts;
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& cmd : commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--input", opts.input, "instance file")->required();
        sub->add_option("--mode", opts.mode, "exact, approx or greedy");
        sub->add_option("--epsilon", opts.epsilon, "approximation parameter");
        sub->add_option("--delta", opts.delta, "constraint relaxation");
        sub->add_option("--budget", opts.budget, "budget override");
        sub->add_option("--k", opts.k, "k override");
        sub->add_option("--seed", opts.seed, "random seed");
        sub->add_option("--dot", opts.dot, "write a DOT rendering here");
        sub->add_option("--format", opts.format, "json or text");
        sub->add_flag("--timing", opts.timing, "include wall time in the report");
        by_app[sub] = &cmd;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "hierctl: " << e.what() << "\n" << app.help();
        return kExitInput;
    }
    for (const auto& [sub, cmd] : by_app) {
        if (sub->parsed()) return execute(*cmd, opts, out, err);
    }
    err << app.help();
    return kExitInput;
}

}  // namespace hier
