#include "hier/spanning/spanning.hpp"

#include <algorithm>
#include <queue>

#include "hier/core/algorithms.hpp"
#include "hier/core/error.hpp"
#include "hier/core/union_find.hpp"

namespace hier {

namespace {

std::map<NodeId, int> tree_degrees(const Graph& graph, const std::vector<Edge>& edges) {
    std::map<NodeId, int> deg;
    for (NodeId id : graph.nodes()) deg[id] = 0;
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

void require_connected(const Graph& graph) {
    if (graph.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
    if (!graph.connected()) throw Error(ErrorKind::DisconnectedInput, "graph is disconnected");
}

bool dominates_all(const Graph& graph, const std::set<NodeId>& set) {
    for (NodeId id : graph.nodes()) {
        if (set.count(id)) continue;
        const auto& nb = graph.neighbors(id);
        if (std::none_of(nb.begin(), nb.end(), [&](NodeId x) { return set.count(x) != 0; })) return false;
    }
    return true;
}

bool induces_connected(const Graph& graph, const std::set<NodeId>& set) {
    if (set.empty()) return false;
    std::vector<NodeId> stack{*set.begin()};
    std::set<NodeId> seen{*set.begin()};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (NodeId nb : graph.neighbors(cur)) {
            if (set.count(nb) && seen.insert(nb).second) stack.push_back(nb);
        }
    }
    return seen.size() == set.size();
}

}  // namespace

void validate(const SteinerInstance& instance) {
    if (instance.terminals.empty()) throw ValidationError("terminals", "terminal set is empty");
    for (NodeId t : instance.terminals) {
        if (!instance.graph.has_node(t)) {
            throw ValidationError("terminals", "terminal " + std::to_string(t) + " is not a node");
        }
    }
}

LeafTreeSolution make_leaf_solution(const Graph& graph, std::vector<Edge> edges, NodeId root) {
    LeafTreeSolution s;
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
    for (const auto& [id, d] : tree_degrees(graph, edges)) {
        (d <= 1 ? s.leaves : s.internal).push_back(id);
    }
    s.edges = std::move(edges);
    s.root = root;
    return s;
}

ShortestPaths dijkstra(const Graph& graph, NodeId source) {
    ShortestPaths sp;
    if (!graph.has_node(source)) throw Error(ErrorKind::UnknownVertex, "unknown node " + std::to_string(source));
    using Entry = std::pair<Rational, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    std::set<NodeId> done;
    sp.dist[source] = 0;
    pq.emplace(Rational(0), source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (!done.insert(u).second) continue;
        for (NodeId v : graph.neighbors(u)) {
            if (done.count(v)) continue;
            Rational nd = d + *graph.weight(u, v);
            auto it = sp.dist.find(v);
            if (it == sp.dist.end() || nd < it->second) {
                sp.dist[v] = nd;
                sp.pred[v] = u;
                pq.emplace(nd, v);
            } else if (nd == it->second && u < sp.pred[v]) {
                sp.pred[v] = u;
            }
        }
    }
    return sp;
}

EdgeSetSolution steiner_heuristic(const SteinerInstance& instance) {
    validate(instance);
    const Graph& g = instance.graph;
    require_connected(g);
    std::vector<NodeId> terms(instance.terminals.begin(), instance.terminals.end());
    if (terms.size() == 1) return {};

    std::map<NodeId, ShortestPaths> paths;
    for (NodeId t : terms) paths[t] = dijkstra(g, t);

    Graph closure(terms);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            closure.add_edge(terms[i], terms[j], paths[terms[i]].dist.at(terms[j]));
        }
    }
    std::set<NodeId> used;
    std::set<EdgeKey> expanded;
    for (const auto& e : mst(closure).edges) {
        const auto& sp = paths[e.u];
        for (NodeId cur = e.v; cur != e.u; cur = sp.pred.at(cur)) {
            expanded.insert(make_edge_key(cur, sp.pred.at(cur)));
            used.insert(cur);
        }
        used.insert(e.u);
    }
    Graph sub(std::vector<NodeId>(used.begin(), used.end()));
    for (const auto& [u, v] : expanded) sub.add_edge(u, v, *g.weight(u, v));
    auto tree = mst(sub).edges;

    // Strip non-terminal leaves until none remain.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<NodeId, int> deg;
        for (const auto& e : tree) {
            ++deg[e.u];
            ++deg[e.v];
        }
        std::vector<Edge> kept;
        for (const auto& e : tree) {
            bool drop = (deg[e.u] == 1 && !instance.terminals.count(e.u)) ||
                        (deg[e.v] == 1 && !instance.terminals.count(e.v));
            if (drop) {
                changed = true;
            } else {
                kept.push_back(e);
            }
        }
        tree = std::move(kept);
    }
    return EdgeSetSolution::from_edges(std::move(tree));
}

bool is_connected_dominating(const Graph& graph, const std::set<NodeId>& set) {
    return induces_connected(graph, set) && dominates_all(graph, set);
}

LeafTreeSolution max_leaf_exact(const Graph& graph, std::size_t size_limit) {
    require_connected(graph);
    auto nodes = graph.nodes();
    std::size_t n = nodes.size();
    if (n > size_limit) {
        throw Error(ErrorKind::TooLargeForExact,
                    "exact max-leaf limited to " + std::to_string(size_limit) + " nodes, got " + std::to_string(n));
    }
    if (n <= 2) return make_leaf_solution(graph, graph.edges(), nodes.front());

    // Smallest connected dominating set, first in lexicographic order of index combinations.
    for (std::size_t size = 1; size <= n; ++size) {
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        while (true) {
            std::set<NodeId> d;
            for (std::size_t i : comb) d.insert(nodes[i]);
            if (is_connected_dominating(graph, d)) {
                std::vector<Edge> edges = mst(graph.induced(d)).edges;
                for (NodeId id : nodes) {
                    if (d.count(id)) continue;
                    for (NodeId nb : graph.neighbors(id)) {
                        if (d.count(nb)) {
                            edges.emplace_back(id, nb, *graph.weight(id, nb));
                            break;
                        }
                    }
                }
                return make_leaf_solution(graph, std::move(edges), *d.begin());
            }
            std::size_t i = size;
            while (i > 0 && comb[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    throw Error(ErrorKind::DisconnectedInput, "no connected dominating set");
}

LeafTreeSolution max_leaf_greedy(const Graph& graph) {
    require_connected(graph);
    auto nodes = graph.nodes();
    std::set<NodeId> covered;
    std::vector<Edge> edges;
    std::optional<NodeId> root;

    while (covered.size() < nodes.size()) {
        NodeId best = nodes.front();
        long best_gain = -1;
        for (NodeId v : nodes) {
            long gain = 0;
            for (NodeId nb : graph.neighbors(v)) gain += covered.count(nb) ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        if (best_gain == 0) {
            // Only isolated uncovered nodes remain (single-node graph).
            for (NodeId v : nodes) covered.insert(v);
            break;
        }
        if (!root) root = best;
        covered.insert(best);
        for (NodeId nb : graph.neighbors(best)) {
            if (covered.insert(nb).second) edges.emplace_back(best, nb, *graph.weight(best, nb));
        }
    }

    // Join forest components, preferring edges that turn fewer leaves internal.
    std::map<NodeId, std::size_t> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = i;
    UnionFind uf(nodes.size());
    std::map<NodeId, int> deg;
    for (const auto& e : edges) {
        uf.unite(idx[e.u], idx[e.v]);
        ++deg[e.u];
        ++deg[e.v];
    }
    while (uf.set_count() > 1) {
        std::optional<Edge> pick;
        int pick_cost = 3;
        for (const auto& e : graph.edges()) {
            if (uf.same(idx[e.u], idx[e.v])) continue;
            int cost = (deg[e.u] == 1) + (deg[e.v] == 1);
            if (cost < pick_cost) {
                pick_cost = cost;
                pick = e;
            }
        }
        uf.unite(idx[pick->u], idx[pick->v]);
        ++deg[pick->u];
        ++deg[pick->v];
        edges.push_back(*pick);
    }
    return make_leaf_solution(graph, std::move(edges), root.value_or(nodes.front()));
}

std::set<NodeId> cds_from_spanning_tree(const LeafTreeSolution& solution, const Graph& graph) {
    if (!is_spanning_tree(graph.nodes(), solution.edges)) {
        throw Error(ErrorKind::DominationViolation, "solution is not a spanning tree of the graph");
    }
    std::set<NodeId> internal(solution.internal.begin(), solution.internal.end());
    if (graph.node_count() <= 2) return internal;
    if (!is_connected_dominating(graph, internal)) {
        throw Error(ErrorKind::DominationViolation, "internal nodes are not a connected dominating set");
    }
    return internal;
}

}  // namespace hier
