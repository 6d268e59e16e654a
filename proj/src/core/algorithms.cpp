#include "hier/core/algorithms.hpp"

#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "hier/core/error.hpp"
#include "hier/core/union_find.hpp"

namespace hier {

namespace {

std::map<NodeId, std::size_t> index_of(const std::vector<NodeId>& nodes) {
    std::map<NodeId, std::size_t> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = i;
    return idx;
}

std::vector<Edge> kruskal_edges(const Graph& graph) {
    auto nodes = graph.nodes();
    auto idx = index_of(nodes);
    auto edges = graph.edges();
    std::sort(edges.begin(), edges.end(), edge_weight_less);
    UnionFind uf(nodes.size());
    std::vector<Edge> chosen;
    for (const auto& e : edges) {
        if (uf.unite(idx[e.u], idx[e.v])) chosen.push_back(e);
    }
    return chosen;
}

void require_connected_nonempty(const Graph& graph) {
    if (graph.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
    if (!graph.connected()) {
        throw Error(ErrorKind::DisconnectedInput, "graph is disconnected; use a spanning forest");
    }
}

// Residual network over split vertices: v_in = 2i, v_out = 2i+1.
class UnitFlow {
public:
    explicit UnitFlow(std::size_t n) : adj_(2 * n) {}

    void add_arc(std::size_t from, std::size_t to, int cap) {
        adj_[from].push_back(arcs_.size());
        arcs_.push_back({to, cap});
        adj_[to].push_back(arcs_.size());
        arcs_.push_back({from, 0});
    }

    // Augmenting paths until `limit` units are found or none remain.
    int max_flow(std::size_t s, std::size_t t, int limit) {
        int flow = 0;
        while (flow < limit) {
            std::vector<std::size_t> via(adj_.size(), kNone);
            std::vector<char> seen(adj_.size(), 0);
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty() && !seen[t]) {
                std::size_t u = q.front();
                q.pop();
                for (std::size_t a : adj_[u]) {
                    if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                        seen[arcs_[a].to] = 1;
                        via[arcs_[a].to] = a;
                        q.push(arcs_[a].to);
                    }
                }
            }
            if (!seen[t]) break;
            for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
                arcs_[via[v]].cap -= 1;
                arcs_[via[v] ^ 1].cap += 1;
            }
            ++flow;
        }
        return flow;
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    struct Arc {
        std::size_t to;
        int cap;
    };
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
};

int local_connectivity(const Graph& graph, const std::map<NodeId, std::size_t>& idx,
                       NodeId s, NodeId t, int limit) {
    std::size_t n = idx.size();
    UnitFlow net(n);
    int big = static_cast<int>(n);
    for (const auto& [id, i] : idx) {
        int cap = (id == s || id == t) ? big : 1;
        net.add_arc(2 * i, 2 * i + 1, cap);
    }
    for (const auto& e : graph.edges()) {
        std::size_t a = idx.at(e.u), b = idx.at(e.v);
        net.add_arc(2 * a + 1, 2 * b, big);
        net.add_arc(2 * b + 1, 2 * a, big);
    }
    return net.max_flow(2 * idx.at(s) + 1, 2 * idx.at(t), limit);
}

}  // namespace

EdgeSetSolution mst(const Graph& graph) {
    require_connected_nonempty(graph);
    return EdgeSetSolution::from_edges(kruskal_edges(graph));
}

EdgeSetSolution mst_prim(const Graph& graph) {
    require_connected_nonempty(graph);
    auto nodes = graph.nodes();
    std::set<NodeId> in_tree{nodes.front()};
    auto cmp = [](const Edge& a, const Edge& b) { return edge_weight_less(b, a); };
    std::priority_queue<Edge, std::vector<Edge>, decltype(cmp)> frontier(cmp);
    auto push_from = [&](NodeId u) {
        for (NodeId v : graph.neighbors(u)) {
            if (!in_tree.count(v)) frontier.emplace(u, v, *graph.weight(u, v));
        }
    };
    push_from(nodes.front());
    std::vector<Edge> chosen;
    while (!frontier.empty() && in_tree.size() < nodes.size()) {
        Edge e = frontier.top();
        frontier.pop();
        bool has_u = in_tree.count(e.u) != 0;
        bool has_v = in_tree.count(e.v) != 0;
        if (has_u && has_v) continue;
        NodeId fresh = has_u ? e.v : e.u;
        in_tree.insert(fresh);
        chosen.push_back(e);
        push_from(fresh);
    }
    return EdgeSetSolution::from_edges(std::move(chosen));
}

EdgeSetSolution spanning_forest(const Graph& graph) {
    return EdgeSetSolution::from_edges(kruskal_edges(graph));
}

bool vertex_connectivity_at_least(const Graph& graph, int k) {
    if (k < 1) throw ValidationError("k", "k must be positive");
    auto nodes = graph.nodes();
    if (nodes.size() < static_cast<std::size_t>(k) + 1) return false;
    for (NodeId id : nodes) {
        if (graph.degree(id) < static_cast<std::size_t>(k)) return false;
    }
    if (!graph.connected()) return false;
    auto idx = index_of(nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (graph.has_edge(nodes[i], nodes[j])) continue;
            if (local_connectivity(graph, idx, nodes[i], nodes[j], k) < k) return false;
        }
    }
    return true;
}

StructMetrics tree_metrics(const RootedTree& tree, const std::optional<std::map<NodeId, Rational>>& leaf_weights) {
    StructMetrics m;
    auto nodes = tree.nodes();
    m.node_count = static_cast<int>(nodes.size());
    if (nodes.empty()) return m;
    auto leaves = tree.leaves();
    m.leaf_count = static_cast<int>(leaves.size());
    for (NodeId id : nodes) {
        m.depth = std::max(m.depth, tree.depth(id));
        int deg = static_cast<int>(tree.children(id).size()) + (id == tree.root() ? 0 : 1);
        m.max_degree = std::max(m.max_degree, deg);
    }
    if (leaf_weights) {
        for (const auto& [id, w] : *leaf_weights) {
            if (!tree.has_node(id) || !tree.is_leaf(id)) {
                throw Error(ErrorKind::UnknownVertex, "leaf weight given for non-leaf " + std::to_string(id));
            }
            if (w < 0) throw Error(ErrorKind::NegativeLeafWeight, "negative weight on leaf " + std::to_string(id));
        }
    }
    Rational mass{0}, total{0};
    for (NodeId leaf : leaves) {
        Rational w{1};
        if (leaf_weights) {
            auto it = leaf_weights->find(leaf);
            w = it == leaf_weights->end() ? Rational(0) : it->second;
        }
        mass += w;
        total += w * tree.depth(leaf);
    }
    m.expected_root_leaf_length = mass == 0 ? Rational(0) : total / mass;
    return m;
}

namespace {

std::string highlight_attr(bool on) {
    return on ? " [color=red, penwidth=2]" : "";
}

}  // namespace

std::string to_dot(const Graph& graph, const DotHighlight& highlight) {
    std::ostringstream out;
    out << "graph G {\n";
    for (NodeId id : graph.nodes()) {
        out << "  " << id << highlight_attr(highlight.nodes.count(id) != 0) << ";\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  " << e.u << " -- " << e.v << " [label=\"" << to_string(e.weight) << "\"";
        if (highlight.edges.count(e.key())) out << ", color=red, penwidth=2";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const RootedTree& tree, const DotHighlight& highlight) {
    std::ostringstream out;
    out << "digraph T {\n";
    for (NodeId id : tree.nodes()) {
        out << "  " << id;
        if (auto w = tree.node_weight(id)) {
            out << " [label=\"" << id << " (" << to_string(*w) << ")\"";
            if (highlight.nodes.count(id)) out << ", color=red, penwidth=2";
            out << "]";
        } else {
            out << highlight_attr(highlight.nodes.count(id) != 0);
        }
        out << ";\n";
    }
    for (const auto& [child, par] : tree.parents()) {
        out << "  " << par << " -> " << child;
        std::vector<std::string> attrs;
        if (auto w = tree.arc_weight(child)) attrs.push_back("label=\"" + to_string(*w) + "\"");
        if (highlight.edges.count(make_edge_key(par, child))) attrs.push_back("color=red, penwidth=2");
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
            out << "]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace hier
