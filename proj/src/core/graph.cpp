#include "hier/core/graph.hpp"

#include <algorithm>
#include <numeric>

#include "hier/core/error.hpp"
#include "hier/core/union_find.hpp"

namespace hier {

Edge::Edge(NodeId a, NodeId b, Rational w)
    : u(std::min(a, b)), v(std::max(a, b)), weight(w) {}

bool edge_weight_less(const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.key() < b.key();
}

EdgeKey make_edge_key(NodeId a, NodeId b) {
    return {std::min(a, b), std::max(a, b)};
}

Graph::Graph(const std::vector<NodeId>& nodes) {
    for (NodeId id : nodes) add_node(id);
}

void Graph::add_node(NodeId id) {
    if (!adjacency_.emplace(id, std::set<NodeId>{}).second) {
        throw ValidationError("nodes", "duplicate node " + std::to_string(id));
    }
}

void Graph::add_edge(NodeId u, NodeId v, Rational weight) {
    std::string where = "edge(" + std::to_string(u) + "," + std::to_string(v) + ")";
    if (u == v) throw ValidationError(where, "self-loop");
    if (!has_node(u) || !has_node(v)) throw ValidationError(where, "endpoint is not a declared node");
    if (weight < 0) throw ValidationError(where, "negative weight");
    if (!edges_.emplace(make_edge_key(u, v), weight).second) {
        throw ValidationError(where, "duplicate edge");
    }
    adjacency_[u].insert(v);
    adjacency_[v].insert(u);
}

void Graph::remove_edge(NodeId u, NodeId v) {
    if (edges_.erase(make_edge_key(u, v)) == 0) {
        throw ValidationError("edge(" + std::to_string(u) + "," + std::to_string(v) + ")", "no such edge");
    }
    adjacency_[u].erase(v);
    adjacency_[v].erase(u);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    return edges_.count(make_edge_key(u, v)) != 0;
}

std::optional<Rational> Graph::weight(NodeId u, NodeId v) const {
    auto it = edges_.find(make_edge_key(u, v));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
}

std::vector<NodeId> Graph::nodes() const {
    std::vector<NodeId> out;
    out.reserve(adjacency_.size());
    for (const auto& [id, _] : adjacency_) out.push_back(id);
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [key, w] : edges_) out.emplace_back(key.first, key.second, w);
    return out;
}

const std::set<NodeId>& Graph::neighbors(NodeId id) const {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw Error(ErrorKind::UnknownVertex, "unknown node " + std::to_string(id));
    return it->second;
}

std::vector<std::vector<NodeId>> Graph::components() const {
    std::vector<std::vector<NodeId>> out;
    std::set<NodeId> seen;
    for (const auto& [start, _] : adjacency_) {
        if (seen.count(start)) continue;
        std::vector<NodeId> comp{start};
        seen.insert(start);
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (NodeId next : adjacency_.at(comp[head])) {
                if (seen.insert(next).second) comp.push_back(next);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool Graph::connected() const {
    return components().size() <= 1;
}

Graph Graph::induced(const std::set<NodeId>& keep) const {
    Graph g;
    for (NodeId id : keep) {
        if (!has_node(id)) throw Error(ErrorKind::UnknownVertex, "unknown node " + std::to_string(id));
        g.add_node(id);
    }
    for (const auto& [key, w] : edges_) {
        if (keep.count(key.first) && keep.count(key.second)) g.add_edge(key.first, key.second, w);
    }
    return g;
}

void Graph::set_attrs(NodeId id, NodeAttrs attrs) {
    if (!has_node(id)) throw Error(ErrorKind::UnknownVertex, "unknown node " + std::to_string(id));
    attrs_[id] = std::move(attrs);
}

bool Graph::operator==(const Graph& other) const {
    return adjacency_ == other.adjacency_ && edges_ == other.edges_ && attrs_ == other.attrs_;
}

EdgeSetSolution EdgeSetSolution::from_edges(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
    EdgeSetSolution s;
    for (const auto& e : edges) s.total += e.weight;
    s.edges = std::move(edges);
    return s;
}

std::set<EdgeKey> EdgeSetSolution::keys() const {
    std::set<EdgeKey> out;
    for (const auto& e : edges) out.insert(e.key());
    return out;
}

bool is_spanning_tree(const std::vector<NodeId>& nodes, const std::vector<Edge>& edges) {
    if (nodes.empty()) return edges.empty();
    if (edges.size() != nodes.size() - 1) return false;
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    auto index = [&](NodeId id) -> std::optional<std::size_t> {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
        if (it == sorted.end() || *it != id) return std::nullopt;
        return static_cast<std::size_t>(it - sorted.begin());
    };
    UnionFind uf(sorted.size());
    for (const auto& e : edges) {
        auto a = index(e.u), b = index(e.v);
        if (!a || !b) return false;
        if (!uf.unite(*a, *b)) return false;
    }
    return true;
}

}  // namespace hier
