#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hier/core/rational.hpp"

namespace hier {

using NodeId = int;

// Undirected weighted edge, stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    Rational weight{0};

    Edge() = default;
    Edge(NodeId a, NodeId b, Rational w);

    std::pair<NodeId, NodeId> key() const { return {u, v}; }
    bool operator==(const Edge&) const = default;
};

// Orders edges by (weight, min-id, max-id); the deterministic MST tie-break.
bool edge_weight_less(const Edge& a, const Edge& b);

using EdgeKey = std::pair<NodeId, NodeId>;
EdgeKey make_edge_key(NodeId a, NodeId b);

using NodeAttrs = std::map<std::string, std::string>;

class Graph {
public:
    Graph() = default;
    explicit Graph(const std::vector<NodeId>& nodes);

    void add_node(NodeId id);
    // Rejects self-loops, duplicates, unknown endpoints and negative weights.
    void add_edge(NodeId u, NodeId v, Rational weight);
    void remove_edge(NodeId u, NodeId v);

    bool has_node(NodeId id) const { return adjacency_.count(id) != 0; }
    bool has_edge(NodeId u, NodeId v) const;
    std::optional<Rational> weight(NodeId u, NodeId v) const;

    std::vector<NodeId> nodes() const;
    // Sorted by (u, v).
    std::vector<Edge> edges() const;
    const std::set<NodeId>& neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return neighbors(id).size(); }

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return adjacency_.empty(); }

    std::vector<std::vector<NodeId>> components() const;
    bool connected() const;
    Graph induced(const std::set<NodeId>& keep) const;

    void set_attrs(NodeId id, NodeAttrs attrs);
    const std::map<NodeId, NodeAttrs>& attrs() const { return attrs_; }

    bool operator==(const Graph& other) const;

private:
    std::map<NodeId, std::set<NodeId>> adjacency_;
    std::map<EdgeKey, Rational> edges_;
    std::map<NodeId, NodeAttrs> attrs_;
};

// A chosen edge subset with its recomputable total weight.
struct EdgeSetSolution {
    std::vector<Edge> edges;  // sorted by (u, v)
    Rational total{0};

    static EdgeSetSolution from_edges(std::vector<Edge> edges);
    std::set<EdgeKey> keys() const;
};

// True iff `edges` form a single tree spanning exactly `nodes`.
bool is_spanning_tree(const std::vector<NodeId>& nodes, const std::vector<Edge>& edges);

}  // namespace hier
