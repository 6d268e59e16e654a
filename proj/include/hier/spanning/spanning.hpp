#pragma once

#include <set>
#include <vector>

#include "hier/core/graph.hpp"

namespace hier {

struct SteinerInstance {
    Graph graph;
    std::set<NodeId> terminals;
};

void validate(const SteinerInstance& instance);

struct LeafTreeSolution {
    std::vector<Edge> edges;  // sorted by (u, v)
    std::vector<NodeId> leaves;    // tree degree <= 1
    std::vector<NodeId> internal;
    NodeId root = 0;

    std::size_t leaf_count() const { return leaves.size(); }
};

// Builds the solution record (leaf/internal split) for a spanning tree.
LeafTreeSolution make_leaf_solution(const Graph& graph, std::vector<Edge> edges, NodeId root);

// Shortest paths from one source; ties resolved toward the smaller predecessor id.
struct ShortestPaths {
    std::map<NodeId, Rational> dist;
    std::map<NodeId, NodeId> pred;
};
ShortestPaths dijkstra(const Graph& graph, NodeId source);

// Distance-network heuristic, weight <= 2 * OPT.
EdgeSetSolution steiner_heuristic(const SteinerInstance& instance);

constexpr std::size_t kMaxLeafExactLimit = 10;

// Exact via a minimum connected dominating set; leaves = n - |CDS| for n >= 3.
LeafTreeSolution max_leaf_exact(const Graph& graph, std::size_t size_limit = kMaxLeafExactLimit);

LeafTreeSolution max_leaf_greedy(const Graph& graph);

// Internal nodes of the tree, checked to be connected and dominating.
std::set<NodeId> cds_from_spanning_tree(const LeafTreeSolution& solution, const Graph& graph);

bool is_connected_dominating(const Graph& graph, const std::set<NodeId>& set);

}  // namespace hier
