#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>

#include "hier/core/graph.hpp"
#include "hier/core/tree.hpp"

namespace hier {

// Kruskal. Throws EmptyGraph / DisconnectedInput.
EdgeSetSolution mst(const Graph& graph);
// Prim from the smallest node id; same errors as mst.
EdgeSetSolution mst_prim(const Graph& graph);
// Union of per-component minimum spanning trees.
EdgeSetSolution spanning_forest(const Graph& graph);

// Menger check with unit vertex capacities. False when fewer than k+1 nodes.
bool vertex_connectivity_at_least(const Graph& graph, int k);

struct StructMetrics {
    int depth = 0;
    int max_degree = 0;
    int leaf_count = 0;
    int node_count = 0;
    Rational expected_root_leaf_length{0};
};

// max_degree counts undirected degree (children plus parent).
StructMetrics tree_metrics(const RootedTree& tree,
                           const std::optional<std::map<NodeId, Rational>>& leaf_weights = std::nullopt);

// |s1 symmetric-difference s2|.
template <typename T>
std::size_t structure_proximity(const std::set<T>& s1, const std::set<T>& s2) {
    std::size_t count = 0;
    auto a = s1.begin();
    auto b = s2.begin();
    while (a != s1.end() && b != s2.end()) {
        if (*a < *b) {
            ++count;
            ++a;
        } else if (*b < *a) {
            ++count;
            ++b;
        } else {
            ++a;
            ++b;
        }
    }
    count += static_cast<std::size_t>(std::distance(a, s1.end()));
    count += static_cast<std::size_t>(std::distance(b, s2.end()));
    return count;
}

struct DotHighlight {
    std::set<NodeId> nodes;
    std::set<EdgeKey> edges;
};

std::string to_dot(const Graph& graph, const DotHighlight& highlight = {});
std::string to_dot(const RootedTree& tree, const DotHighlight& highlight = {});

}  // namespace hier
