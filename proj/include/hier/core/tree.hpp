#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hier/core/graph.hpp"
#include "hier/core/rational.hpp"

namespace hier {

// Rooted tree given by a child -> parent map. Children are kept sorted.
class RootedTree {
public:
    RootedTree() = default;
    explicit RootedTree(NodeId root);

    // Validates: single root, no cycles, every node reachable from the root.
    static RootedTree from_parents(NodeId root, const std::map<NodeId, NodeId>& parent);

    void add_child(NodeId parent, NodeId child);

    NodeId root() const { return root_; }
    bool has_node(NodeId id) const { return children_.count(id) != 0; }
    std::size_t size() const { return children_.size(); }

    std::vector<NodeId> nodes() const;
    std::optional<NodeId> parent(NodeId id) const;
    const std::map<NodeId, NodeId>& parents() const { return parent_; }
    const std::vector<NodeId>& children(NodeId id) const;
    bool is_leaf(NodeId id) const { return children(id).empty(); }
    std::vector<NodeId> leaves() const;

    int depth(NodeId id) const;
    bool is_ancestor(NodeId ancestor, NodeId node) const;
    // Root first, children in ascending id order.
    std::vector<NodeId> preorder() const;
    std::vector<NodeId> postorder() const;
    std::vector<NodeId> subtree(NodeId id) const;
    // Nodes on the root -> id path, inclusive.
    std::vector<NodeId> path_from_root(NodeId id) const;

    void set_node_weight(NodeId id, Rational w);
    std::optional<Rational> node_weight(NodeId id) const;
    const std::map<NodeId, Rational>& node_weights() const { return node_weight_; }

    // Weight of the arc parent(child) -> child.
    void set_arc_weight(NodeId child, Rational w);
    std::optional<Rational> arc_weight(NodeId child) const;
    const std::map<NodeId, Rational>& arc_weights() const { return arc_weight_; }

    // Undirected view, arc weights as edge weights (0 when absent).
    Graph to_graph() const;

    bool operator==(const RootedTree&) const = default;

private:
    void require(NodeId id) const;

    NodeId root_ = 0;
    std::map<NodeId, NodeId> parent_;
    std::map<NodeId, std::vector<NodeId>> children_;
    std::map<NodeId, Rational> node_weight_;
    std::map<NodeId, Rational> arc_weight_;
};

}  // namespace hier
