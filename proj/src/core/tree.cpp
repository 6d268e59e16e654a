#include "hier/core/tree.hpp"

#include <algorithm>
#include <set>

#include "hier/core/error.hpp"

namespace hier {

RootedTree::RootedTree(NodeId root) : root_(root) {
    children_[root] = {};
}

RootedTree RootedTree::from_parents(NodeId root, const std::map<NodeId, NodeId>& parent) {
    if (parent.count(root)) {
        throw ValidationError("parent." + std::to_string(root), "root must not have a parent");
    }
    std::set<NodeId> all{root};
    for (const auto& [child, par] : parent) {
        all.insert(child);
        all.insert(par);
    }
    for (NodeId id : all) {
        if (id != root && !parent.count(id)) {
            throw ValidationError("parent." + std::to_string(id), "node has no parent and is not the root");
        }
    }
    std::map<NodeId, std::vector<NodeId>> kids;
    for (const auto& [child, par] : parent) kids[par].push_back(child);

    RootedTree t(root);
    std::vector<NodeId> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId cur = queue[head];
        auto it = kids.find(cur);
        if (it == kids.end()) continue;
        std::sort(it->second.begin(), it->second.end());
        for (NodeId c : it->second) {
            t.add_child(cur, c);
            queue.push_back(c);
        }
    }
    if (t.size() != all.size()) {
        throw ValidationError("parent", "parent mapping contains a cycle or unreachable nodes");
    }
    return t;
}

void RootedTree::add_child(NodeId parent, NodeId child) {
    require(parent);
    if (has_node(child)) throw ValidationError("parent." + std::to_string(child), "duplicate node");
    parent_[child] = parent;
    auto& siblings = children_[parent];
    siblings.insert(std::lower_bound(siblings.begin(), siblings.end(), child), child);
    children_[child] = {};
}

void RootedTree::require(NodeId id) const {
    if (!has_node(id)) throw Error(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(id));
}

std::vector<NodeId> RootedTree::nodes() const {
    std::vector<NodeId> out;
    for (const auto& [id, _] : children_) out.push_back(id);
    return out;
}

std::optional<NodeId> RootedTree::parent(NodeId id) const {
    require(id);
    auto it = parent_.find(id);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
}

const std::vector<NodeId>& RootedTree::children(NodeId id) const {
    auto it = children_.find(id);
    if (it == children_.end()) throw Error(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(id));
    return it->second;
}

std::vector<NodeId> RootedTree::leaves() const {
    std::vector<NodeId> out;
    for (const auto& [id, kids] : children_) {
        if (kids.empty()) out.push_back(id);
    }
    return out;
}

int RootedTree::depth(NodeId id) const {
    require(id);
    int d = 0;
    for (auto it = parent_.find(id); it != parent_.end(); it = parent_.find(it->second)) ++d;
    return d;
}

bool RootedTree::is_ancestor(NodeId ancestor, NodeId node) const {
    require(ancestor);
    require(node);
    for (auto it = parent_.find(node); it != parent_.end(); it = parent_.find(it->second)) {
        if (it->second == ancestor) return true;
    }
    return false;
}

std::vector<NodeId> RootedTree::preorder() const {
    return subtree(root_);
}

std::vector<NodeId> RootedTree::postorder() const {
    std::vector<NodeId> out;
    if (children_.empty()) return out;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
        auto& [id, next] = stack.back();
        const auto& kids = children_.at(id);
        if (next < kids.size()) {
            NodeId c = kids[next++];
            stack.emplace_back(c, 0);
        } else {
            out.push_back(id);
            stack.pop_back();
        }
    }
    return out;
}

std::vector<NodeId> RootedTree::subtree(NodeId id) const {
    require(id);
    std::vector<NodeId> out;
    std::vector<NodeId> stack{id};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        const auto& kids = children_.at(cur);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<NodeId> RootedTree::path_from_root(NodeId id) const {
    require(id);
    std::vector<NodeId> out{id};
    for (auto it = parent_.find(id); it != parent_.end(); it = parent_.find(it->second)) {
        out.push_back(it->second);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void RootedTree::set_node_weight(NodeId id, Rational w) {
    require(id);
    node_weight_[id] = w;
}

std::optional<Rational> RootedTree::node_weight(NodeId id) const {
    auto it = node_weight_.find(id);
    if (it == node_weight_.end()) return std::nullopt;
    return it->second;
}

void RootedTree::set_arc_weight(NodeId child, Rational w) {
    require(child);
    if (!parent_.count(child)) throw ValidationError("freq." + std::to_string(child), "root has no incoming arc");
    arc_weight_[child] = w;
}

std::optional<Rational> RootedTree::arc_weight(NodeId child) const {
    auto it = arc_weight_.find(child);
    if (it == arc_weight_.end()) return std::nullopt;
    return it->second;
}

Graph RootedTree::to_graph() const {
    Graph g(nodes());
    for (const auto& [child, par] : parent_) {
        g.add_edge(par, child, arc_weight(child).value_or(Rational(0)));
    }
    return g;
}

}  // namespace hier
