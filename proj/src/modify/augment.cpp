#include <algorithm>
#include <deque>

#include "hier/core/error.hpp"
#include "hier/modify/modify.hpp"

namespace hier {

namespace {

constexpr const char* kNone = "none";

RootedTree root_tree(const Graph& g, NodeId root) {
    std::map<NodeId, NodeId> parent;
    std::set<NodeId> seen{root};
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : g.neighbors(v)) {
            if (seen.insert(w).second) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    RootedTree t = RootedTree::from_parents(root, parent);
    for (const auto& [child, par] : parent) t.set_arc_weight(child, *g.weight(child, par));
    return t;
}

}  // namespace

void validate(const AugmentInstance& inst) {
    const Graph& g = inst.tree;
    if (g.empty()) throw ValidationError("tree", "empty tree");
    if (!g.has_node(inst.root)) throw ValidationError("root", "root is not a tree node");
    if (!is_spanning_tree(g.nodes(), g.edges())) throw ValidationError("tree", "edges do not form a spanning tree");
    if (inst.budget < 0) throw ValidationError("budget", "budget must be nonnegative");
    if (inst.regions.size() != inst.candidates.size()) {
        throw ValidationError("candidates", "one candidate list per region is required");
    }
    std::set<std::string> ids;
    for (std::size_t r = 0; r < inst.regions.size(); ++r) {
        std::string where = "regions[" + std::to_string(r) + "]";
        if (inst.regions[r].empty()) throw ValidationError(where, "region is empty");
        for (NodeId v : inst.regions[r]) {
            if (!g.has_node(v)) throw ValidationError(where, "unknown node " + std::to_string(v));
        }
        for (std::size_t c = 0; c < inst.candidates[r].size(); ++c) {
            const auto& cand = inst.candidates[r][c];
            std::string cw = "candidates[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (cand.id.empty() || cand.id == kNone) throw ValidationError(cw + ".id", "candidate id must be nonempty and not 'none'");
            if (!ids.insert(cand.id).second) throw ValidationError(cw + ".id", "duplicate candidate id " + cand.id);
            if (cand.objective < 0 || cand.resource < 0) throw ValidationError(cw, "coefficients must be nonnegative");
            for (const auto& [u, v] : cand.removes) {
                if (!g.has_edge(u, v)) {
                    throw ValidationError(cw + ".removes", "edge " + std::to_string(u) + "-" + std::to_string(v) + " not in tree");
                }
            }
            for (NodeId v : cand.attaches) {
                if (!g.has_node(v)) throw ValidationError(cw + ".attaches", "unknown node " + std::to_string(v));
            }
            if (cand.attaches.empty()) throw ValidationError(cw + ".attaches", "a Steiner point needs at least one edge");
        }
    }
}

AugmentResult steiner_augment(const AugmentInstance& inst) {
    validate(inst);
    ChoiceInstance ci;
    ci.budget = inst.budget;
    for (const auto& region : inst.candidates) {
        std::vector<ChoiceOption> group{{kNone, Rational(0), Rational(0)}};
        for (const auto& c : region) group.push_back({c.id, c.objective, c.resource});
        ci.groups.push_back(std::move(group));
    }
    AugmentResult out;
    out.selection = multiple_choice_exact(ci);

    Graph g = inst.tree;
    NodeId next = g.nodes().back() + 1;
    for (std::size_t r = 0; r < inst.candidates.size(); ++r) {
        const std::string& pick = out.selection.chosen[r];
        if (pick == kNone) continue;
        auto it = std::find_if(inst.candidates[r].begin(), inst.candidates[r].end(),
                               [&](const SteinerCandidate& c) { return c.id == pick; });
        for (const auto& [u, v] : it->removes) {
            if (!g.has_edge(u, v)) {
                throw ValidationError("candidates." + pick, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                                                " already removed by another splice");
            }
            g.remove_edge(u, v);
        }
        NodeId s = next++;
        g.add_node(s);
        g.set_attrs(s, {{"steiner", pick}});
        for (NodeId v : it->attaches) g.add_edge(s, v, Rational(1));
        out.added[s] = pick;
    }
    if (!is_spanning_tree(g.nodes(), g.edges())) {
        throw ValidationError("candidates", "selected splices do not leave a tree");
    }
    out.tree = root_tree(g, inst.root);
    return out;
}

}  // namespace hier
