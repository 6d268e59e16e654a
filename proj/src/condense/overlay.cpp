#include <algorithm>

#include "hier/condense/condense.hpp"
#include "hier/core/error.hpp"

namespace hier {

namespace {

Rational ram_of(const OverlayTree& tree, NodeId id) {
    return *tree.node_weight(id);
}

// Index form of the tree for the exhaustive search.
struct Flat {
    std::vector<NodeId> ids;                    // postorder
    std::vector<std::vector<std::size_t>> kids; // indices into ids
    std::vector<Rational> ram;
    std::vector<Rational> freq;
    std::vector<int> bit;                       // plan bit per vertex, -1 for the root
};

Flat flatten(const OverlayTree& tree) {
    Flat f;
    f.ids = tree.postorder();
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < f.ids.size(); ++i) pos[f.ids[i]] = i;
    auto nodes = tree.nodes();  // ascending ids give the bit order
    std::map<NodeId, int> bit_of;
    int next = 0;
    for (NodeId id : nodes) {
        if (id != tree.root()) bit_of[id] = next++;
    }
    for (NodeId id : f.ids) {
        std::vector<std::size_t> ks;
        for (NodeId c : tree.children(id)) ks.push_back(pos[c]);
        f.kids.push_back(std::move(ks));
        f.ram.push_back(ram_of(tree, id));
        f.freq.push_back(id == tree.root() ? Rational(0) : *tree.arc_weight(id));
        f.bit.push_back(id == tree.root() ? -1 : bit_of[id]);
    }
    return f;
}

struct KT {
    Rational k{0};
    Rational t{0};
};

KT kernel_tail(const Flat& f, std::uint32_t mask, std::vector<KT>& scratch) {
    for (std::size_t i = 0; i < f.ids.size(); ++i) {
        KT s{f.ram[i], Rational(0)};
        for (std::size_t c : f.kids[i]) {
            const KT& ch = scratch[c];
            if (mask >> f.bit[c] & 1u) {
                s.k += ch.k;
                s.t = std::max(s.t, ch.t);
            } else {
                s.t = std::max(s.t, ch.k + ch.t);
            }
        }
        scratch[i] = s;
    }
    return scratch.back();
}

template <typename Feasible>
CondenseResult exhaustive(const OverlayTree& tree, Feasible feasible) {
    std::size_t m = tree.size() - 1;
    if (m > kCondenseExactLimit) {
        throw Error(ErrorKind::TooLargeForExact, "exact condensing limited to " + std::to_string(kCondenseExactLimit) +
                                                     " non-root vertices, got " + std::to_string(m));
    }
    Flat f = flatten(tree);
    std::vector<Rational> freq_by_bit(m);
    std::vector<NodeId> id_by_bit(m);
    for (std::size_t i = 0; i < f.ids.size(); ++i) {
        if (f.bit[i] >= 0) {
            freq_by_bit[static_cast<std::size_t>(f.bit[i])] = f.freq[i];
            id_by_bit[static_cast<std::size_t>(f.bit[i])] = f.ids[i];
        }
    }
    std::vector<KT> scratch(f.ids.size());
    std::optional<std::uint32_t> best;
    Rational best_saved{0};
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        Rational saved{0};
        for (std::size_t b = 0; b < m; ++b) {
            if (mask >> b & 1u) saved += freq_by_bit[b];
        }
        if (best && saved <= best_saved) continue;
        KT kt = kernel_tail(f, mask, scratch);
        if (!feasible(kt.k, kt.t)) continue;
        best = mask;
        best_saved = saved;
    }
    if (!best) throw Error(ErrorKind::Infeasible, "no condensing plan satisfies the constraints");
    CondensePlan plan;
    for (std::size_t b = 0; b < m; ++b) {
        if (*best >> b & 1u) plan.insert(id_by_bit[b]);
    }
    return evaluate_plan(tree, plan);
}

}  // namespace

void validate_overlay(const OverlayTree& tree) {
    if (tree.size() == 0) throw ValidationError("tree", "empty tree");
    for (NodeId id : tree.nodes()) {
        auto r = tree.node_weight(id);
        if (!r) throw ValidationError("ram." + std::to_string(id), "missing ram weight");
        if (*r <= 0) throw ValidationError("ram." + std::to_string(id), "ram must be positive");
        if (id == tree.root()) continue;
        auto w = tree.arc_weight(id);
        if (!w) throw ValidationError("freq." + std::to_string(id), "missing call frequency");
        if (*w <= 0) throw ValidationError("freq." + std::to_string(id), "call frequency must be positive");
    }
}

CondensedTree apply_plan(const OverlayTree& tree, const CondensePlan& plan) {
    for (NodeId id : plan) {
        if (!tree.has_node(id) || id == tree.root()) {
            throw ValidationError("plan." + std::to_string(id), "plan entries must be non-root vertices");
        }
    }
    // Representative = topmost vertex reached by following condensed arcs upward.
    std::map<NodeId, NodeId> rep;
    for (NodeId id : tree.preorder()) {
        rep[id] = plan.count(id) ? rep[*tree.parent(id)] : id;
    }
    CondensedTree out;
    out.tree = OverlayTree(tree.root());
    for (NodeId id : tree.preorder()) {
        NodeId r = rep[id];
        out.members[r].push_back(id);
        if (r == id && id != tree.root()) out.tree.add_child(rep[*tree.parent(id)], id);
    }
    for (auto& [r, ms] : out.members) {
        std::sort(ms.begin(), ms.end());
        Rational total{0};
        bool weighted = true;
        for (NodeId m : ms) {
            auto w = tree.node_weight(m);
            if (!w) weighted = false;
            else total += *w;
        }
        if (weighted) out.tree.set_node_weight(r, total);
        if (r != tree.root()) {
            if (auto f = tree.arc_weight(r)) out.tree.set_arc_weight(r, *f);
        }
    }
    return out;
}

Rational tree_weight(const OverlayTree& tree) {
    std::map<NodeId, Rational> below;
    for (NodeId id : tree.postorder()) {
        Rational best{0};
        for (NodeId c : tree.children(id)) best = std::max(best, below[c]);
        below[id] = tree.node_weight(id).value_or(Rational(0)) + best;
    }
    return below[tree.root()];
}

Rational tail_weight(const OverlayTree& tree, NodeId a) {
    if (!tree.has_node(a)) throw Error(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(a));
    Rational best{0};
    std::map<NodeId, Rational> below;
    auto sub = tree.subtree(a);
    for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
        Rational m{0};
        for (NodeId c : tree.children(*it)) m = std::max(m, below[c]);
        below[*it] = tree.node_weight(*it).value_or(Rational(0)) + m;
    }
    for (NodeId c : tree.children(a)) best = std::max(best, below[c]);
    return best;
}

CondenseResult evaluate_plan(const OverlayTree& tree, const CondensePlan& plan) {
    CondenseResult r;
    r.plan = plan;
    r.condensed = apply_plan(tree, plan);
    for (NodeId id : plan) r.saved += tree.arc_weight(id).value_or(Rational(0));
    r.kernel = r.condensed.tree.node_weight(tree.root()).value_or(Rational(0));
    r.tail = tail_weight(r.condensed.tree, tree.root());
    r.weight = r.kernel + r.tail;
    return r;
}

CondenseResult solve_kind1(const OverlayTree& tree, const Rational& b, const CondenseMode& mode) {
    validate_overlay(tree);
    if (tree_weight(tree) > b) {
        throw Error(ErrorKind::Infeasible, "tree weight " + to_string(tree_weight(tree)) + " already exceeds b = " + to_string(b));
    }
    if (mode.kind == CondenseMode::Kind::Approx) {
        return cascade_bottom_up(tree, Kind1Budget{b}, mode.epsilon, mode.delta);
    }
    return exhaustive(tree, [&](const Rational& k, const Rational& t) { return k + t <= b; });
}

CondenseResult solve_kind2(const OverlayTree& tree, const Rational& b_minus, const Rational& b_plus,
                           const CondenseMode& mode) {
    validate_overlay(tree);
    if (mode.kind == CondenseMode::Kind::Approx) {
        return cascade_bottom_up(tree, Kind2Budget{b_minus, b_plus}, mode.epsilon, mode.delta);
    }
    return exhaustive(tree, [&](const Rational& k, const Rational& t) { return k <= b_minus && t <= b_plus; });
}

}  // namespace hier
