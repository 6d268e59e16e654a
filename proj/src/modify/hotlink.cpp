#include <algorithm>
#include <deque>

#include "hier/core/error.hpp"
#include "hier/modify/modify.hpp"

namespace hier {

namespace {

std::set<NodeId> sources_of(const HotlinkInstance& inst) {
    if (inst.sources.empty()) return {inst.tree.root()};
    return inst.sources;
}

Rational weight_total(const std::map<NodeId, Rational>& weights) {
    Rational total{0};
    for (const auto& [id, w] : weights) total += w;
    return total;
}

}  // namespace

void validate(const HotlinkInstance& inst) {
    if (inst.tree.size() == 0) throw ValidationError("tree", "empty tree");
    if (inst.k < 0) throw ValidationError("k", "hotlink budget must be nonnegative");
    for (const auto& [id, w] : inst.weights) {
        std::string where = "weights." + std::to_string(id);
        if (!inst.tree.has_node(id)) throw Error(ErrorKind::UnknownVertex, where + ": unknown vertex");
        if (!inst.tree.is_leaf(id)) throw ValidationError(where, "access weights belong to leaves");
        if (w < 0) throw Error(ErrorKind::NegativeLeafWeight, where + ": negative weight");
    }
    if (weight_total(inst.weights) <= 0) throw ValidationError("weights", "leaf weights are all zero");
    for (NodeId s : inst.sources) {
        if (!inst.tree.has_node(s)) throw Error(ErrorKind::UnknownVertex, "sources: unknown vertex " + std::to_string(s));
    }
}

std::vector<Hotlink> hotlink_candidates(const HotlinkInstance& inst) {
    std::vector<Hotlink> out;
    for (NodeId s : sources_of(inst)) {
        for (NodeId t : inst.tree.subtree(s)) {
            if (t == s || inst.tree.parent(t) == s) continue;
            out.push_back({s, t});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational expected_access_cost(const RootedTree& tree, const std::map<NodeId, Rational>& weights,
                              const HotlinkSet& hotlinks) {
    std::map<NodeId, std::vector<NodeId>> extra;
    for (const auto& h : hotlinks) extra[h.source].push_back(h.target);
    std::map<NodeId, int> dist{{tree.root(), 0}};
    std::deque<NodeId> queue{tree.root()};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        auto visit = [&](NodeId w) {
            if (dist.emplace(w, dist[v] + 1).second) queue.push_back(w);
        };
        for (NodeId c : tree.children(v)) visit(c);
        if (auto it = extra.find(v); it != extra.end()) {
            for (NodeId t : it->second) visit(t);
        }
    }
    Rational total{0};
    Rational mass{0};
    for (const auto& [id, w] : weights) {
        total += w * dist.at(id);
        mass += w;
    }
    return mass > 0 ? total / mass : Rational(0);
}

HotlinkSet hotlink_exact_small(const HotlinkInstance& inst) {
    validate(inst);
    auto cands = hotlink_candidates(inst);
    if (cands.size() > kHotlinkExactLimit) {
        throw Error(ErrorKind::TooLargeForExact, std::to_string(cands.size()) + " candidate hotlinks exceed the exact limit of " +
                                                     std::to_string(kHotlinkExactLimit));
    }
    std::size_t limit = std::min(cands.size(), static_cast<std::size_t>(inst.k));
    HotlinkSet best;
    Rational best_cost = expected_access_cost(inst.tree, inst.weights, best);
    // Sizes ascend and each size walks combinations in lexicographic order,
    // so a strict improvement test keeps the required tie-break.
    for (std::size_t size = 1; size <= limit; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            HotlinkSet s;
            for (std::size_t i : pick) s.insert(cands[i]);
            Rational c = expected_access_cost(inst.tree, inst.weights, s);
            if (c < best_cost) {
                best_cost = c;
                best = std::move(s);
            }
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == cands.size() - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return best;
}

HotlinkSet hotlink_greedy(const HotlinkInstance& inst, std::vector<Rational>* rounds) {
    validate(inst);
    auto cands = hotlink_candidates(inst);
    HotlinkSet chosen;
    Rational cost = expected_access_cost(inst.tree, inst.weights, chosen);
    for (int round = 0; round < inst.k; ++round) {
        std::optional<Hotlink> pick;
        Rational pick_cost = cost;
        for (const auto& h : cands) {
            if (chosen.count(h)) continue;
            HotlinkSet trial = chosen;
            trial.insert(h);
            Rational c = expected_access_cost(inst.tree, inst.weights, trial);
            if (c < pick_cost) {
                pick_cost = c;
                pick = h;
            }
        }
        if (!pick) break;
        chosen.insert(*pick);
        cost = pick_cost;
        if (rounds) rounds->push_back(cost);
    }
    return chosen;
}

}  // namespace hier
