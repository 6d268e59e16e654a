#include <algorithm>
#include <set>

#include "hier/core/error.hpp"
#include "hier/morpho/morpho.hpp"

namespace hier {

namespace {

struct PairLookup {
    std::size_t a = 0;  // leaf positions
    std::size_t b = 0;
    std::vector<std::vector<int>> value;  // [DA index of a][DA index of b]
};

std::size_t index_of(const std::vector<std::string>& v, const std::string& x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

std::vector<int> cumulative(const std::vector<int>& counts, std::size_t levels) {
    std::vector<int> out(levels, 0);
    int run = 0;
    for (std::size_t i = 0; i < levels; ++i) {
        run += i < counts.size() ? counts[i] : 0;
        out[i] = run;
    }
    return out;
}

}  // namespace

MorphHierarchy make_hierarchy(const std::string& root,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>& parts) {
    MorphHierarchy h;
    std::map<std::string, NodeId> ids{{root, 0}};
    h.names.push_back(root);
    h.tree = RootedTree(0);
    std::map<std::string, std::vector<std::string>> kids(parts.begin(), parts.end());
    std::vector<std::string> stack{root};
    std::set<std::string> placed{root};
    // Depth-first from the root so ids follow first appearance in the part lists.
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        auto it = kids.find(cur);
        if (it == kids.end()) continue;
        for (const auto& c : it->second) {
            if (!placed.insert(c).second) throw ValidationError("tree." + cur, "node " + c + " appears twice");
            NodeId id = static_cast<NodeId>(h.names.size());
            ids[c] = id;
            h.names.push_back(c);
            h.tree.add_child(ids[cur], id);
        }
        for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
    }
    for (const auto& [name, list] : parts) {
        if (!placed.count(name)) throw ValidationError("tree." + name, "composite is not reachable from the root");
    }
    return h;
}

std::vector<std::string> leaf_names(const MorphHierarchy& h) {
    std::vector<std::string> out;
    for (NodeId id : h.tree.preorder()) {
        if (h.tree.is_leaf(id)) out.push_back(h.names.at(static_cast<std::size_t>(id)));
    }
    return out;
}

std::vector<std::string> validate(const MorphHierarchy& h) {
    std::vector<std::string> notes;
    if (h.names.size() != h.tree.size()) throw ValidationError("tree", "every node needs a name");
    auto leaves = leaf_names(h);
    for (const auto& leaf : leaves) {
        auto it = h.alternatives.find(leaf);
        if (it == h.alternatives.end() || it->second.empty()) {
            throw ValidationError("alternatives." + leaf, "leaf has no design alternatives");
        }
        std::set<std::string> seen;
        for (const auto& da : it->second) {
            if (!seen.insert(da.name).second) throw ValidationError("alternatives." + leaf, "duplicate DA " + da.name);
            if (da.estimate < 1) throw ValidationError("alternatives." + leaf + "." + da.name, "estimate must be at least 1");
        }
    }
    for (const auto& [name, list] : h.alternatives) {
        if (std::find(leaves.begin(), leaves.end(), name) == leaves.end()) {
            throw ValidationError("alternatives." + name, "not a leaf of the hierarchy");
        }
    }
    std::map<std::pair<std::string, std::string>, std::map<std::pair<std::string, std::string>, int>> declared;
    for (std::size_t t = 0; t < h.tables.size(); ++t) {
        const auto& tab = h.tables[t];
        std::string where = "tables[" + std::to_string(t) + "]";
        if (tab.values.size() != tab.row_das.size()) throw ValidationError(where + ".values", "row count mismatch");
        for (std::size_t r = 0; r < tab.values.size(); ++r) {
            if (tab.values[r].size() != tab.col_das.size()) {
                throw ValidationError(where + ".values[" + std::to_string(r) + "]", "column count mismatch");
            }
            for (int v : tab.values[r]) {
                if (v < 0 || v > 3) throw ValidationError(where + ".values[" + std::to_string(r) + "]", "compatibility must lie in 0..3");
            }
        }
        bool usable = h.alternatives.count(tab.first) && h.alternatives.count(tab.second) && tab.first != tab.second;
        if (!usable) {
            notes.push_back(where + ": " + tab.first + " x " + tab.second + " is not a pair of distinct leaves; stored but unused");
            continue;
        }
        auto check_das = [&](const std::string& leaf, const std::vector<std::string>& das, const std::string& field) {
            const auto& alts = h.alternatives.at(leaf);
            for (const auto& d : das) {
                bool known = std::any_of(alts.begin(), alts.end(), [&](const DesignAlternative& a) { return a.name == d; });
                if (!known) throw ValidationError(where + "." + field, "unknown DA " + d + " for leaf " + leaf);
            }
        };
        check_das(tab.first, tab.row_das, "row_das");
        check_das(tab.second, tab.col_das, "col_das");
        // Same pair declared in both orientations must agree.
        for (std::size_t r = 0; r < tab.row_das.size(); ++r) {
            for (std::size_t c = 0; c < tab.col_das.size(); ++c) {
                auto key = std::minmax(tab.first, tab.second);
                auto das = tab.first < tab.second ? std::make_pair(tab.row_das[r], tab.col_das[c])
                                                  : std::make_pair(tab.col_das[c], tab.row_das[r]);
                auto [it, fresh] = declared[{key.first, key.second}].emplace(das, tab.values[r][c]);
                if (!fresh && it->second != tab.values[r][c]) {
                    throw ValidationError(where, "compatibility of " + das.first + " and " + das.second + " declared twice with different values");
                }
            }
        }
    }
    return notes;
}

std::vector<Composition> enumerate_compositions(const MorphHierarchy& h, std::size_t limit) {
    validate(h);
    auto leaves = leaf_names(h);
    std::size_t total = 1;
    std::vector<std::vector<std::string>> da_names;
    for (const auto& leaf : leaves) {
        const auto& alts = h.alternatives.at(leaf);
        total *= alts.size();
        if (total > limit) {
            throw Error(ErrorKind::TooManyCombinations, "composition space exceeds the limit of " + std::to_string(limit));
        }
        std::vector<std::string> names;
        for (const auto& a : alts) names.push_back(a.name);
        da_names.push_back(std::move(names));
    }
    int levels = 0;
    for (const auto& [leaf, alts] : h.alternatives) {
        for (const auto& a : alts) levels = std::max(levels, a.estimate);
    }

    std::vector<PairLookup> pairs;
    for (const auto& tab : h.tables) {
        std::size_t a = index_of(leaves, tab.first);
        std::size_t b = index_of(leaves, tab.second);
        if (a == leaves.size() || b == leaves.size() || a == b) continue;
        PairLookup p{a, b, std::vector<std::vector<int>>(da_names[a].size(), std::vector<int>(da_names[b].size(), 3))};
        for (std::size_t r = 0; r < tab.row_das.size(); ++r) {
            for (std::size_t c = 0; c < tab.col_das.size(); ++c) {
                p.value[index_of(da_names[a], tab.row_das[r])][index_of(da_names[b], tab.col_das[c])] = tab.values[r][c];
            }
        }
        pairs.push_back(std::move(p));
    }

    std::vector<Composition> out;
    std::vector<std::size_t> pick(leaves.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        int worst = 3;
        for (const auto& p : pairs) worst = std::min(worst, p.value[pick[p.a]][pick[p.b]]);
        if (worst >= 1) {
            Composition c;
            c.level_counts.assign(static_cast<std::size_t>(levels), 0);
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                const auto& da = h.alternatives.at(leaves[i])[pick[i]];
                c.picks.push_back(da.name);
                ++c.level_counts[static_cast<std::size_t>(da.estimate - 1)];
            }
            c.min_compatibility = worst;
            out.push_back(std::move(c));
        }
        for (std::size_t i = leaves.size(); i-- > 0;) {
            if (++pick[i] < da_names[i].size()) break;
            pick[i] = 0;
        }
    }
    return out;
}

bool dominates(const Composition& a, const Composition& b) {
    std::size_t levels = std::max(a.level_counts.size(), b.level_counts.size());
    auto ca = cumulative(a.level_counts, levels);
    auto cb = cumulative(b.level_counts, levels);
    bool strict = a.min_compatibility > b.min_compatibility;
    if (a.min_compatibility < b.min_compatibility) return false;
    for (std::size_t i = 0; i < levels; ++i) {
        if (ca[i] < cb[i]) return false;
        if (ca[i] > cb[i]) strict = true;
    }
    return strict;
}

std::vector<Composition> pareto_filter(const std::vector<Composition>& compositions) {
    // Many compositions share a signature; test each distinct signature once.
    std::map<std::pair<std::vector<int>, int>, bool> kept;
    for (const auto& c : compositions) kept.emplace(std::make_pair(c.level_counts, c.min_compatibility), true);
    std::vector<Composition> reps;
    for (const auto& [sig, flag] : kept) reps.push_back({{}, sig.first, sig.second});
    for (auto& [sig, flag] : kept) {
        Composition me{{}, sig.first, sig.second};
        flag = std::none_of(reps.begin(), reps.end(), [&](const Composition& o) { return dominates(o, me); });
    }
    std::vector<Composition> out;
    for (const auto& c : compositions) {
        if (kept.at({c.level_counts, c.min_compatibility})) out.push_back(c);
    }
    return out;
}

}  // namespace hier
