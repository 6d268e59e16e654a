#include <algorithm>
#include <functional>

#include "hier/core/algorithms.hpp"
#include "hier/core/error.hpp"
#include "hier/modify/modify.hpp"

namespace hier {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) {
    return a < b ? b - a : a - b;
}

std::map<Element, EdgeKey> edge_elements(const Graph& g) {
    std::map<Element, EdgeKey> out;
    for (const auto& e : g.edges()) out[edge_element(e.u, e.v)] = e.key();
    return out;
}

std::vector<Edge> edges_of(const Graph& g, const ElementSet& s) {
    auto names = edge_elements(g);
    std::vector<Edge> out;
    for (const auto& x : s) {
        auto [u, v] = names.at(x);
        out.emplace_back(u, v, *g.weight(u, v));
    }
    return out;
}

ElementSet universe(const RestructureInstance& inst) {
    ElementSet u;
    switch (inst.kind) {
        case EmbeddedKind::Knapsack:
            for (const auto& it : inst.items) u.insert(it.id);
            break;
        case EmbeddedKind::MultipleChoice:
            for (const auto& g : inst.choice.groups) {
                for (const auto& o : g) u.insert(o.id);
            }
            break;
        case EmbeddedKind::SpanningTree:
            for (const auto& [name, key] : edge_elements(inst.graph)) u.insert(name);
            break;
    }
    return u;
}

bool better(const RestructureResult& a, const RestructureResult& b) {
    if (a.proximity != b.proximity) return a.proximity < b.proximity;
    if (a.change != b.change) return a.change < b.change;
    return a.solution < b.solution;
}

RestructureResult score(const RestructureInstance& inst, ElementSet s) {
    RestructureResult r;
    r.change = change_cost(inst.initial, s, inst.costs);
    r.proximity = proximity(inst, s, inst.goal);
    r.solution = std::move(s);
    return r;
}

// Single-step neighbors: toggle one item, swap one group's option, or
// exchange one tree edge for another.
std::vector<ElementSet> neighbors(const RestructureInstance& inst, const ElementSet& s) {
    std::vector<ElementSet> out;
    switch (inst.kind) {
        case EmbeddedKind::Knapsack:
            for (const auto& it : inst.items) {
                ElementSet t = s;
                if (!t.erase(it.id)) t.insert(it.id);
                out.push_back(std::move(t));
            }
            break;
        case EmbeddedKind::MultipleChoice:
            for (const auto& g : inst.choice.groups) {
                for (const auto& o : g) {
                    if (s.count(o.id)) continue;
                    ElementSet t = s;
                    for (const auto& other : g) t.erase(other.id);
                    t.insert(o.id);
                    out.push_back(std::move(t));
                }
            }
            break;
        case EmbeddedKind::SpanningTree: {
            auto names = universe(inst);
            for (const auto& add : names) {
                if (s.count(add)) continue;
                for (const auto& drop : s) {
                    ElementSet t = s;
                    t.erase(drop);
                    t.insert(add);
                    out.push_back(std::move(t));
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace

std::string edge_element(NodeId u, NodeId v) {
    auto [a, b] = make_edge_key(u, v);
    return std::to_string(a) + "-" + std::to_string(b);
}

Rational change_cost(const ElementSet& from, const ElementSet& to, const ChangeCosts& costs) {
    Rational total{0};
    auto cost_of = [&](const Element& e) {
        auto it = costs.find(e);
        return it == costs.end() ? ChangeCost{} : it->second;
    };
    for (const auto& e : to) {
        if (!from.count(e)) total += cost_of(e).add;
    }
    for (const auto& e : from) {
        if (!to.count(e)) total += cost_of(e).remove;
    }
    return total;
}

const char* to_string(EmbeddedKind kind) {
    switch (kind) {
        case EmbeddedKind::Knapsack: return "knapsack-solution";
        case EmbeddedKind::MultipleChoice: return "mchoice-solution";
        case EmbeddedKind::SpanningTree: return "spanning-tree";
    }
    return "?";
}

EmbeddedKind parse_embedded_kind(const std::string& text) {
    if (text == "knapsack-solution") return EmbeddedKind::Knapsack;
    if (text == "mchoice-solution") return EmbeddedKind::MultipleChoice;
    if (text == "spanning-tree") return EmbeddedKind::SpanningTree;
    throw Error(ErrorKind::UnknownKind, "unknown embedded problem '" + text + "'");
}

const char* to_string(Proximity p) {
    return p == Proximity::SymmetricDifference ? "symmetric-difference" : "objective-gap";
}

Proximity parse_proximity(const std::string& text) {
    if (text == "symmetric-difference") return Proximity::SymmetricDifference;
    if (text == "objective-gap") return Proximity::ObjectiveGap;
    throw ValidationError("proximity", "expected symmetric-difference or objective-gap, got '" + text + "'");
}

void validate(const RestructureInstance& inst) {
    if (inst.change_budget < 0) throw ValidationError("change_budget", "change budget must be nonnegative");
    for (const auto& [e, c] : inst.costs) {
        if (c.add < 0 || c.remove < 0) throw ValidationError("costs." + e, "change costs must be nonnegative");
    }
    switch (inst.kind) {
        case EmbeddedKind::Knapsack: {
            std::set<std::string> ids;
            for (std::size_t i = 0; i < inst.items.size(); ++i) {
                const auto& it = inst.items[i];
                std::string where = "items[" + std::to_string(i) + "]";
                if (!ids.insert(it.id).second) throw ValidationError(where + ".id", "duplicate item id " + it.id);
                if (it.weight < 0 || it.profit < 0) throw ValidationError(where, "profit and weight must be nonnegative");
            }
            if (inst.budget < 0) throw ValidationError("budget", "budget must be nonnegative");
            break;
        }
        case EmbeddedKind::MultipleChoice: {
            validate(inst.choice);
            std::set<std::string> ids;
            for (const auto& g : inst.choice.groups) {
                for (const auto& o : g) {
                    if (!ids.insert(o.id).second) throw ValidationError("groups", "option id " + o.id + " repeats across groups");
                }
            }
            break;
        }
        case EmbeddedKind::SpanningTree:
            if (inst.graph.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
            if (!inst.graph.connected()) throw Error(ErrorKind::DisconnectedInput, "graph is disconnected");
            break;
    }
    auto u = universe(inst);
    for (const auto* s : {&inst.initial, &inst.goal}) {
        std::string where = s == &inst.initial ? "initial" : "goal";
        for (const auto& e : *s) {
            if (!u.count(e)) throw ValidationError(where, "unknown element " + e);
        }
    }
    if (!is_feasible(inst, inst.goal)) throw ValidationError("goal", "goal solution is infeasible");
}

bool is_feasible(const RestructureInstance& inst, const ElementSet& s) {
    switch (inst.kind) {
        case EmbeddedKind::Knapsack: {
            Rational w{0};
            for (const auto& it : inst.items) {
                if (s.count(it.id)) w += it.weight;
            }
            return w <= inst.budget;
        }
        case EmbeddedKind::MultipleChoice: {
            Rational w{0};
            std::size_t seen = 0;
            for (const auto& g : inst.choice.groups) {
                int picks = 0;
                for (const auto& o : g) {
                    if (s.count(o.id)) {
                        ++picks;
                        w += o.weight;
                    }
                }
                if (picks != 1) return false;
                ++seen;
            }
            return seen == s.size() && w <= inst.choice.budget;
        }
        case EmbeddedKind::SpanningTree: {
            auto edges = edges_of(inst.graph, s);
            if (!is_spanning_tree(inst.graph.nodes(), edges)) return false;
            std::map<NodeId, int> deg;
            for (const auto& e : edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
            int leaves = 0;
            for (NodeId v : inst.graph.nodes()) {
                if (inst.limits.max_degree && deg[v] > *inst.limits.max_degree) return false;
                if (deg[v] <= 1) ++leaves;
            }
            return !inst.limits.min_leaves || leaves >= *inst.limits.min_leaves;
        }
    }
    return false;
}

Rational objective(const RestructureInstance& inst, const ElementSet& s) {
    Rational total{0};
    switch (inst.kind) {
        case EmbeddedKind::Knapsack:
            for (const auto& it : inst.items) {
                if (s.count(it.id)) total += it.profit;
            }
            break;
        case EmbeddedKind::MultipleChoice:
            for (const auto& g : inst.choice.groups) {
                for (const auto& o : g) {
                    if (s.count(o.id)) total += o.profit;
                }
            }
            break;
        case EmbeddedKind::SpanningTree:
            for (const auto& e : edges_of(inst.graph, s)) total += e.weight;
            break;
    }
    return total;
}

Rational proximity(const RestructureInstance& inst, const ElementSet& a, const ElementSet& b) {
    if (inst.proximity == Proximity::ObjectiveGap) return abs_diff(objective(inst, a), objective(inst, b));
    return Rational(static_cast<std::int64_t>(structure_proximity(a, b)));
}

std::vector<ElementSet> enumerate_feasible(const RestructureInstance& inst) {
    std::vector<ElementSet> out;
    auto too_large = [](const std::string& what) {
        throw Error(ErrorKind::TooLargeForExact, what + " exceeds the exact enumeration limit of " +
                                                     std::to_string(kRestructureExactLimit));
    };
    switch (inst.kind) {
        case EmbeddedKind::Knapsack: {
            std::size_t n = inst.items.size();
            if (n >= 64 || (std::size_t{1} << n) > kRestructureExactLimit) too_large(std::to_string(n) + " items");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                ElementSet s;
                for (std::size_t i = 0; i < n; ++i) {
                    if (mask >> i & 1u) s.insert(inst.items[i].id);
                }
                if (is_feasible(inst, s)) out.push_back(std::move(s));
            }
            break;
        }
        case EmbeddedKind::MultipleChoice: {
            std::size_t total = 1;
            for (const auto& g : inst.choice.groups) {
                total *= g.size();
                if (total > kRestructureExactLimit) too_large("option product");
            }
            ElementSet cur;
            std::function<void(std::size_t)> walk = [&](std::size_t gi) {
                if (gi == inst.choice.groups.size()) {
                    if (is_feasible(inst, cur)) out.push_back(cur);
                    return;
                }
                for (const auto& o : inst.choice.groups[gi]) {
                    cur.insert(o.id);
                    walk(gi + 1);
                    cur.erase(o.id);
                }
            };
            walk(0);
            break;
        }
        case EmbeddedKind::SpanningTree: {
            std::size_t m = inst.graph.edge_count();
            if (m >= 64 || (std::size_t{1} << m) > kRestructureExactLimit) too_large(std::to_string(m) + " edges");
            auto names = universe(inst);
            std::vector<Element> list(names.begin(), names.end());
            std::size_t need = inst.graph.node_count() - 1;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                if (static_cast<std::size_t>(__builtin_popcountll(mask)) != need) continue;
                ElementSet s;
                for (std::size_t i = 0; i < m; ++i) {
                    if (mask >> i & 1u) s.insert(list[i]);
                }
                if (is_feasible(inst, s)) out.push_back(std::move(s));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RestructureResult restructure_solve(const RestructureInstance& inst, RestructureMode mode) {
    validate(inst);
    if (!is_feasible(inst, inst.initial)) throw Error(ErrorKind::Infeasible, "initial solution violates the embedded constraints");
    RestructureResult best = score(inst, inst.initial);

    if (mode == RestructureMode::ExactSmall) {
        for (auto& s : enumerate_feasible(inst)) {
            RestructureResult r = score(inst, std::move(s));
            if (r.change <= inst.change_budget && better(r, best)) best = std::move(r);
        }
        return best;
    }

    // Greedy: cheapest proximity-reducing move each round.
    while (best.proximity > 0) {
        std::optional<RestructureResult> pick;
        Rational pick_step{0};
        for (auto& s : neighbors(inst, best.solution)) {
            if (!is_feasible(inst, s)) continue;
            Rational step = change_cost(best.solution, s, inst.costs);
            RestructureResult r = score(inst, std::move(s));
            if (r.change > inst.change_budget || r.proximity >= best.proximity) continue;
            bool take = !pick || step < pick_step || (step == pick_step && better(r, *pick));
            if (take) {
                pick = std::move(r);
                pick_step = step;
            }
        }
        if (!pick) break;
        best = std::move(*pick);
    }
    return best;
}

}  // namespace hier
