#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hier/core/graph.hpp"
#include "hier/core/tree.hpp"
#include "hier/knapsack/knapsack.hpp"

namespace hier {

// ---- hotlinks ----

struct Hotlink {
    NodeId source = 0;
    NodeId target = 0;
    // Ordered by (target, source): the greedy tie-break.
    auto operator<=>(const Hotlink& o) const {
        if (auto c = target <=> o.target; c != 0) return c;
        return source <=> o.source;
    }
    bool operator==(const Hotlink&) const = default;
};

using HotlinkSet = std::set<Hotlink>;

struct HotlinkInstance {
    RootedTree tree;
    std::map<NodeId, Rational> weights;  // leaf access weights; missing leaves weigh 0
    int k = 0;
    std::set<NodeId> sources;            // empty means {root}
};

void validate(const HotlinkInstance& inst);

// Arcs (s, t) with t a proper descendant of a source s but not its child.
std::vector<Hotlink> hotlink_candidates(const HotlinkInstance& inst);

// Weighted mean of shortest root -> leaf hop counts over tree arcs plus hotlinks.
Rational expected_access_cost(const RootedTree& tree, const std::map<NodeId, Rational>& weights,
                              const HotlinkSet& hotlinks);

constexpr std::size_t kHotlinkExactLimit = 20;  // candidate arcs

// Minimum cost over subsets of at most k candidates; ties go to fewer arcs,
// then the lexicographically smallest arc list. Throws TooLargeForExact.
HotlinkSet hotlink_exact_small(const HotlinkInstance& inst);

// Up to k rounds of the best single improving arc. rounds receives the cost
// after each accepted round when non-null.
HotlinkSet hotlink_greedy(const HotlinkInstance& inst, std::vector<Rational>* rounds = nullptr);

// ---- tree to Steiner tree ----

struct SteinerCandidate {
    std::string id;
    Rational objective{0};
    Rational resource{0};
    std::vector<EdgeKey> removes;
    std::vector<NodeId> attaches;  // new edges from the Steiner point to these nodes
};

struct AugmentInstance {
    Graph tree;
    NodeId root = 0;
    std::vector<std::vector<NodeId>> regions;
    std::vector<std::vector<SteinerCandidate>> candidates;  // per region, "none" implied
    Rational budget{0};
};

void validate(const AugmentInstance& inst);

struct AugmentResult {
    Selection selection;                  // chosen candidate id per region, "none" when skipped
    RootedTree tree;                      // spliced tree, rooted at the original root
    std::map<NodeId, std::string> added;  // new node id -> candidate id
};

// Appended Steiner points get ids above the current maximum, in region order.
AugmentResult steiner_augment(const AugmentInstance& inst);

// ---- restructuring ----

using Element = std::string;
using ElementSet = std::set<Element>;

struct ChangeCost {
    Rational add{1};
    Rational remove{1};
};
using ChangeCosts = std::map<Element, ChangeCost>;  // absent elements cost 1 each way

Rational change_cost(const ElementSet& from, const ElementSet& to, const ChangeCosts& costs = {});

enum class EmbeddedKind { Knapsack, MultipleChoice, SpanningTree };
const char* to_string(EmbeddedKind kind);
EmbeddedKind parse_embedded_kind(const std::string& text);

enum class Proximity { SymmetricDifference, ObjectiveGap };
const char* to_string(Proximity p);
Proximity parse_proximity(const std::string& text);

// Elements: item ids, option ids (unique across groups), or "u-v" edge keys.
struct SpanningLimits {
    std::optional<int> max_degree;
    std::optional<int> min_leaves;
};

struct RestructureInstance {
    EmbeddedKind kind = EmbeddedKind::Knapsack;
    std::vector<Item> items;
    Rational budget{0};
    ChoiceInstance choice;
    Graph graph;
    SpanningLimits limits;
    ElementSet initial;
    ElementSet goal;
    ChangeCosts costs;
    Rational change_budget{0};
    Proximity proximity = Proximity::SymmetricDifference;
};

std::string edge_element(NodeId u, NodeId v);

void validate(const RestructureInstance& inst);
bool is_feasible(const RestructureInstance& inst, const ElementSet& s);
// Profit for the knapsack kinds, total weight for spanning trees.
Rational objective(const RestructureInstance& inst, const ElementSet& s);
Rational proximity(const RestructureInstance& inst, const ElementSet& a, const ElementSet& b);

struct RestructureResult {
    ElementSet solution;
    Rational change{0};     // H(initial -> solution)
    Rational proximity{0};  // rho(solution, goal)
};

enum class RestructureMode { ExactSmall, Greedy };

constexpr std::size_t kRestructureExactLimit = 1u << 20;  // candidate solutions

// Minimizes rho subject to H <= change budget. Ties: smaller H, then the
// lexicographically smallest sorted element list. Throws Infeasible when the
// initial solution is infeasible, TooLargeForExact past the limit.
RestructureResult restructure_solve(const RestructureInstance& inst, RestructureMode mode);

// All feasible embedded solutions, bounded by kRestructureExactLimit.
std::vector<ElementSet> enumerate_feasible(const RestructureInstance& inst);

}  // namespace hier
