#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hier/core/tree.hpp"
#include "hier/knapsack/knapsack.hpp"

namespace hier {

// RootedTree with ram > 0 on every vertex and freq > 0 on every arc.
using OverlayTree = RootedTree;

void validate_overlay(const OverlayTree& tree);

// Vertices whose incoming arc is condensed.
using CondensePlan = std::set<NodeId>;

// Merged vertices keep the id of their topmost member.
struct CondensedTree {
    OverlayTree tree;
    std::map<NodeId, std::vector<NodeId>> members;
};

CondensedTree apply_plan(const OverlayTree& tree, const CondensePlan& plan);

Rational tree_weight(const OverlayTree& tree);
// tree_weight(subtree at a) - ram(a). Throws UnknownVertex.
Rational tail_weight(const OverlayTree& tree, NodeId a);

struct CondenseResult {
    CondensePlan plan;
    CondensedTree condensed;
    Rational saved{0};   // sum of freq over condensed arcs
    Rational kernel{0};  // ram of the merged root vertex
    Rational tail{0};    // heaviest remaining chain below the merged root
    Rational weight{0};  // kernel + tail
};

CondenseResult evaluate_plan(const OverlayTree& tree, const CondensePlan& plan);

struct CondenseMode {
    enum class Kind { ExactSmall, Approx } kind = Kind::ExactSmall;
    Rational epsilon{1, 10};
    Rational delta{1, 10};
};

constexpr std::size_t kCondenseExactLimit = 16;  // non-root vertices

CondenseResult solve_kind1(const OverlayTree& tree, const Rational& b, const CondenseMode& mode = {});
CondenseResult solve_kind2(const OverlayTree& tree, const Rational& b_minus, const Rational& b_plus,
                           const CondenseMode& mode = {});

// Fan subproblems. 1.x: one option per group (a single child); 2.x: a menu per child.
enum class AuxKind { K11, K12, K13, K14, K21, K22, K23, K24 };
AuxKind parse_aux_kind(const std::string& text);
const char* to_string(AuxKind kind);
bool is_kind_one(AuxKind kind);

struct AuxOption {
    std::string id;
    Rational kernel{0};        // joins the root kernel when the arc is condensed
    Rational tail{0};          // heaviest chain below the option's kernel
    Rational inner_profit{0};  // earned whatever the arc decision
    Rational arc_profit{0};    // earned when the arc is condensed
};

struct AuxInstance {
    Rational root_ram{0};
    std::vector<std::vector<AuxOption>> groups;
    Rational b{0};        // kind-1 budget
    Rational b_minus{0};  // kind-2 kernel budget
    Rational b_plus{0};   // kind-2 tail budget
};

struct AuxSolution {
    Selection selection;             // chosen "<id>:<0|1>" per group; weight = root kernel
    std::vector<std::size_t> option; // chosen option index per group
    std::vector<bool> condensed;     // arc decision per group
    Rational kernel{0};
    Rational max_term{0};            // max over groups of (1 - x) * kernel + tail
};

struct AuxMode {
    bool approx = false;
    Rational epsilon{1, 10};
    Rational delta{0};  // constraint slack for 2.3 in approx mode
};

AuxSolution solve_auxiliary(AuxKind kind, const AuxInstance& instance, const AuxMode& mode = {});

struct Kind1Budget {
    Rational b;
};
struct Kind2Budget {
    Rational b_minus;
    Rational b_plus;
};
using RootConstraint = std::variant<Kind1Budget, Kind2Budget>;

// Leaves-upward menu sweep; root solved as 1.1/1.2 for stars, else 2.3/2.4.
CondenseResult cascade_bottom_up(const OverlayTree& tree, const RootConstraint& constraint, const Rational& epsilon,
                                 const Rational& delta);

}  // namespace hier
