#include <algorithm>

#include "hier/condense/condense.hpp"
#include "hier/core/error.hpp"

namespace hier {

namespace {

// One entry of a vertex's option menu: the vertex's merged kernel, the
// heaviest chain hanging below it, and the frequency saved inside its subtree.
struct MenuState {
    Rational kernel;
    Rational tail;
    Rational profit;
    std::vector<NodeId> plan;
};

using Menu = std::vector<MenuState>;

class PrefixMax {
public:
    explicit PrefixMax(std::size_t n) : tree_(n + 1) {}

    void update(std::size_t i, const Rational& v) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) {
            if (!tree_[i] || *tree_[i] < v) tree_[i] = v;
        }
    }

    std::optional<Rational> query(std::size_t i) const {
        std::optional<Rational> best;
        for (++i; i > 0; i -= i & (~i + 1)) {
            if (tree_[i] && (!best || *best < *tree_[i])) best = tree_[i];
        }
        return best;
    }

private:
    std::vector<std::optional<Rational>> tree_;
};

// Drops a state when a kept state is no heavier in kernel and tail and
// earns at least keep * its profit. keep = 1 is plain Pareto pruning.
void trim(Menu& menu, const Rational& keep) {
    std::sort(menu.begin(), menu.end(), [](const MenuState& a, const MenuState& b) {
        if (a.kernel != b.kernel) return a.kernel < b.kernel;
        if (a.tail != b.tail) return a.tail < b.tail;
        if (a.profit != b.profit) return a.profit > b.profit;
        return a.plan < b.plan;
    });
    std::vector<Rational> tails;
    for (const auto& s : menu) tails.push_back(s.tail);
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
    PrefixMax pm(tails.size());
    Menu kept;
    for (auto& s : menu) {
        auto idx = static_cast<std::size_t>(std::lower_bound(tails.begin(), tails.end(), s.tail) - tails.begin());
        auto cover = pm.query(idx);
        if (cover && *cover >= keep * s.profit) continue;
        pm.update(idx, s.profit);
        kept.push_back(std::move(s));
    }
    menu = std::move(kept);
}

struct Caps {
    bool kind_one = true;
    Rational total;    // kind 1: kernel + tail
    Rational kernel;   // kind 2
    Rational tail;     // kind 2
};

// Whether some completion above this vertex could still respect the caps.
bool viable(const MenuState& s, const Caps& caps) {
    if (caps.kind_one) return s.kernel + s.tail <= caps.total;
    if (s.tail > caps.tail) return false;
    return s.kernel <= caps.kernel || s.kernel + s.tail <= caps.tail;
}

}  // namespace

CondenseResult cascade_bottom_up(const OverlayTree& tree, const RootConstraint& constraint, const Rational& epsilon,
                                 const Rational& delta) {
    validate_overlay(tree);
    if (epsilon <= 0 || epsilon >= 1) throw Error(ErrorKind::InvalidEpsilon, "epsilon must lie in (0, 1)");
    if (delta < 0) throw ValidationError("delta", "delta must be nonnegative");
    bool kind_one = std::holds_alternative<Kind1Budget>(constraint);
    Rational scale_base;
    Caps caps;
    caps.kind_one = kind_one;
    Rational half_delta = delta / 2;
    if (kind_one) {
        Rational b = std::get<Kind1Budget>(constraint).b;
        if (tree_weight(tree) > b) throw Error(ErrorKind::Infeasible, "tree weight already exceeds b");
        scale_base = b;
        caps.total = b * (1 + half_delta);
    } else {
        const auto& k2 = std::get<Kind2Budget>(constraint);
        scale_base = std::min(k2.b_minus, k2.b_plus);
        caps.kernel = k2.b_minus * (1 + half_delta);
        caps.tail = k2.b_plus * (1 + half_delta);
    }
    // Rounding rams up to this grid costs at most delta/2 * budget per chain.
    auto n = static_cast<std::int64_t>(tree.size());
    Rational grid = scale_base > 0 ? half_delta * scale_base / n : Rational(0);
    auto ram = [&](NodeId id) {
        Rational r = *tree.node_weight(id);
        return grid > 0 ? round_up_to(r, grid) : r;
    };
    Rational keep = 1 - (epsilon / 2) / n;

    std::map<NodeId, Menu> menus;
    NodeId root = tree.root();
    for (NodeId v : tree.postorder()) {
        if (v == root) break;
        // Children by nondecreasing subtree weight.
        std::vector<NodeId> kids = tree.children(v);
        std::map<NodeId, Rational> heavy;
        for (NodeId c : kids) heavy[c] = tail_weight(tree, c) + *tree.node_weight(c);
        std::stable_sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) { return heavy[a] < heavy[b]; });

        Menu cur{{ram(v), Rational(0), Rational(0), {}}};
        for (NodeId c : kids) {
            Rational w = *tree.arc_weight(c);
            Menu next;
            for (const auto& s : cur) {
                for (const auto& m : menus[c]) {
                    MenuState joined{s.kernel + m.kernel, std::max(s.tail, m.tail), s.profit + m.profit + w, s.plan};
                    joined.plan.insert(joined.plan.end(), m.plan.begin(), m.plan.end());
                    joined.plan.push_back(c);
                    if (viable(joined, caps)) next.push_back(std::move(joined));
                    MenuState apart{s.kernel, std::max(s.tail, m.kernel + m.tail), s.profit + m.profit, s.plan};
                    apart.plan.insert(apart.plan.end(), m.plan.begin(), m.plan.end());
                    if (viable(apart, caps)) next.push_back(std::move(apart));
                }
            }
            trim(next, keep);
            cur = std::move(next);
            menus.erase(c);
        }
        if (cur.empty()) {
            // Nothing below v fits; only relevant when v itself is too heavy.
            throw Error(ErrorKind::Infeasible, "vertex " + std::to_string(v) + " cannot satisfy the constraints");
        }
        menus[v] = std::move(cur);
    }

    // Root fan: children's menus become the option groups.
    AuxInstance inst;
    inst.root_ram = ram(root);
    bool star = true;
    std::vector<NodeId> kids = tree.children(root);
    for (NodeId c : kids) {
        std::vector<AuxOption> group;
        const Menu& menu = menus[c];
        for (std::size_t i = 0; i < menu.size(); ++i) {
            group.push_back({std::to_string(i), menu[i].kernel, menu[i].tail, menu[i].profit, *tree.arc_weight(c)});
        }
        star = star && tree.is_leaf(c);
        inst.groups.push_back(std::move(group));
    }
    AuxMode mode;
    mode.approx = true;
    mode.epsilon = epsilon / 2;
    AuxKind kind;
    if (kind_one) {
        inst.b = caps.total;
        kind = star ? AuxKind::K11 : AuxKind::K23;
        // Remaining slack so rounding plus max-term guessing stays within (1 + delta).
        mode.delta = delta / (2 + delta);
    } else {
        inst.b_minus = caps.kernel;
        inst.b_plus = caps.tail;
        kind = star ? AuxKind::K12 : AuxKind::K24;
    }
    AuxSolution sol = solve_auxiliary(kind, inst, mode);

    CondensePlan plan;
    for (std::size_t g = 0; g < kids.size(); ++g) {
        const auto& chosen = menus[kids[g]][sol.option[g]];
        plan.insert(chosen.plan.begin(), chosen.plan.end());
        if (sol.condensed[g]) plan.insert(kids[g]);
    }
    return evaluate_plan(tree, plan);
}

}  // namespace hier
