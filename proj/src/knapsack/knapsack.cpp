#include "hier/knapsack/knapsack.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "hier/core/error.hpp"

namespace hier {

namespace {

using i64 = std::int64_t;

// Maps rationals onto a common integer grid (lcm of denominators).
std::vector<i64> to_grid(const std::vector<Rational>& xs) {
    i64 lcm = 1;
    for (const auto& x : xs) {
        lcm = std::lcm(lcm, x.denominator());
        if (lcm > (i64{1} << 40)) throw ValidationError("", "values too fine-grained for exact scaling");
    }
    std::vector<i64> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        __int128 v = static_cast<__int128>(x.numerator()) * (lcm / x.denominator());
        if (v > (static_cast<__int128>(1) << 62) || v < -(static_cast<__int128>(1) << 62)) {
            throw ValidationError("", "value out of range after scaling");
        }
        out.push_back(static_cast<i64>(v));
    }
    return out;
}

struct Choice {
    i64 weight = 0;
    i64 value = 0;
};

struct Group {
    std::vector<Choice> choices;  // in preference order
    std::optional<std::size_t> idle;  // taken once the remaining target is reached
};

using Frontier = std::vector<std::pair<i64, i64>>;  // (weight, value), both strictly increasing

std::optional<i64> best_within(const Frontier& f, i64 cap) {
    auto it = std::upper_bound(f.begin(), f.end(), std::make_pair(cap, std::numeric_limits<i64>::max()));
    if (it == f.begin()) return std::nullopt;
    return std::prev(it)->second;
}

void prune(Frontier& f) {
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    });
    Frontier kept;
    for (const auto& e : f) {
        if (kept.empty() || e.second > kept.back().second) kept.push_back(e);
    }
    f = std::move(kept);
}

// Suffix Pareto frontiers plus a preference-ordered walk. Returns the chosen
// choice index per group, or nullopt when no combination fits.
std::optional<std::vector<std::size_t>> solve_groups(const std::vector<Group>& groups, i64 cap) {
    if (cap < 0) return std::nullopt;
    std::size_t m = groups.size();
    std::vector<Frontier> suffix(m + 1);
    suffix[m] = {{0, 0}};
    for (std::size_t g = m; g-- > 0;) {
        Frontier merged;
        for (const auto& c : groups[g].choices) {
            for (const auto& [w, v] : suffix[g + 1]) {
                if (w + c.weight <= cap) merged.emplace_back(w + c.weight, v + c.value);
            }
        }
        prune(merged);
        suffix[g] = std::move(merged);
    }
    auto top = best_within(suffix[0], cap);
    if (!top) return std::nullopt;

    std::vector<std::size_t> picks(m);
    i64 target = *top;
    i64 room = cap;
    for (std::size_t g = 0; g < m; ++g) {
        const auto& group = groups[g];
        std::optional<std::size_t> pick;
        if (target <= 0 && group.idle) {
            pick = group.idle;
        } else {
            for (std::size_t i = 0; i < group.choices.size(); ++i) {
                const auto& c = group.choices[i];
                if (c.weight > room) continue;
                auto rest = best_within(suffix[g + 1], room - c.weight);
                if (rest && c.value + *rest >= target) {
                    pick = i;
                    break;
                }
            }
        }
        if (!pick) throw Error(ErrorKind::Infeasible, "internal: frontier walk lost the target");
        picks[g] = *pick;
        target -= group.choices[*pick].value;
        room -= group.choices[*pick].weight;
    }
    return picks;
}

void check_epsilon(const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidEpsilon, "epsilon must lie in (0, 1), got " + to_string(eps));
}

std::vector<Item> sorted_items(const std::vector<Item>& items) {
    std::vector<Item> out = items;
    std::sort(out.begin(), out.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].profit < 0 || out[i].weight < 0) {
            throw ValidationError("items[" + out[i].id + "]", "profit and weight must be nonnegative");
        }
        if (i > 0 && out[i].id == out[i - 1].id) throw ValidationError("items", "duplicate item id " + out[i].id);
    }
    return out;
}

Selection knapsack_with_values(const std::vector<Item>& items, const Rational& budget, const std::vector<i64>& values) {
    std::vector<Rational> ws;
    for (const auto& it : items) ws.push_back(it.weight);
    ws.push_back(budget);
    auto grid = to_grid(ws);
    std::vector<Group> groups;
    for (std::size_t i = 0; i < items.size(); ++i) {
        groups.push_back({{{grid[i], values[i]}, {0, 0}}, std::size_t{1}});
    }
    auto picks = solve_groups(groups, grid.back());
    Selection s;
    if (!picks) return s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if ((*picks)[i] == 0) {
            s.chosen.push_back(items[i].id);
            s.profit += items[i].profit;
            s.weight += items[i].weight;
        }
    }
    return s;
}

Selection choice_with_values(const ChoiceInstance& inst, const std::vector<std::vector<i64>>& values) {
    std::vector<Rational> ws;
    for (const auto& g : inst.groups) {
        for (const auto& o : g) ws.push_back(o.weight);
    }
    ws.push_back(inst.budget);
    auto grid = to_grid(ws);

    std::vector<Group> groups;
    std::vector<std::vector<std::size_t>> order(inst.groups.size());
    std::size_t k = 0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        const auto& opts = inst.groups[g];
        order[g].resize(opts.size());
        std::iota(order[g].begin(), order[g].end(), std::size_t{0});
        std::sort(order[g].begin(), order[g].end(), [&](std::size_t a, std::size_t b) { return opts[a].id < opts[b].id; });
        Group grp;
        for (std::size_t i : order[g]) grp.choices.push_back({grid[k + i], values[g][i]});
        k += opts.size();
        groups.push_back(std::move(grp));
    }
    auto picks = solve_groups(groups, grid.back());
    if (!picks) throw Error(ErrorKind::Infeasible, "no option combination fits budget " + to_string(inst.budget));
    Selection s;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        const auto& o = inst.groups[g][order[g][(*picks)[g]]];
        s.chosen.push_back(o.id);
        s.profit += o.profit;
        s.weight += o.weight;
    }
    return s;
}

}  // namespace

void validate(const ChoiceInstance& instance) {
    if (instance.budget < 0) throw ValidationError("budget", "budget must be nonnegative");
    for (std::size_t g = 0; g < instance.groups.size(); ++g) {
        const auto& opts = instance.groups[g];
        std::string where = "groups[" + std::to_string(g) + "]";
        if (opts.empty()) throw ValidationError(where, "group has no options");
        std::set<std::string> ids;
        for (const auto& o : opts) {
            if (o.profit < 0 || o.weight < 0) throw ValidationError(where + "." + o.id, "profit and weight must be nonnegative");
            if (!ids.insert(o.id).second) throw ValidationError(where, "duplicate option id " + o.id);
        }
    }
}

Selection knapsack_exact(const std::vector<Item>& items, const Rational& budget) {
    if (budget < 0) throw ValidationError("budget", "budget must be nonnegative");
    auto sorted = sorted_items(items);
    std::vector<Rational> ps;
    for (const auto& it : sorted) ps.push_back(it.profit);
    return knapsack_with_values(sorted, budget, to_grid(ps));
}

Selection knapsack_fptas(const std::vector<Item>& items, const Rational& budget, const Rational& eps) {
    check_epsilon(eps);
    if (budget < 0) throw ValidationError("budget", "budget must be nonnegative");
    auto sorted = sorted_items(items);
    std::vector<Item> fitting;
    Rational pmax{0};
    for (const auto& it : sorted) {
        if (it.weight <= budget) {
            fitting.push_back(it);
            pmax = std::max(pmax, it.profit);
        }
    }
    if (pmax == 0) return {};
    Rational scale = Rational(static_cast<i64>(fitting.size())) / (eps * pmax);  // 1/K
    std::vector<i64> values;
    for (const auto& it : fitting) values.push_back(floor_int(it.profit * scale));
    return knapsack_with_values(fitting, budget, values);
}

Selection multiple_choice_exact(const ChoiceInstance& instance) {
    validate(instance);
    std::vector<Rational> ps;
    for (const auto& g : instance.groups) {
        for (const auto& o : g) ps.push_back(o.profit);
    }
    auto flat = to_grid(ps);
    std::vector<std::vector<i64>> values;
    std::size_t k = 0;
    for (const auto& g : instance.groups) {
        values.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(k), flat.begin() + static_cast<std::ptrdiff_t>(k + g.size()));
        k += g.size();
    }
    return choice_with_values(instance, values);
}

Selection multiple_choice_fptas(const ChoiceInstance& instance, const Rational& eps) {
    check_epsilon(eps);
    validate(instance);
    // Lower bound: cheapest option everywhere, then boost one group.
    Rational base_weight{0}, base_profit{0};
    std::vector<const ChoiceOption*> cheapest;
    for (const auto& g : instance.groups) {
        const ChoiceOption* c = &g.front();
        for (const auto& o : g) {
            if (o.weight < c->weight || (o.weight == c->weight && o.profit > c->profit)) c = &o;
        }
        cheapest.push_back(c);
        base_weight += c->weight;
        base_profit += c->profit;
    }
    if (base_weight > instance.budget) {
        throw Error(ErrorKind::Infeasible, "no option combination fits budget " + to_string(instance.budget));
    }
    Rational lb = base_profit;
    for (std::size_t g = 0; g < instance.groups.size(); ++g) {
        for (const auto& o : instance.groups[g]) {
            if (base_weight - cheapest[g]->weight + o.weight <= instance.budget) {
                lb = std::max(lb, base_profit - cheapest[g]->profit + o.profit);
            }
        }
    }
    std::size_t m = instance.groups.size();
    std::vector<std::vector<i64>> values;
    if (lb == 0) {
        for (const auto& g : instance.groups) values.emplace_back(g.size(), 0);
    } else {
        Rational inv_k = Rational(static_cast<i64>(m)) / (eps * lb);
        Rational cap = Rational(static_cast<i64>(m)) * lb;  // profit ceiling of any feasible option
        for (const auto& g : instance.groups) {
            std::vector<i64> vs;
            for (const auto& o : g) vs.push_back(floor_int(std::min(o.profit, cap) * inv_k));
            values.push_back(std::move(vs));
        }
    }
    return choice_with_values(instance, values);
}

}  // namespace hier
