#pragma once

#include <string>
#include <vector>

#include "hier/core/rational.hpp"

namespace hier {

struct Item {
    std::string id;
    Rational profit{0};
    Rational weight{0};
};

struct ChoiceOption {
    std::string id;
    Rational profit{0};
    Rational weight{0};
};

// Exactly one option per group. Option ids must be unique inside a group.
struct ChoiceInstance {
    std::vector<std::vector<ChoiceOption>> groups;
    Rational budget{0};
};

struct Selection {
    // 0/1 knapsack: chosen ids sorted ascending.
    // Multiple choice: one id per group, in group order.
    std::vector<std::string> chosen;
    Rational profit{0};
    Rational weight{0};
};

// Lexicographically smallest chosen-id set among profit-optimal subsets.
Selection knapsack_exact(const std::vector<Item>& items, const Rational& budget);

// Profit scaling with K = eps * Pmax / n. Requires 0 < eps < 1.
Selection knapsack_fptas(const std::vector<Item>& items, const Rational& budget, const Rational& eps);

// Lexicographically smallest option-id tuple among optima. Throws Infeasible.
Selection multiple_choice_exact(const ChoiceInstance& instance);

Selection multiple_choice_fptas(const ChoiceInstance& instance, const Rational& eps);

void validate(const ChoiceInstance& instance);

}  // namespace hier
