#pragma once

#include <map>
#include <string>
#include <vector>

#include "hier/core/tree.hpp"

namespace hier {

struct DesignAlternative {
    std::string name;
    int estimate = 1;  // 1 is best
};

// Rows follow the first leaf's DA order, columns the second's.
struct CompatibilityTable {
    std::string first;
    std::string second;
    std::vector<std::string> row_das;
    std::vector<std::string> col_das;
    std::vector<std::vector<int>> values;  // 0 forbidden .. 3 best
};

struct MorphHierarchy {
    RootedTree tree;
    std::vector<std::string> names;  // node id -> name
    std::map<std::string, std::vector<DesignAlternative>> alternatives;  // per leaf name
    std::vector<CompatibilityTable> tables;
};

// Throws on broken invariants; returns notes for tables that enumeration ignores.
std::vector<std::string> validate(const MorphHierarchy& h);

// Builds the tree from composite -> parts lists; ids follow first appearance.
MorphHierarchy make_hierarchy(const std::string& root, const std::vector<std::pair<std::string, std::vector<std::string>>>& parts);

std::vector<std::string> leaf_names(const MorphHierarchy& h);

struct Composition {
    std::vector<std::string> picks;  // one DA per leaf, in leaf_names order
    std::vector<int> level_counts;   // index e-1 counts DAs with estimate e
    int min_compatibility = 3;       // over declared leaf pairs; 3 when none apply
};

constexpr std::size_t kMorphEnumerationLimit = 1000000;

// Product order with the last leaf varying fastest. Throws TooManyCombinations.
std::vector<Composition> enumerate_compositions(const MorphHierarchy& h, std::size_t limit = kMorphEnumerationLimit);

// a dominates b: cumulative level counts all >= and min compatibility >=, with one strict.
bool dominates(const Composition& a, const Composition& b);

// Nondominated compositions in input order.
std::vector<Composition> pareto_filter(const std::vector<Composition>& compositions);

}  // namespace hier
