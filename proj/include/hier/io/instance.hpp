#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hier/clustering/agglomerative.hpp"
#include "hier/condense/condense.hpp"
#include "hier/core/graph.hpp"
#include "hier/knapsack/knapsack.hpp"
#include "hier/modify/modify.hpp"
#include "hier/morpho/morpho.hpp"
#include "hier/multilayer/multilayer.hpp"
#include "hier/spanning/spanning.hpp"

namespace hier {

struct ClusterInstance {
    ElementTable table;
    ClusterConfig config;
    bool ordinal = false;
};

struct GraphInstance {
    Graph graph;
};

struct SitesInstance {
    std::vector<Site> sites;
    int k = 2;
    Scheme scheme = Scheme::Regional;
    std::vector<std::vector<NodeId>> centers;  // explicit centers when nonempty
};

struct TwoLevelInstance {
    std::vector<Site> sites;
    std::set<NodeId> primary;
    Topology topology = Topology::Path;
    TwoLevelConfig config;
};

struct AssignInstance {
    std::vector<UserProfile> users;
    std::vector<AccessPoint> aps;
    std::optional<Rational> L;
};

struct KnapsackInstance {
    std::vector<Item> items;
    Rational budget{0};
};

struct CondenseInstance {
    OverlayTree tree;
    int problem = 1;  // 1: kernel + tail <= b; 2: kernel <= b_minus, tail <= b_plus
    Rational b{0};
    Rational b_minus{0};
    Rational b_plus{0};
};

struct AuxiliaryInstance {
    AuxKind problem = AuxKind::K11;
    AuxInstance instance;
};

using Instance = std::variant<ClusterInstance, GraphInstance, SteinerInstance, SitesInstance, TwoLevelInstance,
                              AssignInstance, KnapsackInstance, ChoiceInstance, CondenseInstance, AuxiliaryInstance,
                              HotlinkInstance, AugmentInstance, RestructureInstance, MorphHierarchy>;

// "cluster", "graph", "steiner", ... matching the "kind" field.
std::string kind_name(const Instance& instance);

// Throws Error(Syntax) for malformed JSON, ValidationError with a field path
// otherwise. When `expected_kind` is given the document must declare it.
Instance parse_instance(std::string_view text, const std::optional<std::string>& expected_kind = std::nullopt);

// Pretty JSON; all scalars that carry weights or costs are decimal strings.
std::string serialize(const Instance& instance);

}  // namespace hier
