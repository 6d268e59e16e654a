#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hier/core/rational.hpp"

namespace hier {

struct ElementTable {
    std::vector<int> elements;
    std::vector<std::string> attributes;  // column names, may be empty
    std::vector<std::vector<Rational>> values;  // one row per element
};

void validate(const ElementTable& table);

enum class Metric { Euclidean };
enum class AggregationRule { Average, Min, Max };

const char* to_string(AggregationRule rule);
AggregationRule parse_rule(const std::string& text);

struct ClusterConfig {
    Metric metric = Metric::Euclidean;
    AggregationRule rule = AggregationRule::Average;
    std::size_t target_clusters = 1;
    // Stop before merging a pair farther apart than this.
    std::optional<Rational> max_distance;
};

struct MergeStep {
    int index = 0;  // 1-based
    std::vector<int> a;  // sorted members
    std::vector<int> b;
    Rational distance_sq{0};
    std::vector<Rational> proximity;  // ordinal variant only
    std::vector<Rational> merged;     // aggregated estimate of the new cluster
};

struct Dendrogram {
    std::vector<MergeStep> steps;
    std::vector<std::vector<int>> clusters;  // sorted by smallest member
};

using SquaredMatrix = std::vector<std::vector<Rational>>;

// Squared euclidean distances.
SquaredMatrix distance_matrix(const ElementTable& table, Metric metric = Metric::Euclidean);

Rational squared_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

std::vector<Rational> aggregate_pair(const std::vector<Rational>& z1, const std::vector<Rational>& z2,
                                     AggregationRule rule);

Dendrogram agglomerate(const ElementTable& table, const ClusterConfig& config = {});

// Pair proximity is the componentwise |difference| vector; merges a
// Pareto-minimal pair.
Dendrogram agglomerate_ordinal(const ElementTable& table, const ClusterConfig& config = {});

}  // namespace hier
