#include "hier/clustering/agglomerative.hpp"

#include <algorithm>
#include <set>

#include "hier/core/error.hpp"

namespace hier {

namespace {

struct Live {
    std::vector<int> members;  // sorted
    std::vector<Rational> z;
};

std::pair<int, int> tie_key(const Live& a, const Live& b) {
    int x = a.members.front(), y = b.members.front();
    return {std::min(x, y), std::max(x, y)};
}

std::vector<Live> initial(const ElementTable& table) {
    validate(table);
    std::vector<Live> live;
    for (std::size_t i = 0; i < table.elements.size(); ++i) {
        live.push_back({{table.elements[i]}, table.values[i]});
    }
    return live;
}

std::vector<Rational> abs_diff(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> d(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
    return d;
}

bool dominates(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    bool strict = false;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] > q[j]) return false;
        if (p[j] < q[j]) strict = true;
    }
    return strict;
}

void record_merge(std::vector<Live>& live, Dendrogram& out, std::size_t i, std::size_t j,
                  const ClusterConfig& config, std::vector<Rational> proximity) {
    MergeStep step;
    step.index = static_cast<int>(out.steps.size()) + 1;
    const Live& a = live[i].members.front() < live[j].members.front() ? live[i] : live[j];
    const Live& b = &a == &live[i] ? live[j] : live[i];
    step.a = a.members;
    step.b = b.members;
    step.distance_sq = squared_distance(a.z, b.z);
    step.proximity = std::move(proximity);
    Live merged;
    merged.members = a.members;
    merged.members.insert(merged.members.end(), b.members.begin(), b.members.end());
    std::sort(merged.members.begin(), merged.members.end());
    merged.z = aggregate_pair(a.z, b.z, config.rule);
    step.merged = merged.z;
    out.steps.push_back(std::move(step));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    live.push_back(std::move(merged));
}

void finish(const std::vector<Live>& live, Dendrogram& out) {
    for (const auto& c : live) out.clusters.push_back(c.members);
    std::sort(out.clusters.begin(), out.clusters.end());
}

bool beyond_limit(const ClusterConfig& config, const Rational& d2) {
    return config.max_distance && d2 > *config.max_distance * *config.max_distance;
}

}  // namespace

void validate(const ElementTable& table) {
    if (table.elements.empty()) throw ValidationError("elements", "table needs at least one element");
    if (table.values.size() != table.elements.size()) {
        throw ValidationError("attrs", "row count does not match element count");
    }
    std::size_t m = table.values.front().size();
    if (m == 0) throw ValidationError("attrs[0]", "table needs at least one attribute");
    if (!table.attributes.empty() && table.attributes.size() != m) {
        throw ValidationError("attributes", "column name count does not match attribute count");
    }
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        if (table.values[i].size() != m) {
            throw ValidationError("attrs[" + std::to_string(i) + "]", "table is not rectangular");
        }
    }
    std::set<int> ids(table.elements.begin(), table.elements.end());
    if (ids.size() != table.elements.size()) throw ValidationError("elements", "duplicate element id");
}

const char* to_string(AggregationRule rule) {
    switch (rule) {
        case AggregationRule::Average: return "average";
        case AggregationRule::Min: return "min";
        case AggregationRule::Max: return "max";
    }
    return "average";
}

AggregationRule parse_rule(const std::string& text) {
    if (text == "average") return AggregationRule::Average;
    if (text == "min") return AggregationRule::Min;
    if (text == "max") return AggregationRule::Max;
    throw ValidationError("config.rule", "unknown aggregation rule '" + text + "'");
}

Rational squared_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "estimate vectors differ in length");
    Rational sum{0};
    for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
    return sum;
}

SquaredMatrix distance_matrix(const ElementTable& table, Metric) {
    validate(table);
    std::size_t n = table.values.size();
    SquaredMatrix d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = squared_distance(table.values[i], table.values[j]);
        }
    }
    return d;
}

std::vector<Rational> aggregate_pair(const std::vector<Rational>& z1, const std::vector<Rational>& z2,
                                     AggregationRule rule) {
    if (z1.size() != z2.size()) throw Error(ErrorKind::LengthMismatch, "estimate vectors differ in length");
    std::vector<Rational> out(z1.size());
    for (std::size_t j = 0; j < z1.size(); ++j) {
        switch (rule) {
            case AggregationRule::Average: out[j] = (z1[j] + z2[j]) / 2; break;
            case AggregationRule::Min: out[j] = std::min(z1[j], z2[j]); break;
            case AggregationRule::Max: out[j] = std::max(z1[j], z2[j]); break;
        }
    }
    return out;
}

Dendrogram agglomerate(const ElementTable& table, const ClusterConfig& config) {
    auto live = initial(table);
    Dendrogram out;
    std::size_t target = std::max<std::size_t>(config.target_clusters, 1);
    while (live.size() > target) {
        std::size_t bi = 0, bj = 0;
        std::optional<Rational> best;
        std::pair<int, int> best_key;
        for (std::size_t i = 0; i < live.size(); ++i) {
            for (std::size_t j = i + 1; j < live.size(); ++j) {
                Rational d2 = squared_distance(live[i].z, live[j].z);
                auto key = tie_key(live[i], live[j]);
                if (!best || d2 < *best || (d2 == *best && key < best_key)) {
                    best = d2;
                    best_key = key;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (beyond_limit(config, *best)) break;
        record_merge(live, out, bi, bj, config, {});
    }
    finish(live, out);
    return out;
}

Dendrogram agglomerate_ordinal(const ElementTable& table, const ClusterConfig& config) {
    auto live = initial(table);
    Dendrogram out;
    std::size_t target = std::max<std::size_t>(config.target_clusters, 1);
    while (live.size() > target) {
        struct Pair {
            std::size_t i, j;
            std::vector<Rational> prox;
            std::pair<int, int> key;
        };
        std::vector<Pair> pairs;
        for (std::size_t i = 0; i < live.size(); ++i) {
            for (std::size_t j = i + 1; j < live.size(); ++j) {
                pairs.push_back({i, j, abs_diff(live[i].z, live[j].z), tie_key(live[i], live[j])});
            }
        }
        const Pair* chosen = nullptr;
        for (const auto& p : pairs) {
            bool minimal = std::none_of(pairs.begin(), pairs.end(),
                                        [&](const Pair& q) { return dominates(q.prox, p.prox); });
            if (minimal && (!chosen || p.key < chosen->key)) chosen = &p;
        }
        if (beyond_limit(config, squared_distance(live[chosen->i].z, live[chosen->j].z))) break;
        record_merge(live, out, chosen->i, chosen->j, config, chosen->prox);
    }
    finish(live, out);
    return out;
}

}  // namespace hier
