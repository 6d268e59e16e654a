#include <algorithm>
#include <numeric>
#include <random>

#include "hier/clustering/agglomerative.hpp"
#include "hier/core/error.hpp"
#include "hier/multilayer/multilayer.hpp"

namespace hier {

namespace {

constexpr int kBruteForceBackbone = 7;

std::map<NodeId, Site> index_sites(const std::vector<Site>& sites) {
    std::map<NodeId, Site> out;
    for (const auto& s : sites) {
        if (!out.emplace(s.id, s).second) throw ValidationError("sites", "duplicate site id " + std::to_string(s.id));
    }
    return out;
}

// Sites sorted by total distance to all others, most central first.
std::vector<NodeId> by_centrality(const std::vector<NodeId>& ids, const std::map<NodeId, Site>& sites) {
    std::map<NodeId, Rational> total;
    for (NodeId a : ids) {
        Rational t{0};
        for (const auto& [b, s] : sites) t += site_distance(sites.at(a), s);
        total[a] = t;
    }
    std::vector<NodeId> out = ids;
    std::stable_sort(out.begin(), out.end(), [&](NodeId a, NodeId b) { return total[a] < total[b]; });
    return out;
}

ElementTable coordinate_table(const std::vector<NodeId>& ids, const std::map<NodeId, Site>& sites) {
    ElementTable t;
    t.attributes = {"x", "y", "z"};
    for (NodeId id : ids) {
        const Site& s = sites.at(id);
        t.elements.push_back(id);
        t.values.push_back({s.x, s.y, s.z});
    }
    return t;
}

// Left-to-right leaf order of the full merge tree.
std::vector<NodeId> dendrogram_order(const std::vector<NodeId>& ids, const Dendrogram& d) {
    std::map<int, std::vector<NodeId>> order;
    for (NodeId id : ids) order[id] = {id};
    for (const auto& step : d.steps) {
        int ka = step.a.front(), kb = step.b.front();
        std::vector<NodeId> joined = order[ka];
        joined.insert(joined.end(), order[kb].begin(), order[kb].end());
        order.erase(ka);
        order.erase(kb);
        order[std::min(ka, kb)] = std::move(joined);
    }
    std::vector<NodeId> out;
    for (auto& [_, seq] : order) out.insert(out.end(), seq.begin(), seq.end());
    return out;
}

std::vector<NodeId> nearest_first(NodeId user, const std::vector<NodeId>& members, const std::map<NodeId, Site>& sites) {
    std::vector<NodeId> out = members;
    std::stable_sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        return squared_distance(sites.at(user), sites.at(a)) < squared_distance(sites.at(user), sites.at(b));
    });
    return out;
}

// Injective map backbone[i] -> member of the center, minimizing total length.
std::vector<NodeId> spread_backbone(const std::vector<NodeId>& backbone, const std::vector<NodeId>& members,
                                    const std::map<NodeId, Site>& sites) {
    std::size_t k = backbone.size();
    if (static_cast<int>(k) <= kBruteForceBackbone) {
        std::vector<std::size_t> perm(members.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::optional<Rational> best;
        std::vector<NodeId> best_map;
        // members.size() == k + 1, so every permutation has a distinct head.
        do {
            std::vector<std::size_t> head(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
            Rational cost{0};
            for (std::size_t i = 0; i < k; ++i) cost += site_distance(sites.at(backbone[i]), sites.at(members[head[i]]));
            if (!best || cost < *best) {
                best = cost;
                best_map.clear();
                for (std::size_t i : head) best_map.push_back(members[i]);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best_map;
    }
    std::vector<NodeId> out;
    std::set<NodeId> used;
    for (NodeId b : backbone) {
        for (NodeId m : nearest_first(b, members, sites)) {
            if (used.insert(m).second) {
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

void require_site_count(std::size_t n, int k) {
    if (k < 1) throw ValidationError("k", "k must be positive");
    std::size_t need = static_cast<std::size_t>(k) * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(k);
    if (n < need) {
        throw Error(ErrorKind::TooFewSites,
                    "need at least " + std::to_string(need) + " sites for k=" + std::to_string(k) + ", got " + std::to_string(n));
    }
}

std::vector<std::vector<NodeId>> regional_centers(const std::map<NodeId, Site>& sites, int k) {
    std::vector<NodeId> ids;
    for (const auto& [id, _] : sites) ids.push_back(id);
    auto ranked = by_centrality(ids, sites);
    std::size_t size = static_cast<std::size_t>(k) + 1;
    std::vector<NodeId> cand(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(size * static_cast<std::size_t>(k)));
    std::sort(cand.begin(), cand.end());
    auto d = agglomerate(coordinate_table(cand, sites), ClusterConfig{});
    auto order = dendrogram_order(cand, d);
    std::vector<std::vector<NodeId>> centers;
    for (int t = 0; t < k; ++t) {
        auto first = order.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(t) * size);
        centers.emplace_back(first, first + static_cast<std::ptrdiff_t>(size));
    }
    return centers;
}

std::vector<std::vector<NodeId>> distributed_centers(const std::map<NodeId, Site>& sites, int k, std::uint64_t seed) {
    std::vector<NodeId> ids;
    for (const auto& [id, _] : sites) ids.push_back(id);
    ClusterConfig cfg;
    cfg.target_clusters = static_cast<std::size_t>(k) + 1;
    auto clusters = agglomerate(coordinate_table(ids, sites), cfg).clusters;

    // Every cluster must be able to contribute k distinct members.
    auto centroid_gap = [&](const std::vector<NodeId>& cluster, NodeId id) {
        Rational cx{0}, cy{0}, cz{0};
        for (NodeId m : cluster) {
            cx += sites.at(m).x;
            cy += sites.at(m).y;
            cz += sites.at(m).z;
        }
        Rational n(static_cast<std::int64_t>(cluster.size()));
        Site c{0, cx / n, cy / n, cz / n};
        return squared_distance(c, sites.at(id));
    };
    std::size_t ku = static_cast<std::size_t>(k);
    for (auto& small : clusters) {
        while (small.size() < ku) {
            std::vector<NodeId>* donor = nullptr;
            NodeId pick = 0;
            std::optional<Rational> best;
            for (auto& other : clusters) {
                if (&other == &small || other.size() <= ku) continue;
                for (NodeId id : other) {
                    Rational gap = centroid_gap(small, id);
                    if (!best || gap < *best || (gap == *best && id < pick)) {
                        best = gap;
                        pick = id;
                        donor = &other;
                    }
                }
            }
            donor->erase(std::find(donor->begin(), donor->end(), pick));
            small.insert(std::lower_bound(small.begin(), small.end(), pick), pick);
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<NodeId>> centers(ku);
    for (auto& cluster : clusters) {
        std::vector<NodeId> pool = cluster;
        for (std::size_t i = pool.size(); i > 1; --i) {
            std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng() % i)]);
        }
        for (std::size_t t = 0; t < ku; ++t) centers[t].push_back(pool[t]);
    }
    for (auto& c : centers) std::sort(c.begin(), c.end());
    return centers;
}

}  // namespace

Rational squared_distance(const Site& a, const Site& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z);
}

Rational site_distance(const Site& a, const Site& b) {
    return rounded_sqrt(squared_distance(a, b));
}

const char* to_string(Scheme scheme) {
    return scheme == Scheme::Regional ? "regional" : "distributed";
}

Scheme parse_scheme(const std::string& text) {
    if (text == "regional") return Scheme::Regional;
    if (text == "distributed") return Scheme::Distributed;
    throw ValidationError("scheme", "unknown scheme '" + text + "'");
}

LayeredNetwork build_with_centers(const std::vector<Site>& sites, int k, const std::vector<std::vector<NodeId>>& centers) {
    auto index = index_sites(sites);
    require_site_count(index.size(), k);
    if (centers.size() != static_cast<std::size_t>(k)) {
        throw ValidationError("centers", "expected " + std::to_string(k) + " centers");
    }
    LayeredNetwork net;
    net.k = k;
    std::set<NodeId> in_center;
    for (std::size_t t = 0; t < centers.size(); ++t) {
        std::vector<NodeId> c = centers[t];
        std::sort(c.begin(), c.end());
        std::string where = "centers[" + std::to_string(t) + "]";
        if (c.size() != static_cast<std::size_t>(k) + 1) throw ValidationError(where, "center must have k+1 members");
        for (NodeId id : c) {
            if (!index.count(id)) throw ValidationError(where, "unknown site " + std::to_string(id));
            if (!in_center.insert(id).second) throw ValidationError(where, "site " + std::to_string(id) + " used twice");
        }
        net.centers.push_back(std::move(c));
    }

    std::vector<NodeId> all;
    for (const auto& [id, _] : index) all.push_back(id);
    net.graph = Graph(all);
    for (NodeId id : all) {
        if (!in_center.count(id)) net.users.push_back(id);
    }
    auto central = by_centrality(net.users, index);
    net.backbone.assign(central.begin(), central.begin() + k);
    std::sort(net.backbone.begin(), net.backbone.end());

    for (const auto& c : net.centers) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                net.graph.add_edge(c[i], c[j], site_distance(index.at(c[i]), index.at(c[j])));
            }
            net.layer[c[i]] = "center";
        }
    }
    std::set<NodeId> backbone(net.backbone.begin(), net.backbone.end());
    for (const auto& c : net.centers) {
        auto spread = spread_backbone(net.backbone, c, index);
        for (std::size_t i = 0; i < net.backbone.size(); ++i) {
            net.graph.add_edge(net.backbone[i], spread[i], site_distance(index.at(net.backbone[i]), index.at(spread[i])));
        }
        for (NodeId u : net.users) {
            if (backbone.count(u)) continue;
            NodeId m = nearest_first(u, c, index).front();
            net.graph.add_edge(u, m, site_distance(index.at(u), index.at(m)));
        }
    }
    for (NodeId u : net.users) net.layer[u] = backbone.count(u) ? "access" : "user";
    return net;
}

LayeredNetwork build_k_connected(const std::vector<Site>& sites, int k, Scheme scheme, std::uint64_t seed) {
    auto index = index_sites(sites);
    if (k < 2) throw ValidationError("k", "k must be at least 2");
    require_site_count(index.size(), k);
    auto centers = scheme == Scheme::Regional ? regional_centers(index, k) : distributed_centers(index, k, seed);
    return build_with_centers(sites, k, centers);
}

std::string check_layered(const LayeredNetwork& net) {
    std::set<NodeId> seen;
    for (const auto& c : net.centers) {
        if (c.size() != static_cast<std::size_t>(net.k) + 1) return "center size differs from k+1";
        for (NodeId a : c) {
            if (!seen.insert(a).second) return "centers overlap at " + std::to_string(a);
            for (NodeId b : c) {
                if (a < b && !net.graph.has_edge(a, b)) return "center is not a clique";
            }
        }
    }
    if (net.users.size() < static_cast<std::size_t>(net.k)) return "fewer than k users";
    for (NodeId u : net.users) {
        if (seen.count(u)) return "user " + std::to_string(u) + " is also a center member";
        for (const auto& c : net.centers) {
            int hits = 0;
            for (NodeId m : c) hits += net.graph.has_edge(u, m) ? 1 : 0;
            if (hits != 1) return "user " + std::to_string(u) + " has " + std::to_string(hits) + " edges into a center";
        }
        for (NodeId nb : net.graph.neighbors(u)) {
            if (!seen.count(nb)) return "user-user edge at " + std::to_string(u);
        }
    }
    if (seen.size() + net.users.size() != net.graph.node_count()) return "node partition mismatch";
    return {};
}

}  // namespace hier
