#include <algorithm>
#include <functional>

#include "hier/core/algorithms.hpp"
#include "hier/core/error.hpp"
#include "hier/core/union_find.hpp"
#include "hier/multilayer/multilayer.hpp"

namespace hier {

namespace {

using DistFn = std::function<Rational(NodeId, NodeId)>;

Rational tour_length(const std::vector<NodeId>& path, const DistFn& dist) {
    Rational total{0};
    for (std::size_t i = 1; i < path.size(); ++i) total += dist(path[i - 1], path[i]);
    return total;
}

// Nearest neighbour from the smallest id, then 2-opt segment reversals on the open path.
std::vector<NodeId> primary_path(const std::vector<NodeId>& nodes, const DistFn& dist) {
    std::vector<NodeId> path{nodes.front()};
    std::set<NodeId> left(nodes.begin() + 1, nodes.end());
    while (!left.empty()) {
        NodeId cur = path.back();
        NodeId next = *left.begin();
        for (NodeId c : left) {
            if (dist(cur, c) < dist(cur, next)) next = c;
        }
        path.push_back(next);
        left.erase(next);
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < path.size() && !improved; ++i) {
            for (std::size_t j = i + 1; j < path.size() && !improved; ++j) {
                std::vector<NodeId> cand = path;
                std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i), cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                if (tour_length(cand, dist) < tour_length(path, dist)) {
                    path = std::move(cand);
                    improved = true;
                }
            }
        }
    }
    return path;
}

}  // namespace

const char* to_string(Topology topology) {
    switch (topology) {
        case Topology::Path: return "path";
        case Topology::Tree: return "tree";
        case Topology::Ring: return "ring";
    }
    return "path";
}

Topology parse_topology(const std::string& text) {
    if (text == "path") return Topology::Path;
    if (text == "tree") return Topology::Tree;
    if (text == "ring") return Topology::Ring;
    throw ValidationError("topology", "unknown topology '" + text + "'");
}

Graph two_level_design(const std::vector<Site>& sites, const std::set<NodeId>& primary, Topology topology,
                       const TwoLevelConfig& config) {
    if (primary.empty()) throw Error(ErrorKind::EmptyPrimarySet, "primary node set is empty");
    if (config.secondary_mult <= 0 || config.primary_mult <= config.secondary_mult) {
        throw ValidationError("multipliers", "need primary multiplier > secondary multiplier > 0");
    }
    std::map<NodeId, Site> index;
    for (const auto& s : sites) {
        if (!index.emplace(s.id, s).second) throw ValidationError("sites", "duplicate site id " + std::to_string(s.id));
    }
    for (NodeId p : primary) {
        if (!index.count(p)) throw ValidationError("primary", "unknown site " + std::to_string(p));
    }
    DistFn dist = [&](NodeId a, NodeId b) { return site_distance(index.at(a), index.at(b)); };

    std::vector<NodeId> all;
    for (const auto& [id, _] : index) all.push_back(id);
    Graph g(all);
    for (NodeId id : all) g.set_attrs(id, {{"level", primary.count(id) ? "primary" : "secondary"}});

    std::vector<NodeId> prim(primary.begin(), primary.end());
    auto add_primary = [&](NodeId a, NodeId b) { g.add_edge(a, b, config.primary_mult * dist(a, b)); };
    if (topology == Topology::Tree) {
        Graph complete(prim);
        for (std::size_t i = 0; i < prim.size(); ++i) {
            for (std::size_t j = i + 1; j < prim.size(); ++j) complete.add_edge(prim[i], prim[j], dist(prim[i], prim[j]));
        }
        for (const auto& e : mst(complete).edges) add_primary(e.u, e.v);
    } else {
        auto path = primary_path(prim, dist);
        for (std::size_t i = 1; i < path.size(); ++i) add_primary(path[i - 1], path[i]);
        if (topology == Topology::Ring && path.size() >= 3) add_primary(path.back(), path.front());
    }

    // Secondary MST with all primaries contracted into one super node.
    std::vector<NodeId> second;
    for (NodeId id : all) {
        if (!primary.count(id)) second.push_back(id);
    }
    struct Cand {
        Rational w;
        NodeId a, b;  // b is the real endpoint (a primary for super edges)
        bool super;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < second.size(); ++i) {
        for (std::size_t j = i + 1; j < second.size(); ++j) {
            cands.push_back({dist(second[i], second[j]), second[i], second[j], false});
        }
        NodeId near = prim.front();
        for (NodeId p : prim) {
            if (dist(second[i], p) < dist(second[i], near)) near = p;
        }
        cands.push_back({dist(second[i], near), second[i], near, true});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.w != y.w) return x.w < y.w;
        return std::make_pair(std::min(x.a, x.b), std::max(x.a, x.b)) < std::make_pair(std::min(y.a, y.b), std::max(y.a, y.b));
    });
    std::map<NodeId, std::size_t> idx;
    for (std::size_t i = 0; i < second.size(); ++i) idx[second[i]] = i;
    std::size_t super = second.size();
    UnionFind uf(second.size() + 1);
    for (const auto& c : cands) {
        std::size_t tb = c.super ? super : idx[c.b];
        if (uf.unite(idx[c.a], tb)) g.add_edge(c.a, c.b, config.secondary_mult * c.w);
    }
    return g;
}

}  // namespace hier
