#include <algorithm>
#include <set>
#include <tuple>

#include "hier/core/error.hpp"
#include "hier/multilayer/multilayer.hpp"

namespace hier {

namespace {

bool dominates(const PairEstimate& a, const PairEstimate& b) {
    if (a.reliability < b.reliability || a.bandwidth < b.bandwidth || a.priority > b.priority) return false;
    return a.reliability > b.reliability || a.bandwidth > b.bandwidth || a.priority < b.priority;
}

bool within(const Site& a, const Site& b, const std::optional<Rational>& L) {
    return !L || squared_distance(a, b) <= *L * *L;
}

}  // namespace

std::vector<std::string> validate(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps) {
    std::vector<std::string> warnings;
    std::set<NodeId> ids;
    for (std::size_t i = 0; i < users.size(); ++i) {
        const auto& u = users[i];
        std::string where = "users[" + std::to_string(i) + "]";
        if (!ids.insert(u.site.id).second) throw ValidationError(where, "duplicate user id " + std::to_string(u.site.id));
        if (u.bandwidth <= 0) throw ValidationError(where + ".f", "bandwidth must be positive");
        if (u.priority < 1 || u.priority > 3) throw ValidationError(where + ".p", "priority must be 1, 2 or 3");
        if (u.reliability < 1) throw ValidationError(where + ".r", "reliability must be at least 1");
        if (u.bandwidth > 10) warnings.push_back(where + ".f: " + to_string(u.bandwidth) + " exceeds the 1..10 scale");
        if (u.reliability > 10) warnings.push_back(where + ".r: " + to_string(u.reliability) + " exceeds the 1..10 scale");
        if (u.site.z <= 0) warnings.push_back(where + ".z: nonpositive height " + to_string(u.site.z));
    }
    ids.clear();
    for (std::size_t j = 0; j < aps.size(); ++j) {
        const auto& a = aps[j];
        std::string where = "aps[" + std::to_string(j) + "]";
        if (!ids.insert(a.site.id).second) throw ValidationError(where, "duplicate access point id " + std::to_string(a.site.id));
        if (a.bandwidth <= 0) throw ValidationError(where + ".f", "bandwidth must be positive");
        if (a.max_users < 1) throw ValidationError(where + ".n", "user capacity must be at least 1");
    }
    return warnings;
}

std::vector<NodeId> feasible_access_points(const UserProfile& user, const std::vector<AccessPoint>& aps,
                                           const std::optional<Rational>& L) {
    if (L && *L <= 0) throw ValidationError("L", "distance limit must be positive");
    std::vector<NodeId> out;
    for (const auto& ap : aps) {
        if (within(user.site, ap.site, L)) out.push_back(ap.site.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PairEstimate pair_estimate(const UserProfile& user, const AccessPoint& ap) {
    return {std::min(user.reliability, ap.reliability), user.bandwidth, user.priority};
}

std::vector<int> rank_pairs(const std::vector<PairEstimate>& pairs) {
    std::vector<int> rank(pairs.size(), 0);
    std::size_t left = pairs.size();
    for (int layer = 1; left > 0; ++layer) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (rank[i]) continue;
            bool beaten = false;
            for (std::size_t j = 0; j < pairs.size() && !beaten; ++j) {
                beaten = !rank[j] && dominates(pairs[j], pairs[i]);
            }
            if (!beaten) front.push_back(i);
        }
        for (std::size_t i : front) rank[i] = layer;
        left -= front.size();
    }
    return rank;
}

std::vector<RankedPair> ranked_pairs(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps,
                                     const std::optional<Rational>& L, int* layers) {
    std::map<NodeId, const AccessPoint*> by_id;
    for (const auto& ap : aps) by_id[ap.site.id] = &ap;
    std::vector<RankedPair> out;
    std::vector<PairEstimate> est;
    for (const auto& u : users) {
        for (NodeId j : feasible_access_points(u, aps, L)) {
            out.push_back({u.site.id, j, 0});
            est.push_back(pair_estimate(u, *by_id[j]));
        }
    }
    auto rank = rank_pairs(est);
    int deepest = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].rank = rank[i];
        deepest = std::max(deepest, rank[i]);
    }
    if (layers) *layers = deepest;
    std::sort(out.begin(), out.end(), [](const RankedPair& a, const RankedPair& b) {
        return std::tie(a.rank, a.user, a.ap) < std::tie(b.rank, b.user, b.ap);
    });
    return out;
}

Assignment assign_users_greedy(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps,
                               const std::optional<Rational>& L) {
    validate(users, aps);
    int layers = 0;
    auto pairs = ranked_pairs(users, aps, L, &layers);
    std::map<NodeId, const UserProfile*> user_by_id;
    for (const auto& u : users) user_by_id[u.site.id] = &u;
    std::map<NodeId, const AccessPoint*> ap_by_id;
    Assignment a;
    for (const auto& ap : aps) {
        ap_by_id[ap.site.id] = &ap;
        a.loads[ap.site.id] = {};
    }
    for (const auto& p : pairs) {
        if (a.user_to_ap.count(p.user)) continue;
        const auto& ap = *ap_by_id[p.ap];
        auto& load = a.loads[p.ap];
        Rational need = user_by_id[p.user]->bandwidth;
        if (load.users + 1 > ap.max_users || load.bandwidth + need > ap.bandwidth) continue;
        a.user_to_ap[p.user] = p.ap;
        load.users += 1;
        load.bandwidth += need;
        a.objective += layers + 1 - p.rank;
    }
    return a;
}

std::string check_assignment(const Assignment& a, const std::vector<UserProfile>& users,
                             const std::vector<AccessPoint>& aps, const std::optional<Rational>& L) {
    std::map<NodeId, const UserProfile*> user_by_id;
    for (const auto& u : users) user_by_id[u.site.id] = &u;
    std::map<NodeId, ApLoad> loads;
    for (const auto& ap : aps) loads[ap.site.id] = {};
    for (const auto& [u, j] : a.user_to_ap) {
        if (!user_by_id.count(u)) return "unknown user " + std::to_string(u);
        if (!loads.count(j)) return "unknown access point " + std::to_string(j);
        const AccessPoint* ap = nullptr;
        for (const auto& x : aps) {
            if (x.site.id == j) ap = &x;
        }
        if (!within(user_by_id[u]->site, ap->site, L)) return "user " + std::to_string(u) + " is out of range";
        loads[j].users += 1;
        loads[j].bandwidth += user_by_id[u]->bandwidth;
    }
    for (const auto& ap : aps) {
        const auto& l = loads[ap.site.id];
        if (l.users > ap.max_users) return "access point " + std::to_string(ap.site.id) + " over user capacity";
        if (l.bandwidth > ap.bandwidth) return "access point " + std::to_string(ap.site.id) + " over bandwidth";
        auto it = a.loads.find(ap.site.id);
        if (it == a.loads.end() || it->second.users != l.users || it->second.bandwidth != l.bandwidth) {
            return "stored load summary for " + std::to_string(ap.site.id) + " is stale";
        }
    }
    return {};
}

}  // namespace hier
