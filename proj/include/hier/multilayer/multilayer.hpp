#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hier/core/graph.hpp"
#include "hier/core/rational.hpp"

namespace hier {

struct Site {
    NodeId id = 0;
    Rational x{0};
    Rational y{0};
    Rational z{0};
};

Rational squared_distance(const Site& a, const Site& b);
// Euclidean length rounded to micro-units.
Rational site_distance(const Site& a, const Site& b);

struct UserProfile {
    Site site;
    Rational bandwidth{1};  // f_i
    int priority = 1;       // p_i, 1 is most urgent
    Rational reliability{1};
};

struct AccessPoint {
    Site site;
    Rational bandwidth{1};  // f_j
    int max_users = 1;      // n_j
    Rational reliability{1};
};

// Out-of-scale values produce warnings rather than errors.
std::vector<std::string> validate(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps);

enum class Scheme { Regional, Distributed };
const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct LayeredNetwork {
    int k = 0;
    std::vector<std::vector<NodeId>> centers;  // each sorted, size k+1
    std::vector<NodeId> users;                 // sorted
    std::vector<NodeId> backbone;              // users wired to distinct members of every center
    Graph graph;
    std::map<NodeId, std::string> layer;       // "center", "access" or "user"
};

// Empty string when the structural invariants hold, otherwise the first violation.
std::string check_layered(const LayeredNetwork& net);

LayeredNetwork build_k_connected(const std::vector<Site>& sites, int k, Scheme scheme, std::uint64_t seed);

// Wires users to explicitly chosen centers.
LayeredNetwork build_with_centers(const std::vector<Site>& sites, int k,
                                  const std::vector<std::vector<NodeId>>& centers);

enum class Topology { Path, Tree, Ring };
const char* to_string(Topology topology);
Topology parse_topology(const std::string& text);

struct TwoLevelConfig {
    Rational primary_mult{2};
    Rational secondary_mult{1};
};

// Node attr "level" is "primary" or "secondary"; edge attr encoded in weight only.
Graph two_level_design(const std::vector<Site>& sites, const std::set<NodeId>& primary, Topology topology,
                       const TwoLevelConfig& config = {});

// Theta_i: APs within distance L (nullopt means unbounded).
std::vector<NodeId> feasible_access_points(const UserProfile& user, const std::vector<AccessPoint>& aps,
                                           const std::optional<Rational>& L);

struct PairEstimate {
    Rational reliability{0};  // maximize
    Rational bandwidth{0};    // maximize
    int priority = 1;         // minimize
};

PairEstimate pair_estimate(const UserProfile& user, const AccessPoint& ap);

// Pareto layer index per pair, starting at 1.
std::vector<int> rank_pairs(const std::vector<PairEstimate>& pairs);

struct ApLoad {
    int users = 0;
    Rational bandwidth{0};
};

struct Assignment {
    std::map<NodeId, NodeId> user_to_ap;
    std::map<NodeId, ApLoad> loads;  // every AP listed
    Rational objective{0};           // sum of (layers + 1 - rank) over assigned pairs
};

struct RankedPair {
    NodeId user = 0;
    NodeId ap = 0;
    int rank = 1;
};

// All feasible pairs with their Pareto ranks; `layers` receives the layer count.
std::vector<RankedPair> ranked_pairs(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps,
                                     const std::optional<Rational>& L, int* layers = nullptr);

Assignment assign_users_greedy(const std::vector<UserProfile>& users, const std::vector<AccessPoint>& aps,
                               const std::optional<Rational>& L);

// Empty string when capacities and distances are respected.
std::string check_assignment(const Assignment& a, const std::vector<UserProfile>& users,
                             const std::vector<AccessPoint>& aps, const std::optional<Rational>& L);

}  // namespace hier
