#include <json.hpp>

#include "hier/core/error.hpp"
#include "hier/io/instance.hpp"

namespace hier {

namespace {

using Json = nlohmann::ordered_json;

// ---- reading ----

class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const Json& json() const { return j_; }

    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

    Reader at(const std::string& key) const {
        if (!j_.is_object()) throw ValidationError(path_, "expected an object");
        if (!j_.contains(key)) throw ValidationError(join(key), "missing field");
        return {j_.at(key), join(key)};
    }

    Reader at(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

    std::vector<Reader> items() const {
        if (!j_.is_array()) throw ValidationError(path_, "expected an array");
        std::vector<Reader> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(at(i));
        return out;
    }

    // Object members in document order.
    std::vector<std::pair<std::string, Reader>> members() const {
        if (!j_.is_object()) throw ValidationError(path_, "expected an object");
        std::vector<std::pair<std::string, Reader>> out;
        for (auto it = j_.begin(); it != j_.end(); ++it) out.emplace_back(it.key(), Reader(it.value(), join(it.key())));
        return out;
    }

    Rational rational() const {
        if (j_.is_number_integer()) return Rational(j_.get<std::int64_t>());
        if (j_.is_string()) {
            try {
                return parse_rational(j_.get<std::string>());
            } catch (const Error& e) {
                throw ValidationError(path_, e.what());
            }
        }
        if (j_.is_number_float()) throw ValidationError(path_, "write fractional numbers as decimal strings");
        throw ValidationError(path_, "expected a number or decimal string");
    }

    std::int64_t integer() const {
        if (j_.is_number_integer()) return j_.get<std::int64_t>();
        if (j_.is_string()) {
            Rational r = rational();
            if (r.denominator() == 1) return r.numerator();
        }
        throw ValidationError(path_, "expected an integer");
    }

    int small_int() const {
        auto v = integer();
        if (v < INT32_MIN || v > INT32_MAX) throw ValidationError(path_, "integer out of range");
        return static_cast<int>(v);
    }

    std::string string() const {
        if (!j_.is_string()) throw ValidationError(path_, "expected a string");
        return j_.get<std::string>();
    }

    bool boolean() const {
        if (!j_.is_boolean()) throw ValidationError(path_, "expected true or false");
        return j_.get<bool>();
    }

    std::vector<NodeId> ids() const {
        std::vector<NodeId> out;
        for (const auto& r : items()) out.push_back(r.small_int());
        return out;
    }

    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (const auto& r : items()) out.push_back(r.string());
        return out;
    }

    // Rethrows library validation errors under this reader's path.
    template <typename F>
    auto guard(F&& f) const {
        try {
            return f();
        } catch (const ValidationError& e) {
            throw ValidationError(e.path().empty() ? path_ : join(e.path()), strip(e));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Syntax) throw ValidationError(path_, e.what());
            throw;
        }
    }

    // Parses a scalar field; any failure is reported at this field's path.
    template <typename F>
    auto field(F&& f) const {
        try {
            return f();
        } catch (const ValidationError& e) {
            throw ValidationError(path_, strip(e));
        } catch (const Error& e) {
            throw ValidationError(path_, e.what());
        }
    }

private:
    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    static std::string strip(const ValidationError& e) {
        std::string msg = e.what();
        std::string prefix = e.path() + ": ";
        return !e.path().empty() && msg.rfind(prefix, 0) == 0 ? msg.substr(prefix.size()) : msg;
    }

    const Json& j_;
    std::string path_;
};

std::optional<Rational> optional_rational(const Reader& r, const std::string& key) {
    if (!r.has(key) || r.json().at(key).is_null()) return std::nullopt;
    return r.at(key).rational();
}

Graph read_graph(const Reader& r) {
    Graph g;
    auto nodes = r.at("nodes");
    for (const auto& n : nodes.items()) {
        NodeId id = n.small_int();
        if (g.has_node(id)) throw ValidationError(n.path(), "duplicate node " + std::to_string(id));
        g.add_node(id);
    }
    if (r.has("edges")) {
        for (const auto& e : r.at("edges").items()) {
            if (!e.json().is_array() || e.json().size() != 3) throw ValidationError(e.path(), "edge must be [u, v, weight]");
            NodeId u = e.at(0).small_int();
            NodeId v = e.at(1).small_int();
            Rational w = e.at(2).rational();
            e.field([&] {
                g.add_edge(u, v, w);
                return 0;
            });
        }
    }
    if (r.has("node_attrs")) {
        for (const auto& [key, attrs] : r.at("node_attrs").members()) {
            NodeId id = 0;
            try {
                id = std::stoi(key);
            } catch (const std::exception&) {
                throw ValidationError(attrs.path(), "node_attrs keys must be node ids");
            }
            if (!g.has_node(id)) throw ValidationError(attrs.path(), "unknown node");
            NodeAttrs a;
            for (const auto& [k, v] : attrs.members()) a[k] = v.string();
            g.set_attrs(id, std::move(a));
        }
    }
    return g;
}

Site read_site(const Reader& r) {
    Site s;
    s.id = r.at("id").small_int();
    s.x = r.at("x").rational();
    s.y = r.at("y").rational();
    s.z = r.has("z") ? r.at("z").rational() : Rational(0);
    return s;
}

std::vector<Site> read_sites(const Reader& r) {
    std::vector<Site> out;
    std::set<NodeId> ids;
    for (const auto& s : r.items()) {
        out.push_back(read_site(s));
        if (!ids.insert(out.back().id).second) throw ValidationError(s.path() + ".id", "duplicate site id");
    }
    return out;
}

// Tree nodes: [{"id": 0, "ram": "3"}, {"id": 1, "parent": 0, "ram": "2", "freq": "5"}].
RootedTree read_tree(const Reader& r, const char* node_key, const char* arc_key) {
    std::optional<NodeId> root;
    std::map<NodeId, NodeId> parent;
    std::map<NodeId, Rational> node_w;
    std::map<NodeId, Rational> arc_w;
    std::set<NodeId> seen;
    for (const auto& n : r.at("nodes").items()) {
        NodeId id = n.at("id").small_int();
        if (!seen.insert(id).second) throw ValidationError(n.path() + ".id", "duplicate node " + std::to_string(id));
        if (n.has("parent") && !n.json().at("parent").is_null()) {
            parent[id] = n.at("parent").small_int();
            if (arc_key && n.has(arc_key)) arc_w[id] = n.at(arc_key).rational();
        } else {
            if (root) throw ValidationError(n.path(), "second root; only one node may omit its parent");
            root = id;
        }
        if (node_key && n.has(node_key)) node_w[id] = n.at(node_key).rational();
    }
    if (!root) throw ValidationError(r.path() + ".nodes", "no root node");
    RootedTree t = r.guard([&] {
        try {
            return RootedTree::from_parents(*root, parent);
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError("nodes", e.what());
        }
    });
    for (const auto& [id, w] : node_w) t.set_node_weight(id, w);
    for (const auto& [id, w] : arc_w) t.set_arc_weight(id, w);
    return t;
}

std::vector<Item> read_items(const Reader& r) {
    std::vector<Item> out;
    for (const auto& it : r.items()) out.push_back({it.at("id").string(), it.at("profit").rational(), it.at("weight").rational()});
    return out;
}

ChoiceInstance read_choice(const Reader& r) {
    ChoiceInstance ci;
    for (const auto& g : r.at("groups").items()) {
        std::vector<ChoiceOption> group;
        for (const auto& o : g.items()) group.push_back({o.at("id").string(), o.at("profit").rational(), o.at("weight").rational()});
        ci.groups.push_back(std::move(group));
    }
    ci.budget = r.at("budget").rational();
    return ci;
}

std::vector<EdgeKey> read_edge_keys(const Reader& r) {
    std::vector<EdgeKey> out;
    for (const auto& e : r.items()) {
        if (!e.json().is_array() || e.json().size() != 2) throw ValidationError(e.path(), "expected [u, v]");
        out.push_back(make_edge_key(e.at(0).small_int(), e.at(1).small_int()));
    }
    return out;
}

ClusterInstance read_cluster(const Reader& r) {
    ClusterInstance c;
    c.table.elements = r.at("elements").ids();
    if (r.has("attributes")) c.table.attributes = r.at("attributes").strings();
    for (const auto& row : r.at("values").items()) {
        std::vector<Rational> vals;
        for (const auto& v : row.items()) vals.push_back(v.rational());
        c.table.values.push_back(std::move(vals));
    }
    if (r.has("rule")) c.config.rule = r.at("rule").field([&] { return parse_rule(r.at("rule").string()); });
    if (r.has("target_clusters")) {
        auto t = r.at("target_clusters").integer();
        if (t < 1) throw ValidationError(r.at("target_clusters").path(), "must be at least 1");
        c.config.target_clusters = static_cast<std::size_t>(t);
    }
    c.config.max_distance = optional_rational(r, "max_distance");
    if (r.has("ordinal")) c.ordinal = r.at("ordinal").boolean();
    r.guard([&] {
        validate(c.table);
        return 0;
    });
    return c;
}

SteinerInstance read_steiner(const Reader& r) {
    SteinerInstance s;
    s.graph = read_graph(r);
    auto t = r.at("terminals").ids();
    s.terminals = {t.begin(), t.end()};
    r.guard([&] {
        try {
            validate(s);
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError("terminals", e.what());
        }
        return 0;
    });
    return s;
}

SitesInstance read_sites_instance(const Reader& r) {
    SitesInstance s;
    s.sites = read_sites(r.at("sites"));
    if (r.has("k")) s.k = r.at("k").small_int();
    if (r.has("scheme")) s.scheme = r.at("scheme").field([&] { return parse_scheme(r.at("scheme").string()); });
    if (r.has("centers")) {
        for (const auto& c : r.at("centers").items()) s.centers.push_back(c.ids());
    }
    return s;
}

TwoLevelInstance read_twolevel(const Reader& r) {
    TwoLevelInstance t;
    t.sites = read_sites(r.at("sites"));
    auto p = r.at("primary").ids();
    t.primary = {p.begin(), p.end()};
    if (r.has("topology")) t.topology = r.at("topology").field([&] { return parse_topology(r.at("topology").string()); });
    if (r.has("primary_mult")) t.config.primary_mult = r.at("primary_mult").rational();
    if (r.has("secondary_mult")) t.config.secondary_mult = r.at("secondary_mult").rational();
    return t;
}

AssignInstance read_assign(const Reader& r) {
    AssignInstance a;
    for (const auto& u : r.at("users").items()) {
        UserProfile p;
        p.site = read_site(u);
        p.bandwidth = u.at("f").rational();
        p.priority = u.at("p").small_int();
        p.reliability = u.at("r").rational();
        a.users.push_back(p);
    }
    for (const auto& j : r.at("aps").items()) {
        AccessPoint ap;
        ap.site = read_site(j);
        ap.bandwidth = j.at("f").rational();
        ap.max_users = j.at("n").small_int();
        ap.reliability = j.at("r").rational();
        a.aps.push_back(ap);
    }
    a.L = optional_rational(r, "L");
    r.guard([&] {
        validate(a.users, a.aps);
        return 0;
    });
    return a;
}

CondenseInstance read_condense(const Reader& r) {
    CondenseInstance c;
    c.tree = read_tree(r, "ram", "freq");
    c.problem = r.has("problem") ? r.at("problem").small_int() : 1;
    if (c.problem == 1) {
        c.b = r.at("b").rational();
    } else if (c.problem == 2) {
        c.b_minus = r.at("b_minus").rational();
        c.b_plus = r.at("b_plus").rational();
    } else {
        throw ValidationError(r.at("problem").path(), "problem must be 1 or 2");
    }
    r.guard([&] {
        validate_overlay(c.tree);
        return 0;
    });
    return c;
}

AuxiliaryInstance read_auxiliary(const Reader& r) {
    AuxiliaryInstance a;
    a.problem = r.at("problem").field([&] { return parse_aux_kind(r.at("problem").string()); });
    a.instance.root_ram = r.at("root_ram").rational();
    for (const auto& g : r.at("groups").items()) {
        std::vector<AuxOption> group;
        for (const auto& o : g.items()) {
            AuxOption opt;
            opt.id = o.at("id").string();
            opt.kernel = o.at("kernel").rational();
            opt.tail = o.has("tail") ? o.at("tail").rational() : Rational(0);
            opt.inner_profit = o.has("inner_profit") ? o.at("inner_profit").rational() : Rational(0);
            opt.arc_profit = o.at("arc_profit").rational();
            group.push_back(opt);
        }
        a.instance.groups.push_back(std::move(group));
    }
    if (is_kind_one(a.problem)) {
        a.instance.b = r.at("b").rational();
    } else {
        a.instance.b_minus = r.at("b_minus").rational();
        a.instance.b_plus = r.at("b_plus").rational();
    }
    return a;
}

HotlinkInstance read_hotlink(const Reader& r) {
    HotlinkInstance h;
    h.tree = read_tree(r, nullptr, nullptr);
    for (const auto& [key, w] : r.at("weights").members()) {
        NodeId id = 0;
        try {
            id = std::stoi(key);
        } catch (const std::exception&) {
            throw ValidationError(w.path(), "weight keys must be node ids");
        }
        h.weights[id] = w.rational();
    }
    h.k = r.has("k") ? r.at("k").small_int() : 1;
    if (r.has("sources")) {
        auto s = r.at("sources").ids();
        h.sources = {s.begin(), s.end()};
    }
    r.guard([&] {
        try {
            validate(h);
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError("weights", e.what());
        }
        return 0;
    });
    return h;
}

AugmentInstance read_augment(const Reader& r) {
    AugmentInstance a;
    a.tree = read_graph(r);
    a.root = r.at("root").small_int();
    for (const auto& reg : r.at("regions").items()) a.regions.push_back(reg.ids());
    for (const auto& list : r.at("candidates").items()) {
        std::vector<SteinerCandidate> group;
        for (const auto& c : list.items()) {
            SteinerCandidate s;
            s.id = c.at("id").string();
            s.objective = c.at("objective").rational();
            s.resource = c.at("resource").rational();
            s.removes = read_edge_keys(c.at("removes"));
            s.attaches = c.at("attaches").ids();
            group.push_back(std::move(s));
        }
        a.candidates.push_back(std::move(group));
    }
    a.budget = r.at("budget").rational();
    r.guard([&] {
        validate(a);
        return 0;
    });
    return a;
}

RestructureInstance read_restructure(const Reader& r) {
    RestructureInstance s;
    s.kind = r.at("embedded").field([&] { return parse_embedded_kind(r.at("embedded").string()); });
    Reader p = r.at("payload");
    switch (s.kind) {
        case EmbeddedKind::Knapsack:
            s.items = read_items(p.at("items"));
            s.budget = p.at("budget").rational();
            break;
        case EmbeddedKind::MultipleChoice:
            s.choice = read_choice(p);
            break;
        case EmbeddedKind::SpanningTree:
            s.graph = read_graph(p);
            if (p.has("max_degree")) s.limits.max_degree = p.at("max_degree").small_int();
            if (p.has("min_leaves")) s.limits.min_leaves = p.at("min_leaves").small_int();
            break;
    }
    auto to_set = [](const std::vector<std::string>& v) { return ElementSet(v.begin(), v.end()); };
    s.initial = to_set(r.at("initial").strings());
    s.goal = to_set(r.at("goal").strings());
    if (r.has("costs")) {
        for (const auto& [e, c] : r.at("costs").members()) {
            ChangeCost cc;
            if (c.has("add")) cc.add = c.at("add").rational();
            if (c.has("remove")) cc.remove = c.at("remove").rational();
            s.costs[e] = cc;
        }
    }
    s.change_budget = r.at("change_budget").rational();
    if (r.has("proximity")) s.proximity = r.at("proximity").field([&] { return parse_proximity(r.at("proximity").string()); });
    r.guard([&] {
        try {
            validate(s);
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError("payload", e.what());
        }
        return 0;
    });
    return s;
}

MorphHierarchy read_morpho(const Reader& r) {
    std::vector<std::pair<std::string, std::vector<std::string>>> parts;
    for (const auto& p : r.at("parts").items()) {
        if (!p.json().is_array() || p.json().size() != 2) throw ValidationError(p.path(), "expected [name, [parts]]");
        parts.emplace_back(p.at(0).string(), p.at(1).strings());
    }
    MorphHierarchy h = r.guard([&] { return make_hierarchy(r.at("root").string(), parts); });
    for (const auto& [leaf, list] : r.at("alternatives").members()) {
        std::vector<DesignAlternative> das;
        for (const auto& d : list.items()) {
            if (!d.json().is_array() || d.json().size() != 2) throw ValidationError(d.path(), "expected [name, estimate]");
            das.push_back({d.at(0).string(), d.at(1).small_int()});
        }
        h.alternatives[leaf] = std::move(das);
    }
    if (r.has("tables")) {
        for (const auto& t : r.at("tables").items()) {
            CompatibilityTable tab;
            tab.first = t.at("first").string();
            tab.second = t.at("second").string();
            tab.row_das = t.at("row_das").strings();
            tab.col_das = t.at("col_das").strings();
            for (const auto& row : t.at("values").items()) {
                std::vector<int> vals;
                for (const auto& v : row.items()) vals.push_back(v.small_int());
                tab.values.push_back(std::move(vals));
            }
            h.tables.push_back(std::move(tab));
        }
    }
    r.guard([&] {
        validate(h);
        return 0;
    });
    return h;
}

// ---- writing ----

Json num(const Rational& r) {
    return to_string(r);
}

Json graph_json(const Graph& g) {
    Json j;
    j["nodes"] = g.nodes();
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, num(e.weight)});
    j["edges"] = edges;
    if (!g.attrs().empty()) {
        Json attrs = Json::object();
        for (const auto& [id, a] : g.attrs()) {
            Json one = Json::object();
            for (const auto& [k, v] : a) one[k] = v;
            attrs[std::to_string(id)] = one;
        }
        j["node_attrs"] = attrs;
    }
    return j;
}

Json site_json(const Site& s) {
    return Json{{"id", s.id}, {"x", num(s.x)}, {"y", num(s.y)}, {"z", num(s.z)}};
}

Json tree_nodes(const RootedTree& t, const char* node_key, const char* arc_key) {
    Json nodes = Json::array();
    for (NodeId id : t.preorder()) {
        Json n{{"id", id}};
        if (auto p = t.parent(id)) n["parent"] = *p;
        if (node_key) {
            if (auto w = t.node_weight(id)) n[node_key] = num(*w);
        }
        if (arc_key) {
            if (auto w = t.arc_weight(id)) n[arc_key] = num(*w);
        }
        nodes.push_back(n);
    }
    return nodes;
}

Json items_json(const std::vector<Item>& items) {
    Json a = Json::array();
    for (const auto& it : items) a.push_back({{"id", it.id}, {"profit", num(it.profit)}, {"weight", num(it.weight)}});
    return a;
}

Json choice_json(const ChoiceInstance& c) {
    Json groups = Json::array();
    for (const auto& g : c.groups) {
        Json opts = Json::array();
        for (const auto& o : g) opts.push_back({{"id", o.id}, {"profit", num(o.profit)}, {"weight", num(o.weight)}});
        groups.push_back(opts);
    }
    return Json{{"groups", groups}, {"budget", num(c.budget)}};
}

void merge(Json& into, const Json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

struct Writer {
    Json& j;

    void operator()(const ClusterInstance& c) {
        j["elements"] = c.table.elements;
        if (!c.table.attributes.empty()) j["attributes"] = c.table.attributes;
        Json rows = Json::array();
        for (const auto& row : c.table.values) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(num(v));
            rows.push_back(r);
        }
        j["values"] = rows;
        j["rule"] = to_string(c.config.rule);
        j["target_clusters"] = c.config.target_clusters;
        if (c.config.max_distance) j["max_distance"] = num(*c.config.max_distance);
        j["ordinal"] = c.ordinal;
    }
    void operator()(const GraphInstance& g) { merge(j, graph_json(g.graph)); }
    void operator()(const SteinerInstance& s) {
        merge(j, graph_json(s.graph));
        j["terminals"] = std::vector<NodeId>(s.terminals.begin(), s.terminals.end());
    }
    void operator()(const SitesInstance& s) {
        Json sites = Json::array();
        for (const auto& x : s.sites) sites.push_back(site_json(x));
        j["sites"] = sites;
        j["k"] = s.k;
        j["scheme"] = to_string(s.scheme);
        if (!s.centers.empty()) j["centers"] = s.centers;
    }
    void operator()(const TwoLevelInstance& t) {
        Json sites = Json::array();
        for (const auto& x : t.sites) sites.push_back(site_json(x));
        j["sites"] = sites;
        j["primary"] = std::vector<NodeId>(t.primary.begin(), t.primary.end());
        j["topology"] = to_string(t.topology);
        j["primary_mult"] = num(t.config.primary_mult);
        j["secondary_mult"] = num(t.config.secondary_mult);
    }
    void operator()(const AssignInstance& a) {
        Json users = Json::array();
        for (const auto& u : a.users) {
            Json x = site_json(u.site);
            x["f"] = num(u.bandwidth);
            x["p"] = u.priority;
            x["r"] = num(u.reliability);
            users.push_back(x);
        }
        Json aps = Json::array();
        for (const auto& ap : a.aps) {
            Json x = site_json(ap.site);
            x["f"] = num(ap.bandwidth);
            x["n"] = ap.max_users;
            x["r"] = num(ap.reliability);
            aps.push_back(x);
        }
        j["users"] = users;
        j["aps"] = aps;
        if (a.L) j["L"] = num(*a.L);
    }
    void operator()(const KnapsackInstance& k) {
        j["items"] = items_json(k.items);
        j["budget"] = num(k.budget);
    }
    void operator()(const ChoiceInstance& c) { merge(j, choice_json(c)); }
    void operator()(const CondenseInstance& c) {
        j["nodes"] = tree_nodes(c.tree, "ram", "freq");
        j["problem"] = c.problem;
        if (c.problem == 1) {
            j["b"] = num(c.b);
        } else {
            j["b_minus"] = num(c.b_minus);
            j["b_plus"] = num(c.b_plus);
        }
    }
    void operator()(const AuxiliaryInstance& a) {
        j["problem"] = to_string(a.problem);
        j["root_ram"] = num(a.instance.root_ram);
        Json groups = Json::array();
        for (const auto& g : a.instance.groups) {
            Json opts = Json::array();
            for (const auto& o : g) {
                opts.push_back({{"id", o.id},
                                {"kernel", num(o.kernel)},
                                {"tail", num(o.tail)},
                                {"inner_profit", num(o.inner_profit)},
                                {"arc_profit", num(o.arc_profit)}});
            }
            groups.push_back(opts);
        }
        j["groups"] = groups;
        if (is_kind_one(a.problem)) {
            j["b"] = num(a.instance.b);
        } else {
            j["b_minus"] = num(a.instance.b_minus);
            j["b_plus"] = num(a.instance.b_plus);
        }
    }
    void operator()(const HotlinkInstance& h) {
        j["nodes"] = tree_nodes(h.tree, nullptr, nullptr);
        Json w = Json::object();
        for (const auto& [id, x] : h.weights) w[std::to_string(id)] = num(x);
        j["weights"] = w;
        j["k"] = h.k;
        if (!h.sources.empty()) j["sources"] = std::vector<NodeId>(h.sources.begin(), h.sources.end());
    }
    void operator()(const AugmentInstance& a) {
        merge(j, graph_json(a.tree));
        j["root"] = a.root;
        j["regions"] = a.regions;
        Json cands = Json::array();
        for (const auto& list : a.candidates) {
            Json g = Json::array();
            for (const auto& c : list) {
                Json removes = Json::array();
                for (const auto& [u, v] : c.removes) removes.push_back({u, v});
                g.push_back({{"id", c.id},
                             {"objective", num(c.objective)},
                             {"resource", num(c.resource)},
                             {"removes", removes},
                             {"attaches", c.attaches}});
            }
            cands.push_back(g);
        }
        j["candidates"] = cands;
        j["budget"] = num(a.budget);
    }
    void operator()(const RestructureInstance& s) {
        j["embedded"] = to_string(s.kind);
        Json p;
        switch (s.kind) {
            case EmbeddedKind::Knapsack:
                p = Json{{"items", items_json(s.items)}, {"budget", num(s.budget)}};
                break;
            case EmbeddedKind::MultipleChoice:
                p = choice_json(s.choice);
                break;
            case EmbeddedKind::SpanningTree:
                p = graph_json(s.graph);
                if (s.limits.max_degree) p["max_degree"] = *s.limits.max_degree;
                if (s.limits.min_leaves) p["min_leaves"] = *s.limits.min_leaves;
                break;
        }
        j["payload"] = p;
        j["initial"] = std::vector<std::string>(s.initial.begin(), s.initial.end());
        j["goal"] = std::vector<std::string>(s.goal.begin(), s.goal.end());
        if (!s.costs.empty()) {
            Json costs = Json::object();
            for (const auto& [e, c] : s.costs) costs[e] = {{"add", num(c.add)}, {"remove", num(c.remove)}};
            j["costs"] = costs;
        }
        j["change_budget"] = num(s.change_budget);
        j["proximity"] = to_string(s.proximity);
    }
    void operator()(const MorphHierarchy& h) {
        j["root"] = h.names.at(static_cast<std::size_t>(h.tree.root()));
        Json parts = Json::array();
        for (NodeId id : h.tree.preorder()) {
            if (h.tree.is_leaf(id)) continue;
            std::vector<std::string> kids;
            for (NodeId c : h.tree.children(id)) kids.push_back(h.names.at(static_cast<std::size_t>(c)));
            parts.push_back({h.names.at(static_cast<std::size_t>(id)), kids});
        }
        j["parts"] = parts;
        Json alts = Json::object();
        for (const auto& leaf : leaf_names(h)) {
            Json list = Json::array();
            for (const auto& d : h.alternatives.at(leaf)) list.push_back({d.name, d.estimate});
            alts[leaf] = list;
        }
        j["alternatives"] = alts;
        Json tables = Json::array();
        for (const auto& t : h.tables) {
            tables.push_back({{"first", t.first},
                              {"second", t.second},
                              {"row_das", t.row_das},
                              {"col_das", t.col_das},
                              {"values", t.values}});
        }
        j["tables"] = tables;
    }
};

}  // namespace

std::string kind_name(const Instance& instance) {
    static const char* names[] = {"cluster", "graph",    "steiner", "sites",   "twolevel",
                                  "assign",  "knapsack", "mchoice", "condense", "auxiliary",
                                  "hotlink", "augment",  "restructure", "morpho"};
    return names[instance.index()];
}

Instance parse_instance(std::string_view text, const std::optional<std::string>& expected_kind) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Syntax, std::string("malformed instance: ") + e.what());
    }
    Reader r(doc, "");
    if (!doc.is_object()) throw ValidationError("", "instance must be a JSON object");
    std::string kind = r.at("kind").string();
    if (expected_kind && kind != *expected_kind) {
        throw ValidationError("kind", "expected '" + *expected_kind + "', got '" + kind + "'");
    }
    if (kind == "cluster") return read_cluster(r);
    if (kind == "graph") return GraphInstance{read_graph(r)};
    if (kind == "steiner") return read_steiner(r);
    if (kind == "sites") return read_sites_instance(r);
    if (kind == "twolevel") return read_twolevel(r);
    if (kind == "assign") return read_assign(r);
    if (kind == "knapsack") return KnapsackInstance{read_items(r.at("items")), r.at("budget").rational()};
    if (kind == "mchoice") {
        ChoiceInstance c = read_choice(r);
        r.guard([&] {
            validate(c);
            return 0;
        });
        return c;
    }
    if (kind == "condense") return read_condense(r);
    if (kind == "auxiliary") return read_auxiliary(r);
    if (kind == "hotlink") return read_hotlink(r);
    if (kind == "augment") return read_augment(r);
    if (kind == "restructure") return read_restructure(r);
    if (kind == "morpho") return read_morpho(r);
    throw ValidationError("kind", "unknown instance kind '" + kind + "'");
}

std::string serialize(const Instance& instance) {
    Json j;
    j["kind"] = kind_name(instance);
    std::visit(Writer{j}, instance);
    return j.dump(2) + "\n";
}

}  // namespace hier
