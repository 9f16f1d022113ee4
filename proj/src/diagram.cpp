#include "bondedkb/diagram.hpp"

#include "bondedkb/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bkb {

using nlohmann::ordered_json;

const Edge* BondedDiagram::find_edge(int id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

const Crossing* BondedDiagram::find_crossing(int id) const {
    for (const auto& c : crossings)
        if (c.id == id) return &c;
    return nullptr;
}

const BondVertex* BondedDiagram::find_vertex(int id) const {
    for (const auto& v : bond_vertices)
        if (v.id == id) return &v;
    return nullptr;
}

int BondedDiagram::bond_count() const { return static_cast<int>(bond_vertices.size()) / 2; }

namespace {

const char* kind_name(EdgeKind k) { return k == EdgeKind::Bond ? "bond" : "chain"; }

ordered_json ref_json(const EdgeRef& r) {
    ordered_json j;
    j["edge"] = r.edge;
    j["dir"] = r.out ? "out" : "in";
    return j;
}

template <class J>
EdgeRef ref_from_json(const J& j) {
    EdgeRef r;
    r.edge = j.at("edge").template get<int>();
    std::string dir = j.at("dir").template get<std::string>();
    if (dir == "out")
        r.out = true;
    else if (dir == "in")
        r.out = false;
    else
        throw ParseError("edge reference dir must be \"in\" or \"out\", got \"" + dir + "\"");
    return r;
}

// Positions of every edge end among the nodes.
struct Ends {
    struct Port {
        int node = -1;  // crossing or vertex id
        int slot = -1;
        bool is_crossing = false;
    };
    std::map<int, std::vector<std::pair<Port, bool>>> refs;  // edge -> (port, out)
};

Ends collect_ends(const BondedDiagram& d) {
    Ends e;
    for (const auto& c : d.crossings)
        for (int s = 0; s < 4; ++s) e.refs[c.incident[s].edge].push_back({{c.id, s, true}, c.incident[s].out});
    for (const auto& v : d.bond_vertices)
        for (int s = 0; s < 3; ++s) e.refs[v.incident[s].edge].push_back({{v.id, s, false}, v.incident[s].out});
    return e;
}

}  // namespace

BondedDiagram diagram_from_json_unchecked(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError("JSON syntax error at byte " + std::to_string(ex.byte) + ": " + ex.what());
    }
    BondedDiagram d;
    try {
        if (!j.is_object()) throw ParseError("diagram must be a JSON object");
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.id = je.at("id").get<int>();
            std::string kind = je.at("kind").get<std::string>();
            if (kind == "chain")
                e.kind = EdgeKind::Chain;
            else if (kind == "bond")
                e.kind = EdgeKind::Bond;
            else
                throw ParseError("edge " + std::to_string(e.id) + ": unknown kind \"" + kind + "\"");
            if (je.contains("half_twists")) e.half_twists = je.at("half_twists").get<int>();
            d.edges.push_back(e);
        }
        if (j.contains("crossings")) {
            for (const auto& jc : j.at("crossings")) {
                Crossing c;
                c.id = jc.at("id").get<int>();
                const auto& inc = jc.at("incident");
                if (!inc.is_array() || inc.size() != 4)
                    throw ParseError("crossing " + std::to_string(c.id) + ": incident must list 4 edge references");
                for (int s = 0; s < 4; ++s) c.incident[s] = ref_from_json(inc[s]);
                d.crossings.push_back(c);
            }
        }
        if (j.contains("bond_vertices")) {
            for (const auto& jv : j.at("bond_vertices")) {
                BondVertex v;
                v.id = jv.at("id").get<int>();
                const auto& inc = jv.at("incident");
                if (!inc.is_array() || inc.size() != 3)
                    throw ParseError("bond vertex " + std::to_string(v.id) + ": incident must list 3 edge references");
                for (int s = 0; s < 3; ++s) v.incident[s] = ref_from_json(inc[s]);
                d.bond_vertices.push_back(v);
            }
        }
        if (j.contains("bond_orientations")) {
            for (const auto& [key, val] : j.at("bond_orientations").items()) {
                int edge = 0;
                try {
                    size_t used = 0;
                    edge = std::stoi(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    throw ParseError("bond_orientations key \"" + key + "\" is not an edge id");
                }
                if (!val.is_array() || val.size() != 2)
                    throw ParseError("bond_orientations entry for edge " + key + " must be [tail, head]");
                d.bond_orientations[edge] = {val[0].get<int>(), val[1].get<int>()};
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("diagram structure error: ") + ex.what());
    }
    return d;
}

namespace {

// Follows a bond strand from the vertex end through crossings. Returns the
// ordered edges and the far vertex id (or -1 on a broken strand).
struct BondArc {
    std::vector<int> edges;
    int start = -1;
    int end = -1;
};

}  // namespace

std::vector<Violation> validate(const BondedDiagram& d) {
    std::vector<Violation> out;
    auto add = [&](std::string el, std::string rule) { out.push_back({std::move(el), std::move(rule)}); };

    std::map<int, const Edge*> edges;
    for (const auto& e : d.edges) {
        if (!edges.emplace(e.id, &e).second) add("edge " + std::to_string(e.id), "duplicate edge id");
        if (e.kind == EdgeKind::Bond && e.half_twists != 0)
            add("edge " + std::to_string(e.id), "bond edges carry no half twists");
    }
    std::set<int> node_ids;
    for (const auto& c : d.crossings)
        if (!node_ids.insert(c.id).second) add("crossing " + std::to_string(c.id), "duplicate node id");
    for (const auto& v : d.bond_vertices)
        if (!node_ids.insert(v.id).second) add("bond vertex " + std::to_string(v.id), "duplicate node id");

    auto kind_of = [&](int edge) -> const Edge* {
        auto it = edges.find(edge);
        return it == edges.end() ? nullptr : it->second;
    };

    bool refs_ok = true;
    for (const auto& c : d.crossings)
        for (const auto& r : c.incident)
            if (!kind_of(r.edge)) {
                add("crossing " + std::to_string(c.id), "reference to undefined edge " + std::to_string(r.edge));
                refs_ok = false;
            }
    for (const auto& v : d.bond_vertices)
        for (const auto& r : v.incident)
            if (!kind_of(r.edge)) {
                add("bond vertex " + std::to_string(v.id), "reference to undefined edge " + std::to_string(r.edge));
                refs_ok = false;
            }
    if (!refs_ok) return out;

    Ends ends = collect_ends(d);
    for (const auto& e : d.edges) {
        auto it = ends.refs.find(e.id);
        std::string el = "edge " + std::to_string(e.id);
        if (it == ends.refs.end()) {
            if (e.kind == EdgeKind::Bond) add(el, "bond edge is not attached to any node");
            continue;
        }
        const auto& lst = it->second;
        int outs = 0, ins = 0;
        for (const auto& [p, o] : lst) (o ? outs : ins)++;
        if (outs != 1 || ins != 1) {
            if (outs > 1) add(el, "edge appears more than once as outgoing");
            if (ins > 1) add(el, "edge appears more than once as incoming");
            if (outs == 0 || ins == 0) add(el, "edge must appear once incoming and once outgoing");
        }
    }

    for (const auto& c : d.crossings) {
        std::string el = "crossing " + std::to_string(c.id);
        const auto& I = c.incident;
        if (I[0].out) add(el, "slot 0 must be the incoming under-strand");
        if (!I[2].out) add(el, "under strand must leave through slot 2");
        if (I[1].out == I[3].out) add(el, "over strand must have one incoming and one outgoing end");
        for (int s = 0; s < 2; ++s) {
            if (kind_of(I[s].edge)->kind != kind_of(I[s + 2].edge)->kind)
                add(el, std::string(s == 0 ? "under" : "over") + " strand changes kind through the crossing");
        }
    }

    for (const auto& v : d.bond_vertices) {
        std::string el = "bond vertex " + std::to_string(v.id);
        int bonds = 0, chain_in = 0, chain_out = 0;
        for (const auto& r : v.incident) {
            if (kind_of(r.edge)->kind == EdgeKind::Bond)
                ++bonds;
            else
                (r.out ? chain_out : chain_in)++;
        }
        if (bonds != 1) add(el, "must have exactly one bond end (found " + std::to_string(bonds) + ")");
        if (bonds == 1 && (chain_in != 1 || chain_out != 1))
            add(el, "chain ends must be one incoming and one outgoing");
    }
    if (!out.empty()) return out;

    // Bond strands: vertex -> (crossings) -> distinct vertex, no self-crossings.
    std::map<int, const Crossing*> crossing_by_id;
    for (const auto& c : d.crossings) crossing_by_id[c.id] = &c;
    std::map<int, int> arc_of_edge;
    int arc_index = 0;
    std::map<int, std::pair<int, int>> derived;  // bond edge -> (tail, head)
    for (const auto& v : d.bond_vertices) {
        int bslot = 0;
        while (kind_of(v.incident[bslot].edge)->kind != EdgeKind::Bond) ++bslot;
        if (!v.incident[bslot].out) continue;  // walk from tails only
        std::vector<int> arc_edges;
        int edge = v.incident[bslot].edge;
        int far = -1;
        for (size_t guard = 0; guard <= d.edges.size(); ++guard) {
            arc_edges.push_back(edge);
            const auto& lst = ends.refs[edge];
            const Ends::Port* head = nullptr;
            for (const auto& [p, o] : lst)
                if (!o) head = &p;
            if (!head) break;
            if (!head->is_crossing) {
                far = head->node;
                break;
            }
            const Crossing* c = crossing_by_id[head->node];
            edge = c->incident[(head->slot + 2) % 4].edge;
        }
        std::string el = "bond vertex " + std::to_string(v.id);
        if (far < 0) {
            add(el, "bond strand does not reach a second bond vertex");
            continue;
        }
        if (far == v.id) add(el, "bond returns to its own vertex");
        for (int e : arc_edges) {
            arc_of_edge[e] = arc_index;
            derived[e] = {v.id, far};
        }
        ++arc_index;
    }
    for (const auto& e : d.edges)
        if (e.kind == EdgeKind::Bond && !arc_of_edge.count(e.id))
            add("edge " + std::to_string(e.id), "bond edge is not on a vertex-to-vertex bond strand");
    for (const auto& c : d.crossings) {
        auto a = arc_of_edge.find(c.incident[0].edge);
        auto b = arc_of_edge.find(c.incident[1].edge);
        if (a != arc_of_edge.end() && b != arc_of_edge.end() && a->second == b->second)
            add("crossing " + std::to_string(c.id), "bond crosses itself");
    }
    for (const auto& [e, tv] : d.bond_orientations) {
        auto it = derived.find(e);
        if (it == derived.end())
            add("bond_orientations", "entry for edge " + std::to_string(e) + " which is not a bond edge");
        else if (it->second != tv)
            add("bond_orientations", "edge " + std::to_string(e) + " orientation disagrees with edge directions");
    }
    return out;
}

void require_valid(const BondedDiagram& d) {
    auto v = validate(d);
    if (v.empty()) return;
    std::string msg = "invalid diagram:";
    for (const auto& x : v) msg += "\n  " + x.element + ": " + x.rule;
    throw ValidationError(msg);
}

BondedDiagram canonicalize(BondedDiagram d) {
    std::sort(d.edges.begin(), d.edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    std::sort(d.crossings.begin(), d.crossings.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(d.bond_vertices.begin(), d.bond_vertices.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    // Recompute orientations from edge directions (validated beforehand).
    std::map<int, std::pair<int, int>> orient;
    Ends ends = collect_ends(d);
    std::map<int, const Crossing*> cross;
    for (const auto& c : d.crossings) cross[c.id] = &c;
    for (const auto& v : d.bond_vertices) {
        for (const auto& r : v.incident) {
            const Edge* e = d.find_edge(r.edge);
            if (!e || e->kind != EdgeKind::Bond || !r.out) continue;
            std::vector<int> arc;
            int edge = r.edge;
            int far = -1;
            for (size_t guard = 0; guard <= d.edges.size(); ++guard) {
                arc.push_back(edge);
                const Ends::Port* head = nullptr;
                for (const auto& [p, o] : ends.refs[edge])
                    if (!o) head = &p;
                if (!head) break;
                if (!head->is_crossing) {
                    far = head->node;
                    break;
                }
                edge = cross[head->node]->incident[(head->slot + 2) % 4].edge;
            }
            if (far >= 0)
                for (int a : arc) orient[a] = {v.id, far};
        }
    }
    d.bond_orientations = std::move(orient);
    return d;
}

BondedDiagram parse_diagram(const std::string& text) {
    BondedDiagram d = diagram_from_json_unchecked(text);
    require_valid(d);
    return canonicalize(std::move(d));
}

std::string serialize_diagram(const BondedDiagram& input) {
    BondedDiagram d = canonicalize(input);
    ordered_json j;
    j["edges"] = ordered_json::array();
    for (const auto& e : d.edges) {
        ordered_json je;
        je["id"] = e.id;
        je["kind"] = kind_name(e.kind);
        je["half_twists"] = e.half_twists;
        j["edges"].push_back(std::move(je));
    }
    j["crossings"] = ordered_json::array();
    for (const auto& c : d.crossings) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["incident"] = ordered_json::array();
        for (const auto& r : c.incident) jc["incident"].push_back(ref_json(r));
        j["crossings"].push_back(std::move(jc));
    }
    j["bond_vertices"] = ordered_json::array();
    for (const auto& v : d.bond_vertices) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["incident"] = ordered_json::array();
        for (const auto& r : v.incident) jv["incident"].push_back(ref_json(r));
        j["bond_vertices"].push_back(std::move(jv));
    }
    j["bond_orientations"] = ordered_json::object();
    for (const auto& [e, tv] : d.bond_orientations)
        j["bond_orientations"][std::to_string(e)] = ordered_json::array({tv.first, tv.second});
    return j.dump(2) + "\n";
}

int crossing_sign(const Crossing& c) { return c.incident[1].out ? 1 : -1; }

bool crossing_involves_bond(const BondedDiagram& d, const Crossing& c) {
    for (const auto& r : c.incident) {
        const Edge* e = d.find_edge(r.edge);
        if (e && e->kind == EdgeKind::Bond) return true;
    }
    return false;
}

int writhe(const BondedDiagram& d) {
    std::map<int, EdgeKind> kinds;
    for (const auto& e : d.edges) kinds[e.id] = e.kind;
    int w = 0;
    for (const auto& c : d.crossings) {
        bool bond = false;
        for (const auto& r : c.incident) bond = bond || kinds[r.edge] == EdgeKind::Bond;
        if (!bond) w += crossing_sign(c);
    }
    return w;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<BondedDiagram> split_components(const BondedDiagram& input) {
    BondedDiagram d = canonicalize(input);
    // Union over edges; every node unites the edges it touches.
    std::map<int, int> eidx;
    for (size_t i = 0; i < d.edges.size(); ++i) eidx[d.edges[i].id] = static_cast<int>(i);
    UnionFind uf(d.edges.size());
    for (const auto& c : d.crossings)
        for (const auto& r : c.incident) uf.unite(eidx[r.edge], eidx[c.incident[0].edge]);
    for (const auto& v : d.bond_vertices)
        for (const auto& r : v.incident) uf.unite(eidx[r.edge], eidx[v.incident[0].edge]);

    std::map<int, BondedDiagram> comps;  // root -> component
    std::vector<int> order;
    auto comp_for = [&](int edge) -> BondedDiagram& {
        int root = uf.find(eidx[edge]);
        if (!comps.count(root)) order.push_back(root);
        return comps[root];
    };
    // Components ordered by their lowest node id, then free loops by edge id.
    for (const auto& c : d.crossings) comp_for(c.incident[0].edge).crossings.push_back(c);
    for (const auto& v : d.bond_vertices) comp_for(v.incident[0].edge).bond_vertices.push_back(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto lowest = [&](int r) {
            int m = INT32_MAX;
            for (const auto& c : comps[r].crossings) m = std::min(m, c.id);
            for (const auto& v : comps[r].bond_vertices) m = std::min(m, v.id);
            return m;
        };
        return lowest(a) < lowest(b);
    });
    for (const auto& e : d.edges) {
        int root = uf.find(eidx[e.id]);
        if (!comps.count(root)) order.push_back(root);
        comps[root].edges.push_back(e);
    }
    std::vector<BondedDiagram> out;
    for (int r : order) {
        BondedDiagram c = comps[r];
        for (const auto& [e, tv] : d.bond_orientations)
            if (c.find_edge(e)) c.bond_orientations[e] = tv;
        out.push_back(canonicalize(std::move(c)));
    }
    return out;
}

BondedDiagram disjoint_union(const BondedDiagram& a, const BondedDiagram& b) {
    int emax = -1, nmax = -1;
    for (const auto& e : a.edges) emax = std::max(emax, e.id);
    for (const auto& c : a.crossings) nmax = std::max(nmax, c.id);
    for (const auto& v : a.bond_vertices) nmax = std::max(nmax, v.id);
    const int eo = emax + 1, no = nmax + 1;
    BondedDiagram r = a;
    for (auto e : b.edges) {
        e.id += eo;
        r.edges.push_back(e);
    }
    for (auto c : b.crossings) {
        c.id += no;
        for (auto& x : c.incident) x.edge += eo;
        r.crossings.push_back(c);
    }
    for (auto v : b.bond_vertices) {
        v.id += no;
        for (auto& x : v.incident) x.edge += eo;
        r.bond_vertices.push_back(v);
    }
    for (const auto& [e, tv] : b.bond_orientations) r.bond_orientations[e + eo] = {tv.first + no, tv.second + no};
    return canonicalize(std::move(r));
}

namespace {

// Rooted traversal code for one connected component.
struct NodeView {
    bool crossing = false;
    int id = 0;
    std::vector<EdgeRef> slots;
    int start = 0;  // slot 0 for crossings, bond slot for vertices
};

struct Traversal {
    std::vector<int> code;
    std::vector<int> node_order;  // indices into the node table
    std::vector<int> edge_order;  // edge ids in first-encounter order
};

Traversal traverse(const std::vector<NodeView>& nodes, const std::map<int, std::vector<std::pair<int, int>>>& edge_ports,
                   const std::map<int, const Edge*>& edges, int root) {
    Traversal t;
    std::map<int, int> node_index;
    std::map<int, int> edge_index;
    std::vector<int> queue{root};
    node_index[root] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const NodeView& n = nodes[queue[qi]];
        t.node_order.push_back(queue[qi]);
        t.code.push_back(n.crossing ? -1 : -2);
        const int deg = static_cast<int>(n.slots.size());
        for (int k = 0; k < deg; ++k) {
            int s = (n.start + k) % deg;
            const EdgeRef& r = n.slots[s];
            const Edge* e = edges.at(r.edge);
            auto [ei, fresh] = edge_index.emplace(r.edge, static_cast<int>(edge_index.size()));
            if (fresh) t.edge_order.push_back(r.edge);
            // other end of the edge
            int on = -1, os = -1;
            for (const auto& [ni, sl] : edge_ports.at(r.edge))
                if (!(ni == queue[qi] && sl == s)) on = ni, os = sl;
            auto [oi, nf] = node_index.emplace(on, static_cast<int>(node_index.size()));
            if (nf) queue.push_back(on);
            const NodeView& o = nodes[on];
            int odeg = static_cast<int>(o.slots.size());
            t.code.push_back(e->kind == EdgeKind::Bond ? 1 : 0);
            t.code.push_back(e->half_twists);
            t.code.push_back(r.out ? 1 : 0);
            t.code.push_back(oi->second);
            t.code.push_back(((os - o.start) % odeg + odeg) % odeg);
            t.code.push_back(ei->second);
        }
    }
    return t;
}

}  // namespace

BondedDiagram relabel_canonical(const BondedDiagram& input) {
    BondedDiagram d = canonicalize(input);
    std::map<int, const Edge*> edges;
    for (const auto& e : d.edges) edges[e.id] = &e;
    std::vector<NodeView> nodes;
    for (const auto& c : d.crossings) nodes.push_back({true, c.id, {c.incident.begin(), c.incident.end()}, 0});
    for (const auto& v : d.bond_vertices) {
        NodeView n{false, v.id, {v.incident.begin(), v.incident.end()}, 0};
        for (int s = 0; s < 3; ++s)
            if (edges[v.incident[s].edge]->kind == EdgeKind::Bond) n.start = s;
        nodes.push_back(n);
    }
    std::map<int, std::vector<std::pair<int, int>>> edge_ports;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t s = 0; s < nodes[i].slots.size(); ++s)
            edge_ports[nodes[i].slots[s].edge].push_back({static_cast<int>(i), static_cast<int>(s)});

    // Components by node reachability.
    UnionFind uf(nodes.size());
    for (const auto& [e, ports] : edge_ports)
        if (ports.size() == 2) uf.unite(ports[0].first, ports[1].first);
    std::map<int, std::vector<int>> comp_nodes;
    for (size_t i = 0; i < nodes.size(); ++i) comp_nodes[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::vector<Traversal> best;
    for (const auto& [root, members] : comp_nodes) {
        std::optional<Traversal> b;
        for (int m : members) {
            Traversal t = traverse(nodes, edge_ports, edges, m);
            if (!b || t.code < b->code) b = std::move(t);
        }
        best.push_back(std::move(*b));
    }
    std::sort(best.begin(), best.end(), [](const Traversal& a, const Traversal& b) { return a.code < b.code; });

    std::vector<const Edge*> free_loops;
    for (const auto& e : d.edges)
        if (!edge_ports.count(e.id)) free_loops.push_back(&e);
    std::stable_sort(free_loops.begin(), free_loops.end(),
                     [](const Edge* a, const Edge* b) { return a->half_twists < b->half_twists; });

    BondedDiagram r;
    std::map<int, int> new_edge, new_node;
    for (const auto& t : best) {
        for (int e : t.edge_order) {
            int id = static_cast<int>(new_edge.size());
            new_edge[e] = id;
            r.edges.push_back({id, edges[e]->kind, edges[e]->half_twists});
        }
        for (int ni : t.node_order) new_node[nodes[ni].id] = static_cast<int>(new_node.size());
    }
    for (const Edge* e : free_loops) {
        int id = static_cast<int>(new_edge.size());
        new_edge[e->id] = id;
        r.edges.push_back({id, e->kind, e->half_twists});
    }
    for (const auto& t : best) {
        for (int ni : t.node_order) {
            const NodeView& n = nodes[ni];
            const int deg = static_cast<int>(n.slots.size());
            if (n.crossing) {
                Crossing c;
                c.id = new_node[n.id];
                for (int s = 0; s < 4; ++s) c.incident[s] = {new_edge[n.slots[s].edge], n.slots[s].out};
                r.crossings.push_back(c);
            } else {
                BondVertex v;
                v.id = new_node[n.id];
                for (int k = 0; k < 3; ++k) {
                    const EdgeRef& x = n.slots[(n.start + k) % deg];
                    v.incident[k] = {new_edge[x.edge], x.out};
                }
                r.bond_vertices.push_back(v);
            }
        }
    }
    return canonicalize(std::move(r));
}

std::string canonical_key(const BondedDiagram& d) {
    BondedDiagram r = relabel_canonical(d);
    // Compact form: kinds/twists, then node rows.
    std::ostringstream os;
    for (const auto& e : r.edges) os << (e.kind == EdgeKind::Bond ? 'b' : 'c') << e.half_twists << ',';
    os << '|';
    for (const auto& c : r.crossings) {
        os << 'X' << c.id;
        for (const auto& x : c.incident) os << (x.out ? '+' : '-') << x.edge;
    }
    os << '|';
    for (const auto& v : r.bond_vertices) {
        os << 'V' << v.id;
        for (const auto& x : v.incident) os << (x.out ? '+' : '-') << x.edge;
    }
    return os.str();
}

BondedDiagram flip_crossing(const BondedDiagram& input, int crossing_id) {
    BondedDiagram d = input;
    for (auto& c : d.crossings) {
        if (c.id != crossing_id) continue;
        const auto s = c.incident;
        if (!s[1].out)
            c.incident = {s[1], s[2], s[3], s[0]};
        else
            c.incident = {s[3], s[0], s[1], s[2]};
        return d;
    }
    throw MoveError("flip_crossing: no crossing " + std::to_string(crossing_id));
}

}  // namespace bkb
