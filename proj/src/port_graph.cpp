#include "bondedkb/port_graph.hpp"

#include "bondedkb/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bkb {

PortGraph::PortGraph(const BondedDiagram& input) {
    BondedDiagram d = canonicalize(input);
    for (const auto& e : d.edges) {
        PEdge pe;
        pe.kind = e.kind;
        pe.twists = e.half_twists;
        edges_[e.id] = pe;
        next_edge_ = std::max(next_edge_, e.id + 1);
    }
    auto load = [&](int id, bool crossing, const auto& incident) {
        PNode n;
        n.crossing = crossing;
        for (size_t s = 0; s < incident.size(); ++s) {
            const EdgeRef& r = incident[s];
            n.slots.push_back({r.edge, !r.out});
            Port p{id, static_cast<int>(s)};
            if (r.out)
                edges_.at(r.edge).tail = p;
            else
                edges_.at(r.edge).head = p;
        }
        nodes_[id] = std::move(n);
        next_node_ = std::max(next_node_, id + 1);
    };
    for (const auto& c : d.crossings) load(c.id, true, c.incident);
    for (const auto& v : d.bond_vertices) load(v.id, false, v.incident);
    for (const auto& [e, tv] : d.bond_orientations) bond_tails_.insert(tv.first);
}

Port PortGraph::port_of(End e) const {
    const PEdge& pe = edges_.at(e.edge);
    return e.head ? pe.head : pe.tail;
}

Port PortGraph::across(int node, int slot) const {
    End e = end_at(node, slot);
    return port_of(other_end(e));
}

int PortGraph::bond_slot(int vertex) const {
    const PNode& n = nodes_.at(vertex);
    for (int s = 0; s < n.degree(); ++s)
        if (n.slots[s].edge >= 0 && edges_.at(n.slots[s].edge).kind == EdgeKind::Bond) return s;
    return -1;
}

void PortGraph::set_end(End e, Port p) {
    PEdge& pe = edges_.at(e.edge);
    (e.head ? pe.head : pe.tail) = p;
    if (p.valid()) nodes_.at(p.node).slots.at(p.slot) = e;
}

int PortGraph::add_edge(EdgeKind kind, int twists, bool trusted) {
    int id = next_edge_++;
    PEdge e;
    e.kind = kind;
    e.twists = twists;
    e.trusted = trusted;
    edges_[id] = e;
    return id;
}

int PortGraph::add_node(bool crossing, int degree) {
    int id = next_node_++;
    PNode n;
    n.crossing = crossing;
    n.slots.assign(degree, End{});
    nodes_[id] = std::move(n);
    return id;
}

void PortGraph::attach(End e, int node, int slot) {
    if (port_of(e).valid()) throw InternalConsistencyError("attach: edge end is already attached");
    if (nodes_.at(node).slots.at(slot).edge >= 0) throw InternalConsistencyError("attach: slot is occupied");
    set_end(e, {node, slot});
}

End PortGraph::detach(int node, int slot) {
    End e = nodes_.at(node).slots.at(slot);
    if (e.edge < 0) throw InternalConsistencyError("detach: empty slot");
    PEdge& pe = edges_.at(e.edge);
    (e.head ? pe.head : pe.tail) = Port{};
    nodes_.at(node).slots.at(slot) = End{};
    return e;
}

std::pair<End, End> PortGraph::cut_near(int edge, bool at_head) {
    PEdge old = edges_.at(edge);
    int n = add_edge(old.kind, 0, old.trusted);
    if (at_head) {
        edges_.at(edge).head = Port{};
        set_end({n, true}, old.head);
        return {End{n, false}, End{edge, true}};
    }
    edges_.at(edge).tail = Port{};
    set_end({n, false}, old.tail);
    return {End{n, true}, End{edge, false}};
}

std::pair<End, End> PortGraph::cut_free(int edge) {
    if (!edges_.at(edge).free_loop()) throw InternalConsistencyError("cut_free: edge is not a free loop");
    return {End{edge, false}, End{edge, true}};
}

int PortGraph::join(End a, End b) {
    if (port_of(a).valid() || port_of(b).valid()) throw InternalConsistencyError("join: ends must be dangling");
    if (a.edge == b.edge) return a.edge;  // closes into a free loop
    PEdge ea = edges_.at(a.edge);
    PEdge eb = edges_.at(b.edge);
    if (ea.kind != eb.kind) throw InternalConsistencyError("join: edge kinds differ");
    const bool consistent = a.head != b.head;
    if (!consistent && ea.trusted && eb.trusted) throw InternalConsistencyError("join: conflicting orientations");
    // Keep the orientation of a trusted edge; A' is the far end of the kept edge.
    End keep = a, other = b;
    if (!ea.trusted && eb.trusted) std::swap(keep, other);
    Port far_keep = port_of(other_end(keep));
    Port far_other = port_of(other_end(other));
    const bool keep_far_is_tail = keep.head;  // far end of `keep` is its tail when the joined end was its head
    const int m = std::min(a.edge, b.edge);
    const int o = std::max(a.edge, b.edge);
    PEdge merged;
    merged.kind = ea.kind;
    merged.twists = ea.twists + eb.twists;
    merged.trusted = ea.trusted || eb.trusted;
    edges_.erase(o);
    edges_[m] = merged;
    if (keep_far_is_tail) {
        set_end({m, false}, far_keep);
        set_end({m, true}, far_other);
    } else {
        set_end({m, true}, far_keep);
        set_end({m, false}, far_other);
    }
    return m;
}

int PortGraph::splice(int node, int s1, int s2) {
    End a = detach(node, s1);
    End b = detach(node, s2);
    return join(a, b);
}

void PortGraph::remove_node(int node) {
    for (const End& e : nodes_.at(node).slots)
        if (e.edge >= 0) throw InternalConsistencyError("remove_node: node still has attached edges");
    nodes_.erase(node);
    bond_tails_.erase(node);
}

void PortGraph::remove_edge(int edge) {
    const PEdge& e = edges_.at(edge);
    if (e.tail.valid() || e.head.valid()) throw InternalConsistencyError("remove_edge: edge still attached");
    edges_.erase(edge);
}

void PortGraph::rotate_node(int node, int by) {
    PNode& n = nodes_.at(node);
    const int deg = n.degree();
    std::vector<End> old = n.slots;
    for (int i = 0; i < deg; ++i) {
        End e = old[(i + by % deg + deg) % deg];
        n.slots[i] = e;
        if (e.edge >= 0) {
            PEdge& pe = edges_.at(e.edge);
            (e.head ? pe.head : pe.tail) = Port{node, i};
        }
    }
}

Port PortGraph::dart_end(Dart d) const {
    const PEdge& e = edges_.at(d.edge);
    return d.forward ? e.head : e.tail;
}

Port PortGraph::dart_start(Dart d) const {
    const PEdge& e = edges_.at(d.edge);
    return d.forward ? e.tail : e.head;
}

Dart PortGraph::next_in_face(Dart d) const {
    Port p = dart_end(d);
    const PNode& n = nodes_.at(p.node);
    int j = (p.slot - 1 + n.degree()) % n.degree();
    End x = n.slots[j];
    return Dart{x.edge, !x.head};
}

std::vector<std::vector<Dart>> PortGraph::faces() const {
    std::set<Dart> seen;
    std::vector<std::vector<Dart>> out;
    for (const auto& [id, e] : edges_) {
        if (!e.tail.valid() || !e.head.valid()) continue;
        for (bool f : {true, false}) {
            Dart d{id, f};
            if (seen.count(d)) continue;
            std::vector<Dart> face;
            Dart cur = d;
            while (!seen.count(cur)) {
                seen.insert(cur);
                face.push_back(cur);
                cur = next_in_face(cur);
            }
            out.push_back(std::move(face));
        }
    }
    return out;
}

std::map<int, int> PortGraph::node_components() const {
    std::map<int, int> idx;
    std::vector<int> ids;
    for (const auto& [id, n] : nodes_) {
        idx[id] = static_cast<int>(ids.size());
        ids.push_back(id);
    }
    std::vector<int> parent(ids.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [id, e] : edges_)
        if (e.tail.valid() && e.head.valid()) parent[find(idx[e.tail.node])] = find(idx[e.head.node]);
    std::map<int, int> comp;
    for (const auto& [id, n] : nodes_) comp[id] = ids[find(idx[id])];
    return comp;
}

std::vector<int> PortGraph::genus_defects() const {
    auto comp = node_components();
    std::map<int, int> chi;
    for (const auto& [id, c] : comp) chi[c] += 1;
    for (const auto& [id, e] : edges_)
        if (e.tail.valid()) chi[comp[e.tail.node]] -= 1;
    for (const auto& f : faces()) chi[comp[dart_start(f.front()).node]] += 1;
    std::vector<int> defects;
    for (const auto& [c, x] : chi)
        if (x != 2) defects.push_back(x - 2);
    return defects;
}

std::vector<Dart> PortGraph::strand_from(Dart start) const {
    std::vector<Dart> out;
    Dart cur = start;
    for (size_t guard = 0; guard <= edges_.size(); ++guard) {
        out.push_back(cur);
        Port p = dart_end(cur);
        if (!p.valid()) break;
        const PNode& n = nodes_.at(p.node);
        int ns;
        if (n.crossing) {
            ns = (p.slot + 2) % 4;
        } else {
            int b = bond_slot(p.node);
            if (p.slot == b) break;
            ns = 3 - b - p.slot;  // the other chain slot
        }
        End x = n.slots[ns];
        if (x.edge < 0) break;
        Dart next{x.edge, !x.head};
        if (next == start) break;
        cur = next;
    }
    return out;
}

void PortGraph::orient(bool guess) {
    auto flip = [&](int id) {
        PEdge& e = edges_.at(id);
        std::swap(e.tail, e.head);
        if (e.tail.valid()) nodes_.at(e.tail.node).slots[e.tail.slot].head = false;
        if (e.head.valid()) nodes_.at(e.head.node).slots[e.head.slot].head = true;
    };
    std::set<int> done;
    for (int u : bond_tails_) {
        int b = bond_slot(u);
        if (b < 0) continue;
        End x = nodes_.at(u).slots[b];
        for (const Dart& d : strand_from(Dart{x.edge, !x.head})) {
            if (!d.forward) flip(d.edge);
            edges_.at(d.edge).trusted = true;
            done.insert(d.edge);
        }
    }
    for (const auto& [id, e] : edges_) {
        if (done.count(id) || e.free_loop() || e.kind == EdgeKind::Bond) continue;
        auto strand = strand_from(Dart{id, true});
        const Dart* ref = nullptr;
        for (const auto& d : strand)
            if (edges_.at(d.edge).trusted) {
                ref = &d;
                break;
            }
        if (!ref && !guess) throw InternalConsistencyError("chain strand without a known orientation");
        const bool want = ref ? ref->forward : true;
        for (const auto& d : strand) {
            if (d.forward != want) flip(d.edge);
            done.insert(d.edge);
        }
    }
    for (auto& [id, e] : edges_) e.trusted = true;
}

BondedDiagram PortGraph::to_diagram(bool guess_orientation) const {
    PortGraph g = *this;
    g.orient(guess_orientation);
    for (auto& [id, n] : g.nodes_)
        if (n.crossing && !n.slots[0].head) g.rotate_node(id, 2);
    BondedDiagram d;
    for (const auto& [id, e] : g.edges_) {
        if (e.tail.valid() != e.head.valid()) throw InternalConsistencyError("dangling edge end left after rewrite");
        d.edges.push_back({id, e.kind, e.twists});
    }
    for (const auto& [id, n] : g.nodes_) {
        for (const End& x : n.slots)
            if (x.edge < 0) throw InternalConsistencyError("empty slot left after rewrite");
        if (n.crossing) {
            Crossing c;
            c.id = id;
            for (int s = 0; s < 4; ++s) c.incident[s] = {n.slots[s].edge, !n.slots[s].head};
            d.crossings.push_back(c);
        } else {
            BondVertex v;
            v.id = id;
            for (int s = 0; s < 3; ++s) v.incident[s] = {n.slots[s].edge, !n.slots[s].head};
            d.bond_vertices.push_back(v);
        }
    }
    auto violations = validate(d);
    if (!violations.empty()) {
        std::string msg = "rewrite produced an invalid diagram:";
        for (const auto& v : violations) msg += "\n  " + v.element + ": " + v.rule;
        throw InternalConsistencyError(msg);
    }
    return canonicalize(std::move(d));
}

}  // namespace bkb
