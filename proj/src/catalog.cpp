#include "bondedkb/catalog.hpp"

#include "bondedkb/errors.hpp"
#include "bondedkb/port_graph.hpp"

#include <map>
#include <set>

namespace bkb::catalog {

namespace {

EdgeRef in(int e) { return {e, false}; }
EdgeRef out(int e) { return {e, true}; }

}  // namespace

BondedDiagram unknot(int half_twists) {
    BondedDiagram d;
    d.edges.push_back({0, EdgeKind::Chain, half_twists});
    return d;
}

BondedDiagram theta() {
    BondedDiagram d;
    d.edges = {{0, EdgeKind::Bond, 0}, {1, EdgeKind::Chain, 0}, {2, EdgeKind::Chain, 0}};
    d.bond_vertices = {{0, {out(0), out(1), in(2)}}, {1, {in(0), out(2), in(1)}}};
    return canonicalize(d);
}

BondedDiagram handcuff() {
    BondedDiagram d;
    d.edges = {{0, EdgeKind::Bond, 0}, {1, EdgeKind::Chain, 0}, {2, EdgeKind::Chain, 0}};
    d.bond_vertices = {{0, {out(0), out(1), in(1)}}, {1, {in(0), out(2), in(2)}}};
    return canonicalize(d);
}

BondedDiagram double_bond() {
    BondedDiagram d;
    d.edges = {{0, EdgeKind::Bond, 0},  {1, EdgeKind::Bond, 0},  {2, EdgeKind::Chain, 0},
               {3, EdgeKind::Chain, 0}, {4, EdgeKind::Chain, 0}, {5, EdgeKind::Chain, 0}};
    d.bond_vertices = {{0, {out(0), out(2), in(3)}},
                       {1, {out(1), out(3), in(2)}},
                       {2, {in(0), out(4), in(5)}},
                       {3, {in(1), out(5), in(4)}}};
    return canonicalize(d);
}

BondedDiagram trefoil() { return from_pd({{{1, 5, 2, 4}}, {{3, 1, 4, 6}}, {{5, 3, 6, 2}}}); }

BondedDiagram hopf() {
    BondedDiagram d = from_pd({{{1, 3, 2, 4}}, {{4, 2, 3, 1}}});
    if (writhe(d) < 0) d = flip_crossing(flip_crossing(d, 0), 1);
    return d;
}

BondedDiagram from_pd(const std::vector<std::array<int, 4>>& pd) {
    // direction[label] : crossing index and slot where the label is outgoing
    std::map<int, std::vector<std::pair<int, int>>> seen;
    for (size_t c = 0; c < pd.size(); ++c)
        for (int s = 0; s < 4; ++s) seen[pd[c][s]].push_back({static_cast<int>(c), s});
    for (const auto& [label, where] : seen)
        if (where.size() != 2) throw ParseError("PD label " + std::to_string(label) + " must occur exactly twice");
    // is_out[c][s]
    std::vector<std::array<int, 4>> is_out(pd.size(), {-1, -1, -1, -1});
    auto set = [&](int c, int s, int v, bool& changed) {
        if (is_out[c][s] == v) return;
        if (is_out[c][s] != -1) throw ParseError("PD code has inconsistent strand directions");
        is_out[c][s] = v;
        changed = true;
    };
    bool changed = true;
    for (size_t c = 0; c < pd.size(); ++c) {
        set(static_cast<int>(c), 0, 0, changed);
        set(static_cast<int>(c), 2, 1, changed);
    }
    auto propagate = [&] {
        while (changed) {
            changed = false;
            for (const auto& [label, where] : seen) {
                auto [c0, s0] = where[0];
                auto [c1, s1] = where[1];
                if (is_out[c0][s0] >= 0) set(c1, s1, 1 - is_out[c0][s0], changed);
                if (is_out[c1][s1] >= 0) set(c0, s0, 1 - is_out[c1][s1], changed);
            }
            for (size_t c = 0; c < pd.size(); ++c)
                for (int s : {1, 3})
                    if (is_out[c][s] >= 0) set(static_cast<int>(c), (s + 2) % 4, 1 - is_out[c][s], changed);
        }
    };
    propagate();
    // Components that only pass over: follow the label order.
    for (size_t c = 0; c < pd.size(); ++c)
        if (is_out[c][1] < 0) {
            set(static_cast<int>(c), 1, pd[c][3] == pd[c][1] + 1 ? 0 : 1, changed);
            propagate();
        }
    BondedDiagram d;
    for (const auto& [label, where] : seen) d.edges.push_back({label, EdgeKind::Chain, 0});
    for (size_t c = 0; c < pd.size(); ++c) {
        Crossing x;
        x.id = static_cast<int>(c);
        for (int s = 0; s < 4; ++s) x.incident[s] = {pd[c][s], is_out[c][s] == 1};
        d.crossings.push_back(x);
    }
    d = canonicalize(d);
    require_valid(d);
    return d;
}

BondedDiagram connect_sum(const BondedDiagram& a, int ea, const BondedDiagram& b, int eb) {
    int emax = -1;
    for (const auto& e : a.edges) emax = std::max(emax, e.id);
    BondedDiagram u = disjoint_union(a, b);
    const int eb2 = eb + emax + 1;
    PortGraph g(u);
    if (!g.edges().count(ea) || !g.edges().count(eb2)) throw MoveError("connect_sum: unknown edge");
    if (g.edge(ea).kind != EdgeKind::Chain || g.edge(eb2).kind != EdgeKind::Chain)
        throw MoveError("connect_sum: edges must be chain edges");
    const bool fa = g.edge(ea).free_loop(), fb = g.edge(eb2).free_loop();
    if (fa || fb) {
        // Summing with an untwisted unknot changes nothing; carry its twists over.
        const int gone = fa ? ea : eb2, keep = fa ? eb2 : ea;
        g.add_twists(keep, g.edge(gone).twists);
        g.remove_edge(gone);
        return g.to_diagram();
    }
    const Port ha = g.edge(ea).head, hb = g.edge(eb2).head;
    End xa = g.detach(ha.node, ha.slot);
    End xb = g.detach(hb.node, hb.slot);
    g.attach(xa, hb.node, hb.slot);
    g.attach(xb, ha.node, ha.slot);
    return g.to_diagram();
}

namespace {

// Splits the edge under a dart; returns (end arriving from behind, end leaving ahead).
std::pair<End, End> split_dart(PortGraph& g, int e, bool fwd) {
    if (g.edge(e).free_loop()) {
        auto [t, h] = g.cut_free(e);
        return fwd ? std::pair{h, t} : std::pair{t, h};
    }
    auto [n_end, o_end] = g.cut_near(e, true);
    return fwd ? std::pair{o_end, n_end} : std::pair{n_end, o_end};
}

}  // namespace

BondedDiagram add_bond(const BondedDiagram& d, int e1, bool fwd1, int e2, bool fwd2) {
    PortGraph g(d);
    if (!g.edges().count(e1) || !g.edges().count(e2) || e1 == e2)
        throw MoveError("add_bond: need two distinct existing edges");
    if (g.edge(e1).kind != EdgeKind::Chain || g.edge(e2).kind != EdgeKind::Chain)
        throw MoveError("add_bond: bonds attach to chain edges");
    const bool free1 = g.edge(e1).free_loop(), free2 = g.edge(e2).free_loop();
    if (!free1 && !free2) {
        bool same = false;
        for (const auto& f : g.faces()) {
            std::set<Dart> fs(f.begin(), f.end());
            if (fs.count({e1, fwd1}) && fs.count({e2, fwd2})) same = true;
        }
        if (!same) throw MoveError("add_bond: darts do not share a face");
    } else if (free1 != free2) {
        // A free loop can be drawn inside any face of the rest.
    }
    const int b = g.add_edge(EdgeKind::Bond, 0, true);
    auto place = [&](int e, bool fwd, bool tail) {
        auto [back, ahead] = split_dart(g, e, fwd);
        int v = g.add_node(false, 3);
        g.attach({b, !tail}, v, 0);
        g.attach(back, v, 1);
        g.attach(ahead, v, 2);
        if (tail) g.mark_bond_tail(v);
    };
    place(e1, fwd1, true);
    place(e2, fwd2, false);
    return g.to_diagram();
}

}  // namespace bkb::catalog
