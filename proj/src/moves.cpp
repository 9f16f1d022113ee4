#include "bondedkb/moves.hpp"

#include "bondedkb/errors.hpp"
#include "bondedkb/port_graph.hpp"

#include <array>
#include <optional>
#include <random>

namespace bkb {

namespace {

// A rigid bond rotated about its own axis twists its two end vertices in
// opposite senses when each is viewed in its own frame (bond pointing up).
constexpr bool kRvOppositeSigns = true;

void need(bool cond, const std::string& msg) {
    if (!cond) throw MoveError(msg);
}

std::map<int, int> bond_arcs(const PortGraph& g) {
    std::map<int, int> arc;
    int idx = 0;
    for (const auto& [id, n] : g.nodes()) {
        if (n.crossing || !g.is_bond_tail(id)) continue;
        End x = n.slots[g.bond_slot(id)];
        for (const Dart& d : g.strand_from(Dart{x.edge, !x.head})) arc[d.edge] = idx;
        ++idx;
    }
    return arc;
}

bool is_crossing(const PortGraph& g, Port p) { return p.valid() && g.node(p.node).crossing; }
bool is_vertex(const PortGraph& g, Port p) { return p.valid() && !g.node(p.node).crossing; }

void attach_all(PortGraph& g, int node, const std::array<End, 4>& ends) {
    for (int i = 0; i < 4; ++i) g.attach(ends[i], node, i);
}

// ---------------------------------------------------------------- I

void kink_create(PortGraph& g, int e, bool left, bool positive) {
    need(g.edges().count(e) > 0, "I: no edge " + std::to_string(e));
    need(g.edge(e).kind == EdgeKind::Chain, "I: kinks are only created on chain edges");
    End in, out;
    if (g.edge(e).free_loop()) {
        auto [t, h] = g.cut_free(e);
        in = h;
        out = t;
    } else {
        auto [nt, eh] = g.cut_near(e, true);
        in = eh;
        out = nt;
    }
    int L = g.add_edge(EdgeKind::Chain, 0, true);
    End Lt{L, false}, Lh{L, true};
    int c = g.add_node(true, 4);
    if (left && positive)
        attach_all(g, c, {in, out, Lt, Lh});
    else if (left)
        attach_all(g, c, {Lh, in, out, Lt});
    else if (!positive)
        attach_all(g, c, {in, Lh, Lt, out});
    else
        attach_all(g, c, {Lh, Lt, out, in});
}

int kink_loop_slot(const PortGraph& g, int c) {
    const auto& n = g.node(c);
    for (int j = 0; j < 4; ++j)
        if (n.slots[j].edge == n.slots[(j + 1) % 4].edge) return j;
    return -1;
}

void kink_remove(PortGraph& g, int c, int sign) {
    need(g.nodes().count(c) && g.node(c).crossing, "I^-1: no crossing " + std::to_string(c));
    int j = kink_loop_slot(g, c);
    need(j >= 0, "I^-1: crossing has no kink loop");
    need(g.edge(g.end_at(c, j).edge).kind == EdgeKind::Chain, "I^-1: kink loop is not a chain edge");
    int s = g.end_at(c, 1).head ? -1 : 1;
    need(s == sign, "I^-1: kink has the other sign");
    g.splice(c, 0, 2);
    g.splice(c, 1, 3);
    g.remove_node(c);
}

// ---------------------------------------------------------------- II

// Two cut points along a dart. Ends: a (before first), m1/m2 (middle piece at
// first/second point), b (after second), ordered along the dart.
struct Split {
    End a, m1, m2, b;
};

Split split_for_dart(PortGraph& g, int e, bool fwd) {
    if (g.edge(e).free_loop()) {
        g.cut_free(e);
        auto [nt, eh] = g.cut_near(e, true);
        const int n = nt.edge;
        if (fwd) return {End{n, true}, End{e, false}, End{e, true}, End{n, false}};
        return {End{e, false}, End{n, true}, End{n, false}, End{e, true}};
    }
    if (fwd) {
        auto [n1h, et] = g.cut_near(e, false);
        auto [n2t, eh] = g.cut_near(e, true);
        return {n1h, et, eh, n2t};
    }
    auto [n1t, eh] = g.cut_near(e, true);
    auto [n2h, et] = g.cut_near(e, false);
    return {n1t, eh, et, n2h};
}

struct FaceInfo {
    std::map<Dart, int> face_of;
    std::map<int, int> comp;  // node -> component
    std::vector<std::vector<Dart>> faces;
};

FaceInfo face_info(const PortGraph& g) {
    FaceInfo f;
    f.faces = g.faces();
    for (size_t i = 0; i < f.faces.size(); ++i)
        for (const Dart& d : f.faces[i]) f.face_of[d] = static_cast<int>(i);
    f.comp = g.node_components();
    return f;
}

// Component id of a dart; free loops get their own negative ids.
int dart_component(const PortGraph& g, const FaceInfo& f, Dart d) {
    if (g.edge(d.edge).free_loop()) return -1 - d.edge;
    return f.comp.at(g.dart_start(d).node);
}

bool bigon_pushable(const PortGraph& g, const FaceInfo& f, const std::map<int, int>& arcs, Dart d1, Dart d2) {
    if (d1.edge == d2.edge) return false;
    auto a1 = arcs.find(d1.edge), a2 = arcs.find(d2.edge);
    if (a1 != arcs.end() && a2 != arcs.end() && a1->second == a2->second) return false;
    int c1 = dart_component(g, f, d1), c2 = dart_component(g, f, d2);
    if (c1 != c2) return true;
    return f.face_of.at(d1) == f.face_of.at(d2);
}

void bigon_create(PortGraph& g, Dart d1, Dart d2, bool e_over) {
    need(g.edges().count(d1.edge) && g.edges().count(d2.edge), "II: unknown edge");
    FaceInfo f = face_info(g);
    need(bigon_pushable(g, f, bond_arcs(g), d1, d2), "II: darts do not bound a common face");
    Split E = split_for_dart(g, d1.edge, d1.forward);
    Split F = split_for_dart(g, d2.edge, d2.forward);
    // Along d1 the new crossings come X then Y; along d2, Y then X.
    int X = g.add_node(true, 4);
    attach_all(g, X, {F.m2, E.m1, F.b, E.a});
    int Y = g.add_node(true, 4);
    attach_all(g, Y, {F.a, E.m2, F.m1, E.b});
    if (!e_over) {
        g.rotate_node(X, 1);
        g.rotate_node(Y, 1);
    }
}

bool is_removable_bigon(const PortGraph& g, Dart d) {
    if (!g.edges().count(d.edge)) return false;
    Port s = g.dart_start(d), t = g.dart_end(d);
    if (!is_crossing(g, s) || !is_crossing(g, t) || s.node == t.node) return false;
    Dart d2 = g.next_in_face(d);
    if (d2 == d || g.next_in_face(d2) != d) return false;
    return (s.slot % 2) == (t.slot % 2);
}

void bigon_remove(PortGraph& g, Dart d) {
    need(is_removable_bigon(g, d), "II^-1: dart does not bound a removable bigon");
    int X = g.dart_start(d).node, Y = g.dart_end(d).node;
    for (int n : {X, Y}) {
        g.splice(n, 0, 2);
        g.splice(n, 1, 3);
        g.remove_node(n);
    }
}

// ---------------------------------------------------------------- III

bool is_triangle_move(const PortGraph& g, Dart d) {
    if (!g.edges().count(d.edge)) return false;
    Port s = g.dart_start(d), t = g.dart_end(d);
    if (!is_crossing(g, s) || !is_crossing(g, t)) return false;
    Dart d1 = g.next_in_face(d);
    Port z = g.dart_end(d1);
    if (!is_crossing(g, z)) return false;
    Dart d2 = g.next_in_face(d1);
    if (g.next_in_face(d2) != d) return false;
    if (d.edge == d1.edge || d1.edge == d2.edge || d.edge == d2.edge) return false;
    if (s.node == t.node || t.node == z.node || s.node == z.node) return false;
    return (s.slot % 2) == (t.slot % 2);
}

void triangle_move(PortGraph& g, Dart d) {
    need(is_triangle_move(g, d), "III: dart does not start a triangle with an extreme strand");
    Dart d1 = g.next_in_face(d), d2 = g.next_in_face(d1);
    const int X = g.dart_start(d).node, Y = g.dart_end(d).node, Z = g.dart_end(d1).node;
    const int s = g.dart_start(d).slot, t = g.dart_end(d).slot, r = g.dart_end(d1).slot;
    const bool a_over_X = s % 2, a_over_Y = t % 2, b_over_Z = r % 2;
    const End aL = g.end_at(X, (s + 2) % 4), cD = g.end_at(X, (s + 3) % 4);
    const End aR = g.end_at(Y, (t + 2) % 4), bD = g.end_at(Y, (t + 1) % 4);
    const End cU = g.end_at(Z, (r + 1) % 4), bU = g.end_at(Z, (r + 2) % 4);
    const int eXY = d.edge, eYZ = d1.edge, eZX = d2.edge;
    for (int n : {X, Y, Z}) {
        for (int k = 0; k < 4; ++k) g.detach(n, k);
        g.remove_node(n);
    }
    for (int e : {eXY, eYZ, eZX}) g.set_trusted(e, false);
    // The moving strand a now crosses b at P and c at Q beyond the b-c crossing.
    int P = g.add_node(true, 4);
    attach_all(g, P, {End{eXY, false}, bU, aL, End{eYZ, true}});
    if (a_over_Y) g.rotate_node(P, 1);
    int Q = g.add_node(true, 4);
    attach_all(g, Q, {aR, cU, End{eXY, true}, End{eZX, true}});
    if (a_over_X) g.rotate_node(Q, 1);
    int Zp = g.add_node(true, 4);
    attach_all(g, Zp, {End{eZX, false}, End{eYZ, false}, cD, bD});
    if (!b_over_Z) g.rotate_node(Zp, 1);
}

// ---------------------------------------------------------------- IV

// Returns the over flag of the strand crossing the bond next to u, if any.
std::optional<bool> slide_off_pattern(const PortGraph& g, int u) {
    if (!g.nodes().count(u) || g.node(u).crossing) return std::nullopt;
    Port cp = g.across(u, g.bond_slot(u));
    if (!is_crossing(g, cp)) return std::nullopt;
    return ((cp.slot + 1) % 4) % 2 == 1;
}

void slide_off(PortGraph& g, int u, bool s_over) {
    auto pat = slide_off_pattern(g, u);
    need(pat.has_value(), "IV: bond at vertex " + std::to_string(u) + " has no adjacent crossing");
    need(*pat == s_over, "IV: strand has the other over/under relation");
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    const Port cp = g.across(u, b);
    const int c = cp.node, k = cp.slot;
    End sW = g.detach(c, (k + 3) % 4);
    End sE = g.detach(c, (k + 1) % 4);
    const EdgeKind skind = g.edge(sW.edge).kind;
    g.splice(c, k, (k + 2) % 4);
    g.remove_node(c);
    End xe = g.end_at(u, xs);
    auto [x_u, x_far] = g.cut_near(xe.edge, xe.head);
    End ye = g.end_at(u, ys);
    auto [y_u, y_far] = g.cut_near(ye.edge, ye.head);
    int m = g.add_edge(skind, 0, false);
    int Cx = g.add_node(true, 4);
    attach_all(g, Cx, {End{m, false}, x_u, sW, x_far});
    int Cy = g.add_node(true, 4);
    attach_all(g, Cy, {sE, y_u, End{m, true}, y_far});
    if (s_over) {
        g.rotate_node(Cx, 1);
        g.rotate_node(Cy, 1);
    }
}

std::optional<bool> slide_on_pattern(const PortGraph& g, int u) {
    if (!g.nodes().count(u) || g.node(u).crossing) return std::nullopt;
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    Port px = g.across(u, xs), py = g.across(u, ys);
    if (!is_crossing(g, px) || !is_crossing(g, py) || px.node == py.node) return std::nullopt;
    const int kx = px.slot, ky = py.slot;
    if (g.across(px.node, (kx + 3) % 4) != Port{py.node, (ky + 1) % 4}) return std::nullopt;
    const bool over_x = ((kx + 3) % 4) % 2 == 1;
    const bool over_y = ((ky + 1) % 4) % 2 == 1;
    if (over_x != over_y) return std::nullopt;
    // A bond cannot be pulled across itself.
    const int m = g.end_at(px.node, (kx + 3) % 4).edge;
    if (g.edge(m).kind == EdgeKind::Bond) {
        auto arcs = bond_arcs(g);
        if (arcs.at(m) == arcs.at(g.end_at(u, b).edge)) return std::nullopt;
    }
    return over_x;
}

void slide_on(PortGraph& g, int u, bool s_over) {
    auto pat = slide_on_pattern(g, u);
    need(pat.has_value(), "IV^-1: no crossing pair to pull back at vertex " + std::to_string(u));
    need(*pat == s_over, "IV^-1: strand has the other over/under relation");
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    const Port px = g.across(u, xs), py = g.across(u, ys);
    const int Cx = px.node, Cy = py.node, kx = px.slot, ky = py.slot;
    End m1 = g.detach(Cx, (kx + 3) % 4);
    g.detach(Cy, (ky + 1) % 4);
    g.remove_edge(m1.edge);
    g.splice(Cx, kx, (kx + 2) % 4);
    g.splice(Cy, ky, (ky + 2) % 4);
    End sW = g.detach(Cx, (kx + 1) % 4);
    End sE = g.detach(Cy, (ky + 3) % 4);
    g.remove_node(Cx);
    g.remove_node(Cy);
    End eb = g.end_at(u, b);
    auto [bu, bfar] = g.cut_near(eb.edge, eb.head);
    int c = g.add_node(true, 4);
    attach_all(g, c, {sE, bfar, sW, bu});
    if (s_over) g.rotate_node(c, 1);
}

// ---------------------------------------------------------------- V / RV

void vertex_twist(PortGraph& g, int u, bool positive) {
    need(g.nodes().count(u) && !g.node(u).crossing, "V: no bond vertex " + std::to_string(u));
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    End ex = g.detach(u, xs);
    End ey = g.detach(u, ys);
    int np = g.add_edge(EdgeKind::Chain, 0, false);
    int nq = g.add_edge(EdgeKind::Chain, 0, false);
    g.attach({np, false}, u, xs);
    g.attach({nq, false}, u, ys);
    int c = g.add_node(true, 4);
    // (q-top, x-far) is the over pair of a positive twist.
    attach_all(g, c, {End{nq, true}, End{np, true}, ex, ey});
    if (positive) g.rotate_node(c, 1);
}

int twist_sign(const PortGraph& g, int u) {
    if (!g.nodes().count(u) || g.node(u).crossing) return 0;
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    if (g.end_at(u, xs).edge == g.end_at(u, ys).edge) return 0;
    Port pp = g.across(u, xs), pq = g.across(u, ys);
    if (!is_crossing(g, pp) || !is_crossing(g, pq) || pp.node != pq.node) return 0;
    if (pq.slot != (pp.slot + 3) % 4) return 0;
    return pq.slot % 2 == 1 ? 1 : -1;
}

int vertex_untwist(PortGraph& g, int u) {
    const int sign = twist_sign(g, u);
    need(sign != 0, "V^-1: vertex " + std::to_string(u) + " is not twisted");
    const int b = g.bond_slot(u), xs = (b + 1) % 3, ys = (b + 2) % 3;
    const Port pp = g.across(u, xs), pq = g.across(u, ys);
    const int c = pp.node;
    End a1 = g.detach(u, xs);
    End a2 = g.detach(u, ys);
    g.detach(c, pp.slot);
    g.detach(c, pq.slot);
    g.remove_edge(a1.edge);
    g.remove_edge(a2.edge);
    End xfar = g.detach(c, (pq.slot + 2) % 4);
    End yfar = g.detach(c, (pp.slot + 2) % 4);
    g.remove_node(c);
    g.attach(xfar, u, xs);
    g.attach(yfar, u, ys);
    return sign;
}

int bond_partner(const PortGraph& g, int u) {
    Port p = g.across(u, g.bond_slot(u));
    return is_vertex(g, p) ? p.node : -1;
}

int partner_sign(int s) { return kRvOppositeSigns ? -s : s; }

void rigid_rotate(PortGraph& g, int u, bool positive) {
    need(g.nodes().count(u) && !g.node(u).crossing, "RV: no bond vertex " + std::to_string(u));
    const int v = bond_partner(g, u);
    need(v >= 0, "RV: bond at vertex " + std::to_string(u) + " has crossings");
    vertex_twist(g, u, positive);
    vertex_twist(g, v, partner_sign(positive ? 1 : -1) > 0);
}

bool rigid_unrotate_applicable(const PortGraph& g, int u) {
    if (!g.nodes().count(u) || g.node(u).crossing) return false;
    const int v = bond_partner(g, u);
    if (v < 0) return false;
    const int su = twist_sign(g, u), sv = twist_sign(g, v);
    if (su == 0 || sv != partner_sign(su)) return false;
    // the two twist crossings must differ (they always do for a bond with distinct ends)
    return g.across(u, (g.bond_slot(u) + 1) % 3).node != g.across(v, (g.bond_slot(v) + 1) % 3).node;
}

void rigid_unrotate(PortGraph& g, int u) {
    need(rigid_unrotate_applicable(g, u), "RV^-1: bond ends are not twisted as a rigid rotation");
    const int v = bond_partner(g, u);
    vertex_untwist(g, u);
    vertex_untwist(g, v);
}

bool bond_slide_applicable(const PortGraph& g, int u) {
    if (!g.nodes().count(u) || g.node(u).crossing) return false;
    return bond_partner(g, u) >= 0 && twist_sign(g, u) != 0;
}

// Equivalent to RV with the opposite sign followed by cancelling the bigon at u.
void bond_slide(PortGraph& g, int u) {
    need(bond_slide_applicable(g, u), "bond_slide: vertex is not twisted on a crossing-free bond");
    const int v = bond_partner(g, u);
    const int s = vertex_untwist(g, u);
    vertex_twist(g, v, partner_sign(-s) > 0);
}

}  // namespace

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::I_pos: return "I+";
        case MoveKind::I_neg: return "I-";
        case MoveKind::II: return "II";
        case MoveKind::III: return "III";
        case MoveKind::IV: return "IV";
        case MoveKind::IV_prime: return "IV'";
        case MoveKind::V: return "V";
        case MoveKind::RV: return "RV";
        case MoveKind::BondSlide: return "bond_slide";
    }
    return "?";
}

std::string MoveSite::to_string() const {
    std::string s = move_name(move);
    if (inverse) s += "^-1";
    auto dart = [](int e, bool f) { return std::to_string(e) + (f ? "f" : "r"); };
    switch (move) {
        case MoveKind::II:
            if (inverse)
                s += " a=" + dart(a, a_forward);
            else
                s += " a=" + dart(a, a_forward) + " b=" + dart(b, b_forward) + (flag ? " over" : " under");
            break;
        case MoveKind::III: s += " a=" + dart(a, a_forward); break;
        case MoveKind::I_pos:
        case MoveKind::I_neg: s += " a=" + std::to_string(a) + (inverse ? "" : (flag ? " left" : " right")); break;
        case MoveKind::V:
        case MoveKind::RV: s += " a=" + std::to_string(a) + (inverse ? "" : (flag ? " +" : " -")); break;
        default: s += " a=" + std::to_string(a); break;
    }
    return s;
}

int crossing_delta(const MoveSite& s) {
    int sign = s.inverse ? -1 : 1;
    switch (s.move) {
        case MoveKind::I_pos:
        case MoveKind::I_neg:
        case MoveKind::IV:
        case MoveKind::IV_prime:
        case MoveKind::V: return sign;
        case MoveKind::II:
        case MoveKind::RV: return 2 * sign;
        case MoveKind::III:
        case MoveKind::BondSlide: return 0;
    }
    return 0;
}

BondedDiagram apply_move(const BondedDiagram& d, const MoveSite& s) {
    PortGraph g(d);
    switch (s.move) {
        case MoveKind::I_pos:
        case MoveKind::I_neg: {
            const bool pos = s.move == MoveKind::I_pos;
            if (s.inverse)
                kink_remove(g, s.a, pos ? 1 : -1);
            else
                kink_create(g, s.a, s.flag, pos);
            break;
        }
        case MoveKind::II:
            if (s.inverse)
                bigon_remove(g, Dart{s.a, s.a_forward});
            else
                bigon_create(g, Dart{s.a, s.a_forward}, Dart{s.b, s.b_forward}, s.flag);
            break;
        case MoveKind::III: triangle_move(g, Dart{s.a, s.a_forward}); break;
        case MoveKind::IV:
        case MoveKind::IV_prime: {
            const bool over = s.move == MoveKind::IV;
            if (s.inverse)
                slide_on(g, s.a, over);
            else
                slide_off(g, s.a, over);
            break;
        }
        case MoveKind::V:
            if (s.inverse)
                vertex_untwist(g, s.a);
            else
                vertex_twist(g, s.a, s.flag);
            break;
        case MoveKind::RV:
            if (s.inverse)
                rigid_unrotate(g, s.a);
            else
                rigid_rotate(g, s.a, s.flag);
            break;
        case MoveKind::BondSlide: bond_slide(g, s.a); break;
    }
    return g.to_diagram();
}

std::vector<MoveSite> enumerate_sites(const BondedDiagram& d, MoveKind kind, bool inverse) {
    PortGraph g(d);
    std::vector<MoveSite> out;
    auto site = [&](int a) {
        MoveSite s;
        s.move = kind;
        s.inverse = inverse;
        s.a = a;
        return s;
    };
    std::vector<int> vertices, crossings;
    for (const auto& [id, n] : g.nodes()) (n.crossing ? crossings : vertices).push_back(id);

    switch (kind) {
        case MoveKind::I_pos:
        case MoveKind::I_neg: {
            const int sign = kind == MoveKind::I_pos ? 1 : -1;
            if (inverse) {
                for (int c : crossings) {
                    int j = kink_loop_slot(g, c);
                    if (j < 0 || g.edge(g.end_at(c, j).edge).kind != EdgeKind::Chain) continue;
                    if ((g.end_at(c, 1).head ? -1 : 1) == sign) out.push_back(site(c));
                }
            } else {
                for (const auto& [id, e] : g.edges()) {
                    if (e.kind != EdgeKind::Chain) continue;
                    for (bool left : {true, false}) {
                        MoveSite s = site(id);
                        s.flag = left;
                        out.push_back(s);
                    }
                }
            }
            break;
        }
        case MoveKind::II: {
            FaceInfo f = face_info(g);
            if (inverse) {
                for (const auto& face : f.faces)
                    if (face.size() == 2 && is_removable_bigon(g, face[0])) {
                        MoveSite s = site(face[0].edge);
                        s.a_forward = face[0].forward;
                        out.push_back(s);
                    }
                break;
            }
            auto arcs = bond_arcs(g);
            std::vector<Dart> darts;
            for (const auto& [id, e] : g.edges())
                for (bool fw : {true, false}) darts.push_back({id, fw});
            for (const Dart& d1 : darts)
                for (const Dart& d2 : darts) {
                    if (d1.edge >= d2.edge) continue;
                    if (!bigon_pushable(g, f, arcs, d1, d2)) continue;
                    for (bool over : {true, false}) {
                        MoveSite s = site(d1.edge);
                        s.a_forward = d1.forward;
                        s.b = d2.edge;
                        s.b_forward = d2.forward;
                        s.flag = over;
                        out.push_back(s);
                    }
                }
            break;
        }
        case MoveKind::III: {
            if (inverse) break;
            for (const auto& face : g.faces()) {
                if (face.size() != 3) continue;
                for (const Dart& dd : face)
                    if (is_triangle_move(g, dd)) {
                        MoveSite s = site(dd.edge);
                        s.a_forward = dd.forward;
                        out.push_back(s);
                    }
            }
            break;
        }
        case MoveKind::IV:
        case MoveKind::IV_prime: {
            const bool over = kind == MoveKind::IV;
            for (int u : vertices) {
                auto pat = inverse ? slide_on_pattern(g, u) : slide_off_pattern(g, u);
                if (pat && *pat == over) out.push_back(site(u));
            }
            break;
        }
        case MoveKind::V:
            for (int u : vertices) {
                if (inverse) {
                    if (twist_sign(g, u) != 0) out.push_back(site(u));
                } else {
                    for (bool pos : {true, false}) {
                        MoveSite s = site(u);
                        s.flag = pos;
                        out.push_back(s);
                    }
                }
            }
            break;
        case MoveKind::RV:
            for (int u : vertices) {
                if (!g.is_bond_tail(u)) continue;
                if (inverse) {
                    if (rigid_unrotate_applicable(g, u)) out.push_back(site(u));
                } else if (bond_partner(g, u) >= 0) {
                    for (bool pos : {true, false}) {
                        MoveSite s = site(u);
                        s.flag = pos;
                        out.push_back(s);
                    }
                }
            }
            break;
        case MoveKind::BondSlide:
            if (inverse) break;
            for (int u : vertices)
                if (bond_slide_applicable(g, u)) out.push_back(site(u));
            break;
    }
    return out;
}

int vertex_twist_sign(const BondedDiagram& d, int vertex) {
    PortGraph g(d);
    return twist_sign(g, vertex);
}

RandomMovesResult random_moves(const BondedDiagram& d, int count, std::uint64_t seed, const RandomMoveOptions& opts) {
    RandomMovesResult r{canonicalize(d), {}, 0};
    if (count <= 0 || opts.kinds.empty()) return r;
    std::mt19937_64 rng(seed);
    int applied = 0;
    const long budget = 60L * count + 200;
    for (long attempt = 0; attempt < budget && applied < count; ++attempt) {
        const MoveKind kind = opts.kinds[rng() % opts.kinds.size()];
        const bool has_inverse = kind != MoveKind::III && kind != MoveKind::BondSlide;
        const bool inverse = opts.allow_inverse && has_inverse && (rng() & 1u);
        MoveSite probe;
        probe.move = kind;
        probe.inverse = inverse;
        if (static_cast<int>(r.diagram.crossings.size()) + crossing_delta(probe) > opts.max_crossings) continue;
        auto sites = enumerate_sites(r.diagram, kind, inverse);
        if (sites.empty()) continue;
        const MoveSite s = sites[rng() % sites.size()];
        const int w0 = writhe(r.diagram);
        r.diagram = apply_move(r.diagram, s);
        const int dw = writhe(r.diagram) - w0;
        r.log.push_back({s, dw});
        if (kind == MoveKind::I_pos || kind == MoveKind::I_neg) r.kink_writhe += dw;
        ++applied;
    }
    return r;
}

}  // namespace bkb
