#include "bondedkb/skein_engine.hpp"

#include "bondedkb/errors.hpp"
#include "bondedkb/moves.hpp"
#include "bondedkb/port_graph.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

namespace bkb {

namespace {

std::atomic<bool> g_fault{false};

Coefficient kink_unit(int k) {  // (-A^3)^k
    return Coefficient(IntLaurent::monomial(3 * k, (k % 2 == 0) ? 1 : -1));
}

void untrust_all(PortGraph& g) {
    std::vector<int> ids;
    for (const auto& [id, e] : g.edges()) ids.push_back(id);
    for (int id : ids) g.set_trusted(id, false);
}

void link(PortGraph& g, Port p, Port q) {
    End a = g.detach(p.node, p.slot);
    End b = g.detach(q.node, q.slot);
    g.join(a, b);
}

// Chain arcs: maximal chain paths through crossings, ending at bond vertices
// or closing up. Returned as lists of edge ids.
std::vector<std::vector<int>> chain_arcs(const PortGraph& g) {
    std::vector<std::vector<int>> arcs;
    std::set<int> done;
    for (const auto& [id, e] : g.edges()) {
        if (done.count(id) || e.kind != EdgeKind::Chain) continue;
        std::vector<int> arc{id};
        done.insert(id);
        // forward through crossings
        for (Dart d{id, true};;) {
            Port p = g.dart_end(d);
            if (!p.valid() || !g.node(p.node).crossing) break;
            End nx = g.end_at(p.node, (p.slot + 2) % 4);
            if (done.count(nx.edge)) break;
            done.insert(nx.edge);
            arc.push_back(nx.edge);
            d = Dart{nx.edge, !nx.head};
        }
        for (Dart d{id, false};;) {
            Port p = g.dart_end(d);
            if (!p.valid() || !g.node(p.node).crossing) break;
            End nx = g.end_at(p.node, (p.slot + 2) % 4);
            if (done.count(nx.edge)) break;
            done.insert(nx.edge);
            arc.push_back(nx.edge);
            d = Dart{nx.edge, !nx.head};
        }
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

// ------------------------------------------------------------------ state polynomials
//
// Monomials A^a f1^e1 f2^e2 T^t H^h with int64 coefficients, packed into a
// single key. The f-exponents are formal; the exact Coefficient is formed
// once at the end.

constexpr int kAOff = 1 << 15, kEOff = 1 << 11;

struct Mono {
    int a = 0, e1 = 0, e2 = 0, t = 0, h = 0;
};

std::uint64_t pack(const Mono& m) {
    auto chk = [](int v, int off, int bits) {
        long u = static_cast<long>(v) + off;
        if (u < 0 || u >= (1L << bits)) throw InternalConsistencyError("state monomial exponent out of range");
        return static_cast<std::uint64_t>(u);
    };
    return (chk(m.a, kAOff, 16) << 48) | (chk(m.e1, kEOff, 12) << 36) | (chk(m.e2, kEOff, 12) << 24) |
           (chk(m.t, 0, 12) << 12) | chk(m.h, 0, 12);
}

Mono unpack(std::uint64_t k) {
    Mono m;
    m.a = static_cast<int>((k >> 48) & 0xFFFF) - kAOff;
    m.e1 = static_cast<int>((k >> 36) & 0xFFF) - kEOff;
    m.e2 = static_cast<int>((k >> 24) & 0xFFF) - kEOff;
    m.t = static_cast<int>((k >> 12) & 0xFFF);
    m.h = static_cast<int>(k & 0xFFF);
    return m;
}

using Poly = std::vector<std::pair<std::uint64_t, std::int64_t>>;  // sorted by key, no zeros

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw InternalConsistencyError("state sum coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw InternalConsistencyError("state sum coefficient overflow");
    return r;
}

Poly from_map(std::unordered_map<std::uint64_t, std::int64_t>& acc) {
    Poly p;
    p.reserve(acc.size());
    for (const auto& [k, c] : acc)
        if (c != 0) p.emplace_back(k, c);
    std::sort(p.begin(), p.end());
    return p;
}

Poly poly_one() { return {{pack({}), 1}}; }

Poly poly_times(const Poly& x, const Poly& y) {
    std::unordered_map<std::uint64_t, std::int64_t> acc;
    for (const auto& [kx, cx] : x) {
        Mono mx = unpack(kx);
        for (const auto& [ky, cy] : y) {
            Mono my = unpack(ky);
            Mono m{mx.a + my.a, mx.e1 + my.e1, mx.e2 + my.e2, mx.t + my.t, mx.h + my.h};
            auto& slot = acc[pack(m)];
            slot = checked_add(slot, checked_mul(cx, cy));
        }
    }
    return from_map(acc);
}

Poly poly_sum(const Poly& x, const Poly& y) {
    Poly r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.push_back(y[j++]);
        } else {
            std::int64_t c = checked_add(x[i].second, y[j].second);
            if (c != 0) r.emplace_back(x[i].first, c);
            ++i;
            ++j;
        }
    }
    return r;
}

Poly mono_poly(std::initializer_list<std::pair<Mono, std::int64_t>> terms) {
    std::unordered_map<std::uint64_t, std::int64_t> acc;
    for (const auto& [m, c] : terms) acc[pack(m)] += c;
    return from_map(acc);
}

// delta^k = (-1)^k A^-2k f1^k
Poly delta_pow(int k) { return mono_poly({{Mono{-2 * k, k, 0, 0, 0}, k % 2 ? -1 : 1}}); }

SkeinValue to_skein(const Poly& p) {
    std::map<std::pair<int, int>, std::vector<std::pair<Mono, std::int64_t>>> groups;
    for (const auto& [k, c] : p) {
        Mono m = unpack(k);
        groups[{m.t, m.h}].push_back({m, c});
    }
    SkeinValue out;
    for (const auto& [th, terms] : groups) {
        int lo1 = terms.front().first.e1, lo2 = terms.front().first.e2;
        for (const auto& [m, c] : terms) {
            lo1 = std::min(lo1, m.e1);
            lo2 = std::min(lo2, m.e2);
        }
        std::map<std::pair<int, int>, IntLaurent> by_f;
        for (const auto& [m, c] : terms) by_f[{m.e1 - lo1, m.e2 - lo2}] += IntLaurent::monomial(m.a, BigInt(static_cast<long>(c)));
        IntLaurent num;
        for (const auto& [e, q] : by_f) num += q * f1().pow(e.first) * f2().pow(e.second);
        out.add_term(th, Coefficient(num).times_factors(lo1, lo2));
    }
    return out;
}

// ------------------------------------------------------------------ nets
//
// Unoriented port graph: port = node*4 + slot. Bond vertices keep the bond in
// slot 0 followed by the two chain slots counterclockwise.

struct Net {
    std::vector<int> partner;
    std::vector<std::uint8_t> kind;  // 0 gone, 1 crossing, 2 vertex
    int size() const { return static_cast<int>(kind.size()); }
};

// Removes the pairs of ports and joins what was attached across each pair.
// Returns the number of closed loops produced.
int rewire(Net& n, std::initializer_list<std::pair<int, int>> pairs) {
    int loops = 0;
    for (auto [p, q] : pairs) {
        int x = n.partner[p], y = n.partner[q];
        if (x == q) {
            ++loops;
        } else {
            n.partner[x] = y;
            n.partner[y] = x;
        }
        n.partner[p] = n.partner[q] = -1;
    }
    return loops;
}

struct Built {
    Net net;
    int free_loops = 0;
    std::vector<int> node_id;  // net index -> diagram node id
};

Built build_net(const BondedDiagram& d) {
    Built b;
    std::map<int, int> index;
    for (const auto& c : d.crossings) {
        index[c.id] = static_cast<int>(b.node_id.size());
        b.node_id.push_back(c.id);
    }
    for (const auto& v : d.bond_vertices) {
        index[v.id] = static_cast<int>(b.node_id.size());
        b.node_id.push_back(v.id);
    }
    const int n = static_cast<int>(b.node_id.size());
    b.net.kind.assign(n, 1);
    b.net.partner.assign(4 * n, -1);
    std::map<int, std::vector<int>> ports;  // edge -> ports
    for (const auto& c : d.crossings)
        for (int s = 0; s < 4; ++s) ports[c.incident[s].edge].push_back(index[c.id] * 4 + s);
    for (const auto& v : d.bond_vertices) {
        int bs = 0;
        for (int s = 0; s < 3; ++s)
            if (d.find_edge(v.incident[s].edge)->kind == EdgeKind::Bond) bs = s;
        b.net.kind[index[v.id]] = 2;
        for (int i = 0; i < 3; ++i) ports[v.incident[(bs + i) % 3].edge].push_back(index[v.id] * 4 + i);
    }
    for (const auto& e : d.edges) {
        auto it = ports.find(e.id);
        if (it == ports.end()) {
            ++b.free_loops;
            continue;
        }
        const auto& ps = it->second;
        b.net.partner[ps[0]] = ps[1];
        b.net.partner[ps[1]] = ps[0];
    }
    return b;
}

// ------------------------------------------------------------------ evaluator

class Evaluator {
public:
    Evaluator(const EvaluationOptions& opts, std::vector<std::uint64_t> crossing_rank,
              std::vector<std::uint64_t> vertex_rank)
        : opts_(opts), crank_(std::move(crossing_rank)), vrank_(std::move(vertex_rank)) {
        inv_delta_ = mono_poly({{Mono{2, -1, 0, 0, 0}, -1}});
        if (opts_.mode == Mode::Framed) {
            alpha_ = mono_poly({{Mono{4, 0, -1, 0, 1}, 1}, {Mono{6, -1, -1, 1, 0}, 1}});
            beta_ = mono_poly({{Mono{4, 0, -1, 1, 0}, 1}, {Mono{6, -1, -1, 0, 1}, 1}});
            theta_sum_ = poly_times(inv_delta_, mono_poly({{Mono{0, 0, 0, 1, 0}, 1}}));
            h_sum_ = poly_times(inv_delta_, mono_poly({{Mono{0, 0, 0, 0, 1}, 1}}));
            h_base_ = mono_poly({{Mono{0, 0, 0, 0, 1}, 1}});
        } else {
            alpha_ = mono_poly({{Mono{2, -1, 0, 1, 0}, -1}});  // T/delta
            theta_sum_ = poly_times(inv_delta_, mono_poly({{Mono{0, 0, 0, 1, 0}, 1}}));
            h_sum_ = mono_poly({{Mono{0, 0, 0, 1, 0}, 1}});
            h_base_ = poly_times(delta_pow(1), h_sum_);
        }
        theta_base_ = mono_poly({{Mono{0, 0, 0, 1, 0}, 1}});
        smooth_b_ = mono_poly({{Mono{g_fault ? 1 : -1, 0, 0, 0, 0}, 1}});
        smooth_a_ = mono_poly({{Mono{1, 0, 0, 0, 0}, 1}});
    }

    Poly solve(const Net& net, int depth) {
        std::vector<int> comp(net.size(), -1);
        Poly result = poly_one();
        for (int s = 0; s < net.size(); ++s) {
            if (!net.kind[s] || comp[s] >= 0) continue;
            Net sub;
            sub.kind.assign(net.size(), 0);
            sub.partner.assign(net.partner.size(), -1);
            std::vector<int> stack{s};
            comp[s] = s;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                sub.kind[x] = net.kind[x];
                for (int k = 0; k < 4; ++k) {
                    int p = net.partner[4 * x + k];
                    sub.partner[4 * x + k] = p;
                    if (p >= 0 && comp[p / 4] < 0) {
                        comp[p / 4] = s;
                        stack.push_back(p / 4);
                    }
                }
            }
            result = poly_times(result, solve_connected(sub, depth));
        }
        return result;
    }

    EvaluationStats stats() const { return {expanded_.load(), hits_.load()}; }

private:
    std::string key_of(const Net& n) const {
        std::vector<std::int32_t> k;
        for (int i = 0; i < n.size(); ++i) {
            if (!n.kind[i]) continue;
            k.push_back(i);
            for (int s = 0; s < (n.kind[i] == 1 ? 4 : 3); ++s) k.push_back(n.partner[4 * i + s]);
        }
        return std::string(reinterpret_cast<const char*>(k.data()), k.size() * sizeof(std::int32_t));
    }

    Poly solve_connected(const Net& n, int depth) {
        std::string key;
        if (opts_.memoize) {
            key = key_of(n);
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                ++hits_;
                return *it->second;
            }
        }
        ++expanded_;
        Poly p = expand(n, depth);
        if (opts_.memoize) {
            std::lock_guard<std::mutex> lock(mu_);
            memo_.emplace(std::move(key), std::make_shared<const Poly>(p));
        }
        return p;
    }

    Poly branch(Net n, int loops, const Poly& weight, int depth) {
        return poly_times(poly_times(weight, delta_pow(loops)), solve(n, depth + 1));
    }

    Poly expand(const Net& n, int depth) {
        int c = -1, u = -1;
        for (int i = 0; i < n.size(); ++i) {
            if (n.kind[i] == 1 && (c < 0 || crank_[i] < crank_[c])) c = i;
            if (n.kind[i] == 2 && (u < 0 || vrank_[i] < vrank_[u])) u = i;
        }
        if (c >= 0) {
            Net na = n, nb = n;
            const int p = 4 * c;
            const int la = rewire(na, {{p, p + 1}, {p + 2, p + 3}});
            const int lb = rewire(nb, {{p, p + 3}, {p + 1, p + 2}});
            na.kind[c] = nb.kind[c] = 0;
            return combine(std::move(na), la, smooth_a_, std::move(nb), lb, smooth_b_, depth);
        }
        if (opts_.use_connected_sum_shortcut)
            if (auto r = shortcut(n, depth)) return *r;
        const int v = n.partner[4 * u] / 4;
        Net n0 = n, ni = n;
        const int pu = 4 * u, pv = 4 * v;
        for (Net* x : {&n0, &ni}) {
            x->partner[pu] = x->partner[pv] = -1;
            x->kind[u] = x->kind[v] = 0;
        }
        const int l0 = rewire(n0, {{pu + 1, pu + 2}, {pv + 1, pv + 2}});
        if (opts_.mode == Mode::Topological) return branch(std::move(n0), l0, alpha_, depth);
        const int li = rewire(ni, {{pu + 1, pv + 2}, {pu + 2, pv + 1}});
        return combine(std::move(n0), l0, alpha_, std::move(ni), li, beta_, depth);
    }

    Poly combine(Net n1, int l1, const Poly& w1, Net n2, int l2, const Poly& w2, int depth) {
        if (opts_.parallel && depth < kParallelDepth) {
            auto fut = std::async(std::launch::async, [&] { return branch(std::move(n1), l1, w1, depth); });
            Poly q = branch(std::move(n2), l2, w2, depth);
            return poly_sum(fut.get(), q);
        }
        return poly_sum(branch(std::move(n1), l1, w1, depth), branch(std::move(n2), l2, w2, depth));
    }

    std::optional<Poly> shortcut(const Net& n, int depth) {
        for (int u = 0; u < n.size(); ++u) {
            if (n.kind[u] != 2) continue;
            const int pu = 4 * u, v = n.partner[pu] / 4, pv = 4 * v;
            // handcuff summand: the far end of the bond carries a loop
            if (n.partner[pv + 1] == pv + 2) {
                if (n.partner[pu + 1] == pu + 2) return h_base_;
                Net r = n;
                r.partner[pu] = r.partner[pv] = r.partner[pv + 1] = r.partner[pv + 2] = -1;
                rewire(r, {{pu + 1, pu + 2}});
                r.kind[u] = r.kind[v] = 0;
                return poly_times(h_sum_, solve(r, depth + 1));
            }
            // theta summand: a chain edge runs parallel to the bond
            for (int i : {1, 2})
                for (int j : {1, 2}) {
                    if (n.partner[pu + i] != pv + j) continue;
                    const int ou = pu + 3 - i, ov = pv + 3 - j;
                    if (n.partner[ou] == ov) return theta_base_;
                    Net r = n;
                    r.partner[pu] = r.partner[pv] = r.partner[pu + i] = r.partner[pv + j] = -1;
                    rewire(r, {{ou, ov}});
                    r.kind[u] = r.kind[v] = 0;
                    return poly_times(theta_sum_, solve(r, depth + 1));
                }
        }
        return std::nullopt;
    }

    static constexpr int kParallelDepth = 4;
    EvaluationOptions opts_;
    std::vector<std::uint64_t> crank_, vrank_;
    Poly alpha_, beta_, inv_delta_, theta_sum_, h_sum_, theta_base_, h_base_, smooth_a_, smooth_b_;
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const Poly>> memo_;
    std::atomic<std::uint64_t> expanded_{0}, hits_{0};
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Default order: breadth-first from the first node, so smoothed regions stay
// contiguous and the memo sees few distinct boundaries.
std::vector<std::uint64_t> node_ranks(const Net& n, std::uint64_t seed) {
    std::vector<std::uint64_t> rank(n.size(), ~0ULL);
    if (seed != 0) {
        for (int i = 0; i < n.size(); ++i) rank[i] = mix(seed ^ mix(static_cast<std::uint64_t>(i)));
        return rank;
    }
    std::uint64_t next = 0;
    for (int s = 0; s < n.size(); ++s) {
        if (rank[s] != ~0ULL) continue;
        std::vector<int> queue{s};
        rank[s] = next++;
        for (size_t q = 0; q < queue.size(); ++q)
            for (int k = 0; k < 4; ++k) {
                int p = n.partner[4 * queue[q] + k];
                if (p >= 0 && rank[p / 4] == ~0ULL) {
                    rank[p / 4] = next++;
                    queue.push_back(p / 4);
                }
            }
    }
    return rank;
}

}  // namespace

namespace testing {
void set_fault_injection(bool on) { g_fault = on; }
}  // namespace testing

// ------------------------------------------------------------------ diagram-level operations

std::pair<BondedDiagram, BondedDiagram> smooth_crossing(const BondedDiagram& d, int crossing) {
    const Crossing* c = d.find_crossing(crossing);
    if (!c) throw ValidationError("no crossing " + std::to_string(crossing));
    if (crossing_involves_bond(d, *c))
        throw ValidationError("crossing " + std::to_string(crossing) + " involves a bond; slide it off first");
    auto smooth = [&](int a1, int b1, int a2, int b2) {
        PortGraph g(d);
        untrust_all(g);
        g.splice(crossing, a1, b1);
        g.splice(crossing, a2, b2);
        g.remove_node(crossing);
        return g.to_diagram(true);
    };
    return {smooth(0, 1, 2, 3), smooth(0, 3, 1, 2)};
}

std::pair<BondedDiagram, Coefficient> fold_markers(const BondedDiagram& d) {
    PortGraph g(d);
    int total = 0;
    for (const auto& arc : chain_arcs(g)) {
        int sum = 0;
        for (int e : arc) sum += g.edge(e).twists;
        if (sum % 2 != 0)
            throw ValidationError("non-blackboard framing unsupported: odd half twists on the arc through edge " +
                                  std::to_string(arc.front()));
        total += sum / 2;
    }
    BondedDiagram out = canonicalize(d);
    for (auto& e : out.edges) e.half_twists = 0;
    return {out, kink_unit(total)};
}

std::pair<BondedDiagram, int> delete_free_circles(const BondedDiagram& d) {
    if (!d.crossings.empty()) throw ValidationError("delete_free_circles needs a crossingless diagram");
    PortGraph g(d);
    int k = 0;
    std::vector<int> loops;
    for (const auto& [id, e] : g.edges())
        if (e.free_loop()) loops.push_back(id);
    for (int id : loops) {
        g.remove_edge(id);
        ++k;
    }
    return {g.to_diagram(), k};
}

namespace {

struct BondEnds {
    int u, v;
};

// Drops the crossings along the bond arc and the bond itself; leaves u and v
// with an empty bond slot.
BondEnds strip_bond(PortGraph& g, const BondedDiagram& d, int bond_edge) {
    auto it = d.bond_orientations.find(bond_edge);
    if (it == d.bond_orientations.end()) throw ValidationError("edge " + std::to_string(bond_edge) + " is not a bond");
    const auto [u, v] = it->second;
    for (;;) {
        Port p = g.across(u, g.bond_slot(u));
        if (!g.node(p.node).crossing) break;
        const int c = p.node, k = p.slot;
        g.splice(c, (k + 1) % 4, (k + 3) % 4);
        g.splice(c, k, (k + 2) % 4);
        g.remove_node(c);
    }
    const int bu = g.bond_slot(u), bv = g.bond_slot(v);
    End e = g.detach(u, bu);
    g.detach(v, bv);
    g.remove_edge(e.edge);
    return {u, v};
}

BondedDiagram remove_bond(const BondedDiagram& d0, int bond_edge, bool infinity) {
    BondedDiagram d = canonicalize(d0);
    PortGraph g(d);
    untrust_all(g);
    // bond slot positions before the bond is stripped
    auto bslot = [&](int x) { return g.bond_slot(x); };
    auto it = d.bond_orientations.find(bond_edge);
    if (it == d.bond_orientations.end()) throw ValidationError("edge " + std::to_string(bond_edge) + " is not a bond");
    const int su = bslot(it->second.first), sv = bslot(it->second.second);
    auto [u, v] = strip_bond(g, d, bond_edge);
    const Port x{u, (su + 1) % 3}, y{u, (su + 2) % 3}, z{v, (sv + 1) % 3}, w{v, (sv + 2) % 3};
    if (infinity) {
        link(g, x, w);
        link(g, y, z);
    } else {
        link(g, x, y);
        link(g, z, w);
    }
    g.remove_node(u);
    g.remove_node(v);
    return g.to_diagram(true);
}

}  // namespace

BondedDiagram g0_remove(const BondedDiagram& d, int bond_edge) { return remove_bond(d, bond_edge, false); }
BondedDiagram ginf_remove(const BondedDiagram& d, int bond_edge) { return remove_bond(d, bond_edge, true); }

BondExtraction extract_bond(const BondedDiagram& d, int bond_edge) {
    if (!d.crossings.empty()) throw ValidationError("extract_bond needs a crossingless diagram");
    const auto& k = constants();
    return {k.alpha, k.beta, g0_remove(d, bond_edge), ginf_remove(d, bond_edge)};
}

std::optional<ShortcutResult> connected_sum_shortcut(const BondedDiagram& d0, Mode mode) {
    if (!d0.crossings.empty()) throw ValidationError("connected_sum_shortcut needs a crossingless diagram");
    BondedDiagram d = canonicalize(d0);
    const auto& k = constants();
    const SkeinValue theta_factor = k.inv_delta * SkeinValue::theta();
    const SkeinValue h_factor = mode == Mode::Framed ? k.inv_delta * SkeinValue::handcuff() : SkeinValue::theta();
    for (const auto& [bond, uv] : d.bond_orientations) {
        for (auto [u, v] : {uv, std::pair{uv.second, uv.first}}) {
            PortGraph g(d);
            const int su = g.bond_slot(u), sv = g.bond_slot(v);
            const Port ux{u, (su + 1) % 3}, uy{u, (su + 2) % 3}, vz{v, (sv + 1) % 3}, vw{v, (sv + 2) % 3};
            auto joined = [&](Port a, Port b) { return g.across(a.node, a.slot) == b; };
            std::optional<SkeinValue> factor;
            Port keep1, keep2, drop1, drop2;
            if (joined(vz, vw) && !joined(ux, uy)) {
                factor = h_factor;
                drop1 = vz;
                drop2 = vw;
                keep1 = ux;
                keep2 = uy;
            } else {
                for (Port a : {ux, uy})
                    for (Port b : {vz, vw})
                        if (!factor && joined(a, b)) {
                            Port oa = a == ux ? uy : ux, ob = b == vz ? vw : vz;
                            if (joined(oa, ob)) continue;
                            factor = theta_factor;
                            drop1 = a;
                            drop2 = b;
                            keep1 = oa;
                            keep2 = ob;
                        }
            }
            if (!factor) continue;
            untrust_all(g);
            End e = g.detach(drop1.node, drop1.slot);
            g.detach(drop2.node, drop2.slot);
            g.remove_edge(e.edge);
            End b = g.detach(u, su);
            g.detach(v, sv);
            g.remove_edge(b.edge);
            link(g, keep1, keep2);
            g.remove_node(u);
            g.remove_node(v);
            return ShortcutResult{*factor, g.to_diagram(true)};
        }
    }
    return std::nullopt;
}

BondedDiagram slide_bonds_free(const BondedDiagram& d0) {
    BondedDiagram d = canonicalize(d0);
    for (;;) {
        auto sites = enumerate_sites(d, MoveKind::IV, false);
        auto more = enumerate_sites(d, MoveKind::IV_prime, false);
        sites.insert(sites.end(), more.begin(), more.end());
        if (sites.empty()) return d;
        auto first = std::min_element(sites.begin(), sites.end(),
                                      [](const MoveSite& a, const MoveSite& b) { return a.a < b.a; });
        d = apply_move(d, *first);
    }
}

EvaluationResult evaluate(const BondedDiagram& input, const EvaluationOptions& opts) {
    BondedDiagram d = canonicalize(input);
    require_valid(d);
    EvaluationResult res;
    res.writhe = writhe(d);
    res.bond_count = d.bond_count();
    auto [folded, unit] = fold_markers(d);
    Built b = build_net(slide_bonds_free(folded));
    auto ranks = node_ranks(b.net, opts.order_seed);
    auto vranks = opts.order_seed ? node_ranks(b.net, mix(opts.order_seed)) : ranks;
    Evaluator ev(opts, ranks, vranks);
    Poly p = poly_times(delta_pow(b.free_loops), ev.solve(b.net, 0));
    res.value = unit * to_skein(p);
    res.stats = ev.stats();
    return res;
}

EvaluationResult evaluate_framed(const BondedDiagram& d, EvaluationOptions opts) {
    opts.mode = Mode::Framed;
    return evaluate(d, opts);
}

EvaluationResult evaluate_topological(const BondedDiagram& d, EvaluationOptions opts) {
    opts.mode = Mode::Topological;
    EvaluationResult r = evaluate(d, opts);
    EvaluationResult f = evaluate_framed(d, opts);
    if (subst_topological(f.value) != r.value)
        throw InternalConsistencyError("topological value disagrees with the framed value under H -> delta T");
    return r;
}

SkeinValue normalized_value(const BondedDiagram& d, Mode mode, const EvaluationOptions& opts) {
    EvaluationResult r = mode == Mode::Framed ? evaluate_framed(d, opts) : evaluate_topological(d, opts);
    return kink_unit(-r.writhe) * r.value;
}

BivariateLaurent reduced_polynomial(const BondedDiagram& d, const EvaluationOptions& opts) {
    EvaluationResult r = evaluate_framed(d, opts);
    if (r.bond_count < 1) throw ValidationError("the reduced polynomial needs at least one bond");
    const int n = r.bond_count - 1;
    const Coefficient unit = kink_unit(-r.writhe);
    BivariateLaurent out;
    for (const auto& [key, c] : r.value.terms()) {
        Coefficient x = (unit * c).times_factors(n, n);
        if (x.d1() != 0 || x.d2() != 0)
            throw InternalConsistencyError("reduced polynomial has a residual denominator in the T^" +
                                           std::to_string(key.first) + " H^" + std::to_string(key.second) +
                                           " term: " + x.to_string());
        out.add_term(key, x.num());
    }
    return out;
}

Coefficient classical_bracket(const BondedDiagram& d, const EvaluationOptions& opts) {
    if (d.bond_count() > 0) throw ValidationError("classical_bracket needs a diagram without bonds");
    EvaluationResult r = evaluate_framed(d, opts);
    return r.value.coeff(0, 0) * constants().inv_delta;
}

}  // namespace bkb
