#include "bondedkb/generate.hpp"

#include "bondedkb/catalog.hpp"
#include "bondedkb/moves.hpp"
#include "bondedkb/port_graph.hpp"

#include <random>

namespace bkb {

namespace {

BondedDiagram base_diagram(std::mt19937_64& rng) {
    switch (rng() % 6) {
        case 0: return catalog::unknot();
        case 1: return catalog::trefoil();
        case 2: return catalog::hopf();
        case 3: return disjoint_union(catalog::unknot(), catalog::unknot());
        case 4: return catalog::from_pd({{{4, 2, 5, 1}}, {{8, 6, 1, 5}}, {{6, 3, 7, 4}}, {{2, 7, 3, 8}}});
        default: {
            BondedDiagram d = catalog::unknot();
            return apply_move(d, MoveSite{MoveKind::I_pos, false, 0, -1, true, true, true});
        }
    }
}

}  // namespace

BondedDiagram add_random_bond(const BondedDiagram& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PortGraph g(d);
    std::vector<std::pair<Dart, Dart>> options;
    std::vector<int> loops;
    for (const auto& [id, e] : g.edges())
        if (e.kind == EdgeKind::Chain && e.free_loop()) loops.push_back(id);
    for (const auto& face : g.faces())
        for (size_t i = 0; i < face.size(); ++i)
            for (size_t j = i + 1; j < face.size(); ++j)
                if (face[i].edge != face[j].edge && g.edge(face[i].edge).kind == EdgeKind::Chain &&
                    g.edge(face[j].edge).kind == EdgeKind::Chain)
                    options.push_back({face[i], face[j]});
    // a free loop can reach any chain dart, or another free loop
    for (int l : loops) {
        for (const auto& [id, e] : g.edges())
            if (id != l && e.kind == EdgeKind::Chain)
                for (bool fw : {true, false})
                    if (!e.free_loop() || id > l) options.push_back({Dart{l, true}, Dart{id, fw}});
    }
    if (options.empty()) return d;
    auto [a, b] = options[rng() % options.size()];
    return catalog::add_bond(d, a.edge, a.forward, b.edge, b.forward);
}

BondedDiagram random_diagram(std::uint64_t seed, const GenerateOptions& opts) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    BondedDiagram d = base_diagram(rng);
    const int span = opts.max_bonds - opts.min_bonds + 1;
    const int bonds = opts.min_bonds + static_cast<int>(rng() % std::max(span, 1));
    for (int i = 0; i < bonds; ++i) {
        if (d.edges.size() == 1 && d.crossings.empty()) {
            // a lone circle has one edge; put a kink in it first
            d = apply_move(d, MoveSite{MoveKind::I_neg, false, d.edges[0].id, -1, true, true, (rng() & 1u) != 0});
        }
        d = add_random_bond(d, rng());
    }
    RandomMoveOptions mo;
    mo.max_crossings = opts.max_crossings;
    for (int round = 0; round < 3; ++round) {
        d = random_moves(d, opts.moves / 3 + 1, rng(), mo).diagram;
        if (opts.allow_flips && !d.crossings.empty() && (rng() & 1u))
            d = flip_crossing(d, d.crossings[rng() % d.crossings.size()].id);
    }
    // trim back under the cap with inverse moves if random walks overshot
    for (int guard = 0; static_cast<int>(d.crossings.size()) > opts.max_crossings && guard < 50; ++guard) {
        bool done = false;
        for (MoveKind k : {MoveKind::II, MoveKind::I_pos, MoveKind::I_neg, MoveKind::RV, MoveKind::V, MoveKind::IV,
                           MoveKind::IV_prime})
            if (!done) {
                auto s = enumerate_sites(d, k, true);
                if (!s.empty()) {
                    d = apply_move(d, s[rng() % s.size()]);
                    done = true;
                }
            }
        if (!done) break;
    }
    return relabel_canonical(d);
}

}  // namespace bkb
