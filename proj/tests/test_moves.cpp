#include "bondedkb/catalog.hpp"
#include "bondedkb/errors.hpp"
#include "bondedkb/moves.hpp"
#include "bondedkb/port_graph.hpp"

#include <gtest/gtest.h>

using namespace bkb;

namespace {

bool planar(const BondedDiagram& d) { return PortGraph(d).genus_defects().empty(); }

std::vector<BondedDiagram> bases() {
    return {catalog::unknot(),       catalog::theta(),  catalog::handcuff(), catalog::double_bond(),
            catalog::trefoil(),      catalog::hopf(),
            disjoint_union(catalog::theta(), catalog::unknot())};
}

}  // namespace

TEST(Catalog, BasesAreValidAndPlanar) {
    for (const auto& d : bases()) {
        EXPECT_TRUE(validate(d).empty()) << serialize_diagram(d);
        EXPECT_TRUE(planar(d)) << serialize_diagram(d);
    }
}

TEST(Catalog, Writhes) {
    EXPECT_EQ(writhe(catalog::trefoil()), 3);
    EXPECT_EQ(writhe(catalog::hopf()), 2);
    EXPECT_EQ(writhe(catalog::theta()), 0);
}

TEST(Moves, KinkOnUnknot) {
    for (bool left : {true, false})
        for (MoveKind k : {MoveKind::I_pos, MoveKind::I_neg}) {
            MoveSite s{k, false, 0, -1, true, true, left};
            BondedDiagram d = apply_move(catalog::unknot(), s);
            EXPECT_EQ(d.crossings.size(), 1u);
            EXPECT_EQ(writhe(d), k == MoveKind::I_pos ? 1 : -1) << left;
            EXPECT_TRUE(planar(d));
            auto inv = enumerate_sites(d, k, true);
            ASSERT_EQ(inv.size(), 1u);
            EXPECT_EQ(canonical_key(apply_move(d, inv[0])), canonical_key(catalog::unknot()));
        }
}

TEST(Moves, EveryForwardSiteGivesValidPlanarDiagram) {
    const MoveKind kinds[] = {MoveKind::I_pos, MoveKind::I_neg, MoveKind::II, MoveKind::III,
                              MoveKind::IV,    MoveKind::IV_prime, MoveKind::V, MoveKind::RV,
                              MoveKind::BondSlide};
    for (const auto& base : bases()) {
        for (MoveKind k : kinds)
            for (bool inv : {false, true})
                for (const auto& s : enumerate_sites(base, k, inv)) {
                    BondedDiagram d;
                    ASSERT_NO_THROW(d = apply_move(base, s)) << s.to_string() << "\n" << serialize_diagram(base);
                    EXPECT_TRUE(planar(d)) << s.to_string();
                    EXPECT_EQ(d.bond_count(), base.bond_count());
                    EXPECT_EQ(static_cast<int>(d.crossings.size()),
                              static_cast<int>(base.crossings.size()) + crossing_delta(s));
                }
    }
}

TEST(Moves, RandomWalksStayValid) {
    for (const auto& base : bases())
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            RandomMovesResult r;
            ASSERT_NO_THROW(r = random_moves(base, 25, seed)) << seed << "\n" << serialize_diagram(base);
            EXPECT_TRUE(planar(r.diagram));
            EXPECT_EQ(r.diagram.bond_count(), base.bond_count());
            int w = writhe(base);
            for (const auto& m : r.log) w += m.writhe_change;
            EXPECT_EQ(writhe(r.diagram), w);
        }
}

TEST(Moves, WritheConservingMoves) {
    RandomMoveOptions opts;
    opts.kinds = {MoveKind::II, MoveKind::III, MoveKind::IV, MoveKind::IV_prime, MoveKind::RV, MoveKind::BondSlide};
    for (const auto& base : bases())
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto r = random_moves(base, 30, seed, opts);
            for (const auto& m : r.log) EXPECT_EQ(m.writhe_change, 0) << m.site.to_string();
        }
}
