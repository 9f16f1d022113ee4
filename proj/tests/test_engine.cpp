#include "bondedkb/catalog.hpp"
#include "bondedkb/errors.hpp"
#include "bondedkb/generate.hpp"
#include "bondedkb/moves.hpp"
#include "bondedkb/skein_engine.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bkb;

namespace {

SkeinValue T() { return SkeinValue::theta(); }
SkeinValue H() { return SkeinValue::handcuff(); }
Coefficient dlt() { return constants().delta_c; }
Coefficient inv_dlt() { return constants().inv_delta; }

EvaluationOptions plain() {
    EvaluationOptions o;
    o.use_connected_sum_shortcut = false;
    o.memoize = false;
    return o;
}

}  // namespace

TEST(Engine, Generators) {
    for (const auto& o : {EvaluationOptions{}, plain()}) {
        EXPECT_EQ(evaluate_framed(catalog::theta(), o).value, T());
        EXPECT_EQ(evaluate_framed(catalog::handcuff(), o).value, H());
        EXPECT_EQ(evaluate_topological(catalog::theta(), o).value, T());
        EXPECT_EQ(evaluate_topological(catalog::handcuff(), o).value, dlt() * T());
    }
    EXPECT_EQ(evaluate_framed(catalog::unknot()).value, SkeinValue::scalar(dlt()));
    EXPECT_EQ(evaluate_framed(BondedDiagram{}).value, SkeinValue::unit());
}

TEST(Engine, DoubleBond) {
    const auto& k = constants();
    Coefficient inv_mu = Coefficient(IntLaurent::monomial(4), 0, 1);
    SkeinValue want = inv_mu * (T() * T()) - (Coefficient(2) * k.inv_delta_mu) * (H() * T()) + inv_mu * (H() * H());
    for (const auto& o : {EvaluationOptions{}, plain()})
        EXPECT_EQ(evaluate_framed(catalog::double_bond(), o).value, want) << evaluate_framed(catalog::double_bond(), o).value.to_string();
    EXPECT_EQ(k.alpha * H() + k.beta * T(), want);
}

TEST(Engine, BondMapsOnGenerators) {
    auto loops = [](const BondedDiagram& d) {
        auto [rest, k] = delete_free_circles(d);
        EXPECT_TRUE(rest.empty());
        return k;
    };
    EXPECT_EQ(loops(g0_remove(catalog::theta(), 0)), 1);
    EXPECT_EQ(loops(ginf_remove(catalog::theta(), 0)), 2);
    EXPECT_EQ(loops(g0_remove(catalog::handcuff(), 0)), 2);
    EXPECT_EQ(loops(ginf_remove(catalog::handcuff(), 0)), 1);
    BondedDiagram db = catalog::double_bond();
    EXPECT_EQ(canonical_key(g0_remove(db, 0)), canonical_key(catalog::handcuff()));
    EXPECT_EQ(canonical_key(ginf_remove(db, 0)), canonical_key(catalog::theta()));
}

TEST(Engine, Shortcut) {
    EXPECT_FALSE(connected_sum_shortcut(catalog::theta()).has_value());
    EXPECT_FALSE(connected_sum_shortcut(catalog::handcuff()).has_value());
    BondedDiagram tt = catalog::connect_sum(catalog::theta(), 1, catalog::theta(), 1);
    auto r = connected_sum_shortcut(tt);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->factor, inv_dlt() * T());
    EXPECT_EQ(canonical_key(r->remainder), canonical_key(catalog::theta()));
    EXPECT_EQ(evaluate_framed(tt).value, inv_dlt() * (T() * T()));
    EXPECT_EQ(evaluate_framed(tt, plain()).value, inv_dlt() * (T() * T()));
    BondedDiagram hh = catalog::connect_sum(catalog::handcuff(), 1, catalog::handcuff(), 1);
    EXPECT_EQ(evaluate_framed(hh).value, inv_dlt() * (H() * H()));
    EXPECT_EQ(evaluate_framed(hh, plain()).value, inv_dlt() * (H() * H()));
}

TEST(Engine, KinkFactor) {
    BondedDiagram k = apply_move(catalog::unknot(), MoveSite{MoveKind::I_pos, false, 0, -1, true, true, true});
    Coefficient mA3(IntLaurent::monomial(3, -1));
    EXPECT_EQ(evaluate_framed(k).value, SkeinValue::scalar(mA3 * dlt()));
    EXPECT_EQ(normalized_value(k), SkeinValue::scalar(dlt()));
    EXPECT_EQ(evaluate_framed(catalog::unknot(2)).value, SkeinValue::scalar(mA3 * dlt()));
    Coefficient mAm3(IntLaurent::monomial(-3, -1));
    EXPECT_EQ(evaluate_framed(catalog::unknot(-2)).value, SkeinValue::scalar(mAm3 * dlt()));
    // a marker pair is worth the kink it stands for, for either sign
    for (bool left : {false, true}) {
        BondedDiagram pos = apply_move(catalog::unknot(), MoveSite{MoveKind::I_pos, false, 0, -1, true, true, left});
        BondedDiagram neg = apply_move(catalog::unknot(), MoveSite{MoveKind::I_neg, false, 0, -1, true, true, left});
        EXPECT_EQ(evaluate_framed(pos).value, evaluate_framed(catalog::unknot(2)).value);
        EXPECT_EQ(evaluate_framed(neg).value, evaluate_framed(catalog::unknot(-2)).value);
    }
    EXPECT_THROW(evaluate_framed(catalog::unknot(1)), ValidationError);
}

TEST(Engine, ClassicalMatchesOracle) {
    EXPECT_EQ(classical_bracket(catalog::unknot()), Coefficient(1));
    EXPECT_EQ(classical_bracket(disjoint_union(catalog::unknot(), catalog::unknot())), dlt());
    EXPECT_EQ(classical_bracket(catalog::trefoil()), oracle::classical_bracket(catalog::trefoil()));
    GenerateOptions go;
    go.max_bonds = 0;
    go.max_crossings = 5;
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram d = random_diagram(s, go);
        ASSERT_LE(d.crossings.size(), 5u);
        EXPECT_EQ(classical_bracket(d), oracle::classical_bracket(d)) << serialize_diagram(d);
    }
}

TEST(Engine, BondedMatchesOracle) {
    GenerateOptions go;
    go.max_crossings = 5;
    go.min_bonds = 1;
    for (std::uint64_t s = 1; s <= 40; ++s) {
        BondedDiagram d = random_diagram(s, go);
        BondedDiagram free = slide_bonds_free(d);
        if (free.crossings.size() > 10) continue;
        auto [folded, unit] = fold_markers(free);
        EXPECT_EQ(evaluate_framed(d).value, unit * oracle::framed_value(folded)) << serialize_diagram(d);
    }
}
