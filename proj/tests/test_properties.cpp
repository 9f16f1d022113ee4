#include "bondedkb/catalog.hpp"
#include "bondedkb/errors.hpp"
#include "bondedkb/generate.hpp"
#include "bondedkb/skein_engine.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace bkb;

namespace {

GenerateOptions small() {
    GenerateOptions go;
    go.max_crossings = 6;
    go.max_bonds = 2;
    return go;
}

EvaluationOptions plain() {
    EvaluationOptions o;
    o.use_connected_sum_shortcut = false;
    o.memoize = false;
    return o;
}

int first_chain_edge(const BondedDiagram& d) {
    for (const auto& e : d.edges)
        if (e.kind == EdgeKind::Chain) return e.id;
    return -1;
}

// Reverses the bond edges of a diagram (tail and head swap).
BondedDiagram reverse_bonds(const BondedDiagram& d) {
    auto j = nlohmann::json::parse(serialize_diagram(d));
    j.erase("bond_orientations");  // recomputed on parse
    std::set<int> bonds;
    for (const auto& e : j["edges"])
        if (e["kind"] == "bond") bonds.insert(e["id"].get<int>());
    for (auto* list : {&j["crossings"], &j["bond_vertices"]})
        for (auto& n : *list)
            for (auto& r : n["incident"])
                if (bonds.count(r["edge"].get<int>())) r["dir"] = r["dir"] == "in" ? "out" : "in";
    // slot 0 must stay the incoming under end, so a reversed under strand
    // turns the crossing by half a revolution
    for (auto& c : j["crossings"]) {
        auto& in = c["incident"];
        if (bonds.count(in[0]["edge"].get<int>())) {
            std::swap(in[0], in[2]);
            std::swap(in[1], in[3]);
        }
    }
    return parse_diagram(j.dump());
}

}  // namespace

TEST(Properties, ConnectedSumWithTheta) {
    const SkeinValue T = SkeinValue::theta();
    const Coefficient inv_delta = constants().inv_delta;
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram L = random_diagram(s, small());
        const int e = first_chain_edge(L);
        ASSERT_GE(e, 0);
        BondedDiagram sum = catalog::connect_sum(catalog::theta(), first_chain_edge(catalog::theta()), L, e);
        EXPECT_EQ(evaluate(sum, plain()).value, inv_delta * (T * evaluate(L, plain()).value)) << "seed " << s;
    }
}

TEST(Properties, ConnectedSumWithHandcuff) {
    const SkeinValue H = SkeinValue::handcuff();
    const Coefficient inv_delta = constants().inv_delta;
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram L = random_diagram(s, small());
        BondedDiagram sum = catalog::connect_sum(catalog::handcuff(), first_chain_edge(catalog::handcuff()), L,
                                                 first_chain_edge(L));
        EXPECT_EQ(evaluate(sum, plain()).value, inv_delta * (H * evaluate(L, plain()).value)) << "seed " << s;
    }
}

TEST(Properties, ShortcutAgreesWithFullExpansion) {
    for (std::uint64_t s = 1; s <= 40; ++s) {
        BondedDiagram L = random_diagram(s, small());
        BondedDiagram sum = catalog::connect_sum(catalog::theta(), first_chain_edge(catalog::theta()), L,
                                                 first_chain_edge(L));
        for (Mode m : {Mode::Framed, Mode::Topological}) {
            EvaluationOptions fast;
            fast.mode = m;
            EvaluationOptions slow = plain();
            slow.mode = m;
            EXPECT_EQ(evaluate(sum, fast).value, evaluate(sum, slow).value) << "seed " << s;
        }
    }
}

TEST(Properties, OrderAndParallelDeterminism) {
    GenerateOptions go;
    go.max_crossings = 8;
    go.max_bonds = 3;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        BondedDiagram d = random_diagram(s, go);
        const std::string ref = evaluate(d).value.to_json().dump();
        for (std::uint64_t order : {1ull, 99ull, 123456789ull}) {
            EvaluationOptions o;
            o.order_seed = order;
            EXPECT_EQ(evaluate(d, o).value.to_json().dump(), ref) << "seed " << s << " order " << order;
            o.memoize = false;
            o.use_connected_sum_shortcut = false;
            EXPECT_EQ(evaluate(d, o).value.to_json().dump(), ref) << "seed " << s << " order " << order;
        }
        EvaluationOptions par;
        par.parallel = true;
        EXPECT_EQ(evaluate(d, par).value.to_json().dump(), ref) << "seed " << s;
    }
}

TEST(Properties, ReducedPolynomialExists) {
    GenerateOptions go;
    go.max_crossings = 8;
    go.min_bonds = 1;
    go.max_bonds = 3;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        BondedDiagram d = random_diagram(s, go);
        BivariateLaurent p;
        ASSERT_NO_THROW(p = reduced_polynomial(d)) << "seed " << s;
        EXPECT_FALSE(p.is_zero());
    }
    EXPECT_THROW(reduced_polynomial(catalog::trefoil()), ValidationError);
}

TEST(Properties, TopologicalIsSpecialisedFramed) {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram d = random_diagram(s, small());
        EvaluationOptions t;
        t.mode = Mode::Topological;
        EXPECT_EQ(evaluate(d, t).value, subst_topological(evaluate(d).value)) << "seed " << s;
    }
}

TEST(Properties, BondOrientationDoesNotMatter) {
    GenerateOptions go = small();
    go.min_bonds = 1;
    for (std::uint64_t s = 1; s <= 40; ++s) {
        BondedDiagram d = random_diagram(s, go);
        BondedDiagram r = reverse_bonds(d);
        EXPECT_EQ(writhe(r), writhe(d));
        EXPECT_EQ(evaluate(r).value, evaluate(d).value) << "seed " << s;
    }
}

TEST(Properties, MirrorImage) {
    // flipping every crossing of a bondless diagram mirrors the bracket
    for (std::uint64_t s = 1; s <= 30; ++s) {
        GenerateOptions go = small();
        go.max_bonds = 0;
        BondedDiagram d = random_diagram(s, go);
        BondedDiagram m = d;
        for (const auto& c : d.crossings) m = flip_crossing(m, c.id);
        EXPECT_EQ(classical_bracket(m).num(), classical_bracket(d).num().mirrored()) << "seed " << s;
    }
}
