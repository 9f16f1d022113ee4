#include "bondedkb/catalog.hpp"
#include "bondedkb/diagram.hpp"
#include "bondedkb/errors.hpp"
#include "bondedkb/generate.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace bkb;

namespace {

GenerateOptions opts() {
    GenerateOptions go;
    go.max_crossings = 8;
    go.max_bonds = 3;
    return go;
}

// Shifts every id by a fixed offset.
BondedDiagram shifted_ids(const BondedDiagram& d, int k) {
    auto j = nlohmann::json::parse(serialize_diagram(d));
    j.erase("bond_orientations");  // recomputed on parse
    for (auto& e : j["edges"]) e["id"] = e["id"].get<int>() + k;
    for (auto* list : {&j["crossings"], &j["bond_vertices"]})
        for (auto& n : *list) {
            n["id"] = n["id"].get<int>() + 3 * k;
            for (auto& r : n["incident"]) r["edge"] = r["edge"].get<int>() + k;
        }
    return parse_diagram(j.dump());
}

}  // namespace

TEST(Diagram, SerializeRoundTrip) {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram d = random_diagram(s, opts());
        const std::string text = serialize_diagram(d);
        BondedDiagram back = parse_diagram(text);
        EXPECT_EQ(back, d);
        EXPECT_EQ(serialize_diagram(back), text);
    }
}

TEST(Diagram, CanonicalKeyIgnoresLabels) {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        BondedDiagram d = random_diagram(s, opts());
        EXPECT_EQ(canonical_key(shifted_ids(d, 17)), canonical_key(d));
        EXPECT_EQ(canonical_key(relabel_canonical(d)), canonical_key(d));
        EXPECT_EQ(relabel_canonical(shifted_ids(d, 5)), relabel_canonical(d));
    }
}

TEST(Diagram, CanonicalKeySeparatesShapes) {
    std::vector<BondedDiagram> ds = {catalog::unknot(), catalog::theta(), catalog::handcuff(), catalog::double_bond(),
                                     catalog::trefoil(), catalog::hopf(), flip_crossing(catalog::trefoil(), 0)};
    for (size_t i = 0; i < ds.size(); ++i)
        for (size_t j = i + 1; j < ds.size(); ++j) EXPECT_NE(canonical_key(ds[i]), canonical_key(ds[j])) << i << " " << j;
}

TEST(Diagram, WritheAndFlips) {
    EXPECT_EQ(writhe(catalog::trefoil()), 3);
    EXPECT_EQ(writhe(catalog::hopf()), 2);
    BondedDiagram t = catalog::trefoil();
    EXPECT_EQ(writhe(flip_crossing(t, t.crossings[0].id)), 1);
    EXPECT_EQ(flip_crossing(flip_crossing(t, t.crossings[0].id), t.crossings[0].id), t);
}

TEST(Diagram, SplitAndUnion) {
    BondedDiagram u = disjoint_union(catalog::theta(), disjoint_union(catalog::trefoil(), catalog::handcuff()));
    require_valid(u);
    auto parts = split_components(u);
    ASSERT_EQ(parts.size(), 3u);
    std::multiset<std::string> keys, want = {canonical_key(catalog::theta()), canonical_key(catalog::trefoil()),
                                             canonical_key(catalog::handcuff())};
    for (const auto& p : parts) keys.insert(canonical_key(p));
    EXPECT_EQ(keys, want);
    EXPECT_EQ(u.bond_count(), 2);
    EXPECT_EQ(writhe(u), 3);
}

TEST(Diagram, ParseErrors) {
    EXPECT_THROW(parse_diagram("{"), ParseError);
    EXPECT_THROW(parse_diagram("[]"), ParseError);
    EXPECT_THROW(parse_diagram(R"({"edges": [{"id": "x", "kind": "chain"}], "crossings": [], "bond_vertices": []})"),
                 ParseError);
}

TEST(Diagram, ValidationErrors) {
    auto base = nlohmann::json::parse(serialize_diagram(catalog::theta()));

    auto j = base;
    j["bond_vertices"].erase(1);  // dangling bond
    EXPECT_THROW(parse_diagram(j.dump()), ValidationError);

    j = base;
    j["edges"].push_back(j["edges"][0]);  // duplicate edge id
    EXPECT_THROW(parse_diagram(j.dump()), ValidationError);

    j = base;
    j["edges"][0]["kind"] = "chain";  // vertex without a bond end
    EXPECT_THROW(parse_diagram(j.dump()), ValidationError);

    j = base;
    j["bond_vertices"][0]["incident"][1]["dir"] = "in";  // chain enters twice
    EXPECT_THROW(parse_diagram(j.dump()), ValidationError);

    auto t = nlohmann::json::parse(serialize_diagram(catalog::trefoil()));
    t["crossings"][0]["incident"][0]["dir"] = "out";  // under strand does not run 0 -> 2
    EXPECT_THROW(parse_diagram(t.dump()), ValidationError);

    auto v = validate(BondedDiagram{});
    EXPECT_TRUE(v.empty());
}

TEST(Diagram, BondOrientationRecorded) {
    BondedDiagram d = canonicalize(catalog::double_bond());
    EXPECT_EQ(d.bond_count(), 2);
    EXPECT_EQ(d.bond_orientations.size(), 2u);
    for (const auto& [e, ends] : d.bond_orientations) {
        EXPECT_NE(ends.first, ends.second);
        EXPECT_EQ(d.find_edge(e)->kind, EdgeKind::Bond);
    }
}
