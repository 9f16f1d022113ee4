#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bkb {

enum class EdgeKind { Chain, Bond };

struct Edge {
    int id = 0;
    EdgeKind kind = EdgeKind::Chain;
    int half_twists = 0;  // framing markers
    friend bool operator==(const Edge&, const Edge&) = default;
};

// An edge end seen from a node: `out` is true when the edge leaves the node.
struct EdgeRef {
    int edge = 0;
    bool out = false;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

// Slots run counterclockwise starting at the incoming under-strand, so the
// under strand is 0 -> 2 and the over strand occupies 1 and 3.
struct Crossing {
    int id = 0;
    std::array<EdgeRef, 4> incident{};
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Counterclockwise; exactly one of the three is a bond end.
struct BondVertex {
    int id = 0;
    std::array<EdgeRef, 3> incident{};
    friend bool operator==(const BondVertex&, const BondVertex&) = default;
};

struct BondedDiagram {
    std::vector<Edge> edges;
    std::vector<Crossing> crossings;
    std::vector<BondVertex> bond_vertices;
    // bond edge id -> (tail vertex, head vertex) of the bond it belongs to
    std::map<int, std::pair<int, int>> bond_orientations;

    const Edge* find_edge(int id) const;
    const Crossing* find_crossing(int id) const;
    const BondVertex* find_vertex(int id) const;
    int bond_count() const;  // number of bonds (vertex pairs), not bond edges
    bool empty() const { return edges.empty() && crossings.empty() && bond_vertices.empty(); }
    friend bool operator==(const BondedDiagram&, const BondedDiagram&) = default;
};

struct Violation {
    std::string element;  // e.g. "edge 3", "crossing 7"
    std::string rule;
};

// Throws ParseError on malformed JSON, ValidationError on violations.
BondedDiagram parse_diagram(const std::string& text);
// Builds without validating; used by parse_diagram.
BondedDiagram diagram_from_json_unchecked(const std::string& text);
std::string serialize_diagram(const BondedDiagram& d);

std::vector<Violation> validate(const BondedDiagram& d);
void require_valid(const BondedDiagram& d);  // throws ValidationError listing violations

// Sorts elements by id and fills bond_orientations; does not renumber.
BondedDiagram canonicalize(BondedDiagram d);

// +1 / -1 for a crossing between oriented strands, by the right-hand rule.
int crossing_sign(const Crossing& c);
bool crossing_involves_bond(const BondedDiagram& d, const Crossing& c);
// Sum of signs over chain-chain crossings.
int writhe(const BondedDiagram& d);

std::vector<BondedDiagram> split_components(const BondedDiagram& d);
BondedDiagram disjoint_union(const BondedDiagram& a, const BondedDiagram& b);
// Renumbers edges and nodes 0.. in a canonical traversal order.
BondedDiagram relabel_canonical(const BondedDiagram& d);
std::string canonical_key(const BondedDiagram& d);

// Swaps over and under at one crossing (not an isotopy).
BondedDiagram flip_crossing(const BondedDiagram& d, int crossing_id);

}  // namespace bkb
