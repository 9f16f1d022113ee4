#pragma once

// Mutable planar port graph used for local surgery (moves, bond slides).
// Edge ends can be left dangling while a rewrite is in progress; to_diagram()
// re-orients strands and restores the crossing slot convention.

#include "bondedkb/diagram.hpp"

#include <map>
#include <set>
#include <vector>

namespace bkb {

struct End {
    int edge = -1;
    bool head = false;
    friend bool operator==(const End&, const End&) = default;
};

struct Port {
    int node = -1;
    int slot = -1;
    bool valid() const { return node >= 0; }
    friend bool operator==(const Port&, const Port&) = default;
};

// A directed traversal of an edge; `forward` follows tail -> head.
struct Dart {
    int edge = -1;
    bool forward = true;
    friend bool operator==(const Dart&, const Dart&) = default;
    friend auto operator<=>(const Dart&, const Dart&) = default;
};

class PortGraph {
public:
    struct PEdge {
        EdgeKind kind = EdgeKind::Chain;
        int twists = 0;
        Port tail, head;
        bool trusted = true;  // orientation known to be correct
        bool free_loop() const { return !tail.valid() && !head.valid(); }
    };
    struct PNode {
        bool crossing = true;
        std::vector<End> slots;  // counterclockwise; crossings keep the under strand on 0/2
        int degree() const { return static_cast<int>(slots.size()); }
    };

    PortGraph() = default;
    explicit PortGraph(const BondedDiagram& d);

    // Orients strands, puts crossing slot 0 on the incoming under-strand and
    // validates; throws InternalConsistencyError if the result is invalid.
    // With guess_orientation, chain strands with no trusted edge run forward
    // along their lowest edge id.
    BondedDiagram to_diagram(bool guess_orientation = false) const;

    const std::map<int, PEdge>& edges() const { return edges_; }
    const std::map<int, PNode>& nodes() const { return nodes_; }
    const PEdge& edge(int id) const { return edges_.at(id); }
    const PNode& node(int id) const { return nodes_.at(id); }
    bool is_bond_tail(int vertex) const { return bond_tails_.count(vertex) > 0; }
    void mark_bond_tail(int vertex) { bond_tails_.insert(vertex); }

    Port port_of(End e) const;
    End end_at(int node, int slot) const { return nodes_.at(node).slots.at(slot); }
    End other_end(End e) const { return {e.edge, !e.head}; }
    // Neighbouring port across an edge, from a slot.
    Port across(int node, int slot) const;
    int bond_slot(int vertex) const;
    static bool is_over_slot(int slot) { return slot % 2 == 1; }

    // --- primitives ---
    int add_edge(EdgeKind kind, int twists = 0, bool trusted = false);
    int add_node(bool crossing, int degree);
    void attach(End e, int node, int slot);
    // Leaves the end at (node, slot) dangling.
    End detach(int node, int slot);
    // Splits `edge` next to one of its ends: a new edge takes over that end and
    // two dangling ends appear at the cut. Returns {end of new edge, end of old edge}
    // at the cut.
    std::pair<End, End> cut_near(int edge, bool at_head);
    // Opens a free loop: both ends of the edge become dangling (tail, head).
    std::pair<End, End> cut_free(int edge);
    // Joins two dangling ends; returns the surviving edge id.
    int join(End a, End b);
    // Joins the edges in two slots of a node straight through; the slots become empty.
    int splice(int node, int s1, int s2);
    void remove_node(int node);  // all slots must be empty
    void remove_edge(int edge);  // both ends must be dangling
    void set_twists(int edge, int t) { edges_.at(edge).twists = t; }
    void set_trusted(int edge, bool t) { edges_.at(edge).trusted = t; }
    void add_twists(int edge, int t) { edges_.at(edge).twists += t; }
    void rotate_node(int node, int by);

    // --- planar structure ---
    Port dart_end(Dart d) const;
    Port dart_start(Dart d) const;
    Dart next_in_face(Dart d) const;
    std::vector<std::vector<Dart>> faces() const;
    // component id per node (free loops excluded)
    std::map<int, int> node_components() const;
    // Euler characteristic defects per component; empty when every component is planar.
    std::vector<int> genus_defects() const;

    // Walks the strand through crossings (s -> s+2) and vertices (chain slot ->
    // other chain slot). Returns edges in order with traversal direction.
    std::vector<Dart> strand_from(Dart start) const;
    int next_edge_id() const { return next_edge_; }
    int next_node_id() const { return next_node_; }

private:
    void orient(bool guess);
    void set_end(End e, Port p);
    std::map<int, PEdge> edges_;
    std::map<int, PNode> nodes_;
    std::set<int> bond_tails_;
    int next_edge_ = 0;
    int next_node_ = 0;
};

}  // namespace bkb
