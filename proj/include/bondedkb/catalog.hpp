#pragma once

// Small standard diagrams and constructions on them.

#include "bondedkb/diagram.hpp"

#include <array>
#include <vector>

namespace bkb::catalog {

BondedDiagram unknot(int half_twists = 0);
BondedDiagram theta();
BondedDiagram handcuff();
// Two circles joined by two parallel bonds.
BondedDiagram double_bond();
BondedDiagram trefoil();  // positive, writhe +3
BondedDiagram hopf();     // positive, writhe +2

// Planar diagram code: one quadruple per crossing, starting at the incoming
// under-strand and running counterclockwise; labels are edge ids.
BondedDiagram from_pd(const std::vector<std::array<int, 4>>& pd);

// Connected sum along chain edge ea of a and chain edge eb of b.
BondedDiagram connect_sum(const BondedDiagram& a, int ea, const BondedDiagram& b, int eb);

// Adds a bond between two chain darts (edge, forward) that share a face on
// their left. Throws MoveError otherwise.
BondedDiagram add_bond(const BondedDiagram& d, int e1, bool fwd1, int e2, bool fwd2);

}  // namespace bkb::catalog
