#pragma once

// Seeded random bonded diagrams for tests and benchmarks.

#include "bondedkb/diagram.hpp"

#include <cstdint>

namespace bkb {

struct GenerateOptions {
    int max_crossings = 6;
    int max_bonds = 2;
    int min_bonds = 0;
    int moves = 12;
    bool allow_flips = true;  // crossing changes, for variety beyond one isotopy class
};

BondedDiagram random_diagram(std::uint64_t seed, const GenerateOptions& opts = {});

// Adds a bond between two random chain darts of a common face. Returns the
// input unchanged when no face offers two distinct chain edges.
BondedDiagram add_random_bond(const BondedDiagram& d, std::uint64_t seed);

}  // namespace bkb
