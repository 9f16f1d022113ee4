#pragma once

// From 3D backbone coordinates to bonded diagrams.

#include "bondedkb/diagram.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bkb {

using Vec3 = std::array<double, 3>;

struct PolymerChain {
    std::vector<Vec3> points;
    bool closed = false;
};

struct StructureBond {
    int chain1 = 0, residue1 = 0;
    int chain2 = 0, residue2 = 0;
};

struct PolymerStructure {
    std::vector<PolymerChain> chains;
    std::vector<StructureBond> bonds;
};

enum class StructureFormat { Auto, Json, Pdb };

// Native JSON {"chains":[[[x,y,z],...]],"bonds":[[ci,ri,cj,rj],...]} or the
// CA/SSBOND subset of PDB text (first model). `chain` restricts PDB input to
// one chain identifier. Throws ParseError or ValidationError.
PolymerStructure load_structure(const std::string& text, StructureFormat format = StructureFormat::Auto,
                                const std::string& chain = "");
PolymerStructure load_structure_file(const std::string& path, StructureFormat format = StructureFormat::Auto,
                                     const std::string& chain = "");

void validate_structure(const PolymerStructure& s);

// Closes every open chain with the straight segment from its last point back to the first.
PolymerStructure close_chain(const PolymerStructure& s);

struct ProjectionConfig {
    std::uint64_t seed = 0;
    std::optional<Vec3> direction;
    double perturbation = 1e-3;  // relative size of the direction nudge on retries
    int max_retries = 16;
    // Cancel the writhe of the projection with half-twist markers on a chain
    // edge, so the framing does not depend on the viewing direction.
    bool zero_framing = true;
};

// Orthogonal projection along the configured (or seeded random) direction.
// Throws GenericityError when no attempt gives a regular projection.
BondedDiagram project(const PolymerStructure& s, const ProjectionConfig& cfg = {});

}  // namespace bkb
