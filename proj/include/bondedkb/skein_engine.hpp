#pragma once

#include "bondedkb/diagram.hpp"
#include "bondedkb/laurent.hpp"

#include <cstdint>
#include <utility>

namespace bkb {

enum class Mode { Framed, Topological };

struct EvaluationOptions {
    Mode mode = Mode::Framed;
    bool use_connected_sum_shortcut = true;
    bool memoize = true;
    bool parallel = false;
    // 0 resolves crossings and bonds in the engine's default order; any other
    // value permutes that order deterministically.
    std::uint64_t order_seed = 0;
};

struct EvaluationStats {
    std::uint64_t states_expanded = 0;
    std::uint64_t cache_hits = 0;
};

struct EvaluationResult {
    SkeinValue value;
    int writhe = 0;
    int bond_count = 0;
    EvaluationStats stats;
};

// (A-smoothing, A^-1-smoothing) of a chain-chain crossing. Throws
// ValidationError if a bond passes through the crossing.
std::pair<BondedDiagram, BondedDiagram> smooth_crossing(const BondedDiagram& d, int crossing);

// Folds markers along each chain arc into a unit (-A^3)^(sum/2); the returned
// diagram has no markers. Throws ValidationError on an odd arc sum.
std::pair<BondedDiagram, Coefficient> fold_markers(const BondedDiagram& d);

// Removes closed chain components without bond vertices; requires no crossings.
std::pair<BondedDiagram, int> delete_free_circles(const BondedDiagram& d);

// Bond removal maps. Crossings on the bond arc are dropped along with it.
BondedDiagram g0_remove(const BondedDiagram& d, int bond_edge);
BondedDiagram ginf_remove(const BondedDiagram& d, int bond_edge);

struct BondExtraction {
    SkeinValue alpha, beta;
    BondedDiagram g0, ginf;
};
// Requires a crossingless diagram.
BondExtraction extract_bond(const BondedDiagram& d, int bond_edge);

struct ShortcutResult {
    SkeinValue factor;
    BondedDiagram remainder;
};
// A theta or handcuff summand split off a crossingless diagram, if one hangs off it.
std::optional<ShortcutResult> connected_sum_shortcut(const BondedDiagram& d, Mode mode = Mode::Framed);

EvaluationResult evaluate(const BondedDiagram& d, const EvaluationOptions& opts = {});
EvaluationResult evaluate_framed(const BondedDiagram& d, EvaluationOptions opts = {});
// Direct topological evaluation, checked against the framed value under H -> delta T.
EvaluationResult evaluate_topological(const BondedDiagram& d, EvaluationOptions opts = {});

SkeinValue normalized_value(const BondedDiagram& d, Mode mode = Mode::Framed, const EvaluationOptions& opts = {});
BivariateLaurent reduced_polynomial(const BondedDiagram& d, const EvaluationOptions& opts = {});
// Bracket of a bondless diagram, normalized so the unknot is 1.
Coefficient classical_bracket(const BondedDiagram& d, const EvaluationOptions& opts = {});

// Moves every bond crossing off its bond by IV/IV' slides.
BondedDiagram slide_bonds_free(const BondedDiagram& d);

namespace testing {
// Deliberately wrong B-smoothing weight (A instead of A^-1); used to check
// that the verifier notices a broken engine.
void set_fault_injection(bool on);
}

}  // namespace bkb
