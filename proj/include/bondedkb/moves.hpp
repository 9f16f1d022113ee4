#pragma once

#include "bondedkb/diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bkb {

enum class MoveKind { I_pos, I_neg, II, III, IV, IV_prime, V, RV, BondSlide };

const char* move_name(MoveKind k);

// Location of a move. Field meaning depends on the move:
//   I+/I-  forward: a = edge, flag = loop on the left; inverse: a = crossing
//   II     forward: (a, a_forward) and (b, b_forward) are darts bounding a common
//                   face, flag = first strand passes over; inverse: a = bigon dart
//   III    a = dart of the moving strand, triangle on its left
//   IV/IV' forward: a = vertex whose bond edge meets the crossing to slide off;
//          inverse: a = vertex with the crossing pair to pull back onto the bond
//   V      forward: a = vertex, flag = positive twist; inverse: a = twisted vertex
//   RV     forward: a = vertex of a crossing-free bond, flag = sign; inverse: a = vertex
//   bond_slide  a = twisted vertex; the twist moves to the other end of its bond
struct MoveSite {
    MoveKind move = MoveKind::II;
    bool inverse = false;
    int a = -1;
    int b = -1;
    bool a_forward = true;
    bool b_forward = true;
    bool flag = false;

    std::string to_string() const;
    friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

// Throws MoveError if the local pattern at the site does not match.
BondedDiagram apply_move(const BondedDiagram& d, const MoveSite& s);
std::vector<MoveSite> enumerate_sites(const BondedDiagram& d, MoveKind kind, bool inverse);

// Net change in crossing count a move causes.
int crossing_delta(const MoveSite& s);

struct MoveRecord {
    MoveSite site;
    int writhe_change = 0;
};

struct RandomMoveOptions {
    std::vector<MoveKind> kinds{MoveKind::I_pos, MoveKind::I_neg, MoveKind::II,       MoveKind::III,
                                MoveKind::IV,    MoveKind::IV_prime, MoveKind::RV, MoveKind::BondSlide};
    bool allow_inverse = true;
    int max_crossings = 12;
};

struct RandomMovesResult {
    BondedDiagram diagram;
    std::vector<MoveRecord> log;
    // Writhe change contributed by I moves; the framed value changes by (-A^3)^this.
    int kink_writhe = 0;
};

RandomMovesResult random_moves(const BondedDiagram& d, int count, std::uint64_t seed,
                               const RandomMoveOptions& opts = {});

// Vertex twist sign at a twisted vertex, or 0 if the vertex is not twisted.
int vertex_twist_sign(const BondedDiagram& d, int vertex);

}  // namespace bkb
