#ifndef ROOM25_OPENINGS_HPP
#define ROOM25_OPENINGS_HPP

#include <optional>
#include <string>
#include <vector>

#include "room25/core.hpp"
#include "room25/engine.hpp"
#include "room25/notation.hpp"
#include "room25/result.hpp"

namespace room25 {

// ---------------------------------------------------------------------------
// The two reference openings.
//
// Veloce: everyone piles onto a safe room X next to Start, a control action
// lifts the stack beside the Exit's hoped-for cell, and turn 2 boards and
// slides it off. Works when some board symmetry puts the Exit at [2;1] with
// a safe X at [1;0].
//
// Temeraire: under the push-from-start variant, two blind pushes into a
// hoped-for control room at [1;0] generate enough shifts to walk the Exit to
// the left edge and slide everyone off within the very first turn.
// ---------------------------------------------------------------------------

enum class Opening : std::uint8_t { Veloce, Temeraire };

struct OpeningError {
    std::string message;
};

struct LuckWitness {
    Frame frame;
    // Tile found at the frame's [1;0]: one of Empty/Machine/Dark/Tunnel for
    // the veloce predicate, Control for temeraire.
    TileKind x_tile = TileKind::Empty;

    friend bool operator==(const LuckWitness&, const LuckWitness&) = default;
};

// Rooms acceptable as the veloce X.
bool valid_x_kind(TileKind k);

// Turn-1 programs exactly as defined: n=1 -> "1: 1DC";
// n>1 -> lookers 1..n-2 program RD, n-1 programs DC, n programs DR.
Result<ProgrammedTurn, OpeningError> veloce_program(int n);

// Turn-2 closer: everyone boards the Exit, character 1 slides it off.
Result<ProgrammedTurn, OpeningError> veloce_closing_program(int n);

// The fixed six-character program "1: 1PD | 2PD | 3CD | 4DC | 5DC | 6DC".
// Any other character count is ArityFixed.
Result<ProgrammedTurn, OpeningError> temeraire_program(int n = 6);

/**
 * Luck predicates. The board must be fully identified (all 25 kinds known).
 *
 * v_lucky mirrors the team's actual decision rule: scan the four Start
 * neighbors in scout order ([1;0], [0;1], [-1;0], [0;-1] -- the quarter-turn
 * orbit of [1;0]), commit to the FIRST valid X found, and report a witness
 * only if the Exit sits at that same rotation's image of [2;1]. A valid X
 * followed by a misplaced Exit yields no witness even if a later rotation
 * would have worked.
 *
 * t_lucky is identity-frame only: the blind pushes commit to [1;0] before
 * anything is revealed, so the witness requires Control at [1;0] and the
 * Exit at [2;1] literally.
 */
Result<std::optional<LuckWitness>, OpeningError> v_lucky(const BoardState& b);
Result<std::optional<LuckWitness>, OpeningError> t_lucky(const BoardState& b);

/**
 * Concrete win script for the witness, all coordinates and lines pushed
 * through the witness frame. Veloce yields two turns (the second derived
 * and engine-verified, the source account only spells out turn 1);
 * temeraire one turn ending in the slide.
 */
Result<Script, OpeningError> canned_script(Opening o, const LuckWitness& w,
                                           int n);

// Matching programs for replay validation, one entry per scripted turn.
Result<std::vector<ProgrammedTurn>, OpeningError> canned_programs(
    Opening o, const LuckWitness& w, int n);

}  // namespace room25

#endif  // ROOM25_OPENINGS_HPP
