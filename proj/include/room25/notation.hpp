#ifndef ROOM25_NOTATION_HPP
#define ROOM25_NOTATION_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "room25/core.hpp"
#include "room25/result.hpp"

namespace room25 {

// ---------------------------------------------------------------------------
// Algebraic move notation
//
// Steps:   <actor><verb><args>, e.g. 1R[1;2], 1D[1;0], 1P2[1;2], 1C^[1;].
// Riders:  a D or P step entering a control-style room appends the mandated
//          shift, e.g. 1D[1;2]^[2;].
// Scripts: one turn per line, "N: step | step | ...", a trailing # marks the
//          winning step.
// Programs: "N: 1RD | 2RD | ..." with one or two distinct verb letters per
//          character.
//
// ASCII direction symbols are ^ v < >; the Unicode arrows are accepted on
// input and canonicalized on output. A bare "NC" step is a control action
// with nothing to shift, only legal on the Start cell where both lines are
// central; it exists so scripts can show the action was still spent.
// ---------------------------------------------------------------------------

enum class Verb : std::uint8_t { Look, Move, Push, Control };

char verb_letter(Verb v);  // R D P C
std::optional<Verb> verb_from_letter(char c);

struct Rider {
    Line line;
    Direction dir = Direction::Up;

    friend bool operator==(const Rider&, const Rider&) = default;
};

struct ActionStep {
    int actor = 0;
    Verb verb = Verb::Move;
    int target = 0;                   // pushed character (Push only)
    std::optional<Coord> coord;       // Look/Move/Push destination
    std::optional<Line> line;         // Control; nullopt = no-effect control
    std::optional<Direction> dir;     // Control
    std::optional<Rider> rider;       // Move/Push into a rider-granting room
    bool win_marker = false;

    friend bool operator==(const ActionStep&, const ActionStep&) = default;
};

struct ScriptTurn {
    int turn_number = 1;
    std::vector<ActionStep> steps;

    friend bool operator==(const ScriptTurn&, const ScriptTurn&) = default;
};

struct Script {
    std::vector<ScriptTurn> turns;

    friend bool operator==(const Script&, const Script&) = default;
};

struct CharacterProgram {
    int character = 0;
    std::vector<Verb> verbs;  // one or two letters, distinct when two

    friend bool operator==(const CharacterProgram&,
                           const CharacterProgram&) = default;
};

struct ProgrammedTurn {
    int turn_number = 1;
    std::vector<CharacterProgram> programs;

    friend bool operator==(const ProgrammedTurn&,
                           const ProgrammedTurn&) = default;
};

enum class ParseErrorCode {
    Syntax,
    CoordOutOfRange,
    SelfPush,
    NonMonotoneTurnNumbers,
};

struct ParseError {
    ParseErrorCode code = ParseErrorCode::Syntax;
    int line = 1;    // 1-based
    int column = 1;  // 1-based byte column
    std::string message;
};

std::string describe(const ParseError& e);

Result<ActionStep, ParseError> parse_step(std::string_view text);

// One "N: ..." turn line; any positive turn number accepted (mid-game
// excerpts replay fine on their own).
Result<ScriptTurn, ParseError> parse_script_turn(std::string_view text);

// Whole scripts require turn numbers 1, 2, 3, ... with no gaps.
Result<Script, ParseError> parse_script(std::string_view text);

Result<ProgrammedTurn, ParseError> parse_program_turn(std::string_view text);
Result<std::vector<ProgrammedTurn>, ParseError> parse_program(
    std::string_view text);

std::string format(const ActionStep& s);
std::string format(const ScriptTurn& t);
std::string format(const Script& s);
std::string format(const CharacterProgram& p);
std::string format(const ProgrammedTurn& t);
std::string format(const std::vector<ProgrammedTurn>& ts);

}  // namespace room25

#endif  // ROOM25_NOTATION_HPP
