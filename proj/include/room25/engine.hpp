#ifndef ROOM25_ENGINE_HPP
#define ROOM25_ENGINE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "room25/core.hpp"
#include "room25/notation.hpp"
#include "room25/result.hpp"

namespace room25 {

// Solo play up to the full table of six.
constexpr int kMaxCharacters = 6;

// ---------------------------------------------------------------------------
// Rule knobs
// ---------------------------------------------------------------------------

struct RuleVariant {
    bool push_from_start_allowed = false;    // base rules forbid pushing from D
    bool push_from_control_allowed = false;  // and from the control room

    friend bool operator==(const RuleVariant&, const RuleVariant&) = default;
};

// Full victory (any death loses immediately) is the normal regime.
// AllowDeaths keeps the game running after deaths so partial-victory
// questions can be explored; the victory slide still only counts the living.
enum class VictoryRegime : std::uint8_t { FullOnly, AllowDeaths };

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

struct CharacterState {
    int id = 0;
    Coord position{0, 0};
    bool alive = true;

    // Delayed deaths. A pending fires at the end of the victim's first own
    // action begun after it was armed; the arming step id tells them apart.
    bool trap_pending = false;
    int trap_pending_since = 0;
    std::optional<int> flood_deadline;  // turn at whose end the water wins

    int actions_taken = 0;        // this turn, 0..2
    std::uint8_t verbs_used = 0;  // bitmask by Verb, reset each turn

    int entry_stamp = 0;          // global order of the last tile entry
    bool reached_nonblue = false; // membership in the set Pi

    friend bool operator==(const CharacterState&,
                           const CharacterState&) = default;
};

enum class Outcome : std::uint8_t { InProgress, Won, Lost };

const char* outcome_name(Outcome o);

struct GameState {
    BoardState board;
    std::vector<CharacterState> characters;
    RuleVariant variant;
    VictoryRegime regime = VictoryRegime::FullOnly;

    int turn = 1;
    int first_player = 1;  // seat acting first this turn
    std::array<std::optional<Direction>, kShiftableLineCount> line_locks{};
    Outcome outcome = Outcome::InProgress;
    int decided_turn = 0;  // turn on which the outcome was fixed
    int deaths = 0;

    int step_counter = 0;   // arms delayed deaths
    int entry_counter = 0;  // orders acid victims

    static GameState initial(BoardState board, int n_characters,
                             RuleVariant variant = {});

    CharacterState* character(int id);
    const CharacterState* character(int id) const;

    // Living characters on a cell, optionally excluding one id.
    std::vector<int> occupants(Coord c, int except = 0) const;

    std::optional<Direction> lock(Line l) const;

    // Seat acting i-th this turn (i in [0, n)).
    int seat(int i) const;

    friend bool operator==(const GameState&, const GameState&) = default;
};

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

struct Event {
    enum class Type {
        TileRevealed,
        CharacterMoved,
        ControlShift,
        Death,
        VictorySlide,
    };

    Type type = Type::TileRevealed;
    int character = 0;
    Coord from{}, to{};
    TileKind tile = TileKind::Empty;  // revealed kind or death cause
    Line line{};
    Direction dir = Direction::Up;

    friend bool operator==(const Event&, const Event&) = default;
};

std::string to_string(const Event& e);

// ---------------------------------------------------------------------------
// Stepping
// ---------------------------------------------------------------------------

enum class RuleError {
    IllegalMove,
    PushFromStartForbidden,
    PushFromControlForbidden,
    LineLockViolation,
    LookFromDarkForbidden,
    CentralLineForbidden,
};

const char* rule_error_name(RuleError e);

struct StepError {
    RuleError code = RuleError::IllegalMove;
    std::string detail;
};

// Full legality check; nullopt means the step may be applied.
std::optional<StepError> check_step(const GameState& g, const ActionStep& s);

// Applies a step that passed check_step. Events are appended when a sink is
// given. Tile effects resolve immediately; the actor's delayed deaths fire
// at the end of the step.
void apply_step(GameState& g, const ActionStep& s,
                std::vector<Event>* events = nullptr);

// Flood deaths, lock reset, seat rotation, turn increment.
void end_turn(GameState& g, std::vector<Event>* events = nullptr);

// True when some legal parameterization of the verb exists for the actor
// right now. Drives the mandatory-execution rule.
bool verb_executable(const GameState& g, int actor, Verb v);

// ---------------------------------------------------------------------------
// Programming and ordering validation
// ---------------------------------------------------------------------------

enum class ProgramViolationKind {
    DuplicateAction,
    TooManyActions,
    NoActions,
    UnknownCharacter,
    DuplicateCharacter,
    MissingCharacter,
    DeadActor,
};

const char* program_violation_name(ProgramViolationKind k);

struct ProgramViolation {
    ProgramViolationKind kind = ProgramViolationKind::DuplicateAction;
    int character = 0;
    std::string detail;
};

std::vector<ProgramViolation> validate_program(const ProgrammedTurn& p,
                                               const GameState& g);

enum class OrderingViolationKind {
    OrderViolation,
    SkippedMandatoryAction,
    UnprogrammedStep,
    StepIllegal,
};

const char* ordering_violation_name(OrderingViolationKind k);

struct OrderingViolation {
    OrderingViolationKind kind = OrderingViolationKind::OrderViolation;
    int step_index = 0;  // 1-based within the turn; 0 = whole turn
    std::string detail;
};

/**
 * Checks one turn's steps against a program and the turn-start state:
 * a first pass then a second pass, both in rotating seat order; two-action
 * characters split across the passes in program order; single-action
 * characters slotted into exactly one pass; every programmed action executed
 * whenever a legal parameterization existed at its slot. The state is
 * advanced internally, so step legality failures surface here too.
 */
std::optional<OrderingViolation> validate_ordering(
    const std::vector<ActionStep>& steps, const ProgrammedTurn& p,
    const GameState& turn_start);

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct RunError {
    int turn = 0;
    int step_index = 0;  // 1-based within the turn; 0 = turn-level
    std::string message;
};

struct RunResult {
    GameState final_state;
    std::vector<Event> events;
};

/**
 * Deterministic replay of a full script from the initial placement
 * (n characters on Start). When programs are supplied, each turn is also
 * validated against its programmed actions (ordering, mandatory execution);
 * without them only the seat-order structure implied by the steps is
 * enforced. The first failure is reported with its turn and step.
 */
Result<RunResult, RunError> run_script(
    const BoardState& board, int n_characters, RuleVariant variant,
    const Script& script,
    const std::vector<ProgrammedTurn>* programs = nullptr,
    VictoryRegime regime = VictoryRegime::FullOnly);

// One line per event plus a final "outcome ..." line.
std::string render_log(const RunResult& r);

}  // namespace room25

#endif  // ROOM25_ENGINE_HPP
