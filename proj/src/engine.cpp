#include "room25/engine.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace room25 {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::InProgress: return "InProgress";
        case Outcome::Won: return "Won";
        case Outcome::Lost: return "Lost";
    }
    return "?";
}

const char* rule_error_name(RuleError e) {
    switch (e) {
        case RuleError::IllegalMove: return "IllegalMove";
        case RuleError::PushFromStartForbidden:
            return "PushFromStartForbidden";
        case RuleError::PushFromControlForbidden:
            return "PushFromControlForbidden";
        case RuleError::LineLockViolation: return "LineLockViolation";
        case RuleError::LookFromDarkForbidden:
            return "LookFromDarkForbidden";
        case RuleError::CentralLineForbidden: return "CentralLineForbidden";
    }
    return "?";
}

GameState GameState::initial(BoardState board, int n_characters,
                             RuleVariant variant) {
    GameState g;
    g.board = std::move(board);
    g.variant = variant;
    g.characters.resize(n_characters);
    for (int i = 0; i < n_characters; ++i) {
        CharacterState& ch = g.characters[i];
        ch.id = i + 1;
        ch.position = Coord{0, 0};
        ch.entry_stamp = ++g.entry_counter;
    }
    return g;
}

CharacterState* GameState::character(int id) {
    if (id < 1 || id > static_cast<int>(characters.size())) return nullptr;
    return &characters[id - 1];
}

const CharacterState* GameState::character(int id) const {
    if (id < 1 || id > static_cast<int>(characters.size())) return nullptr;
    return &characters[id - 1];
}

std::vector<int> GameState::occupants(Coord c, int except) const {
    std::vector<int> out;
    for (const CharacterState& ch : characters)
        if (ch.alive && ch.position == c && ch.id != except)
            out.push_back(ch.id);
    return out;
}

std::optional<Direction> GameState::lock(Line l) const {
    int slot = shiftable_line_slot(l);
    return slot < 0 ? std::nullopt : line_locks[slot];
}

int GameState::seat(int i) const {
    int n = static_cast<int>(characters.size());
    return (first_player - 1 + i) % n + 1;
}

std::string to_string(const Event& e) {
    std::ostringstream out;
    switch (e.type) {
        case Event::Type::TileRevealed:
            out << "TileRevealed " << to_string(e.to) << ' '
                << tile_code(e.tile);
            break;
        case Event::Type::CharacterMoved:
            out << "CharacterMoved " << e.character << ' ' << to_string(e.from)
                << ' ' << to_string(e.to);
            break;
        case Event::Type::ControlShift:
            out << "ControlShift " << to_string(e.line) << ' '
                << direction_char(e.dir);
            break;
        case Event::Type::Death:
            out << "Death " << e.character << ' ' << tile_name(e.tile);
            break;
        case Event::Type::VictorySlide:
            out << "VictorySlide " << to_string(e.line) << ' '
                << direction_char(e.dir);
            break;
    }
    return out.str();
}

namespace {

void emit(std::vector<Event>* events, Event e) {
    if (events) events->push_back(std::move(e));
}

void kill(GameState& g, CharacterState& ch, TileKind cause,
          std::vector<Event>* events) {
    ch.alive = false;
    ++g.deaths;
    Event e;
    e.type = Event::Type::Death;
    e.character = ch.id;
    e.tile = cause;
    emit(events, std::move(e));
    bool any_alive = std::any_of(g.characters.begin(), g.characters.end(),
                                 [](const CharacterState& c) { return c.alive; });
    if (g.regime == VictoryRegime::FullOnly || !any_alive) {
        g.outcome = Outcome::Lost;
        g.decided_turn = g.turn;
    }
}

// Clears position-tied timers when a character leaves its tile, whether by
// its own move or a push.
void leave_tile(GameState& g, CharacterState& ch) {
    std::optional<TileKind> kind = g.board.kind_at(ch.position);
    if (kind == TileKind::Trap) ch.trap_pending = false;
    if (kind == TileKind::Flood) ch.flood_deadline.reset();
}

// Cyclic shift plus occupants; detects the winning slide. Legality
// (central line, axis, lock) was validated by the caller.
void do_shift(GameState& g, Line line, Direction dir,
              std::vector<Event>* events) {
    std::optional<Coord> exit_cell = g.board.find(TileKind::Exit);
    if (exit_cell && contains(line, *exit_cell)) {
        Coord off = step_toward(*exit_cell, dir);
        if (!in_bounds(off)) {
            bool all_aboard = true;
            bool any_alive = false;
            for (const CharacterState& ch : g.characters) {
                if (!ch.alive) continue;
                any_alive = true;
                if (ch.position != *exit_cell) all_aboard = false;
            }
            if (any_alive && all_aboard) {
                Event e;
                e.type = Event::Type::VictorySlide;
                e.line = line;
                e.dir = dir;
                emit(events, std::move(e));
                g.outcome = Outcome::Won;
                g.decided_turn = g.turn;
                return;
            }
        }
    }
    auto err = g.board.shift(line, dir);
    assert(!err);
    (void)err;
    for (CharacterState& ch : g.characters) {
        if (ch.alive && contains(line, ch.position))
            ch.position = BoardState::shifted_cell(ch.position, line, dir);
    }
    g.line_locks[shiftable_line_slot(line)] = dir;
    Event e;
    e.type = Event::Type::ControlShift;
    e.line = line;
    e.dir = dir;
    emit(events, std::move(e));
}

// Moves a character onto a cell and resolves the tile's entry effects.
// `rider` is the shift mandated when the tile is a control-style room.
void enter_tile(GameState& g, CharacterState& ch, Coord to,
                const std::optional<Rider>& rider, int step_id,
                std::vector<Event>* events) {
    Coord from = ch.position;
    BoardSlot slot = g.board.slot(to);
    assert(slot.kind.has_value());
    TileKind kind = *slot.kind;

    if (!slot.face_up) {
        g.board.set_face_up(to);
        Event e;
        e.type = Event::Type::TileRevealed;
        e.to = to;
        e.tile = kind;
        emit(events, std::move(e));
    }

    ch.position = to;
    ch.entry_stamp = ++g.entry_counter;
    if (tile_color(kind) != TileColor::Blue) ch.reached_nonblue = true;

    {
        Event e;
        e.type = Event::Type::CharacterMoved;
        e.character = ch.id;
        e.from = from;
        e.to = to;
        emit(events, std::move(e));
    }

    switch (kind) {
        case TileKind::Mortal:
        case TileKind::RedOther:
            kill(g, ch, kind, events);
            return;
        case TileKind::Vortex:
            // The whirl drops the character back on Start; Start itself has
            // no entry effect, so one level of recursion suffices.
            enter_tile(g, ch, Coord{0, 0}, std::nullopt, step_id, events);
            return;
        case TileKind::Trap:
            ch.trap_pending = true;
            ch.trap_pending_since = step_id;
            return;
        case TileKind::Flood:
            ch.flood_deadline = g.turn + 1;
            return;
        case TileKind::Acid: {
            std::vector<int> prior = g.occupants(to, ch.id);
            if (!prior.empty()) {
                CharacterState* earliest = nullptr;
                for (int id : prior) {
                    CharacterState* other = g.character(id);
                    if (!earliest ||
                        other->entry_stamp < earliest->entry_stamp)
                        earliest = other;
                }
                kill(g, *earliest, TileKind::Acid, events);
            }
            return;
        }
        case TileKind::FreeKill:
            // Fictitious testing room: the granted shift resolves twice,
            // then the mechanism kills whoever arrived.
            assert(rider.has_value());
            do_shift(g, rider->line, rider->dir, events);
            do_shift(g, rider->line, rider->dir, events);
            kill(g, ch, TileKind::FreeKill, events);
            return;
        case TileKind::Control:
        case TileKind::Machine:
            assert(rider.has_value());
            do_shift(g, rider->line, rider->dir, events);
            return;
        default:
            return;  // Start, Exit, Empty, Dark, Tunnel, YellowOther
    }
}

// Shared legality for the shift demanded from whoever enters a
// control-style room.
std::optional<StepError> check_rider(const GameState& g, TileKind dest_kind,
                                     const std::optional<Rider>& rider) {
    if (!grants_rider(dest_kind)) {
        if (rider)
            return StepError{RuleError::IllegalMove,
                             "no shift is granted when entering " +
                                 std::string(tile_name(dest_kind))};
        return std::nullopt;
    }
    if (!rider)
        return StepError{RuleError::IllegalMove,
                         std::string("entering ") + tile_name(dest_kind) +
                             " demands a line shift"};
    if (central(rider->line))
        return StepError{RuleError::CentralLineForbidden,
                         "central line " + to_string(rider->line) +
                             " can never shift"};
    if (!direction_fits_axis(rider->line, rider->dir))
        return StepError{RuleError::IllegalMove,
                         "direction does not run along " +
                             to_string(rider->line)};
    auto lock = g.lock(rider->line);
    if (lock && *lock != rider->dir)
        return StepError{RuleError::LineLockViolation,
                         to_string(rider->line) +
                             " already shifted the other way this turn"};
    return std::nullopt;
}

}  // namespace

std::optional<StepError> check_step(const GameState& g, const ActionStep& s) {
    if (g.outcome != Outcome::InProgress)
        return StepError{RuleError::IllegalMove, "the game is already decided"};
    const CharacterState* ch = g.character(s.actor);
    if (!ch)
        return StepError{RuleError::IllegalMove,
                         "no character " + std::to_string(s.actor)};
    if (!ch->alive)
        return StepError{RuleError::IllegalMove,
                         "character " + std::to_string(s.actor) + " is dead"};
    if (ch->actions_taken >= 2)
        return StepError{RuleError::IllegalMove,
                         "character " + std::to_string(s.actor) +
                             " already acted twice this turn"};
    if (ch->verbs_used & (1u << static_cast<int>(s.verb)))
        return StepError{RuleError::IllegalMove,
                         "a character's two actions must differ"};

    switch (s.verb) {
        case Verb::Look: {
            if (!s.coord)
                return StepError{RuleError::IllegalMove,
                                 "look needs a target cell"};
            if (g.board.kind_at(ch->position) == TileKind::Dark)
                return StepError{RuleError::LookFromDarkForbidden,
                                 "no peeking from a dark room"};
            if (!adjacent(*s.coord, ch->position))
                return StepError{RuleError::IllegalMove,
                                 to_string(*s.coord) + " is not adjacent"};
            if (g.board.face_up(*s.coord))
                return StepError{RuleError::IllegalMove,
                                 "tile at " + to_string(*s.coord) +
                                     " is already face up"};
            if (!g.board.kind_at(*s.coord))
                return StepError{RuleError::IllegalMove,
                                 "tile identity at " + to_string(*s.coord) +
                                     " is unspecified in this board"};
            return std::nullopt;
        }
        case Verb::Move: {
            if (!s.coord)
                return StepError{RuleError::IllegalMove,
                                 "move needs a destination"};
            if (!adjacent(*s.coord, ch->position))
                return StepError{RuleError::IllegalMove,
                                 to_string(*s.coord) + " is not adjacent"};
            std::optional<TileKind> dest = g.board.kind_at(*s.coord);
            if (!dest)
                return StepError{RuleError::IllegalMove,
                                 "tile identity at " + to_string(*s.coord) +
                                     " is unspecified in this board"};
            return check_rider(g, *dest, s.rider);
        }
        case Verb::Push: {
            const CharacterState* victim = g.character(s.target);
            if (!victim || !victim->alive)
                return StepError{RuleError::IllegalMove,
                                 "no living character " +
                                     std::to_string(s.target) + " to push"};
            if (victim->position != ch->position)
                return StepError{RuleError::IllegalMove,
                                 "characters must share a tile to push"};
            if (!s.coord)
                return StepError{RuleError::IllegalMove,
                                 "push needs a destination"};
            if (!adjacent(*s.coord, ch->position))
                return StepError{RuleError::IllegalMove,
                                 to_string(*s.coord) + " is not adjacent"};
            std::optional<TileKind> here = g.board.kind_at(ch->position);
            if (here == TileKind::Start && !g.variant.push_from_start_allowed)
                return StepError{RuleError::PushFromStartForbidden,
                                 "pushing from the start tile is forbidden"};
            if (here == TileKind::Control &&
                !g.variant.push_from_control_allowed)
                return StepError{RuleError::PushFromControlForbidden,
                                 "pushing from the control room is forbidden"};
            std::optional<TileKind> dest = g.board.kind_at(*s.coord);
            if (!dest)
                return StepError{RuleError::IllegalMove,
                                 "tile identity at " + to_string(*s.coord) +
                                     " is unspecified in this board"};
            return check_rider(g, *dest, s.rider);
        }
        case Verb::Control: {
            if (!s.line) {
                // The no-effect form, only meaningful where both of the
                // actor's lines are central, i.e. on Start.
                if (ch->position != Coord{0, 0})
                    return StepError{RuleError::IllegalMove,
                                     "a control action away from the start "
                                     "tile must name a line"};
                return std::nullopt;
            }
            if (!contains(*s.line, ch->position))
                return StepError{RuleError::IllegalMove,
                                 "may only shift the actor's own row or "
                                 "column"};
            if (central(*s.line))
                return StepError{RuleError::CentralLineForbidden,
                                 "central line " + to_string(*s.line) +
                                     " can never shift"};
            if (!s.dir || !direction_fits_axis(*s.line, *s.dir))
                return StepError{RuleError::IllegalMove,
                                 "direction does not run along " +
                                     to_string(*s.line)};
            auto lock = g.lock(*s.line);
            if (lock && *lock != *s.dir)
                return StepError{RuleError::LineLockViolation,
                                 to_string(*s.line) +
                                     " already shifted the other way this "
                                     "turn"};
            return std::nullopt;
        }
    }
    return StepError{RuleError::IllegalMove, "unknown verb"};
}

void apply_step(GameState& g, const ActionStep& s,
                std::vector<Event>* events) {
    int step_id = ++g.step_counter;
    CharacterState& ch = *g.character(s.actor);

    switch (s.verb) {
        case Verb::Look: {
            Event e;
            e.type = Event::Type::TileRevealed;
            e.to = *s.coord;
            e.tile = *g.board.kind_at(*s.coord);
            emit(events, std::move(e));
            break;
        }
        case Verb::Move:
            leave_tile(g, ch);
            enter_tile(g, ch, *s.coord, s.rider, step_id, events);
            break;
        case Verb::Push: {
            CharacterState& victim = *g.character(s.target);
            leave_tile(g, victim);
            enter_tile(g, victim, *s.coord, s.rider, step_id, events);
            break;
        }
        case Verb::Control:
            if (s.line) do_shift(g, *s.line, *s.dir, events);
            break;
    }

    ch.actions_taken += 1;
    ch.verbs_used |= static_cast<std::uint8_t>(1u << static_cast<int>(s.verb));

    if (g.outcome != Outcome::InProgress) return;

    // Delayed deaths armed before this step fire once it completes.
    if (ch.alive && ch.trap_pending && ch.trap_pending_since < step_id)
        kill(g, ch, TileKind::Trap, events);
}

void end_turn(GameState& g, std::vector<Event>* events) {
    if (g.outcome == Outcome::InProgress) {
        for (CharacterState& ch : g.characters) {
            if (ch.alive && ch.flood_deadline == g.turn &&
                g.board.kind_at(ch.position) == TileKind::Flood) {
                kill(g, ch, TileKind::Flood, events);
                if (g.outcome != Outcome::InProgress) break;
            }
        }
    }
    g.line_locks.fill(std::nullopt);
    for (CharacterState& ch : g.characters) {
        ch.actions_taken = 0;
        ch.verbs_used = 0;
    }
    int n = static_cast<int>(g.characters.size());
    g.first_player = g.first_player % n + 1;
    g.turn += 1;
}

bool verb_executable(const GameState& g, int actor, Verb v) {
    if (g.outcome != Outcome::InProgress) return false;
    const CharacterState* ch = g.character(actor);
    if (!ch || !ch->alive || ch->actions_taken >= 2) return false;
    if (ch->verbs_used & (1u << static_cast<int>(v))) return false;
    switch (v) {
        case Verb::Look: {
            if (g.board.kind_at(ch->position) == TileKind::Dark) return false;
            for (Direction d : {Direction::Up, Direction::Down,
                                Direction::Left, Direction::Right}) {
                Coord c = step_toward(ch->position, d);
                if (in_bounds(c) && !g.board.face_up(c)) return true;
            }
            return false;
        }
        case Verb::Move:
            return true;  // some adjacent cell always exists
        case Verb::Push: {
            if (g.occupants(ch->position, actor).empty()) return false;
            std::optional<TileKind> here = g.board.kind_at(ch->position);
            if (here == TileKind::Start && !g.variant.push_from_start_allowed)
                return false;
            if (here == TileKind::Control &&
                !g.variant.push_from_control_allowed)
                return false;
            return true;
        }
        case Verb::Control:
            // Away from Start some own line is shiftable and its locked
            // direction (if any) remains available; on Start the no-effect
            // form is still an execution.
            return true;
    }
    return false;
}

const char* program_violation_name(ProgramViolationKind k) {
    switch (k) {
        case ProgramViolationKind::DuplicateAction: return "DuplicateAction";
        case ProgramViolationKind::TooManyActions: return "TooManyActions";
        case ProgramViolationKind::NoActions: return "NoActions";
        case ProgramViolationKind::UnknownCharacter: return "UnknownCharacter";
        case ProgramViolationKind::DuplicateCharacter:
            return "DuplicateCharacter";
        case ProgramViolationKind::MissingCharacter: return "MissingCharacter";
        case ProgramViolationKind::DeadActor: return "DeadActor";
    }
    return "?";
}

std::vector<ProgramViolation> validate_program(const ProgrammedTurn& p,
                                               const GameState& g) {
    std::vector<ProgramViolation> out;
    std::vector<bool> seen(g.characters.size() + 1, false);
    for (const CharacterProgram& cp : p.programs) {
        const CharacterState* ch = g.character(cp.character);
        if (!ch) {
            out.push_back({ProgramViolationKind::UnknownCharacter,
                           cp.character, "no such character"});
            continue;
        }
        if (seen[cp.character])
            out.push_back({ProgramViolationKind::DuplicateCharacter,
                           cp.character, "programmed twice"});
        seen[cp.character] = true;
        if (!ch->alive)
            out.push_back({ProgramViolationKind::DeadActor, cp.character,
                           "dead characters act no more"});
        if (cp.verbs.empty())
            out.push_back({ProgramViolationKind::NoActions, cp.character,
                           "at least one action is required"});
        if (cp.verbs.size() > 2)
            out.push_back({ProgramViolationKind::TooManyActions, cp.character,
                           "at most two actions may be programmed"});
        if (cp.verbs.size() == 2 && cp.verbs[0] == cp.verbs[1])
            out.push_back({ProgramViolationKind::DuplicateAction, cp.character,
                           "the two actions must differ"});
    }
    for (const CharacterState& ch : g.characters) {
        if (ch.alive && !seen[ch.id])
            out.push_back({ProgramViolationKind::MissingCharacter, ch.id,
                           "every living character programs each turn"});
    }
    return out;
}

const char* ordering_violation_name(OrderingViolationKind k) {
    switch (k) {
        case OrderingViolationKind::OrderViolation: return "OrderViolation";
        case OrderingViolationKind::SkippedMandatoryAction:
            return "SkippedMandatoryAction";
        case OrderingViolationKind::UnprogrammedStep:
            return "UnprogrammedStep";
        case OrderingViolationKind::StepIllegal: return "StepIllegal";
    }
    return "?";
}

namespace {

// Backtracking matcher: walks the 2n seat slots of a turn, consuming steps
// in order. Single-action characters may sit in either pass, which is the
// only branch point. The deepest failure (by consumed steps) is reported
// when no branch accepts.
struct TurnMatcher {
    const std::vector<ActionStep>& steps;
    std::vector<std::vector<Verb>> verbs_of;  // by character id
    int n;

    std::optional<OrderingViolation> deepest;
    int deepest_steps = -1;
    std::optional<GameState> accepted;

    TurnMatcher(const std::vector<ActionStep>& steps_, int n_)
        : steps(steps_), verbs_of(n_ + 1), n(n_) {}

    void fail(int consumed, OrderingViolationKind kind, int step_index,
              std::string detail) {
        // Prefer deeper failures; on ties, later-declared kinds (more
        // specific diagnoses) win.
        if (consumed > deepest_steps ||
            (consumed == deepest_steps &&
             (!deepest || static_cast<int>(kind) >
                              static_cast<int>(deepest->kind)))) {
            deepest_steps = consumed;
            deepest = OrderingViolation{kind, step_index, std::move(detail)};
        }
    }

    // slot in [0, 2n); acted_pass1[c] true when c consumed a step in pass 1.
    bool match(int slot, std::size_t cursor, GameState state,
               std::vector<bool> acted_pass1) {
        if (state.outcome != Outcome::InProgress) {
            // The game is decided; the rest of the turn evaporates.
            if (cursor == steps.size()) {
                accepted = std::move(state);
                return true;
            }
            fail(static_cast<int>(cursor), OrderingViolationKind::StepIllegal,
                 static_cast<int>(cursor) + 1,
                 "the game is already decided");
            return false;
        }
        if (slot == 2 * n) {
            if (cursor == steps.size()) {
                accepted = std::move(state);
                return true;
            }
            fail(static_cast<int>(cursor),
                 OrderingViolationKind::OrderViolation,
                 static_cast<int>(cursor) + 1,
                 "step does not fit the pass/seat structure");
            return false;
        }

        int pass = slot / n;
        int who = state.seat(slot % n);
        const CharacterState* ch = state.character(who);
        const std::vector<Verb>& verbs = verbs_of[who];

        auto skip_slot = [&]() {
            return match(slot + 1, cursor, state, acted_pass1);
        };

        if (!ch->alive || verbs.empty()) return skip_slot();

        std::optional<Verb> slot_verb;
        bool skip_is_free = false;
        if (verbs.size() == 2) {
            slot_verb = verbs[pass];
        } else if (pass == 0) {
            slot_verb = verbs[0];
            skip_is_free = true;  // deferring to the second pass
        } else if (!acted_pass1[who]) {
            slot_verb = verbs[0];
        }

        if (!slot_verb) return skip_slot();  // single action already spent

        bool ok = false;

        // Option 1: the next step is this slot's action.
        if (cursor < steps.size() && steps[cursor].actor == who) {
            const ActionStep& st = steps[cursor];
            if (st.verb != *slot_verb) {
                fail(static_cast<int>(cursor),
                     OrderingViolationKind::UnprogrammedStep,
                     static_cast<int>(cursor) + 1,
                     std::string("programmed ") +
                         verb_letter(*slot_verb) + " but the script plays " +
                         verb_letter(st.verb));
            } else if (auto err = check_step(state, st)) {
                fail(static_cast<int>(cursor),
                     OrderingViolationKind::StepIllegal,
                     static_cast<int>(cursor) + 1,
                     std::string(rule_error_name(err->code)) + ": " +
                         err->detail);
            } else {
                GameState next = state;
                apply_step(next, st);
                std::vector<bool> acted = acted_pass1;
                if (pass == 0) acted[who] = true;
                ok = match(slot + 1, cursor + 1, std::move(next),
                           std::move(acted)) ||
                     ok;
            }
        }

        // Option 2: leave the slot empty. Legal for a deferral, otherwise
        // only when no parameterization of the verb exists right now.
        if (skip_is_free || !verb_executable(state, who, *slot_verb)) {
            ok = skip_slot() || ok;
        } else if (!ok) {
            fail(static_cast<int>(cursor),
                 OrderingViolationKind::SkippedMandatoryAction,
                 static_cast<int>(cursor) + 1,
                 "character " + std::to_string(who) + "'s programmed " +
                     verb_letter(*slot_verb) +
                     " was executable but never executed");
        }
        return ok;
    }
};

}  // namespace

std::optional<OrderingViolation> validate_ordering(
    const std::vector<ActionStep>& steps, const ProgrammedTurn& p,
    const GameState& turn_start) {
    int n = static_cast<int>(turn_start.characters.size());
    TurnMatcher m(steps, n);
    for (const CharacterProgram& cp : p.programs) {
        if (cp.character < 1 || cp.character > n)
            return OrderingViolation{OrderingViolationKind::UnprogrammedStep,
                                     0,
                                     "program names character " +
                                         std::to_string(cp.character) +
                                         " which is not in this game"};
        m.verbs_of[cp.character] = cp.verbs;
    }
    for (const ActionStep& st : steps) {
        if (st.actor < 1 || st.actor > n ||
            m.verbs_of[st.actor].empty())
            return OrderingViolation{
                OrderingViolationKind::UnprogrammedStep, 0,
                "character " + std::to_string(st.actor) +
                    " acts without a program"};
    }
    if (m.match(0, 0, turn_start, std::vector<bool>(n + 1, false)))
        return std::nullopt;
    if (m.deepest) return m.deepest;
    return OrderingViolation{OrderingViolationKind::OrderViolation, 0,
                             "steps do not fit the turn structure"};
}

namespace {

// Implied program: each character's verbs in order of appearance.
Result<ProgrammedTurn, OrderingViolation> implied_program(
    const std::vector<ActionStep>& steps, int turn_number, int n) {
    ProgrammedTurn p;
    p.turn_number = turn_number;
    std::vector<std::vector<Verb>> verbs(n + 1);
    for (const ActionStep& st : steps) {
        if (st.actor < 1 || st.actor > n)
            return OrderingViolation{OrderingViolationKind::UnprogrammedStep,
                                     0,
                                     "no character " +
                                         std::to_string(st.actor)};
        verbs[st.actor].push_back(st.verb);
        if (verbs[st.actor].size() > 2)
            return OrderingViolation{
                OrderingViolationKind::OrderViolation, 0,
                "character " + std::to_string(st.actor) +
                    " acts more than twice in one turn"};
    }
    for (int c = 1; c <= n; ++c) {
        if (!verbs[c].empty()) p.programs.push_back({c, verbs[c]});
    }
    return p;
}

}  // namespace

Result<RunResult, RunError> run_script(
    const BoardState& board, int n_characters, RuleVariant variant,
    const Script& script, const std::vector<ProgrammedTurn>* programs,
    VictoryRegime regime) {
    GameState g = GameState::initial(board, n_characters, variant);
    g.regime = regime;
    std::vector<Event> events;

    for (const ScriptTurn& turn : script.turns) {
        if (g.outcome != Outcome::InProgress)
            return RunError{turn.turn_number, 0,
                            "the game was already decided"};
        if (turn.turn_number != g.turn)
            return RunError{turn.turn_number, 0,
                            "expected turn " + std::to_string(g.turn)};

        const ProgrammedTurn* prog = nullptr;
        if (programs) {
            for (const ProgrammedTurn& p : *programs)
                if (p.turn_number == turn.turn_number) prog = &p;
            if (!prog)
                return RunError{turn.turn_number, 0,
                                "no program supplied for this turn"};
            auto violations = validate_program(*prog, g);
            if (!violations.empty())
                return RunError{
                    turn.turn_number, 0,
                    std::string(program_violation_name(violations[0].kind)) +
                        ": character " +
                        std::to_string(violations[0].character) + ", " +
                        violations[0].detail};
        }

        ProgrammedTurn fallback;
        if (!prog) {
            auto implied =
                implied_program(turn.steps, turn.turn_number, n_characters);
            if (!implied)
                return RunError{turn.turn_number, implied.error().step_index,
                                std::string(ordering_violation_name(
                                    implied.error().kind)) +
                                    ": " + implied.error().detail};
            fallback = implied.value();
            prog = &fallback;
        }

        if (auto violation = validate_ordering(turn.steps, *prog, g))
            return RunError{
                turn.turn_number, violation->step_index,
                std::string(ordering_violation_name(violation->kind)) + ": " +
                    violation->detail};

        // The matcher accepted, so a straight left-to-right execution of the
        // steps is legal; replay them on the real state for the event log.
        for (std::size_t i = 0; i < turn.steps.size(); ++i) {
            if (auto err = check_step(g, turn.steps[i]))
                return RunError{turn.turn_number, static_cast<int>(i) + 1,
                                std::string(rule_error_name(err->code)) +
                                    ": " + err->detail};
            apply_step(g, turn.steps[i], &events);
        }
        if (g.outcome == Outcome::InProgress) end_turn(g, &events);
    }
    return RunResult{std::move(g), std::move(events)};
}

std::string render_log(const RunResult& r) {
    std::ostringstream out;
    for (const Event& e : r.events) out << to_string(e) << '\n';
    out << "outcome " << outcome_name(r.final_state.outcome);
    if (r.final_state.outcome != Outcome::InProgress)
        out << " turn " << r.final_state.decided_turn;
    out << '\n';
    return out.str();
}

}  // namespace room25
