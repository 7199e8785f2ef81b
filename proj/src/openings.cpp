#include "room25/openings.hpp"

#include <algorithm>

namespace room25 {
namespace {

using PT = ProgrammedTurn;

// Neighbors of Start in the scouting order used by the veloce lookers.
constexpr Coord kScoutOrder[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

constexpr Coord kXCell{1, 0};
constexpr Coord kExitCell{2, 1};

ActionStep transform(ActionStep s, Frame f) {
    if (s.coord) s.coord = apply(f, *s.coord);
    if (s.line) s.line = apply(f, *s.line);
    if (s.dir) s.dir = apply(f, *s.dir);
    if (s.rider) s.rider = Rider{apply(f, s.rider->line), apply(f, s.rider->dir)};
    return s;
}

ActionStep look(int actor, Coord at) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Look;
    s.coord = at;
    return s;
}

ActionStep move(int actor, Coord to, std::optional<Rider> rider = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Move;
    s.coord = to;
    s.rider = rider;
    return s;
}

ActionStep push(int actor, int target, Coord to,
                std::optional<Rider> rider = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Push;
    s.target = target;
    s.coord = to;
    s.rider = rider;
    return s;
}

ActionStep control(int actor, Line line, Direction dir) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Control;
    s.line = line;
    s.dir = dir;
    return s;
}

// The opening scouts the Start neighbors counter-clockwise from [1;0] and
// commits to the first acceptable X room; only then does it matter whether
// the Exit sits at that rotation's aimed cell. Committing before checking
// the Exit is what the opening's success probability prices in, so the
// witness must not shop around for a luckier orientation.
Result<std::optional<LuckWitness>, OpeningError> find_witness(
    const BoardState& b, bool (*accept_x)(TileKind)) {
    if (!b.fully_known()) {
        return OpeningError{"luck predicate requires a fully identified board"};
    }
    for (std::uint8_t i = 0; i < 4; ++i) {
        Frame f{i};  // the four rotations, in scout order
        TileKind x = *b.kind_at(apply(f, kXCell));
        if (!accept_x(x)) continue;
        if (b.kind_at(apply(f, kExitCell)) != TileKind::Exit) break;
        return std::optional<LuckWitness>{LuckWitness{f, x}};
    }
    return std::optional<LuckWitness>{};
}

}  // namespace

bool valid_x_kind(TileKind k) {
    return k == TileKind::Empty || k == TileKind::Machine ||
           k == TileKind::Dark || k == TileKind::Tunnel;
}

Result<PT, OpeningError> veloce_program(int n) {
    if (n < 1 || n > kMaxCharacters) {
        return OpeningError{"veloce supports 1 to 6 characters"};
    }
    PT t;
    t.turn_number = 1;
    if (n == 1) {
        t.programs.push_back({1, {Verb::Move, Verb::Control}});
        return t;
    }
    for (int i = 1; i <= n - 2; ++i) {
        t.programs.push_back({i, {Verb::Look, Verb::Move}});
    }
    t.programs.push_back({n - 1, {Verb::Move, Verb::Control}});
    t.programs.push_back({n, {Verb::Move, Verb::Look}});
    return t;
}

Result<PT, OpeningError> veloce_closing_program(int n) {
    if (n < 1 || n > kMaxCharacters) {
        return OpeningError{"veloce supports 1 to 6 characters"};
    }
    PT t;
    t.turn_number = 2;
    if (n == 1) {
        t.programs.push_back({1, {Verb::Move, Verb::Control}});
        return t;
    }
    for (int i = 2; i <= n; ++i) t.programs.push_back({i, {Verb::Move}});
    t.programs.push_back({1, {Verb::Move, Verb::Control}});
    return t;
}

Result<PT, OpeningError> temeraire_program(int n) {
    if (n != 6) {
        return OpeningError{
            "ArityFixed: the temeraire opening is defined for exactly 6 "
            "characters"};
    }
    PT t;
    t.turn_number = 1;
    t.programs.push_back({1, {Verb::Push, Verb::Move}});
    t.programs.push_back({2, {Verb::Push, Verb::Move}});
    t.programs.push_back({3, {Verb::Control, Verb::Move}});
    t.programs.push_back({4, {Verb::Move, Verb::Control}});
    t.programs.push_back({5, {Verb::Move, Verb::Control}});
    t.programs.push_back({6, {Verb::Move, Verb::Control}});
    return t;
}

Result<std::optional<LuckWitness>, OpeningError> v_lucky(const BoardState& b) {
    return find_witness(b, &valid_x_kind);
}

// The blind double-push commits to one orientation before anything is
// revealed: Control must already sit at [1;0] and the Exit at [2;1].
Result<std::optional<LuckWitness>, OpeningError> t_lucky(const BoardState& b) {
    if (!b.fully_known()) {
        return OpeningError{"luck predicate requires a fully identified board"};
    }
    if (b.kind_at(kXCell) == TileKind::Control &&
        b.kind_at(kExitCell) == TileKind::Exit) {
        return std::optional<LuckWitness>{
            LuckWitness{Frame{0}, TileKind::Control}};
    }
    return std::optional<LuckWitness>{};
}

Result<Script, OpeningError> canned_script(Opening o, const LuckWitness& w,
                                           int n) {
    Script base;
    if (o == Opening::Veloce) {
        if (n < 1 || n > kMaxCharacters) {
            return OpeningError{"veloce supports 1 to 6 characters"};
        }
        if (!valid_x_kind(w.x_tile)) {
            return OpeningError{"witness X room is not veloce-safe"};
        }
        // Entering a Machine forces a line shift; spend it on the idle
        // column [-1;] so nothing the plan relies on moves.
        std::optional<Rider> rider;
        if (grants_rider(w.x_tile)) {
            rider = Rider{Line{Axis::Column, -1}, Direction::Down};
        }

        ScriptTurn t1;
        t1.turn_number = 1;
        if (n == 1) {
            t1.steps.push_back(move(1, kXCell, rider));
            t1.steps.push_back(control(1, Line{Axis::Column, 1}, Direction::Up));
        } else {
            for (int i = 1; i <= n - 2; ++i) {
                t1.steps.push_back(look(i, kScoutOrder[(i - 1) % 4]));
            }
            t1.steps.push_back(move(n - 1, kXCell, rider));
            t1.steps.push_back(move(n, kXCell, rider));
            for (int i = 1; i <= n - 2; ++i) {
                t1.steps.push_back(move(i, kXCell, rider));
            }
            t1.steps.push_back(control(n - 1, Line{Axis::Column, 1}, Direction::Up));
            if (w.x_tile != TileKind::Dark) {
                // Confirm the Exit from next door. Skipped legally when X
                // is a Dark room, which bans looking.
                t1.steps.push_back(look(n, kExitCell));
            }
        }

        ScriptTurn t2;
        t2.turn_number = 2;
        for (int i = 2; i <= n; ++i) t2.steps.push_back(move(i, kExitCell));
        t2.steps.push_back(move(1, kExitCell));
        t2.steps.push_back(control(1, Line{Axis::Row, 1}, Direction::Right));
        t2.steps.back().win_marker = true;

        base.turns = {t1, t2};
    } else {
        if (n != 6) {
            return OpeningError{
                "ArityFixed: the temeraire opening is defined for exactly 6 "
                "characters"};
        }
        if (!grants_rider(w.x_tile)) {
            return OpeningError{"temeraire needs a shift-granting room at X"};
        }
        Rider left{Line{Axis::Row, 1}, Direction::Left};
        Coord s1{0, 1};  // Exit cell after the two push-triggered shifts

        ScriptTurn t1;
        t1.turn_number = 1;
        t1.steps.push_back(push(1, 3, kXCell, left));
        t1.steps.push_back(push(2, 4, kXCell, left));
        t1.steps.push_back(control(3, Line{Axis::Column, 1}, Direction::Up));
        t1.steps.push_back(move(4, s1));
        t1.steps.push_back(move(5, s1));
        t1.steps.push_back(move(6, s1));
        t1.steps.push_back(move(1, s1));
        t1.steps.push_back(move(2, s1));
        t1.steps.push_back(move(3, s1));
        t1.steps.push_back(control(4, Line{Axis::Row, 1}, Direction::Left));
        t1.steps.push_back(control(5, Line{Axis::Row, 1}, Direction::Left));
        t1.steps.push_back(control(6, Line{Axis::Row, 1}, Direction::Left));
        t1.steps.back().win_marker = true;

        base.turns = {t1};
    }

    for (ScriptTurn& t : base.turns) {
        for (ActionStep& s : t.steps) s = transform(s, w.frame);
    }
    return base;
}

Result<std::vector<PT>, OpeningError> canned_programs(Opening o,
                                                      const LuckWitness&,
                                                      int n) {
    std::vector<PT> out;
    if (o == Opening::Veloce) {
        auto t1 = veloce_program(n);
        if (!t1.ok()) return t1.error();
        auto t2 = veloce_closing_program(n);
        if (!t2.ok()) return t2.error();
        out.push_back(t1.value());
        out.push_back(t2.value());
    } else {
        auto t1 = temeraire_program(n);
        if (!t1.ok()) return t1.error();
        out.push_back(t1.value());
    }
    return out;
}

}  // namespace room25
