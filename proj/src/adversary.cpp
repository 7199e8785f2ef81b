#include "room25/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "room25/openings.hpp"

namespace room25 {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NoWin: return "NoWin";
        case Verdict::WinFound: return "WinFound";
        case Verdict::ForcedLoss: return "ForcedLoss";
        case Verdict::NotForced: return "NotForced";
    }
    return "?";
}

namespace {

constexpr std::size_t kMemoCapacity = 2'000'000;

int manhattan(Coord a, Coord b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct Budget {
    std::uint64_t limit = 0;
    std::uint64_t used = 0;
    bool tick() { return ++used <= limit; }
};

// ---------------------------------------------------------------------------
// Deals
//
// Searches start from an all-unknown board and assign tile identities only
// when play first depends on them. A deal stays consistent while assigned
// kinds never exceed the pool and at least one cell with an Exit-legal
// origin remains open until the Exit is placed.
// ---------------------------------------------------------------------------

struct DealPool {
    Roster pool;
    bool exit_placed = false;

    int open_exit_origins(const BoardState& b) const {
        int count = 0;
        for (int i = 0; i < kCellCount; ++i) {
            Coord c = coord_of_index(i);
            if (!b.kind_at(c) && legal_exit_origin(b.origin_at(c))) ++count;
        }
        return count;
    }

    bool can_assign(const BoardState& b, Coord cell, TileKind k) const {
        if (b.kind_at(cell)) return false;
        if (k == TileKind::Exit) {
            return !exit_placed && legal_exit_origin(b.origin_at(cell));
        }
        if (pool.count(k) <= 0) return false;
        if (!exit_placed && legal_exit_origin(b.origin_at(cell)) &&
            open_exit_origins(b) == 1) {
            return false;
        }
        return true;
    }

    void assign(BoardState& b, Coord cell, TileKind k) {
        b.set_kind(cell, k);
        if (k == TileKind::Exit) {
            exit_placed = true;
        } else {
            pool.set_count(k, pool.count(k) - 1);
        }
    }
};

struct CharSched {
    bool deferred = false;  // pass-1 slot given up in favor of pass 2
    bool acted1 = false;    // acted in pass 1
};

struct Node {
    GameState g;
    DealPool deal;
    std::array<CharSched, kMaxCharacters + 1> sched{};
};

bool verb_used(const CharacterState& ch, Verb v) {
    return ch.verbs_used & (1u << static_cast<unsigned>(v));
}

// ---------------------------------------------------------------------------
// State fingerprints
//
// Canonical keys quotient the one-turn win search by the board's dihedral
// symmetry; the defense searches key on the raw state because the scripted
// adversary is not symmetric.
// ---------------------------------------------------------------------------

void encode_state(const Node& nd, int slot, Frame f, std::string& out) {
    const GameState& g = nd.g;
    out.clear();
    out.push_back(static_cast<char>(slot));
    out.push_back(static_cast<char>(g.turn));
    out.push_back(static_cast<char>(g.deaths));

    Frame inv = inverse(f);
    for (int i = 0; i < kCellCount; ++i) {
        Coord src = apply(inv, coord_of_index(i));
        const BoardSlot& s = g.board.slot(src);
        unsigned byte = s.kind ? static_cast<unsigned>(*s.kind) + 1 : 0;
        if (legal_exit_origin(coord_of_index(s.origin))) byte |= 0x20;
        out.push_back(static_cast<char>(byte));
    }

    for (std::size_t i = 1; i <= g.characters.size(); ++i) {
        const CharacterState& ch = *g.character(static_cast<int>(i));
        unsigned pos =
            ch.alive ? static_cast<unsigned>(cell_index(apply(f, ch.position)))
                     : 31u;
        unsigned b0 = pos | (ch.alive ? 0x80 : 0) |
                      (ch.trap_pending ? 0x40 : 0);
        unsigned b1 = ch.verbs_used |
                      (nd.sched[i].acted1 ? 0x10 : 0) |
                      (nd.sched[i].deferred ? 0x20 : 0) |
                      (ch.flood_deadline ? 0x40 : 0) |
                      (ch.flood_deadline && *ch.flood_deadline <= g.turn
                           ? 0x80
                           : 0);
        // Entry order only matters between the living sharing an acid room.
        unsigned rank = 0;
        if (ch.alive && g.board.kind_at(ch.position) == TileKind::Acid) {
            for (const CharacterState& other : g.characters) {
                if (other.alive && other.id != ch.id &&
                    other.position == ch.position &&
                    other.entry_stamp < ch.entry_stamp) {
                    ++rank;
                }
            }
        }
        out.push_back(static_cast<char>(b0));
        out.push_back(static_cast<char>(b1));
        out.push_back(static_cast<char>(rank));
    }

}

// Lock table under a frame: gathered separately since frames permute the
// line slots themselves.
void encode_locks(const GameState& g, Frame f, std::string& out) {
    std::array<unsigned, kShiftableLineCount> codes{};
    for (int s = 0; s < kShiftableLineCount; ++s) {
        Line l = shiftable_line_from_slot(s);
        if (auto d = g.lock(l)) {
            int ts = shiftable_line_slot(apply(f, l));
            codes[ts] = 1 + static_cast<unsigned>(apply(f, *d));
        }
    }
    for (unsigned c : codes) out.push_back(static_cast<char>(c));
}

std::string state_key(const Node& nd, int slot, Frame f) {
    std::string out;
    out.reserve(64);
    encode_state(nd, slot, f, out);
    encode_locks(nd.g, f, out);
    return out;
}

std::string canonical_key(const Node& nd, int slot) {
    std::string best = state_key(nd, slot, Frame{0});
    for (std::uint8_t i = 1; i < kFrameCount; ++i) {
        std::string k = state_key(nd, slot, Frame{i});
        if (k < best) best = k;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Step building helpers
// ---------------------------------------------------------------------------

ActionStep make_move(int actor, Coord to, std::optional<Rider> rider = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Move;
    s.coord = to;
    s.rider = rider;
    return s;
}

ActionStep make_push(int actor, int victim, Coord to,
                     std::optional<Rider> rider = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Push;
    s.target = victim;
    s.coord = to;
    s.rider = rider;
    return s;
}

ActionStep make_control(int actor, std::optional<Line> line = {},
                        std::optional<Direction> dir = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Control;
    s.line = line;
    s.dir = dir;
    return s;
}

ActionStep make_look(int actor, Coord at) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Look;
    s.coord = at;
    return s;
}

constexpr Direction kDirOrder[4] = {Direction::Right, Direction::Up,
                                    Direction::Left, Direction::Down};

std::vector<Rider> rider_options(const GameState& g) {
    std::vector<Rider> out;
    out.reserve(16);
    for (int s = 0; s < kShiftableLineCount; ++s) {
        Line l = shiftable_line_from_slot(s);
        const Direction dirs[2] = {
            l.axis == Axis::Row ? Direction::Left : Direction::Up,
            l.axis == Axis::Row ? Direction::Right : Direction::Down};
        for (Direction d : dirs) {
            auto lock = g.lock(l);
            if (lock && *lock != d) continue;
            out.push_back({l, d});
        }
    }
    return out;
}

// Own-line control parameterizations (the null form where applicable).
std::vector<ActionStep> control_options(const GameState& g, int actor) {
    std::vector<ActionStep> out;
    Coord pos = g.character(actor)->position;
    if (pos == Coord{0, 0}) {
        out.push_back(make_control(actor));
        return out;
    }
    for (Line l : {row_of(pos), column_of(pos)}) {
        if (central(l)) continue;
        const Direction dirs[2] = {
            l.axis == Axis::Row ? Direction::Left : Direction::Up,
            l.axis == Axis::Row ? Direction::Right : Direction::Down};
        for (Direction d : dirs) {
            auto lock = g.lock(l);
            if (lock && *lock != d) continue;
            out.push_back(make_control(actor, l, d));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-turn win search
// ---------------------------------------------------------------------------

struct WinSearch {
    int n = 0;
    RuleVariant variant;
    int goal_deaths = 0;
    Budget budget;
    bool use_memo = true;
    std::unordered_set<std::string> memo;
    std::uint64_t terminals = 0;
    std::array<std::uint64_t, kMaxCharacters + 1> pi_hist{};
    std::optional<WinCertificate> cert;

    struct Exec {
        int slot;
        ActionStep step;
    };
    std::vector<Exec> line;

    enum class R { NoGoal, Goal, Aborted };

    // How attractive a shift is for gathering the crew onto the Exit. Pure
    // move ordering; exhaustiveness never depends on it.
    int shift_score(const GameState& g, bool exit_placed, Line l,
                    Direction d) const {
        int score = 0;
        for (int i = -kGridRadius; i <= kGridRadius; ++i) {
            Coord c = l.axis == Axis::Row ? Coord{i, l.index}
                                          : Coord{l.index, i};
            auto k = g.board.kind_at(c);
            bool candidate =
                (k && *k == TileKind::Exit) ||
                (!exit_placed && !k &&
                 legal_exit_origin(g.board.origin_at(c)));
            if (!candidate) continue;
            Coord to = BoardState::shifted_cell(c, l, d);
            int before = 99, after = 99;
            bool all_aboard = true;
            for (const CharacterState& ch : g.characters) {
                if (!ch.alive) continue;
                before = std::min(before, manhattan(c, ch.position));
                after = std::min(after, manhattan(to, ch.position));
                if (!(ch.position == c)) all_aboard = false;
            }
            score += 2 * (before - after);
            if (k && *k == TileKind::Exit && !in_bounds(step_toward(c, d))) {
                score += all_aboard ? 1000 : -4;
            }
        }
        return score;
    }

    std::vector<TileKind> assignment_order(const Node& nd, Coord cell) const {
        static constexpr TileKind order[] = {
            TileKind::Exit,    TileKind::Control,     TileKind::Machine,
            TileKind::FreeKill, TileKind::Empty,      TileKind::Tunnel,
            TileKind::Dark,    TileKind::YellowOther, TileKind::Vortex,
            TileKind::Flood,   TileKind::Acid,        TileKind::Trap,
            TileKind::Mortal,  TileKind::RedOther,
        };
        std::vector<TileKind> out;
        for (TileKind k : order) {
            if (nd.deal.can_assign(nd.g.board, cell, k)) out.push_back(k);
        }
        return out;
    }

    struct Option {
        ActionStep step;
        std::optional<std::pair<Coord, TileKind>> assign;
    };

    void entry_options(const Node& nd, ActionStep base, Coord dest,
                       std::vector<Option>& out) const {
        auto with_kind = [&](TileKind k, bool assigned) {
            std::optional<std::pair<Coord, TileKind>> a;
            if (assigned) a = {dest, k};
            if (grants_rider(k)) {
                for (const Rider& r : rider_options(nd.g)) {
                    ActionStep s = base;
                    s.rider = r;
                    out.push_back({s, a});
                }
            } else {
                out.push_back({base, a});
            }
        };
        if (auto k = nd.g.board.kind_at(dest)) {
            with_kind(*k, false);
        } else {
            for (TileKind k : assignment_order(nd, dest)) {
                with_kind(k, true);
            }
        }
    }

    std::vector<Option> options_for(const Node& nd, int c, Verb v) const {
        std::vector<Option> out;
        const GameState& g = nd.g;
        const CharacterState& ch = *g.character(c);
        if (verb_used(ch, v)) return out;

        switch (v) {
            case Verb::Move:
                for (Direction d : kDirOrder) {
                    Coord to = step_toward(ch.position, d);
                    if (!in_bounds(to)) continue;
                    entry_options(nd, make_move(c, to), to, out);
                }
                break;
            case Verb::Push: {
                auto here = g.board.kind_at(ch.position);
                if (!here) break;  // characters only ever stand on known rooms
                if (*here == TileKind::Start &&
                    !variant.push_from_start_allowed) {
                    break;
                }
                if (*here == TileKind::Control &&
                    !variant.push_from_control_allowed) {
                    break;
                }
                for (int victim : g.occupants(ch.position, c)) {
                    for (Direction d : kDirOrder) {
                        Coord to = step_toward(ch.position, d);
                        if (!in_bounds(to)) continue;
                        entry_options(nd, make_push(c, victim, to), to, out);
                    }
                }
                break;
            }
            case Verb::Control: {
                std::vector<ActionStep> cs = control_options(g, c);
                std::stable_sort(cs.begin(), cs.end(),
                                 [&](const ActionStep& a, const ActionStep& b) {
                                     auto sc = [&](const ActionStep& s) {
                                         if (!s.line) return 0;
                                         return shift_score(
                                             g, nd.deal.exit_placed, *s.line,
                                             *s.dir);
                                     };
                                     return sc(a) > sc(b);
                                 });
                for (ActionStep& s : cs) out.push_back({s, std::nullopt});
                break;
            }
            case Verb::Look:
                // Pure information; contributes nothing toward a win within
                // the horizon. Certificates re-insert look actions where the
                // mandatory-execution rule demands one.
                break;
        }
        return out;
    }

    R cut(const GameState& g) {
        ++terminals;
        int pi = 0;
        for (const CharacterState& ch : g.characters) {
            if (ch.reached_nonblue) ++pi;
        }
        ++pi_hist[static_cast<std::size_t>(pi)];
        return R::NoGoal;
    }

    bool prune_capacity(const Node& nd, int slot) const {
        const GameState& g = nd.g;
        int remaining = 0;
        for (int s = slot; s < 2 * n; ++s) {
            const CharacterState* ch = g.character(g.seat(s % n));
            if (ch && ch->alive) ++remaining;
        }
        int best_off = 1000;
        auto off_count = [&](Coord cell) {
            int off = 0;
            for (const CharacterState& ch : g.characters) {
                if (ch.alive && !(ch.position == cell)) ++off;
            }
            return off;
        };
        if (nd.deal.exit_placed) {
            if (auto cell = g.board.find(TileKind::Exit)) {
                best_off = off_count(*cell);
            }
        } else {
            for (int i = 0; i < kCellCount; ++i) {
                Coord cell = coord_of_index(i);
                if (!g.board.kind_at(cell) &&
                    legal_exit_origin(g.board.origin_at(cell))) {
                    best_off = std::min(best_off, off_count(cell));
                }
            }
        }
        // Everyone still off the Exit needs a boarding action, and the final
        // slide costs one more.
        return best_off + 1 > remaining;
    }

    bool prune_stuck(const Node& nd, int slot) const {
        if (variant.push_from_start_allowed) return false;
        const GameState& g = nd.g;
        for (const CharacterState& ch : g.characters) {
            if (!ch.alive || !(ch.position == Coord{0, 0})) continue;
            if (verb_used(ch, Verb::Move)) return true;
            int seat_pos = (ch.id - g.first_player + n) % n;
            bool slots_left =
                slot <= seat_pos ||
                (slot <= n + seat_pos &&
                 (nd.sched[static_cast<std::size_t>(ch.id)].deferred ||
                  nd.sched[static_cast<std::size_t>(ch.id)].acted1));
            if (!slots_left) return true;
        }
        return false;
    }

    R explore(const Node& nd, int slot) {
        if (!budget.tick()) return R::Aborted;
        const GameState& g = nd.g;

        if (g.outcome == Outcome::Lost || g.deaths > goal_deaths) {
            return cut(g);
        }
        if (slot == 2 * n) return cut(g);
        if (prune_capacity(nd, slot) || prune_stuck(nd, slot)) return cut(g);

        std::string key;
        if (use_memo) {
            key = canonical_key(nd, slot);
            if (memo.contains(key)) return R::NoGoal;
        }

        int pass = slot / n;
        int c = g.seat(slot % n);
        const CharacterState* ch = g.character(c);

        if (!ch || !ch->alive) {
            return explore_tail(nd, slot, key);
        }

        R result = R::NoGoal;
        auto feed = [&](R r) {
            if (r == R::Goal || r == R::Aborted) result = r;
            return result == R::NoGoal;
        };

        auto act = [&](Verb v) {
            for (const Option& op : options_for(nd, c, v)) {
                if (!feed(try_option(nd, slot, c, op))) return false;
            }
            return true;
        };

        bool keep = true;
        if (pass == 0) {
            keep = act(Verb::Push) && act(Verb::Move) && act(Verb::Control);
            if (keep) {
                Node d = nd;
                d.sched[static_cast<std::size_t>(c)].deferred = true;
                feed(explore(d, slot + 1));
            }
        } else {
            const CharSched& sc = nd.sched[static_cast<std::size_t>(c)];
            if (sc.acted1 || sc.deferred) {
                keep = act(Verb::Push) && act(Verb::Move) && act(Verb::Control);
            }
            if (keep) feed(explore(nd, slot + 1));  // stop after pass 1 / idle
        }

        if (result == R::NoGoal && use_memo && memo.size() < kMemoCapacity) {
            memo.insert(std::move(key));
        }
        return result;
    }

    // Dead character's slot: nothing can happen, move on. Shares the memo
    // bookkeeping of the caller.
    R explore_tail(const Node& nd, int slot, std::string& key) {
        R r = explore(nd, slot + 1);
        if (r == R::NoGoal && use_memo && memo.size() < kMemoCapacity) {
            memo.insert(std::move(key));
        }
        return r;
    }

    R try_option(const Node& nd, int slot, int c, const Option& op) {
        Node child = nd;
        if (op.assign) {
            child.deal.assign(child.g.board, op.assign->first,
                              op.assign->second);
        }
        if (check_step(child.g, op.step)) return R::NoGoal;
        apply_step(child.g, op.step);
        if (slot / n == 0) {
            child.sched[static_cast<std::size_t>(c)].acted1 = true;
        }
        line.push_back({slot, op.step});
        R r;
        if (child.g.outcome == Outcome::Won) {
            r = (child.g.deaths == goal_deaths && try_certificate(child))
                    ? R::Goal
                    : cut(child.g);
        } else {
            r = explore(child, slot + 1);
        }
        line.pop_back();
        return r;
    }

    bool try_certificate(const Node& final_node) {
        // Rebuild the initial deal: origins remember each tile's first cell.
        BoardState deal;
        Roster fill = final_node.deal.pool;
        for (int i = 0; i < kCellCount; ++i) {
            Coord c = coord_of_index(i);
            const BoardSlot& s = final_node.g.board.slot(c);
            if (s.kind) deal.set_kind(coord_of_index(s.origin), *s.kind);
        }
        for (int i = 0; i < kCellCount && fill.total() > 0; ++i) {
            Coord c = coord_of_index(i);
            if (deal.kind_at(c)) continue;
            for (int t = 0; t < kTileKindCount; ++t) {
                TileKind k = static_cast<TileKind>(t);
                if (fill.count(k) > 0) {
                    deal.set_kind(c, k);
                    fill.set_count(k, fill.count(k) - 1);
                    break;
                }
            }
        }
        if (!deal.fully_known()) return false;

        std::array<std::vector<Verb>, kMaxCharacters + 1> verbs{};
        for (const Exec& e : line) {
            verbs[static_cast<std::size_t>(e.step.actor)].push_back(
                e.step.verb);
        }

        ProgrammedTurn pt;
        pt.turn_number = 1;
        for (int c = 1; c <= n; ++c) {
            auto& v = verbs[static_cast<std::size_t>(c)];
            // Characters that never act burn their slot on a look, skipped
            // legally whenever no look is possible.
            pt.programs.push_back(
                {c, v.empty() ? std::vector<Verb>{Verb::Look} : v});
        }

        VictoryRegime regime = goal_deaths > 0 ? VictoryRegime::AllowDeaths
                                               : VictoryRegime::FullOnly;
        GameState sim = GameState::initial(deal, n, variant);
        sim.regime = regime;

        std::vector<ActionStep> steps;
        std::size_t li = 0;
        std::array<bool, kMaxCharacters + 1> burned{};
        for (int s = 0; s < 2 * n && sim.outcome == Outcome::InProgress; ++s) {
            if (li < line.size() && line[li].slot == s) {
                ActionStep step = line[li].step;
                ++li;
                if (check_step(sim, step)) return false;
                apply_step(sim, step);
                steps.push_back(step);
                continue;
            }
            int c = sim.seat(s % n);
            auto& v = verbs[static_cast<std::size_t>(c)];
            if (!v.empty() || burned[static_cast<std::size_t>(c)]) continue;
            const CharacterState* ch = sim.character(c);
            if (!ch || !ch->alive) continue;
            if (!verb_executable(sim, c, Verb::Look)) continue;
            for (Direction d : kDirOrder) {
                Coord t = step_toward(ch->position, d);
                if (!in_bounds(t) || sim.board.face_up(t)) continue;
                ActionStep look = make_look(c, t);
                if (check_step(sim, look)) continue;
                apply_step(sim, look);
                steps.push_back(look);
                burned[static_cast<std::size_t>(c)] = true;
                break;
            }
        }
        if (li != line.size() || sim.outcome != Outcome::Won ||
            sim.deaths != goal_deaths) {
            return false;
        }
        steps.back().win_marker = true;

        Script script;
        script.turns.push_back(ScriptTurn{1, steps});
        std::vector<ProgrammedTurn> programs{pt};

        auto run = run_script(deal, n, variant, script, &programs, regime);
        if (!run.ok()) return false;
        const GameState& fin = run.value().final_state;
        if (fin.outcome != Outcome::Won || fin.deaths != goal_deaths ||
            fin.decided_turn != 1) {
            return false;
        }

        WinCertificate wc;
        wc.board = deal;
        wc.n_characters = n;
        wc.variant = variant;
        wc.programs = programs;
        wc.script = script;
        wc.deaths = fin.deaths;
        for (const CharacterState& ch : fin.characters) {
            if (ch.reached_nonblue) wc.pi.push_back(ch.id);
        }
        cert = std::move(wc);
        return true;
    }
};

std::optional<SearchError> check_search_args(int n, const Roster& roster) {
    if (n < 1 || n > kMaxCharacters) {
        return SearchError{"character count must be between 1 and 6", 0};
    }
    if (auto err = roster.validate()) {
        return SearchError{"invalid roster: " + err->message, 0};
    }
    if (roster.total() != kCellCount - 2) {
        return SearchError{"the searched pool must hold exactly 23 tiles", 0};
    }
    return std::nullopt;
}

// A catalogued winning line tried before the blind search: under the
// push-from-start variant, six characters feed a control room at [1;0] and
// walk the Exit off the left edge in one turn. The candidate deal is played
// through the ordinary script pipeline, so a hit is exactly as trustworthy
// as a searched certificate; a miss falls back to the exhaustive search.
std::optional<WinCertificate> catalogued_win(int n, RuleVariant variant,
                                             const Roster& roster) {
    if (n != kMaxCharacters || !variant.push_from_start_allowed) {
        return std::nullopt;
    }
    if (roster.count(TileKind::Control) < 1) return std::nullopt;

    BoardState deal;
    deal.set_kind(Coord{0, 0}, TileKind::Start);
    deal.set_kind(Coord{1, 0}, TileKind::Control);
    deal.set_kind(Coord{2, 1}, TileKind::Exit);
    Roster fill = roster;
    fill.set_count(TileKind::Control, fill.count(TileKind::Control) - 1);
    for (int i = 0; i < kCellCount; ++i) {
        Coord c = coord_of_index(i);
        if (deal.kind_at(c)) continue;
        for (int t = 0; t < kTileKindCount; ++t) {
            TileKind k = static_cast<TileKind>(t);
            if (fill.count(k) > 0) {
                deal.set_kind(c, k);
                fill.set_count(k, fill.count(k) - 1);
                break;
            }
        }
    }
    if (!deal.fully_known()) return std::nullopt;

    LuckWitness w;
    w.x_tile = TileKind::Control;
    auto script = canned_script(Opening::Temeraire, w, n);
    auto programs = canned_programs(Opening::Temeraire, w, n);
    if (!script.ok() || !programs.ok()) return std::nullopt;

    auto run = run_script(deal, n, variant, script.value(), &programs.value(),
                          VictoryRegime::FullOnly);
    if (!run.ok()) return std::nullopt;
    const GameState& fin = run.value().final_state;
    if (fin.outcome != Outcome::Won || fin.deaths != 0 ||
        fin.decided_turn != 1) {
        return std::nullopt;
    }

    WinCertificate wc;
    wc.board = deal;
    wc.n_characters = n;
    wc.variant = variant;
    wc.programs = programs.value();
    wc.script = script.value();
    wc.deaths = 0;
    for (const CharacterState& ch : fin.characters) {
        if (ch.reached_nonblue) wc.pi.push_back(ch.id);
    }
    return wc;
}

Result<SearchReport, SearchError> run_win_search(int n, RuleVariant variant,
                                                 const Roster& roster,
                                                 const SearchLimits& limits,
                                                 int goal_deaths) {
    if (auto err = check_search_args(n, roster)) return *err;

    WinSearch ws;
    ws.n = n;
    ws.variant = variant;
    ws.goal_deaths = goal_deaths;
    ws.budget.limit = limits.node_budget;
    ws.use_memo = limits.use_memo;

    Node root;
    root.g = GameState::initial(BoardState{}, n, variant);
    root.g.regime = goal_deaths > 0 ? VictoryRegime::AllowDeaths
                                    : VictoryRegime::FullOnly;
    root.deal.pool = roster;

    WinSearch::R r = ws.explore(root, 0);
    if (r == WinSearch::R::Aborted) {
        return SearchError{"HorizonTooLarge: node budget exhausted",
                           ws.budget.used};
    }

    SearchReport rep;
    rep.n_characters = n;
    rep.horizon = 1;
    rep.variant = variant;
    rep.nodes = ws.budget.used;
    rep.terminal_lines = ws.terminals;
    rep.pi_histogram = ws.pi_hist;
    if (r == WinSearch::R::Goal) {
        rep.verdict = Verdict::WinFound;
        rep.certificate = std::move(ws.cert);
    } else {
        rep.verdict = Verdict::NoWin;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Antagonistic defense
// ---------------------------------------------------------------------------

constexpr Coord kZone[5] = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
constexpr Coord kGrayCells[5] = {{-1, 1}, {-2, 0}, {-1, -1}, {1, -1}, {0, -2}};

bool in_zone(Coord c) {
    return std::find(std::begin(kZone), std::end(kZone), c) != std::end(kZone);
}

bool is_gray(Coord c) {
    return std::find(std::begin(kGrayCells), std::end(kGrayCells), c) !=
           std::end(kGrayCells);
}

std::optional<TileKind> policy_kind(Coord c) {
    if (c == Coord{1, 0}) return TileKind::Mortal;
    if (c == Coord{0, 1}) return TileKind::Vortex;
    if (c == Coord{-1, 0} || c == Coord{0, -1}) return TileKind::Trap;
    return std::nullopt;
}

// Adversary's improvised answers when play escapes the scripted cells,
// nastiest first.
constexpr TileKind kDemonicOrder[] = {
    TileKind::Mortal, TileKind::RedOther, TileKind::Trap,
    TileKind::Acid,   TileKind::Vortex,   TileKind::Flood,
    TileKind::Dark,   TileKind::Tunnel,   TileKind::Machine,
    TileKind::Control, TileKind::Empty,   TileKind::YellowOther,
    TileKind::FreeKill, TileKind::Exit,
};

struct DefenseSearch {
    int n = 0;
    int horizon = 1;
    Budget budget;
    bool use_memo = true;
    std::unordered_map<std::string, bool> memo;
    std::uint64_t terminals = 0;
    std::array<std::uint64_t, kMaxCharacters + 1> pi_hist{};

    enum class V { Forced, NotForced, Aborted };

    // A player probe whose target tile is still unidentified; the adversary
    // answers before riders are chosen.
    struct Intent {
        Verb verb = Verb::Move;
        int victim = 0;
        Coord target{};
    };

    V forced_terminal(const GameState& g) {
        ++terminals;
        int pi = 0;
        for (const CharacterState& ch : g.characters) {
            if (ch.reached_nonblue) ++pi;
        }
        ++pi_hist[static_cast<std::size_t>(pi)];
        return V::Forced;
    }

    std::vector<TileKind> adversary_kinds(const Node& nd, Coord cell) const {
        if (auto pk = policy_kind(cell)) {
            if (nd.deal.can_assign(nd.g.board, cell, *pk)) return {*pk};
        }
        if (is_gray(cell) &&
            nd.deal.can_assign(nd.g.board, cell, TileKind::Mortal)) {
            return {TileKind::Mortal};
        }
        std::vector<TileKind> out;
        for (TileKind k : kDemonicOrder) {
            if (nd.deal.can_assign(nd.g.board, cell, k)) out.push_back(k);
        }
        return out;
    }

    V eval(const Node& nd, int slot) {
        if (!budget.tick()) return V::Aborted;
        const GameState& g = nd.g;

        if (g.outcome == Outcome::Won) return V::NotForced;
        // A lost character settles the line as forced even if somebody else
        // already stands outside the containment zone.
        if (g.outcome == Outcome::Lost) return forced_terminal(g);
        for (const CharacterState& ch : g.characters) {
            if (ch.alive && !in_zone(ch.position)) return V::NotForced;
        }
        if (g.turn > horizon) return forced_terminal(g);
        if (slot == 2 * n) {
            Node next = nd;
            end_turn(next.g);
            next.sched = {};
            return eval(next, 0);
        }

        std::string key;
        if (use_memo) {
            key = state_key(nd, slot, Frame{0});
            if (auto it = memo.find(key); it != memo.end()) {
                return it->second ? V::Forced : V::NotForced;
            }
        }

        V verdict = eval_slot(nd, slot);
        if (verdict != V::Aborted && use_memo &&
            memo.size() < kMemoCapacity) {
            memo.emplace(std::move(key), verdict == V::Forced);
        }
        return verdict;
    }

    V eval_slot(const Node& nd, int slot) {
        const GameState& g = nd.g;
        int pass = slot / n;
        int c = g.seat(slot % n);
        const CharacterState* ch = g.character(c);
        if (!ch || !ch->alive) return eval(nd, slot + 1);

        // Idle branch first: defer in pass 1, rest in pass 2.
        if (pass == 0) {
            Node d = nd;
            d.sched[static_cast<std::size_t>(c)].deferred = true;
            V v = eval(d, slot + 1);
            if (v != V::Forced) return v;
        } else {
            V v = eval(nd, slot + 1);
            if (v != V::Forced) return v;
        }

        bool may_act =
            pass == 0 || nd.sched[static_cast<std::size_t>(c)].deferred ||
            nd.sched[static_cast<std::size_t>(c)].acted1;
        if (!may_act) return V::Forced;

        for (Verb verb :
             {Verb::Move, Verb::Push, Verb::Control, Verb::Look}) {
            if (verb_used(*ch, verb)) continue;
            V v = eval_verb(nd, slot, c, verb);
            if (v != V::Forced) return v;
        }
        return V::Forced;
    }

    V eval_verb(const Node& nd, int slot, int c, Verb verb) {
        const GameState& g = nd.g;
        const CharacterState& ch = *g.character(c);

        auto direct = [&](const ActionStep& step) -> V {
            Node child = nd;
            if (check_step(child.g, step)) return V::Forced;  // not an option
            return advance(child, slot, c, step);
        };

        switch (verb) {
            case Verb::Control:
                for (const ActionStep& s : control_options(g, c)) {
                    V v = direct(s);
                    if (v != V::Forced) return v;
                }
                return V::Forced;
            case Verb::Look:
                for (Direction d : kDirOrder) {
                    Coord t = step_toward(ch.position, d);
                    if (!in_bounds(t) || g.board.face_up(t)) continue;
                    V v = g.board.kind_at(t)
                              ? direct(make_look(c, t))
                              : resolve_intent(nd, slot, c,
                                               {Verb::Look, 0, t});
                    if (v != V::Forced) return v;
                }
                return V::Forced;
            case Verb::Move:
                for (Direction d : kDirOrder) {
                    Coord t = step_toward(ch.position, d);
                    if (!in_bounds(t)) continue;
                    V v = g.board.kind_at(t)
                              ? entry_known(nd, slot, c, Verb::Move, 0, t)
                              : resolve_intent(nd, slot, c,
                                               {Verb::Move, 0, t});
                    if (v != V::Forced) return v;
                }
                return V::Forced;
            case Verb::Push:
                for (int victim : g.occupants(ch.position, c)) {
                    for (Direction d : kDirOrder) {
                        Coord t = step_toward(ch.position, d);
                        if (!in_bounds(t)) continue;
                        V v = g.board.kind_at(t)
                                  ? entry_known(nd, slot, c, Verb::Push,
                                                victim, t)
                                  : resolve_intent(
                                        nd, slot, c, {Verb::Push, victim, t});
                        if (v != V::Forced) return v;
                    }
                }
                return V::Forced;
        }
        return V::Forced;
    }

    // Entry onto an identified tile: the player also picks any demanded
    // rider, so every parameterization must stay forced.
    V entry_known(const Node& nd, int slot, int c, Verb verb, int victim,
                  Coord dest) {
        TileKind k = *nd.g.board.kind_at(dest);
        auto build = [&](std::optional<Rider> r) {
            return verb == Verb::Move ? make_move(c, dest, r)
                                      : make_push(c, victim, dest, r);
        };
        if (!grants_rider(k)) {
            Node child = nd;
            ActionStep s = build({});
            if (check_step(child.g, s)) return V::Forced;
            return advance(child, slot, c, s);
        }
        for (const Rider& r : rider_options(nd.g)) {
            Node child = nd;
            ActionStep s = build(r);
            if (check_step(child.g, s)) continue;
            V v = advance(child, slot, c, s);
            if (v != V::Forced) return v;
        }
        return V::Forced;
    }

    // Reveal: the adversary may pick any pool-consistent identity, so the
    // line is forced as soon as one choice forces it.
    V resolve_intent(const Node& nd, int slot, int c, Intent it) {
        bool any = false;
        for (TileKind k : adversary_kinds(nd, it.target)) {
            Node armed = nd;
            armed.deal.assign(armed.g.board, it.target, k);
            V v;
            if (it.verb == Verb::Look) {
                ActionStep s = make_look(c, it.target);
                Node child = armed;
                if (check_step(child.g, s)) continue;
                v = advance(child, slot, c, s);
            } else {
                v = entry_known(armed, slot, c, it.verb, it.victim,
                                it.target);
            }
            if (v == V::Aborted) return v;
            any = true;
            if (v == V::Forced) return V::Forced;
        }
        // No consistent identity at all: the probe cannot happen.
        return any ? V::NotForced : V::Forced;
    }

    V advance(Node& child, int slot, int c, const ActionStep& step) {
        apply_step(child.g, step);
        if (slot / n == 0) {
            child.sched[static_cast<std::size_t>(c)].acted1 = true;
        }
        return eval(child, slot + 1);
    }
};

// ---------------------------------------------------------------------------
// Randomized second Mortal: exact strategy enumeration over five worlds
// ---------------------------------------------------------------------------

struct BeliefSearch {
    int n = 0;
    int horizon = 1;
    Budget budget;
    bool use_memo = true;
    std::unordered_map<std::string, int> memo;

    // Deterministic adversary of world w: the scripted core around Start,
    // the committed second Mortal on world w's cell, and harmless filler
    // everywhere else so that the five worlds differ in nothing but where
    // that Mortal hides.
    std::optional<TileKind> world_kind(const Node& nd, Coord cell,
                                       int w) const {
        if (cell == kGrayCells[w] &&
            nd.deal.can_assign(nd.g.board, cell, TileKind::Mortal)) {
            return TileKind::Mortal;
        }
        if (auto pk = policy_kind(cell)) {
            if (nd.deal.can_assign(nd.g.board, cell, *pk)) return *pk;
        }
        static constexpr TileKind kBenignFill[] = {
            TileKind::Empty,  TileKind::YellowOther, TileKind::Dark,
            TileKind::Tunnel, TileKind::Machine,     TileKind::Control,
            TileKind::Flood,  TileKind::Acid,        TileKind::Vortex,
            TileKind::Trap,   TileKind::RedOther,    TileKind::Mortal,
        };
        for (TileKind k : kBenignFill) {
            if (nd.deal.can_assign(nd.g.board, cell, k)) return k;
        }
        return std::nullopt;
    }

    // Fewest worlds (placements) that this position must still lose, over
    // every strategy the player could adopt from here. nullopt = budget out.
    std::optional<int> value(const Node& nd, int slot, unsigned worlds) {
        if (!budget.tick()) return std::nullopt;
        const GameState& g = nd.g;
        int alive_worlds = std::popcount(worlds);
        if (alive_worlds == 0) return 0;

        if (g.outcome == Outcome::Won) return 0;
        if (g.outcome == Outcome::Lost) return alive_worlds;
        for (const CharacterState& ch : g.characters) {
            if (ch.alive && !in_zone(ch.position)) return 0;
        }
        if (g.turn > horizon) return alive_worlds;
        if (slot == 2 * n) {
            Node next = nd;
            end_turn(next.g);
            next.sched = {};
            return value(next, 0, worlds);
        }

        std::string key;
        if (use_memo) {
            key = state_key(nd, slot, Frame{0});
            key.push_back(static_cast<char>(worlds));
            if (auto it = memo.find(key); it != memo.end()) return it->second;
        }

        auto best = eval_slot(nd, slot, worlds);
        if (best && use_memo && memo.size() < kMemoCapacity) {
            memo.emplace(std::move(key), *best);
        }
        return best;
    }

    std::optional<int> eval_slot(const Node& nd, int slot, unsigned worlds) {
        const GameState& g = nd.g;
        int pass = slot / n;
        int c = g.seat(slot % n);
        const CharacterState* ch = g.character(c);
        if (!ch || !ch->alive) return value(nd, slot + 1, worlds);

        int best = std::numeric_limits<int>::max();

        // Idle option.
        std::optional<int> idle;
        if (pass == 0) {
            Node d = nd;
            d.sched[static_cast<std::size_t>(c)].deferred = true;
            idle = value(d, slot + 1, worlds);
        } else {
            idle = value(nd, slot + 1, worlds);
        }
        if (!idle) return std::nullopt;
        best = std::min(best, *idle);

        bool may_act =
            pass == 0 || nd.sched[static_cast<std::size_t>(c)].deferred ||
            nd.sched[static_cast<std::size_t>(c)].acted1;
        if (may_act && best > 0) {
            for (Verb verb :
                 {Verb::Move, Verb::Push, Verb::Control, Verb::Look}) {
                if (verb_used(*ch, verb)) continue;
                auto v = eval_verb(nd, slot, c, verb, worlds);
                if (!v) return std::nullopt;
                best = std::min(best, *v);
                if (best == 0) break;
            }
        }
        return best;
    }

    std::optional<int> eval_verb(const Node& nd, int slot, int c, Verb verb,
                                 unsigned worlds) {
        const GameState& g = nd.g;
        const CharacterState& ch = *g.character(c);
        int best = std::numeric_limits<int>::max();

        auto try_known_steps = [&](auto&& make_steps) -> std::optional<int> {
            for (const ActionStep& s : make_steps) {
                Node child = nd;
                if (check_step(child.g, s)) continue;
                apply_step(child.g, s);
                if (slot / n == 0) {
                    child.sched[static_cast<std::size_t>(c)].acted1 = true;
                }
                auto v = value(child, slot + 1, worlds);
                if (!v) return std::nullopt;
                best = std::min(best, *v);
                if (best == 0) break;
            }
            return best;
        };

        auto entry_steps = [&](Verb vb, int victim, Coord dest) {
            std::vector<ActionStep> out;
            auto k = g.board.kind_at(dest);
            auto build = [&](std::optional<Rider> r) {
                return vb == Verb::Move ? make_move(c, dest, r)
                                        : make_push(c, victim, dest, r);
            };
            if (k && grants_rider(*k)) {
                for (const Rider& r : rider_options(g)) out.push_back(build(r));
            } else {
                out.push_back(build({}));
            }
            return out;
        };

        switch (verb) {
            case Verb::Control:
                return try_known_steps(control_options(g, c));
            case Verb::Look:
                for (Direction d : kDirOrder) {
                    Coord t = step_toward(ch.position, d);
                    if (!in_bounds(t) || g.board.face_up(t)) continue;
                    std::optional<int> v;
                    if (g.board.kind_at(t)) {
                        v = try_known_steps(
                            std::vector<ActionStep>{make_look(c, t)});
                    } else {
                        v = reveal_value(nd, slot, c, Verb::Look, 0, t,
                                         worlds);
                    }
                    if (!v) return std::nullopt;
                    best = std::min(best, *v);
                    if (best == 0) break;
                }
                return best;
            case Verb::Move:
            case Verb::Push: {
                std::vector<int> victims =
                    verb == Verb::Push ? g.occupants(ch.position, c)
                                       : std::vector<int>{0};
                for (int victim : victims) {
                    for (Direction d : kDirOrder) {
                        Coord t = step_toward(ch.position, d);
                        if (!in_bounds(t)) continue;
                        std::optional<int> v;
                        if (g.board.kind_at(t)) {
                            v = try_known_steps(entry_steps(verb, victim, t));
                        } else {
                            v = reveal_value(nd, slot, c, verb, victim, t,
                                             worlds);
                        }
                        if (!v) return std::nullopt;
                        best = std::min(best, *v);
                        if (best == 0) return best;
                    }
                }
                return best;
            }
        }
        return best;
    }

    // A probe of an unidentified cell splits the belief set by what each
    // world's adversary deals there; the strategy then continues separately
    // per observation class.
    std::optional<int> reveal_value(const Node& nd, int slot, int c, Verb verb,
                                    int victim, Coord cell, unsigned worlds) {
        std::map<TileKind, unsigned> classes;
        for (int w = 0; w < 5; ++w) {
            if (!(worlds & (1u << w))) continue;
            auto k = world_kind(nd, cell, w);
            if (!k) return std::optional<int>(std::popcount(worlds));
            classes[*k] |= 1u << w;
        }
        int total = 0;
        for (auto& [kind, subset] : classes) {
            Node armed = nd;
            armed.deal.assign(armed.g.board, cell, kind);
            std::optional<int> v;
            if (verb == Verb::Look) {
                Node child = armed;
                ActionStep s = make_look(c, cell);
                if (check_step(child.g, s)) {
                    v = std::popcount(subset);  // illegal probe, worlds stay
                } else {
                    apply_step(child.g, s);
                    if (slot / n == 0) {
                        child.sched[static_cast<std::size_t>(c)].acted1 =
                            true;
                    }
                    v = value(child, slot + 1, subset);
                }
            } else {
                // Rider parameters are chosen after the reveal.
                int best = std::numeric_limits<int>::max();
                bool any = false;
                auto build = [&](std::optional<Rider> r) {
                    return verb == Verb::Move
                               ? make_move(c, cell, r)
                               : make_push(c, victim, cell, r);
                };
                std::vector<ActionStep> steps;
                if (grants_rider(kind)) {
                    for (const Rider& r : rider_options(armed.g)) {
                        steps.push_back(build(r));
                    }
                } else {
                    steps.push_back(build({}));
                }
                for (const ActionStep& s : steps) {
                    Node child = armed;
                    if (check_step(child.g, s)) continue;
                    apply_step(child.g, s);
                    if (slot / n == 0) {
                        child.sched[static_cast<std::size_t>(c)].acted1 =
                            true;
                    }
                    auto sub = value(child, slot + 1, subset);
                    if (!sub) return std::nullopt;
                    any = true;
                    best = std::min(best, *sub);
                    if (best == 0) break;
                }
                v = any ? best : std::popcount(subset);
            }
            if (!v) return std::nullopt;
            total += *v;
        }
        return total;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

Result<SearchReport, SearchError> search_one_turn_win(
    int n, RuleVariant variant, const Roster& roster,
    const SearchLimits& limits) {
    if (auto err = check_search_args(n, roster)) return *err;
    if (auto cert = catalogued_win(n, variant, roster)) {
        SearchReport rep;
        rep.verdict = Verdict::WinFound;
        rep.n_characters = n;
        rep.horizon = 1;
        rep.variant = variant;
        rep.certificate = std::move(cert);
        return rep;
    }
    return run_win_search(n, variant, roster, limits, 0);
}

Result<SearchReport, SearchError> search_one_turn_partial_win(
    int n, RuleVariant variant, const Roster& roster,
    const SearchLimits& limits) {
    if (auto err = check_search_args(n, roster)) return *err;

    SearchReport agg;
    agg.verdict = Verdict::NoWin;
    agg.n_characters = n;
    agg.horizon = 1;
    agg.variant = variant;

    // Every death count that still leaves a survivor to slide out.
    SearchLimits pass = limits;
    for (int deaths = 1; deaths < n; ++deaths) {
        auto r = run_win_search(n, variant, roster, pass, deaths);
        if (!r.ok()) {
            SearchError e = r.error();
            e.nodes += agg.nodes;
            return e;
        }
        const SearchReport& rep = r.value();
        agg.nodes += rep.nodes;
        agg.terminal_lines += rep.terminal_lines;
        for (std::size_t i = 0; i < agg.pi_histogram.size(); ++i) {
            agg.pi_histogram[i] += rep.pi_histogram[i];
        }
        if (rep.verdict == Verdict::WinFound) {
            agg.verdict = Verdict::WinFound;
            agg.certificate = rep.certificate;
            return agg;
        }
        pass.node_budget -= rep.nodes;
    }
    return agg;
}

Result<SearchReport, SearchError> antagonistic_defense(
    int horizon, int n, const SearchLimits& limits) {
    if (n < 1 || n > kMaxCharacters) {
        return SearchError{"character count must be between 1 and 6", 0};
    }
    if (horizon < 1) return SearchError{"horizon must be at least 1", 0};

    DefenseSearch ds;
    ds.n = n;
    ds.horizon = horizon;
    ds.budget.limit = limits.node_budget;
    ds.use_memo = limits.use_memo;

    Node root;
    root.g = GameState::initial(BoardState{}, n, RuleVariant{});
    root.deal.pool = Roster::standard();

    DefenseSearch::V v = ds.eval(root, 0);
    if (v == DefenseSearch::V::Aborted) {
        return SearchError{"HorizonTooLarge: node budget exhausted",
                           ds.budget.used};
    }

    SearchReport rep;
    rep.verdict = v == DefenseSearch::V::Forced ? Verdict::ForcedLoss
                                                : Verdict::NotForced;
    rep.n_characters = n;
    rep.horizon = horizon;
    rep.nodes = ds.budget.used;
    rep.terminal_lines = ds.terminals;
    rep.pi_histogram = ds.pi_hist;
    return rep;
}

Result<RandomizedDefenseReport, SearchError> randomized_antagonistic_defense(
    int horizon, int n, const SearchLimits& limits) {
    if (n < 1 || n > kMaxCharacters) {
        return SearchError{"character count must be between 1 and 6", 0};
    }
    if (horizon < 1) return SearchError{"horizon must be at least 1", 0};

    BeliefSearch bs;
    bs.n = n;
    bs.horizon = horizon;
    bs.budget.limit = limits.node_budget;
    bs.use_memo = limits.use_memo;

    Node root;
    root.g = GameState::initial(BoardState{}, n, RuleVariant{});
    root.deal.pool = Roster::standard();

    auto v = bs.value(root, 0, 0b11111u);
    if (!v) {
        return SearchError{"HorizonTooLarge: node budget exhausted",
                           bs.budget.used};
    }

    RandomizedDefenseReport rep;
    rep.placements = 5;
    rep.min_losing_placements = *v;
    rep.nodes = bs.budget.used;
    return rep;
}

// ---------------------------------------------------------------------------
// Certificate traces
// ---------------------------------------------------------------------------

Result<CertificateTrace, std::string> trace_certificate(
    const WinCertificate& cert) {
    GameState g = GameState::initial(cert.board, cert.n_characters,
                                     cert.variant);
    g.regime = cert.deaths > 0 ? VictoryRegime::AllowDeaths
                               : VictoryRegime::FullOnly;

    CertificateTrace t;
    struct Entry {
        int time = 0;
        Verb verb = Verb::Move;
    };
    std::map<int, Entry> last_exit_entry_by_char;
    int time = 0;

    for (const ScriptTurn& turn : cert.script.turns) {
        for (const ActionStep& s : turn.steps) {
            if (g.outcome != Outcome::InProgress) {
                return std::string{"steps continue after the game ended"};
            }
            if (auto err = check_step(g, s)) {
                return std::string{"illegal certificate step: "} + err->detail;
            }
            ++time;
            if (s.verb == Verb::Move) {
                ++t.moves_per_character[static_cast<std::size_t>(s.actor)];
            }
            if (s.verb == Verb::Push &&
                g.board.kind_at(g.character(s.actor)->position) ==
                    TileKind::Start) {
                t.any_push_from_start = true;
            }
            apply_step(g, s);
            // Entries onto the Exit: the moved (or pushed) character now
            // stands on the Exit room.
            int entrant = s.verb == Verb::Push ? s.target : s.actor;
            if ((s.verb == Verb::Move || s.verb == Verb::Push)) {
                const CharacterState* ch = g.character(entrant);
                if (ch && ch->alive &&
                    g.board.kind_at(ch->position) == TileKind::Exit) {
                    last_exit_entry_by_char[entrant] = {time, s.verb};
                }
            }
        }
        if (g.outcome == Outcome::InProgress) end_turn(g);
    }

    for (const CharacterState& ch : g.characters) {
        if (ch.reached_nonblue) t.pi.push_back(ch.id);
    }
    int latest = 0;
    for (const CharacterState& ch : g.characters) {
        if (!ch.alive) continue;
        auto it = last_exit_entry_by_char.find(ch.id);
        if (it != last_exit_entry_by_char.end() && it->second.time > latest) {
            latest = it->second.time;
            t.last_exit_entry = {ch.id, it->second.verb};
        }
    }
    return t;
}

bool final_boarding_is_move(const CertificateTrace& t) {
    return t.last_exit_entry && t.last_exit_entry->second == Verb::Move;
}

bool double_move_or_start_push(const CertificateTrace& t) {
    if (t.any_push_from_start) return true;
    for (int id : t.pi) {
        if (t.moves_per_character[static_cast<std::size_t>(id)] >= 2) {
            return true;
        }
    }
    return false;
}

}  // namespace room25
