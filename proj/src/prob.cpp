#include "room25/prob.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "room25/engine.hpp"

namespace room25 {
namespace {

constexpr std::uint64_t kDefaultSeed = 424242;
constexpr std::uint64_t kChunkSize = 4096;

BigInt pow10(int digits) {
    BigInt p = 1;
    for (int i = 0; i < digits; ++i) p *= 10;
    return p;
}

// Falling factorial with floor at zero so short pools yield probability 0
// instead of nonsense.
BigInt falling(int a, int k) {
    BigInt p = 1;
    for (int i = 0; i < k; ++i) p *= std::max(0, a - i);
    return p;
}

ProbError impossible(const std::string& why) {
    return ProbError{"ImpossibleCounts: " + why};
}

// Draw classes shared by the oracle and the validity checks.
enum Cls : int {
    kSafeX = 0,    // valid X rooms that are not dark
    kDarkX,        // dark rooms (valid X unless the no-dark event)
    kControl,
    kForbidden,    // red rooms lethal to the temeraire line
    kRedOther,     // remaining red rooms
    kRest,         // everything else in the pool
    kClsCount,
};

struct ClassCounts {
    std::array<int, kClsCount> n{};
    int total = 0;
    int exit_positions = 0;
};

Result<ClassCounts, ProbError> split_classes(const CategoryCounts& c) {
    if (c.valid_x < 0 || c.dark < 0 || c.control < 0 || c.red < 0 ||
        c.forbidden < 0 || c.total < 0) {
        return impossible("negative category count");
    }
    if (c.exit_positions < 1) return impossible("no legal exit position");
    if (c.dark > c.valid_x) return impossible("more dark rooms than X rooms");
    if (c.forbidden > c.red) return impossible("forbidden rooms exceed red");
    if (c.valid_x + c.control + c.red > c.total) {
        return impossible("categories exceed the pool");
    }
    ClassCounts k;
    k.n[kSafeX] = c.valid_x - c.dark;
    k.n[kDarkX] = c.dark;
    k.n[kControl] = c.control;
    k.n[kForbidden] = c.forbidden;
    k.n[kRedOther] = c.red - c.forbidden;
    k.n[kRest] = c.total - c.valid_x - c.control - c.red;
    k.total = c.total;
    k.exit_positions = c.exit_positions;
    return k;
}

std::optional<ProbError> require_pool(const ClassCounts& k, int draws) {
    if (k.total < draws) {
        return impossible("pool smaller than the " + std::to_string(draws) +
                          " draws the event needs");
    }
    return std::nullopt;
}

int draws_needed(ProbEvent e) {
    switch (e) {
        case ProbEvent::VLucky:
        case ProbEvent::VNoValidX:
        case ProbEvent::VLuckyNoDark:
        case ProbEvent::VInstantLossBound: return 4;
        case ProbEvent::TLucky: return 1;
        case ProbEvent::TSurvival:
        case ProbEvent::TInstantLossBound: return 2;
    }
    return 0;
}

// Sums the weight of every ordered draw sequence of the given length that
// satisfies `accept`. Weights are exact: falling products over class counts.
template <typename Pred>
Rational enumerate_sequences(const ClassCounts& k, int length, Pred accept) {
    std::array<int, 8> seq{};
    std::array<int, kClsCount> left = k.n;
    BigInt hits = 0;

    auto rec = [&](auto&& self, int depth, BigInt weight) -> void {
        if (depth == length) {
            if (accept(seq.data(), length)) hits += weight;
            return;
        }
        for (int cls = 0; cls < kClsCount; ++cls) {
            if (left[cls] == 0) continue;
            seq[depth] = cls;
            --left[cls];
            self(self, depth + 1, weight * (left[cls] + 1));
            ++left[cls];
        }
    };
    rec(rec, 0, BigInt{1});

    BigInt denom = falling(k.total, length);
    assert(denom > 0);
    return Rational{hits, denom};
}

}  // namespace

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

std::string format_decimal(const Rational& r, int digits) {
    BigInt num = r.numerator();
    BigInt den = r.denominator();
    bool neg = num < 0;
    if (neg) num = -num;

    BigInt whole = num / den;
    BigInt frac = num % den;
    BigInt scale = pow10(digits);
    // Round half away from zero.
    BigInt scaled = (frac * scale * 2 + den) / (den * 2);
    if (scaled >= scale) {
        whole += 1;
        scaled -= scale;
    }

    std::string f = scaled.str();
    if (static_cast<int>(f.size()) < digits) {
        f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    }
    std::string out = whole.str();
    if (digits > 0) out += "." + f;
    return neg ? "-" + out : out;
}

double to_double(const Rational& r) {
    return r.numerator().convert_to<double>() /
           r.denominator().convert_to<double>();
}

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

CategoryCounts CategoryCounts::from_roster(const Roster& r) {
    CategoryCounts c;
    c.total = r.total();
    c.valid_x = r.count(TileKind::Empty) + r.count(TileKind::Machine) +
                r.count(TileKind::Dark) + r.count(TileKind::Tunnel);
    c.dark = r.count(TileKind::Dark);
    c.control = r.count(TileKind::Control);
    for (int i = 0; i < kTileKindCount; ++i) {
        TileKind k = static_cast<TileKind>(i);
        if (tile_color(k) == TileColor::Red) c.red += r.count(k);
    }
    c.forbidden = r.count(TileKind::Mortal) + r.count(TileKind::Trap);
    return c;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

Result<Rational, ProbError> p_v_no_valid_x(const CategoryCounts& c) {
    auto k = split_classes(c);
    if (!k.ok()) return k.error();
    if (auto err = require_pool(k.value(), 4)) return *err;
    return Rational{falling(c.total - c.valid_x, 4), falling(c.total, 4)};
}

Result<Rational, ProbError> p_v_lucky(const CategoryCounts& c) {
    auto miss = p_v_no_valid_x(c);
    if (!miss.ok()) return miss.error();
    return (Rational{1} - miss.value()) / Rational{c.exit_positions};
}

Result<Rational, ProbError> p_v_lucky_no_dark(const CategoryCounts& c) {
    auto k = split_classes(c);
    if (!k.ok()) return k.error();
    if (auto err = require_pool(k.value(), 4)) return *err;
    int usable = c.valid_x - c.dark;
    Rational miss{falling(c.total - usable, 4), falling(c.total, 4)};
    return (Rational{1} - miss) / Rational{c.exit_positions};
}

Result<Rational, ProbError> p_v_instant_loss_bound(const CategoryCounts& c) {
    auto k = split_classes(c);
    if (!k.ok()) return k.error();
    if (auto err = require_pool(k.value(), 4)) return *err;
    return Rational{falling(c.red, 4), falling(c.total, 4)};
}

Result<Rational, ProbError> p_t_lucky(const CategoryCounts& c) {
    auto k = split_classes(c);
    if (!k.ok()) return k.error();
    if (auto err = require_pool(k.value(), 1)) return *err;
    return Rational{c.control, c.total} / Rational{c.exit_positions};
}

Result<Rational, ProbError> p_t_survival(const CategoryCounts& c) {
    auto k = split_classes(c);
    if (!k.ok()) return k.error();
    int e = c.exit_positions;
    int t = c.total;
    int f = c.forbidden;
    if (auto err = require_pool(k.value(), e > 1 ? 2 : 1)) return *err;

    Rational q1{std::max(0, t - f), t};
    // Exit already at the aimed cell: only the pushed-into room is drawn.
    Rational survive = Rational{1, e} * q1;
    if (e > 1) {
        Rational q2{std::max(0, t - 1 - f), t - 1};
        survive += Rational{e - 1, e} * q1 * q2;
    }
    return survive;
}

Result<Rational, ProbError> p_t_instant_loss_bound(const CategoryCounts& c) {
    auto s = p_t_survival(c);
    if (!s.ok()) return s.error();
    return Rational{1} - s.value();
}

Result<Rational, ProbError> closed_form(const CategoryCounts& c, ProbEvent e) {
    switch (e) {
        case ProbEvent::VLucky: return p_v_lucky(c);
        case ProbEvent::VNoValidX: return p_v_no_valid_x(c);
        case ProbEvent::VLuckyNoDark: return p_v_lucky_no_dark(c);
        case ProbEvent::VInstantLossBound: return p_v_instant_loss_bound(c);
        case ProbEvent::TLucky: return p_t_lucky(c);
        case ProbEvent::TSurvival: return p_t_survival(c);
        case ProbEvent::TInstantLossBound: return p_t_instant_loss_bound(c);
    }
    return impossible("unknown event");
}

const char* prob_event_name(ProbEvent e) {
    switch (e) {
        case ProbEvent::VLucky: return "v-lucky";
        case ProbEvent::VNoValidX: return "v-no-valid-x";
        case ProbEvent::VLuckyNoDark: return "v-lucky-no-dark";
        case ProbEvent::VInstantLossBound: return "v-loss-bound";
        case ProbEvent::TLucky: return "t-lucky";
        case ProbEvent::TSurvival: return "t-survival";
        case ProbEvent::TInstantLossBound: return "t-loss-bound";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

Result<Rational, ProbError> enumerate_oracle(const CategoryCounts& c,
                                             ProbEvent e) {
    auto split = split_classes(c);
    if (!split.ok()) return split.error();
    const ClassCounts& k = split.value();
    if (auto err = require_pool(k, draws_needed(e))) return *err;

    Rational exit_hit{1, k.exit_positions};
    Rational exit_miss{k.exit_positions - 1, k.exit_positions};

    switch (e) {
        case ProbEvent::VLucky:
            return exit_hit *
                   enumerate_sequences(k, 4, [](const int* s, int len) {
                       for (int i = 0; i < len; ++i) {
                           if (s[i] == kSafeX || s[i] == kDarkX) return true;
                       }
                       return false;
                   });
        case ProbEvent::VNoValidX:
            return enumerate_sequences(k, 4, [](const int* s, int len) {
                for (int i = 0; i < len; ++i) {
                    if (s[i] == kSafeX || s[i] == kDarkX) return false;
                }
                return true;
            });
        case ProbEvent::VLuckyNoDark:
            return exit_hit *
                   enumerate_sequences(k, 4, [](const int* s, int len) {
                       for (int i = 0; i < len; ++i) {
                           if (s[i] == kSafeX) return true;
                       }
                       return false;
                   });
        case ProbEvent::VInstantLossBound:
            return enumerate_sequences(k, 4, [](const int* s, int len) {
                for (int i = 0; i < len; ++i) {
                    if (s[i] != kForbidden && s[i] != kRedOther) return false;
                }
                return true;
            });
        case ProbEvent::TLucky:
            return exit_hit *
                   enumerate_sequences(k, 1, [](const int* s, int) {
                       return s[0] == kControl;
                   });
        case ProbEvent::TSurvival:
        case ProbEvent::TInstantLossBound: {
            auto safe = [](const int* s, int len) {
                for (int i = 0; i < len; ++i) {
                    if (s[i] == kForbidden) return false;
                }
                return true;
            };
            // Exit on the aimed cell: one blind room; otherwise two.
            Rational survive = exit_hit * enumerate_sequences(k, 1, safe);
            if (k.exit_positions > 1) {
                survive += exit_miss * enumerate_sequences(k, 2, safe);
            }
            if (e == ProbEvent::TSurvival) return survive;
            return Rational{1} - survive;
        }
    }
    return impossible("unknown event");
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

McTally& McTally::operator+=(const McTally& o) {
    trials += o.trials;
    optimal_win += o.optimal_win;
    instant_loss += o.instant_loss;
    other += o.other;
    return *this;
}

double McReport::win_rate() const {
    return tally.trials ? static_cast<double>(tally.optimal_win) /
                              static_cast<double>(tally.trials)
                        : 0.0;
}

double McReport::loss_rate() const {
    return tally.trials ? static_cast<double>(tally.instant_loss) /
                              static_cast<double>(tally.trials)
                        : 0.0;
}

double McReport::sigma(double rate) const {
    if (tally.trials == 0) return 0.0;
    return std::sqrt(rate * (1.0 - rate) /
                     static_cast<double>(tally.trials));
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("R25_SEED")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return v;
    }
    return kDefaultSeed;
}

namespace {

// SplitMix64 finalizer; decorrelates per-chunk seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Unbiased bounded draw by rejection.
std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
        r = eng();
    } while (r >= limit);
    return r % n;
}

const std::vector<Coord>& exit_cells() {
    static const std::vector<Coord> cells = [] {
        std::vector<Coord> v;
        for (int i = 0; i < kCellCount; ++i) {
            Coord c = coord_of_index(i);
            if (legal_exit_origin(c)) v.push_back(c);
        }
        return v;
    }();
    return cells;
}

std::vector<TileKind> expand_roster(const Roster& r) {
    std::vector<TileKind> tiles;
    for (int i = 0; i < kTileKindCount; ++i) {
        TileKind k = static_cast<TileKind>(i);
        tiles.insert(tiles.end(), r.count(k), k);
    }
    return tiles;
}

BoardState deal_board(std::mt19937_64& eng,
                      const std::vector<TileKind>& pool_template) {
    std::vector<TileKind> pool = pool_template;
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[bounded(eng, i)]);
    }
    Coord exit = exit_cells()[bounded(eng, exit_cells().size())];

    BoardState b;
    b.set_kind(exit, TileKind::Exit);
    std::size_t next = 0;
    for (int i = 0; i < kCellCount; ++i) {
        Coord c = coord_of_index(i);
        if ((c == Coord{0, 0}) || c == exit) continue;
        b.set_kind(c, pool[next++]);
    }
    return b;
}

// Applies one step, asserting it is legal; MC policies are supposed to emit
// only legal steps. Returns false on a (bug) rejection so the trial can be
// filed under `other` instead of crashing a long run.
bool apply_checked(GameState& g, const ActionStep& s) {
    if (check_step(g, s)) {
        assert(false && "monte carlo policy emitted an illegal step");
        return false;
    }
    apply_step(g, s);
    return true;
}

ActionStep mk_move(int actor, Coord to, std::optional<Rider> rider = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Move;
    s.coord = to;
    s.rider = rider;
    return s;
}

// Damage-control shift everyone agrees on: the top row, rightward. It holds
// no character and no room the fallback plan cares about on turn 1.
const Rider kIdleRider{Line{Axis::Row, 2}, Direction::Right};

// Ranked safety of moving onto `target` now. Lower is better; 100 and up
// means somebody dies.
int danger_rank(const GameState& g, Coord target, bool acts_again) {
    auto kind = g.board.kind_at(target);
    if (!kind) return 90;  // blind gamble, preferable only to certain death
    switch (*kind) {
        case TileKind::Empty: return 0;
        case TileKind::Tunnel: return 1;
        case TileKind::Dark: return 2;
        case TileKind::YellowOther: return 3;
        case TileKind::Start: return 4;
        case TileKind::Exit: return 5;
        case TileKind::Machine: return 10;  // harmless but forces a shift
        case TileKind::Control: return 11;
        case TileKind::Vortex: return 20;   // bounce home
        case TileKind::Flood: return 30;    // safe until next turn's end
        case TileKind::Acid:
            return g.occupants(target).empty() ? 40 : 101;
        case TileKind::Trap:
            // Deadly only for characters that must act again this turn.
            return acts_again ? 102 : 50;
        case TileKind::Mortal: return 100;
        case TileKind::RedOther: return 103;
        case TileKind::FreeKill: return 104;
    }
    return 99;
}

ActionStep pick_fallback_move(const GameState& g, int actor, bool acts_again) {
    Coord pos = g.character(actor)->position;
    const Direction order[4] = {Direction::Right, Direction::Up,
                                Direction::Left, Direction::Down};
    Coord best{0, 0};
    int best_rank = 1000;
    for (Direction d : order) {
        Coord t = step_toward(pos, d);
        if (!in_bounds(t)) continue;
        int rank = danger_rank(g, t, acts_again);
        if (rank < best_rank) {
            best_rank = rank;
            best = t;
        }
    }
    auto kind = g.board.kind_at(best);
    std::optional<Rider> rider;
    if (kind && grants_rider(*kind)) rider = kIdleRider;
    return mk_move(actor, best, rider);
}

// A legal control parameterization for the actor: the preferred line and
// direction when the actor stands on that line and no lock disagrees,
// otherwise any own-line shift, otherwise the null form on Start.
ActionStep pick_control(const GameState& g, int actor,
                        std::optional<Rider> preferred = {}) {
    ActionStep s;
    s.actor = actor;
    s.verb = Verb::Control;
    Coord pos = g.character(actor)->position;

    auto usable = [&](Line l, Direction d) {
        if (central(l) || !contains(l, pos)) return false;
        auto lock = g.lock(l);
        return !lock || *lock == d;
    };

    if (preferred && usable(preferred->line, preferred->dir)) {
        s.line = preferred->line;
        s.dir = preferred->dir;
        return s;
    }
    for (Line l : {row_of(pos), column_of(pos)}) {
        Direction dflt =
            l.axis == Axis::Row ? Direction::Right : Direction::Up;
        Direction d = g.lock(l).value_or(dflt);
        if (usable(l, d)) {
            s.line = l;
            s.dir = d;
            return s;
        }
    }
    // Both own lines central: the actor is on Start, null form.
    return s;
}

void run_canned(GameState& g, const Script& script) {
    for (const ScriptTurn& t : script.turns) {
        for (const ActionStep& s : t.steps) {
            if (!apply_checked(g, s)) return;
            if (g.outcome != Outcome::InProgress) return;
        }
        end_turn(g);
    }
}

// Committed veloce programs without a usable symmetry: scouts have reported,
// every mover picks the least dangerous neighbor at its moment.
void run_veloce_fallback(GameState& g) {
    const int n = 6;
    for (int i = 1; i <= n - 2; ++i) {
        ActionStep look;
        look.actor = i;
        look.verb = Verb::Look;
        look.coord = step_toward(Coord{0, 0},
                                 static_cast<Direction>((i - 1) % 4));
        // Scout order Up, Down, Left, Right covers all four neighbors.
        if (!apply_checked(g, look)) return;
    }
    auto move_if_alive = [&](int id, bool acts_again) {
        if (g.outcome != Outcome::InProgress) return false;
        if (!g.character(id)->alive) return true;
        return apply_checked(g, pick_fallback_move(g, id, acts_again));
    };
    if (!move_if_alive(5, true)) return;
    if (!move_if_alive(6, true)) return;
    for (int i = 1; i <= 4; ++i) {
        if (!move_if_alive(i, false)) return;
    }
    if (g.outcome != Outcome::InProgress) return;
    if (g.character(5)->alive) {
        if (!apply_checked(g, pick_control(g, 5))) return;
        if (g.outcome != Outcome::InProgress) return;
    }
    if (g.character(6)->alive && verb_executable(g, 6, Verb::Look)) {
        Coord pos = g.character(6)->position;
        for (Direction d : {Direction::Right, Direction::Up, Direction::Left,
                            Direction::Down}) {
            Coord t = step_toward(pos, d);
            if (in_bounds(t) && !g.board.face_up(t)) {
                ActionStep look;
                look.actor = 6;
                look.verb = Verb::Look;
                look.coord = t;
                apply_checked(g, look);
                break;
            }
        }
    }
}

// `lucky` marks trials whose deal satisfied the opening's priced luck event.
// Only those wins count toward the optimal-win rate; a win the plan stumbles
// into on an unpriced deal (the Machine room mimics the Control room's
// rider) lands under `other` so the measured rate stays comparable with the
// closed form.
void classify(const GameState& g, bool lucky, McTally& tally) {
    ++tally.trials;
    switch (g.outcome) {
        case Outcome::Won:
            if (lucky) {
                ++tally.optimal_win;
            } else {
                ++tally.other;
            }
            break;
        case Outcome::Lost: ++tally.instant_loss; break;
        case Outcome::InProgress: ++tally.other; break;
    }
}

void veloce_trial(const BoardState& board, McTally& tally) {
    GameState g = GameState::initial(board, 6);
    auto witness = v_lucky(board);
    assert(witness.ok());
    bool lucky = witness.ok() && witness.value().has_value();
    if (lucky) {
        auto script = canned_script(Opening::Veloce, *witness.value(), 6);
        assert(script.ok());
        if (script.ok()) run_canned(g, script.value());
    } else {
        run_veloce_fallback(g);
    }
    classify(g, lucky, tally);
}

// The temeraire line executed mechanically: planned parameters wherever they
// are legal, least-damage substitutes where the revealed rooms broke the
// plan. Stops at the first death (full victory regime ends the game there).
void temeraire_trial(const BoardState& board, McTally& tally) {
    RuleVariant variant;
    variant.push_from_start_allowed = true;
    GameState g = GameState::initial(board, 6, variant);
    auto witness = t_lucky(board);
    bool lucky = witness.ok() && witness.value().has_value();

    const Coord x{1, 0};
    const Coord target{0, 1};
    const Rider plan_rider{Line{Axis::Row, 1}, Direction::Left};

    auto done = [&] { return g.outcome != Outcome::InProgress; };
    auto rider_for = [&](Coord dest) -> std::optional<Rider> {
        auto kind = g.board.kind_at(dest);
        if (!kind || !grants_rider(*kind)) return std::nullopt;
        // Keep walking the hoped-for Exit leftward while the row lock
        // allows it; otherwise burn the shift on the idle row.
        auto lock = g.lock(plan_rider.line);
        if (!lock || *lock == plan_rider.dir) return plan_rider;
        return kIdleRider;
    };

    for (int pusher : {1, 2}) {
        ActionStep s;
        s.actor = pusher;
        s.verb = Verb::Push;
        s.target = pusher + 2;
        s.coord = x;
        s.rider = rider_for(x);
        if (!apply_checked(g, s) || done()) {
            classify(g, lucky, tally);
            return;
        }
    }
    if (g.character(3)->alive) {
        auto c = pick_control(g, 3,
                              Rider{Line{Axis::Column, 1}, Direction::Up});
        if (!apply_checked(g, c) || done()) {
            classify(g, lucky, tally);
            return;
        }
    }
    for (int mover : {4, 5, 6, 1, 2, 3}) {
        if (!g.character(mover)->alive) continue;
        Coord pos = g.character(mover)->position;
        ActionStep s = adjacent(pos, target)
                           ? mk_move(mover, target, rider_for(target))
                           : pick_fallback_move(g, mover, true);
        if (!apply_checked(g, s) || done()) {
            classify(g, lucky, tally);
            return;
        }
    }
    for (int slider : {4, 5, 6}) {
        if (!g.character(slider)->alive) continue;
        auto c = pick_control(g, slider, plan_rider);
        if (!apply_checked(g, c) || done()) {
            classify(g, lucky, tally);
            return;
        }
    }
    end_turn(g);
    classify(g, lucky, tally);
}

McTally run_chunk(Opening o, std::uint64_t chunk_index, std::uint64_t count,
                  std::uint64_t seed,
                  const std::vector<TileKind>& pool_template) {
    std::mt19937_64 eng(mix64(seed ^ chunk_index));
    McTally tally;
    for (std::uint64_t i = 0; i < count; ++i) {
        BoardState board = deal_board(eng, pool_template);
        if (o == Opening::Veloce) {
            veloce_trial(board, tally);
        } else {
            temeraire_trial(board, tally);
        }
    }
    return tally;
}

}  // namespace

Result<McReport, ProbError> monte_carlo(Opening o, std::uint64_t trials,
                                        std::uint64_t seed, int jobs,
                                        const Roster& roster) {
    if (auto err = roster.validate()) {
        return ProbError{"ImpossibleCounts: " + err->message};
    }
    if (roster.total() != kCellCount - 2) {
        return impossible("the dealt pool must hold exactly 23 tiles");
    }
    std::vector<TileKind> pool_template = expand_roster(roster);

    std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
    McReport report;
    report.seed = seed;

    auto count_of = [&](std::uint64_t c) {
        return std::min(kChunkSize, trials - c * kChunkSize);
    };

    if (jobs <= 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            report.tally += run_chunk(o, c, count_of(c), seed, pool_template);
        }
        return report;
    }

    unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), chunks));
    std::atomic<std::uint64_t> next{0};
    std::vector<McTally> partial(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::uint64_t c = next.fetch_add(1); c < chunks;
                 c = next.fetch_add(1)) {
                partial[w] += run_chunk(o, c, count_of(c), seed,
                                        pool_template);
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const McTally& p : partial) report.tally += p;
    return report;
}

}  // namespace room25
