#ifndef ROOM25_CORE_HPP
#define ROOM25_CORE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "room25/result.hpp"

namespace room25 {

// ---------------------------------------------------------------------------
// Grid geometry
//
// The board is a fixed 5x5 grid addressed with centered coordinates: x grows
// to the right, y grows upward, both in [-2, 2]. The Start room sits at
// [0;0] and, lying on both central lines, can never move.
// ---------------------------------------------------------------------------

constexpr int kGridRadius = 2;
constexpr int kGridSide = 2 * kGridRadius + 1;
constexpr int kCellCount = kGridSide * kGridSide;

struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

constexpr bool in_bounds(Coord c) {
    return c.x >= -kGridRadius && c.x <= kGridRadius && c.y >= -kGridRadius &&
           c.y <= kGridRadius;
}

// Dense cell index in row-major order from the top-left corner [-2;2].
constexpr int cell_index(Coord c) {
    return (kGridRadius - c.y) * kGridSide + (c.x + kGridRadius);
}

constexpr Coord coord_of_index(int idx) {
    return Coord{idx % kGridSide - kGridRadius, kGridRadius - idx / kGridSide};
}

constexpr bool adjacent(Coord a, Coord b) {
    int dx = a.x - b.x;
    int dy = a.y - b.y;
    return (dx == 0 && (dy == 1 || dy == -1)) ||
           (dy == 0 && (dx == 1 || dx == -1));
}

std::string to_string(Coord c);  // "[x;y]"

enum class Direction : std::uint8_t { Up, Down, Left, Right };

constexpr Coord step_toward(Coord c, Direction d) {
    switch (d) {
        case Direction::Up: return Coord{c.x, c.y + 1};
        case Direction::Down: return Coord{c.x, c.y - 1};
        case Direction::Left: return Coord{c.x - 1, c.y};
        case Direction::Right: return Coord{c.x + 1, c.y};
    }
    return c;
}

char direction_char(Direction d);  // ^ v < >
std::optional<Direction> direction_from_char(char c);

// ---------------------------------------------------------------------------
// Lines
//
// A line is a full row [;y] or column [x;]. The two central lines [;0] and
// [0;] may never shift. Rows shift left/right, columns up/down.
// ---------------------------------------------------------------------------

enum class Axis : std::uint8_t { Row, Column };

struct Line {
    Axis axis = Axis::Row;
    int index = 0;  // y for rows, x for columns

    friend bool operator==(const Line&, const Line&) = default;
    friend auto operator<=>(const Line&, const Line&) = default;
};

constexpr bool central(Line l) { return l.index == 0; }

constexpr bool contains(Line l, Coord c) {
    return l.axis == Axis::Row ? c.y == l.index : c.x == l.index;
}

constexpr bool direction_fits_axis(Line l, Direction d) {
    if (l.axis == Axis::Row)
        return d == Direction::Left || d == Direction::Right;
    return d == Direction::Up || d == Direction::Down;
}

constexpr Line row_of(Coord c) { return Line{Axis::Row, c.y}; }
constexpr Line column_of(Coord c) { return Line{Axis::Column, c.x}; }

std::string to_string(Line l);  // "[;y]" or "[x;]"

// The eight shiftable lines in a fixed order (rows -2,-1,1,2 then columns).
// Index is used for lock tables.
constexpr int kShiftableLineCount = 8;
int shiftable_line_slot(Line l);           // -1 for central lines
Line shiftable_line_from_slot(int slot);

// ---------------------------------------------------------------------------
// Tiles
// ---------------------------------------------------------------------------

enum class TileKind : std::uint8_t {
    Start,        // D, blue, fixed at [0;0], always face up
    Exit,         // S, blue
    Empty,        // V, green
    Control,      // C, green, entry grants a mandatory line shift
    Machine,      // E, green, same rider as Control plus end-game duties
    Dark,         // N, green, occupant may not look
    Tunnel,       // T, green (one-shot travel; unused by the openings)
    Mortal,       // M, red, kills on entry
    Vortex,       // O, red, returns the entrant to [0;0]
    Trap,         // P, red, delayed death unless the victim moves out
    Acid,         // A, red, each new entrant dissolves the earliest occupant
    Flood,        // F, red, drowns whoever is still aboard a turn later
    RedOther,     // R, red catch-all treated as kill-on-entry
    YellowOther,  // Y, yellow catch-all with no effect in scope
    FreeKill,     // K, fictitious testing tile: its rider shift resolves
                  //    twice, then the entrant dies; never in standard
                  //    rosters
};

constexpr int kTileKindCount = 15;

enum class TileColor : std::uint8_t { Blue, Green, Red, Yellow };

TileColor tile_color(TileKind k);
char tile_code(TileKind k);
std::optional<TileKind> tile_from_code(char code);
const char* tile_name(TileKind k);
std::optional<TileKind> tile_from_name(std::string_view name);

// True for tiles whose entry effect is an immediate kill.
constexpr bool lethal_on_entry(TileKind k) {
    return k == TileKind::Mortal || k == TileKind::RedOther;
}

// True for tiles that demand a rider shift from whoever enters.
constexpr bool grants_rider(TileKind k) {
    return k == TileKind::Control || k == TileKind::Machine ||
           k == TileKind::FreeKill;
}

// ---------------------------------------------------------------------------
// Roster: the face-down tile pool (everything except Start and Exit)
// ---------------------------------------------------------------------------

struct RosterError {
    std::string message;
};

class Roster {
public:
    Roster() { counts_.fill(0); }

    int count(TileKind k) const {
        return counts_[static_cast<std::size_t>(k)];
    }
    void set_count(TileKind k, int n) {
        counts_[static_cast<std::size_t>(k)] = n;
    }
    int total() const;

    // Counts must be non-negative; Start and Exit never live in the pool.
    std::optional<RosterError> validate() const;

    // The season-1 base game pool: 23 tiles.
    static Roster standard();

    static Result<Roster, RosterError> parse(std::string_view text);
    std::string to_text() const;

    friend bool operator==(const Roster&, const Roster&) = default;

private:
    std::array<int, kTileKindCount> counts_;
};

// ---------------------------------------------------------------------------
// Frames: the dihedral symmetry group of the square
//
// Frames act on coordinates as signed permutation matrices. The fixed
// enumeration is [identity, r90, r180, r270, m, r90*m, r180*m, r270*m] where
// r90 is the counter-clockwise quarter turn and m mirrors across the
// horizontal axis. Index 6 is therefore the vertical-axis mirror.
// ---------------------------------------------------------------------------

constexpr int kFrameCount = 8;

struct Frame {
    std::uint8_t id = 0;

    friend bool operator==(const Frame&, const Frame&) = default;
};

Coord apply(Frame f, Coord c);
Direction apply(Frame f, Direction d);
Line apply(Frame f, Line l);

// apply(compose(f, g), c) == apply(f, apply(g, c))
Frame compose(Frame f, Frame g);
Frame inverse(Frame f);
const char* frame_name(Frame f);
std::optional<Frame> frame_from_name(std::string_view name);

// ---------------------------------------------------------------------------
// Board state
// ---------------------------------------------------------------------------

struct BoardSlot {
    // nullopt while the tile's identity is undetermined (search states and
    // partially specified replay boards).
    std::optional<TileKind> kind;
    bool face_up = false;
    // Cell the tile occupied before any line shifted. Exit placement rules
    // key on origins, not current positions.
    std::int8_t origin = 0;

    friend bool operator==(const BoardSlot&, const BoardSlot&) = default;
};

struct BoardError {
    std::string message;
    int line = 0;  // 1-based source line when parsing, 0 otherwise
};

// The twelve cells where the Exit may start: each corner plus the two edge
// cells orthogonally adjacent to it.
bool legal_exit_origin(Coord c);

class BoardState {
public:
    // All cells unknown and face down except Start, face up at [0;0].
    BoardState();

    const BoardSlot& slot(Coord c) const { return slots_[cell_index(c)]; }
    std::optional<TileKind> kind_at(Coord c) const { return slot(c).kind; }
    bool face_up(Coord c) const { return slot(c).face_up; }
    Coord origin_at(Coord c) const {
        return coord_of_index(slots_[cell_index(c)].origin);
    }

    void set_kind(Coord c, TileKind k) { slots_[cell_index(c)].kind = k; }
    void set_face_up(Coord c, bool up = true) {
        slots_[cell_index(c)].face_up = up;
    }

    // Cyclic one-step shift. Central lines are rejected.
    std::optional<BoardError> shift(Line l, Direction d);

    // Where the tile currently at `c` would land under shift(l, d); `c` must
    // lie on `l`.
    static Coord shifted_cell(Coord c, Line l, Direction d);

    std::optional<Coord> find(TileKind k) const;
    bool fully_known() const;

    BoardState transformed(Frame f) const;

    /**
     * Parses the on-disk format: five rows of five tile codes, top row
     * first, whitespace separated, `#` comments and blank lines skipped.
     * `?` marks an unknown face-down tile. Validation: [0;0] must be Start,
     * Start appears nowhere else, at most one Exit and only on a legal
     * origin cell.
     */
    static Result<BoardState, BoardError> parse(std::string_view text);
    std::string to_text() const;

    friend bool operator==(const BoardState&, const BoardState&) = default;

private:
    std::array<BoardSlot, kCellCount> slots_;
};

// Distinct images of the board under the eight frames, in frame order with
// duplicates dropped. Size always divides 8.
std::vector<BoardState> frame_orbit(const BoardState& b);

}  // namespace room25

template <>
struct std::hash<room25::Coord> {
    std::size_t operator()(room25::Coord c) const noexcept {
        return static_cast<std::size_t>(room25::cell_index(c));
    }
};

#endif  // ROOM25_CORE_HPP
