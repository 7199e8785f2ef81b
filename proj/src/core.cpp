#include "room25/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace room25 {

std::string to_string(Coord c) {
    std::ostringstream out;
    out << '[' << c.x << ';' << c.y << ']';
    return out.str();
}

char direction_char(Direction d) {
    switch (d) {
        case Direction::Up: return '^';
        case Direction::Down: return 'v';
        case Direction::Left: return '<';
        case Direction::Right: return '>';
    }
    return '?';
}

std::optional<Direction> direction_from_char(char c) {
    switch (c) {
        case '^': return Direction::Up;
        case 'v': return Direction::Down;
        case '<': return Direction::Left;
        case '>': return Direction::Right;
        default: return std::nullopt;
    }
}

std::string to_string(Line l) {
    std::ostringstream out;
    if (l.axis == Axis::Row)
        out << "[;" << l.index << ']';
    else
        out << '[' << l.index << ";]";
    return out.str();
}

int shiftable_line_slot(Line l) {
    if (central(l)) return -1;
    int offset = l.index < 0 ? l.index + 2 : l.index + 1;  // -2,-1,1,2 -> 0..3
    return (l.axis == Axis::Row ? 0 : 4) + offset;
}

Line shiftable_line_from_slot(int slot) {
    Axis axis = slot < 4 ? Axis::Row : Axis::Column;
    int offset = slot % 4;
    int index = offset < 2 ? offset - 2 : offset - 1;
    return Line{axis, index};
}

// ---------------------------------------------------------------------------
// Tile tables
// ---------------------------------------------------------------------------

namespace {

struct TileInfo {
    TileKind kind;
    char code;
    const char* name;
    TileColor color;
};

constexpr TileInfo kTiles[kTileKindCount] = {
    {TileKind::Start, 'D', "start", TileColor::Blue},
    {TileKind::Exit, 'S', "exit", TileColor::Blue},
    {TileKind::Empty, 'V', "empty", TileColor::Green},
    {TileKind::Control, 'C', "control", TileColor::Green},
    {TileKind::Machine, 'E', "machine", TileColor::Green},
    {TileKind::Dark, 'N', "dark", TileColor::Green},
    {TileKind::Tunnel, 'T', "tunnel", TileColor::Green},
    {TileKind::Mortal, 'M', "mortal", TileColor::Red},
    {TileKind::Vortex, 'O', "vortex", TileColor::Red},
    {TileKind::Trap, 'P', "trap", TileColor::Red},
    {TileKind::Acid, 'A', "acid", TileColor::Red},
    {TileKind::Flood, 'F', "flood", TileColor::Red},
    {TileKind::RedOther, 'R', "red-other", TileColor::Red},
    {TileKind::YellowOther, 'Y', "yellow-other", TileColor::Yellow},
    {TileKind::FreeKill, 'K', "free-kill", TileColor::Red},
};

const TileInfo& info(TileKind k) { return kTiles[static_cast<int>(k)]; }

}  // namespace

TileColor tile_color(TileKind k) { return info(k).color; }
char tile_code(TileKind k) { return info(k).code; }
const char* tile_name(TileKind k) { return info(k).name; }

std::optional<TileKind> tile_from_code(char code) {
    for (const TileInfo& t : kTiles)
        if (t.code == code) return t.kind;
    return std::nullopt;
}

std::optional<TileKind> tile_from_name(std::string_view name) {
    for (const TileInfo& t : kTiles)
        if (name == t.name) return t.kind;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Roster
// ---------------------------------------------------------------------------

int Roster::total() const {
    int sum = 0;
    for (int c : counts_) sum += c;
    return sum;
}

std::optional<RosterError> Roster::validate() const {
    for (int i = 0; i < kTileKindCount; ++i) {
        if (counts_[i] < 0)
            return RosterError{std::string("negative count for ") +
                               kTiles[i].name};
    }
    if (count(TileKind::Start) != 0 || count(TileKind::Exit) != 0)
        return RosterError{"Start and Exit are placed separately, not drawn "
                           "from the pool"};
    return std::nullopt;
}

Roster Roster::standard() {
    Roster r;
    r.set_count(TileKind::Empty, 4);
    r.set_count(TileKind::Control, 1);
    r.set_count(TileKind::Machine, 1);
    r.set_count(TileKind::Dark, 2);
    r.set_count(TileKind::Tunnel, 2);
    r.set_count(TileKind::Mortal, 2);
    r.set_count(TileKind::Vortex, 1);
    r.set_count(TileKind::Trap, 2);
    r.set_count(TileKind::Acid, 1);
    r.set_count(TileKind::Flood, 1);
    r.set_count(TileKind::RedOther, 2);
    r.set_count(TileKind::YellowOther, 4);
    return r;
}

Result<Roster, RosterError> Roster::parse(std::string_view text) {
    Roster r;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string code;
        if (!(fields >> code)) continue;  // blank line
        long long count = -1;
        std::string tail;
        if (code.size() != 1 || !(fields >> count) || count < 0 ||
            (fields >> tail)) {
            return RosterError{"roster line " + std::to_string(line_no) +
                               ": expected 'CODE COUNT'"};
        }
        auto kind = tile_from_code(code[0]);
        if (!kind) {
            return RosterError{"roster line " + std::to_string(line_no) +
                               ": unknown tile code '" + code + "'"};
        }
        r.set_count(*kind, r.count(*kind) + static_cast<int>(count));
    }
    if (auto err = r.validate()) return *err;
    return r;
}

std::string Roster::to_text() const {
    std::ostringstream out;
    for (const TileInfo& t : kTiles) {
        if (count(t.kind) > 0)
            out << t.code << ' ' << count(t.kind) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Frames
//
// Row-major 2x2 integer matrices (a, b, c, d): image of (x, y) is
// (a*x + b*y, c*x + d*y).
// ---------------------------------------------------------------------------

namespace {

struct Mat {
    int a, b, c, d;
};

constexpr Mat kFrameMat[kFrameCount] = {
    {1, 0, 0, 1},    // identity
    {0, -1, 1, 0},   // r90 (counter-clockwise)
    {-1, 0, 0, -1},  // r180
    {0, 1, -1, 0},   // r270
    {1, 0, 0, -1},   // m (horizontal-axis mirror)
    {0, 1, 1, 0},    // r90*m (main-diagonal mirror)
    {-1, 0, 0, 1},   // r180*m (vertical-axis mirror)
    {0, -1, -1, 0},  // r270*m (anti-diagonal mirror)
};

constexpr const char* kFrameNames[kFrameCount] = {
    "id", "r90", "r180", "r270", "m", "r90m", "r180m", "r270m",
};

}  // namespace

Coord apply(Frame f, Coord c) {
    const Mat& m = kFrameMat[f.id];
    return Coord{m.a * c.x + m.b * c.y, m.c * c.x + m.d * c.y};
}

Direction apply(Frame f, Direction d) {
    Coord v = step_toward(Coord{0, 0}, d);
    Coord w = apply(f, v);
    if (w.x == 1) return Direction::Right;
    if (w.x == -1) return Direction::Left;
    if (w.y == 1) return Direction::Up;
    return Direction::Down;
}

Line apply(Frame f, Line l) {
    // Map two points of the line and reconstruct it.
    Coord p = l.axis == Axis::Row ? Coord{0, l.index} : Coord{l.index, 0};
    Coord q = l.axis == Axis::Row ? Coord{1, l.index} : Coord{l.index, 1};
    Coord fp = apply(f, p);
    Coord fq = apply(f, q);
    if (fp.y == fq.y) return Line{Axis::Row, fp.y};
    return Line{Axis::Column, fp.x};
}

Frame compose(Frame f, Frame g) {
    const Mat& a = kFrameMat[f.id];
    const Mat& b = kFrameMat[g.id];
    Mat m{a.a * b.a + a.b * b.c, a.a * b.b + a.b * b.d,
          a.c * b.a + a.d * b.c, a.c * b.b + a.d * b.d};
    for (std::uint8_t i = 0; i < kFrameCount; ++i) {
        const Mat& k = kFrameMat[i];
        if (k.a == m.a && k.b == m.b && k.c == m.c && k.d == m.d)
            return Frame{i};
    }
    return Frame{0};  // unreachable: the table is closed under products
}

Frame inverse(Frame f) {
    for (std::uint8_t i = 0; i < kFrameCount; ++i)
        if (compose(f, Frame{i}) == Frame{0}) return Frame{i};
    return Frame{0};
}

const char* frame_name(Frame f) { return kFrameNames[f.id]; }

std::optional<Frame> frame_from_name(std::string_view name) {
    for (std::uint8_t i = 0; i < kFrameCount; ++i)
        if (name == kFrameNames[i]) return Frame{i};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Board state
// ---------------------------------------------------------------------------

bool legal_exit_origin(Coord c) {
    int ax = c.x < 0 ? -c.x : c.x;
    int ay = c.y < 0 ? -c.y : c.y;
    return (ax == 2 && ay >= 1) || (ay == 2 && ax >= 1);
}

BoardState::BoardState() {
    for (int i = 0; i < kCellCount; ++i) {
        slots_[i].kind = std::nullopt;
        slots_[i].face_up = false;
        slots_[i].origin = static_cast<std::int8_t>(i);
    }
    BoardSlot& start = slots_[cell_index(Coord{0, 0})];
    start.kind = TileKind::Start;
    start.face_up = true;
}

std::optional<BoardError> BoardState::shift(Line l, Direction d) {
    if (central(l))
        return BoardError{"central line " + room25::to_string(l) +
                          " can never shift"};
    if (!direction_fits_axis(l, d))
        return BoardError{"direction " + std::string(1, direction_char(d)) +
                          " does not run along " + room25::to_string(l)};
    std::array<BoardSlot, kCellCount> next = slots_;
    for (int i = -kGridRadius; i <= kGridRadius; ++i) {
        Coord from = l.axis == Axis::Row ? Coord{i, l.index} : Coord{l.index, i};
        Coord to = shifted_cell(from, l, d);
        next[cell_index(to)] = slots_[cell_index(from)];
    }
    slots_ = next;
    return std::nullopt;
}

Coord BoardState::shifted_cell(Coord c, Line l, Direction d) {
    Coord to = step_toward(c, d);
    if (to.x > kGridRadius) to.x = -kGridRadius;
    if (to.x < -kGridRadius) to.x = kGridRadius;
    if (to.y > kGridRadius) to.y = -kGridRadius;
    if (to.y < -kGridRadius) to.y = kGridRadius;
    (void)l;
    return to;
}

std::optional<Coord> BoardState::find(TileKind k) const {
    for (int i = 0; i < kCellCount; ++i)
        if (slots_[i].kind == k) return coord_of_index(i);
    return std::nullopt;
}

bool BoardState::fully_known() const {
    return std::all_of(slots_.begin(), slots_.end(),
                       [](const BoardSlot& s) { return s.kind.has_value(); });
}

BoardState BoardState::transformed(Frame f) const {
    BoardState out = *this;
    for (int i = 0; i < kCellCount; ++i) {
        Coord c = coord_of_index(i);
        BoardSlot s = slots_[i];
        s.origin = static_cast<std::int8_t>(
            cell_index(apply(f, coord_of_index(s.origin))));
        out.slots_[cell_index(apply(f, c))] = s;
    }
    return out;
}

Result<BoardState, BoardError> BoardState::parse(std::string_view text) {
    BoardState b;
    std::istringstream in{std::string(text)};
    std::string line;
    int row = 0;       // rows arrive top (y=2) to bottom (y=-2)
    int line_no = 0;
    int exit_count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string code;
        std::vector<std::string> codes;
        while (fields >> code) codes.push_back(code);
        if (codes.empty()) continue;
        if (row >= kGridSide)
            return BoardError{"more than 5 board rows", line_no};
        if (codes.size() != kGridSide)
            return BoardError{"expected 5 tile codes, found " +
                                  std::to_string(codes.size()),
                              line_no};
        for (int col = 0; col < kGridSide; ++col) {
            Coord c{col - kGridRadius, kGridRadius - row};
            if (codes[col].size() != 1)
                return BoardError{"bad tile code '" + codes[col] + "'",
                                  line_no};
            char ch = codes[col][0];
            if (ch == '?') continue;  // stays unknown
            auto kind = tile_from_code(ch);
            if (!kind)
                return BoardError{"bad tile code '" + codes[col] + "'",
                                  line_no};
            b.set_kind(c, *kind);
            if (*kind == TileKind::Exit) {
                ++exit_count;
                if (!legal_exit_origin(c))
                    return BoardError{"Exit at " + room25::to_string(c) +
                                          " is not one of the 12 legal cells",
                                      line_no};
            }
            if (*kind == TileKind::Start && c != Coord{0, 0})
                return BoardError{"Start tile must sit at [0;0] only",
                                  line_no};
        }
        ++row;
    }
    if (row != kGridSide)
        return BoardError{"expected 5 board rows, found " + std::to_string(row),
                          line_no};
    if (b.kind_at(Coord{0, 0}) != TileKind::Start)
        return BoardError{"cell [0;0] must hold the Start tile", 0};
    if (exit_count > 1)
        return BoardError{"more than one Exit tile", 0};
    return b;
}

std::string BoardState::to_text() const {
    std::ostringstream out;
    for (int row = 0; row < kGridSide; ++row) {
        for (int col = 0; col < kGridSide; ++col) {
            Coord c{col - kGridRadius, kGridRadius - row};
            if (col) out << ' ';
            auto k = kind_at(c);
            out << (k ? tile_code(*k) : '?');
        }
        out << '\n';
    }
    return out.str();
}

std::vector<BoardState> frame_orbit(const BoardState& b) {
    std::vector<BoardState> orbit;
    for (std::uint8_t i = 0; i < kFrameCount; ++i) {
        BoardState image = b.transformed(Frame{i});
        if (std::find(orbit.begin(), orbit.end(), image) == orbit.end())
            orbit.push_back(image);
    }
    return orbit;
}

}  // namespace room25
