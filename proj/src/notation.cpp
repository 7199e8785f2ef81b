#include "room25/notation.hpp"

#include <cctype>
#include <sstream>

namespace room25 {

char verb_letter(Verb v) {
    switch (v) {
        case Verb::Look: return 'R';
        case Verb::Move: return 'D';
        case Verb::Push: return 'P';
        case Verb::Control: return 'C';
    }
    return '?';
}

std::optional<Verb> verb_from_letter(char c) {
    switch (c) {
        case 'R': return Verb::Look;
        case 'D': return Verb::Move;
        case 'P': return Verb::Push;
        case 'C': return Verb::Control;
        default: return std::nullopt;
    }
}

std::string describe(const ParseError& e) {
    std::ostringstream out;
    out << "line " << e.line << ", column " << e.column << ": " << e.message;
    return out.str();
}

namespace {

// Single-line cursor. Whitespace between lexemes is insignificant; the
// line number is stamped on by the multi-line entry points.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    // Peeks past whitespace without consuming.
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char take() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_++] : '\0';
    }

    bool take_if(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int column() {
        skip_ws();
        return static_cast<int>(pos_) + 1;
    }

    // ^ v < > plus the UTF-8 arrows U+2190..U+2193.
    std::optional<Direction> take_direction() {
        skip_ws();
        if (pos_ < text_.size()) {
            if (auto d = direction_from_char(text_[pos_])) {
                ++pos_;
                return d;
            }
            if (pos_ + 2 < text_.size() &&
                static_cast<unsigned char>(text_[pos_]) == 0xE2 &&
                static_cast<unsigned char>(text_[pos_ + 1]) == 0x86) {
                switch (static_cast<unsigned char>(text_[pos_ + 2])) {
                    case 0x90: pos_ += 3; return Direction::Left;
                    case 0x91: pos_ += 3; return Direction::Up;
                    case 0x92: pos_ += 3; return Direction::Right;
                    case 0x93: pos_ += 3; return Direction::Down;
                    default: break;
                }
            }
        }
        return std::nullopt;
    }

    std::optional<int> take_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            return std::nullopt;
        }
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ParseError syntax(Cursor& c, std::string message) {
    return ParseError{ParseErrorCode::Syntax, 1, c.column(),
                      std::move(message)};
}

// "[x;y]" coordinate, "[x;]" column, or "[;y]" row, disambiguated by which
// side of the semicolon is populated.
struct BracketValue {
    std::optional<int> x;
    std::optional<int> y;
};

Result<BracketValue, ParseError> parse_bracket(Cursor& c) {
    if (!c.take_if('['))
        return syntax(c, "expected '['");
    BracketValue v;
    if (c.peek() != ';') {
        v.x = c.take_int();
        if (!v.x) return syntax(c, "expected a coordinate number");
    }
    if (!c.take_if(';'))
        return syntax(c, "expected ';'");
    if (c.peek() != ']') {
        v.y = c.take_int();
        if (!v.y) return syntax(c, "expected a coordinate number");
    }
    if (!c.take_if(']'))
        return syntax(c, "expected ']'");
    return v;
}

Result<Coord, ParseError> parse_coord(Cursor& c) {
    int column = c.column();
    auto v = parse_bracket(c);
    if (!v) return v.error();
    if (!v.value().x || !v.value().y)
        return ParseError{ParseErrorCode::Syntax, 1, column,
                          "expected a full [x;y] coordinate"};
    Coord out{*v.value().x, *v.value().y};
    if (!in_bounds(out))
        return ParseError{ParseErrorCode::CoordOutOfRange, 1, column,
                          to_string(out) + " is outside the 5x5 board"};
    return out;
}

Result<Line, ParseError> parse_line_ref(Cursor& c) {
    int column = c.column();
    auto v = parse_bracket(c);
    if (!v) return v.error();
    if (v.value().x && v.value().y)
        return ParseError{ParseErrorCode::Syntax, 1, column,
                          "expected a line [x;] or [;y], found a coordinate"};
    if (!v.value().x && !v.value().y)
        return ParseError{ParseErrorCode::Syntax, 1, column,
                          "expected a line index"};
    Line l = v.value().x ? Line{Axis::Column, *v.value().x}
                         : Line{Axis::Row, *v.value().y};
    if (l.index < -kGridRadius || l.index > kGridRadius)
        return ParseError{ParseErrorCode::CoordOutOfRange, 1, column,
                          to_string(l) + " is outside the 5x5 board"};
    return l;
}

// direction + line, the tail shared by control steps and riders
Result<Rider, ParseError> parse_shift_tail(Cursor& c) {
    auto dir = c.take_direction();
    if (!dir) return syntax(c, "expected a direction (^ v < >)");
    auto line = parse_line_ref(c);
    if (!line) return line.error();
    return Rider{line.value(), *dir};
}

Result<ActionStep, ParseError> parse_step_at(Cursor& c) {
    ActionStep step;
    auto actor = c.take_int();
    if (!actor || *actor < 1)
        return syntax(c, "expected a character number");
    step.actor = *actor;

    // Bare "5<[;1]" is accepted as a control step with the letter elided.
    if (auto dir = c.take_direction()) {
        step.verb = Verb::Control;
        auto line = parse_line_ref(c);
        if (!line) return line.error();
        step.line = line.value();
        step.dir = *dir;
        return step;
    }

    int verb_col = c.column();
    char letter = c.take();
    auto verb = verb_from_letter(letter);
    if (!verb)
        return ParseError{ParseErrorCode::Syntax, 1, verb_col,
                          std::string("unknown action letter '") + letter +
                              "'"};
    step.verb = *verb;

    switch (step.verb) {
        case Verb::Look: {
            auto coord = parse_coord(c);
            if (!coord) return coord.error();
            step.coord = coord.value();
            return step;
        }
        case Verb::Move:
            break;
        case Verb::Push: {
            int col = c.column();
            auto target = c.take_int();
            if (!target || *target < 1)
                return syntax(c, "expected the pushed character's number");
            if (*target == step.actor)
                return ParseError{ParseErrorCode::SelfPush, 1, col,
                                  "a character cannot push itself"};
            step.target = *target;
            break;
        }
        case Verb::Control: {
            // Bare control = the no-effect action on the Start cell.
            char next = c.peek();
            if (next == '\0' || next == '|' || next == '#') return step;
            auto tail = parse_shift_tail(c);
            if (!tail) return tail.error();
            step.line = tail.value().line;
            step.dir = tail.value().dir;
            return step;
        }
    }

    // Move and Push share the destination-plus-optional-rider tail.
    auto coord = parse_coord(c);
    if (!coord) return coord.error();
    step.coord = coord.value();
    char next = c.peek();
    if (next != '\0' && next != '|' && next != '#') {
        auto rider = parse_shift_tail(c);
        if (!rider) return rider.error();
        step.rider = rider.value();
    }
    return step;
}

Result<int, ParseError> parse_turn_header(Cursor& c) {
    auto number = c.take_int();
    if (!number || *number < 1)
        return syntax(c, "expected a turn number");
    if (!c.take_if(':'))
        return syntax(c, "expected ':' after the turn number");
    return *number;
}

Result<ScriptTurn, ParseError> parse_script_turn_line(std::string_view text) {
    Cursor c(text);
    ScriptTurn turn;
    auto number = parse_turn_header(c);
    if (!number) return number.error();
    turn.turn_number = number.value();
    for (;;) {
        auto step = parse_step_at(c);
        if (!step) return step.error();
        turn.steps.push_back(step.value());
        if (c.take_if('#')) {
            turn.steps.back().win_marker = true;
            if (!c.at_end())
                return syntax(c, "the win marker must end the turn");
            return turn;
        }
        if (c.at_end()) return turn;
        if (!c.take_if('|'))
            return syntax(c, "expected '|' between steps");
    }
}

Result<ProgrammedTurn, ParseError> parse_program_turn_line(
    std::string_view text) {
    Cursor c(text);
    ProgrammedTurn turn;
    auto number = parse_turn_header(c);
    if (!number) return number.error();
    turn.turn_number = number.value();
    for (;;) {
        CharacterProgram p;
        auto who = c.take_int();
        if (!who || *who < 1)
            return syntax(c, "expected a character number");
        p.character = *who;
        int col = c.column();
        while (c.peek() != '\0' && c.peek() != '|') {
            col = c.column();
            char letter = c.take();
            auto verb = verb_from_letter(letter);
            if (!verb)
                return ParseError{ParseErrorCode::Syntax, 1, col,
                                  std::string("unknown action letter '") +
                                      letter + "'"};
            p.verbs.push_back(*verb);
        }
        if (p.verbs.empty())
            return syntax(c, "expected one or two action letters");
        if (p.verbs.size() > 2)
            return ParseError{ParseErrorCode::Syntax, 1, col,
                              "at most two actions per character"};
        if (p.verbs.size() == 2 && p.verbs[0] == p.verbs[1])
            return ParseError{ParseErrorCode::Syntax, 1, col,
                              "a character's two actions must differ"};
        turn.programs.push_back(std::move(p));
        if (c.at_end()) return turn;
        if (!c.take_if('|'))
            return syntax(c, "expected '|' between programs");
    }
}

// Splits into lines, skipping blank ones, and applies `parse_one`,
// restamping error line numbers. `check_numbering` enforces 1, 2, 3, ...
template <typename T, typename F>
Result<std::vector<T>, ParseError> parse_lines(std::string_view text,
                                               F parse_one,
                                               bool check_numbering) {
    std::vector<T> out;
    int line_no = 0;
    int expected_turn = 1;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        ++line_no;
        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
        if (!blank) {
            auto one = parse_one(line);
            if (!one) {
                ParseError e = one.error();
                e.line = line_no;
                return e;
            }
            if (check_numbering &&
                one.value().turn_number != expected_turn) {
                return ParseError{
                    ParseErrorCode::NonMonotoneTurnNumbers, line_no, 1,
                    "expected turn " + std::to_string(expected_turn) +
                        ", found turn " +
                        std::to_string(one.value().turn_number)};
            }
            ++expected_turn;
            out.push_back(std::move(one.value()));
        }
        begin = end + 1;
    }
    return out;
}

}  // namespace

Result<ActionStep, ParseError> parse_step(std::string_view text) {
    Cursor c(text);
    auto step = parse_step_at(c);
    if (!step) return step.error();
    if (c.take_if('#')) step.value().win_marker = true;
    if (!c.at_end())
        return syntax(c, "trailing text after the step");
    return step;
}

Result<ScriptTurn, ParseError> parse_script_turn(std::string_view text) {
    return parse_script_turn_line(text);
}

Result<Script, ParseError> parse_script(std::string_view text) {
    auto turns = parse_lines<ScriptTurn>(text, parse_script_turn_line, true);
    if (!turns) return turns.error();
    return Script{std::move(turns.value())};
}

Result<ProgrammedTurn, ParseError> parse_program_turn(std::string_view text) {
    return parse_program_turn_line(text);
}

Result<std::vector<ProgrammedTurn>, ParseError> parse_program(
    std::string_view text) {
    return parse_lines<ProgrammedTurn>(text, parse_program_turn_line, true);
}

std::string format(const ActionStep& s) {
    std::ostringstream out;
    out << s.actor << verb_letter(s.verb);
    if (s.verb == Verb::Push) out << s.target;
    if (s.coord) out << to_string(*s.coord);
    if (s.verb == Verb::Control && s.line)
        out << direction_char(*s.dir) << to_string(*s.line);
    if (s.rider)
        out << direction_char(s.rider->dir) << to_string(s.rider->line);
    if (s.win_marker) out << '#';
    return out.str();
}

std::string format(const ScriptTurn& t) {
    std::ostringstream out;
    out << t.turn_number << ": ";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (i) out << " | ";
        out << format(t.steps[i]);
    }
    return out.str();
}

std::string format(const Script& s) {
    std::ostringstream out;
    for (const ScriptTurn& t : s.turns) out << format(t) << '\n';
    return out.str();
}

std::string format(const CharacterProgram& p) {
    std::ostringstream out;
    out << p.character;
    for (Verb v : p.verbs) out << verb_letter(v);
    return out.str();
}

std::string format(const ProgrammedTurn& t) {
    std::ostringstream out;
    out << t.turn_number << ": ";
    for (std::size_t i = 0; i < t.programs.size(); ++i) {
        if (i) out << " | ";
        out << format(t.programs[i]);
    }
    return out.str();
}

std::string format(const std::vector<ProgrammedTurn>& ts) {
    std::ostringstream out;
    for (const ProgrammedTurn& t : ts) out << format(t) << '\n';
    return out.str();
}

}  // namespace room25

