#ifndef ROOM25_ADVERSARY_HPP
#define ROOM25_ADVERSARY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "room25/core.hpp"
#include "room25/engine.hpp"
#include "room25/notation.hpp"
#include "room25/result.hpp"

namespace room25 {

// ---------------------------------------------------------------------------
// Bounded exhaustive verification
//
// The searches below branch over every player choice and, when a face-down
// tile is first identified, over every identity the remaining pool and the
// Exit placement rules allow. Win searches resolve identities in the
// players' favor (a win under some deal refutes impossibility); the defense
// search lets a scripted adversary resolve them. Verdicts are bounded by a
// node budget; exceeding it is an error, never a silent answer.
// ---------------------------------------------------------------------------

enum class Verdict : std::uint8_t {
    NoWin,       // exhausted: no deal and no play reaches the goal
    WinFound,    // certificate attached
    ForcedLoss,  // defense search: every line dies or stays boxed in
    NotForced,   // defense search found an escaping or winning line
};

const char* verdict_name(Verdict v);

struct SearchLimits {
    std::uint64_t node_budget = 200'000'000;
    bool use_memo = true;
};

struct SearchError {
    std::string message;  // "HorizonTooLarge: ..." when the budget ran out
    std::uint64_t nodes = 0;
};

// A concrete deal plus play reaching the goal, replayable through the
// ordinary script pipeline.
struct WinCertificate {
    BoardState board;  // fully identified deal
    int n_characters = 0;
    RuleVariant variant;
    std::vector<ProgrammedTurn> programs;
    Script script;
    int deaths = 0;
    std::vector<int> pi;  // characters that stood on a non-blue room
};

struct SearchReport {
    Verdict verdict = Verdict::NoWin;
    int n_characters = 0;
    int horizon = 1;
    RuleVariant variant;
    std::uint64_t nodes = 0;
    std::uint64_t terminal_lines = 0;
    // Lines by |Pi| at their end, capped at six.
    std::array<std::uint64_t, kMaxCharacters + 1> pi_histogram{};
    std::optional<WinCertificate> certificate;
};

/**
 * Can n characters win (no deaths allowed) within the first turn under any
 * deal of the roster and any legal play? Exhaustive over the one-turn
 * horizon; NoWin is a machine-checked impossibility, WinFound carries a
 * validated certificate. A catalogued opening is played first so the
 * witness-finding direction stays fast at scales the blind search cannot
 * exhaust.
 */
Result<SearchReport, SearchError> search_one_turn_win(
    int n, RuleVariant variant = {}, const Roster& roster = Roster::standard(),
    const SearchLimits& limits = {});

// Same question for a partial victory: the slide happens with at least one
// character dead. Every death count from one to n-1 is searched.
Result<SearchReport, SearchError> search_one_turn_partial_win(
    int n, RuleVariant variant = {}, const Roster& roster = Roster::standard(),
    const SearchLimits& limits = {});

/**
 * Defense check for the scripted adversary that seeds Mortal/Vortex/Trap
 * around Start and answers any probe of the flagged diagonal cells with a
 * second Mortal. ForcedLoss means that within `horizon` turns every play
 * either loses a character or never leaves Start and its four neighbors.
 */
Result<SearchReport, SearchError> antagonistic_defense(
    int horizon, int n, const SearchLimits& limits = {});

// The randomized variant commits the second Mortal to one of the five
// flagged cells up front. Exact enumeration over the five placements.
struct RandomizedDefenseReport {
    int placements = 5;
    // Over every player strategy in the horizon, the fewest placements that
    // end in death or confinement. >= 1 certifies loss probability >= 1/5.
    int min_losing_placements = 0;
    std::uint64_t nodes = 0;
};

Result<RandomizedDefenseReport, SearchError> randomized_antagonistic_defense(
    int horizon, int n, const SearchLimits& limits = {});

// ---------------------------------------------------------------------------
// Structural facts about winning lines
// ---------------------------------------------------------------------------

struct CertificateTrace {
    std::vector<int> pi;
    // Last entry onto the Exit room by a character who survives to the end:
    // character and the verb of the step that brought it aboard.
    std::optional<std::pair<int, Verb>> last_exit_entry;
    std::array<int, kMaxCharacters + 1> moves_per_character{};
    bool any_push_from_start = false;
};

Result<CertificateTrace, std::string> trace_certificate(
    const WinCertificate& cert);

// The final boarding of the Exit is always somebody walking in.
bool final_boarding_is_move(const CertificateTrace& t);

// Some Pi member moved twice, or a push was launched from Start.
bool double_move_or_start_push(const CertificateTrace& t);

}  // namespace room25

#endif  // ROOM25_ADVERSARY_HPP
