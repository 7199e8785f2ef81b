#ifndef ROOM25_PROB_HPP
#define ROOM25_PROB_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "room25/core.hpp"
#include "room25/openings.hpp"
#include "room25/result.hpp"

namespace room25 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

std::string format_rational(const Rational& r);               // "17/230"
std::string format_decimal(const Rational& r, int digits = 6);
double to_double(const Rational& r);

// ---------------------------------------------------------------------------
// Tile-pool category counts feeding the opening analyses
// ---------------------------------------------------------------------------

struct CategoryCounts {
    int valid_x = 0;   // rooms a veloce stack may pile onto (incl. dark)
    int dark = 0;      // dark rooms within valid_x
    int control = 0;   // control rooms
    int red = 0;       // red rooms
    int forbidden = 0; // red rooms lethal to the temeraire pushes (within red)
    int total = 0;     // face-down pool size (everything but Start and Exit)
    int exit_positions = 12;

    static CategoryCounts from_roster(const Roster& r);

    friend bool operator==(const CategoryCounts&,
                           const CategoryCounts&) = default;
};

struct ProbError {
    std::string message;  // always prefixed "ImpossibleCounts: "
};

// ---------------------------------------------------------------------------
// Closed forms
//
// All draws are uniform without replacement from the face-down pool; the
// Exit cell is uniform over the legal positions, independent of the pool.
// ---------------------------------------------------------------------------

// P(some scouted neighbor is a valid X) * 1/exit_positions.
Result<Rational, ProbError> p_v_lucky(const CategoryCounts& c);

// The complement factor alone: P(all four scouted neighbors invalid).
Result<Rational, ProbError> p_v_no_valid_x(const CategoryCounts& c);

// As p_v_lucky but dark rooms no longer accepted as X.
Result<Rational, ProbError> p_v_lucky_no_dark(const CategoryCounts& c);

// P(all four scouted neighbors red): every blind policy risks a death.
Result<Rational, ProbError> p_v_instant_loss_bound(const CategoryCounts& c);

// P(control at the pushed-into cell and the Exit where the slides need it).
Result<Rational, ProbError> p_t_lucky(const CategoryCounts& c);

// P(no temeraire push meets a forbidden room), accounting for the aimed
// cell holding the Exit itself with probability 1/exit_positions.
Result<Rational, ProbError> p_t_survival(const CategoryCounts& c);

// 1 - p_t_survival.
Result<Rational, ProbError> p_t_instant_loss_bound(const CategoryCounts& c);

// ---------------------------------------------------------------------------
// Independent oracle
//
// Enumerates ordered draw sequences with exact weights instead of evaluating
// a formula; used to cross-check every closed form above.
// ---------------------------------------------------------------------------

enum class ProbEvent : std::uint8_t {
    VLucky,
    VNoValidX,
    VLuckyNoDark,
    VInstantLossBound,
    TLucky,
    TSurvival,
    TInstantLossBound,
};

const char* prob_event_name(ProbEvent e);

Result<Rational, ProbError> enumerate_oracle(const CategoryCounts& c,
                                             ProbEvent e);

// Convenience dispatcher for the matching closed form.
Result<Rational, ProbError> closed_form(const CategoryCounts& c, ProbEvent e);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct McTally {
    std::uint64_t trials = 0;
    std::uint64_t optimal_win = 0;  // the opening's scripted win came through
    std::uint64_t instant_loss = 0; // somebody died during turn 1
    std::uint64_t other = 0;

    McTally& operator+=(const McTally& o);
};

struct McReport {
    McTally tally;
    std::uint64_t seed = 0;

    double win_rate() const;
    double loss_rate() const;
    // Binomial standard error for the given empirical rate.
    double sigma(double rate) const;
};

/**
 * Deals `trials` uniformly random boards (pool shuffle + exit cell) and plays
 * the opening's policy on each: scripted line when the luck predicate holds,
 * damage-control otherwise. Chunked so the tally is byte-identical for any
 * `jobs`; the roster must contain exactly 23 tiles.
 */
Result<McReport, ProbError> monte_carlo(Opening o, std::uint64_t trials,
                                        std::uint64_t seed, int jobs = 1,
                                        const Roster& roster = Roster::standard());

// Seed resolution for tools: explicit flag beats the R25_SEED environment
// variable beats the fixed default.
std::uint64_t default_seed();

}  // namespace room25

#endif  // ROOM25_PROB_HPP
