#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "room25/prob.hpp"

using namespace room25;

namespace {

CategoryCounts standard_counts() {
    return CategoryCounts::from_roster(Roster::standard());
}

Rational value(Result<Rational, ProbError> r) {
    { std::string why = r.ok() ? std::string() : r.error().message;
      REQUIRE_MESSAGE(r.ok(), why); }
    return r.value();
}

// Rosters that stress every category boundary while keeping 23 tiles.
std::vector<Roster> perturbed_rosters() {
    std::vector<Roster> out;
    auto swap_one = [](TileKind from, TileKind to) {
        Roster r = Roster::standard();
        r.set_count(from, r.count(from) - 1);
        r.set_count(to, r.count(to) + 1);
        return r;
    };
    out.push_back(swap_one(TileKind::YellowOther, TileKind::Empty));
    out.push_back(swap_one(TileKind::Empty, TileKind::YellowOther));
    out.push_back(swap_one(TileKind::Dark, TileKind::Empty));
    out.push_back(swap_one(TileKind::Empty, TileKind::Dark));
    out.push_back(swap_one(TileKind::Mortal, TileKind::Trap));
    out.push_back(swap_one(TileKind::RedOther, TileKind::Empty));
    out.push_back(swap_one(TileKind::YellowOther, TileKind::Mortal));
    out.push_back(swap_one(TileKind::Tunnel, TileKind::Control));
    out.push_back(swap_one(TileKind::Machine, TileKind::FreeKill));

    Roster no_dark = Roster::standard();  // both dark rooms downgraded
    no_dark.set_count(TileKind::Dark, 0);
    no_dark.set_count(TileKind::YellowOther, 6);
    out.push_back(no_dark);

    Roster no_control = Roster::standard();
    no_control.set_count(TileKind::Control, 0);
    no_control.set_count(TileKind::Empty, 5);
    out.push_back(no_control);

    Roster red_flood = Roster::standard();  // reds heavy, green scarce
    red_flood.set_count(TileKind::Empty, 1);
    red_flood.set_count(TileKind::RedOther, 5);
    out.push_back(red_flood);

    return out;
}

constexpr ProbEvent kAllEvents[] = {
    ProbEvent::VLucky,         ProbEvent::VNoValidX,
    ProbEvent::VLuckyNoDark,   ProbEvent::VInstantLossBound,
    ProbEvent::TLucky,         ProbEvent::TSurvival,
    ProbEvent::TInstantLossBound,
};

}  // namespace

TEST_CASE("rational formatting, decimals, doubles") {
    Rational r{BigInt(17), BigInt(230)};
    CHECK(format_rational(r) == "17/230");
    CHECK(format_rational(Rational{BigInt(4), BigInt(8)}) == "1/2");
    CHECK(format_rational(Rational{BigInt(0), BigInt(5)}) == "0");
    CHECK(format_decimal(r) == "0.073913");
    CHECK(format_decimal(r, 3) == "0.074");
    CHECK(format_decimal(Rational{BigInt(1), BigInt(2)}, 2) == "0.50");
    CHECK(format_decimal(Rational{BigInt(3), BigInt(1)}, 2) == "3.00");
    CHECK(to_double(r) == doctest::Approx(17.0 / 230.0).epsilon(1e-12));

    // The headline percentage for the no-dark variant rounds to 6.62%.
    Rational no_dark{BigInt(67), BigInt(1012)};
    CHECK(format_decimal(no_dark * Rational{BigInt(100), BigInt(1)}, 2) ==
          "6.62");
}

TEST_CASE("the standard pool sorts into the documented categories") {
    CategoryCounts c = standard_counts();
    CHECK(c.valid_x == 9);    // empty 4, machine 1, dark 2, tunnel 2
    CHECK(c.dark == 2);
    CHECK(c.control == 1);
    CHECK(c.red == 9);        // mortal 2, vortex 1, trap 2, acid 1, flood 1,
                              // red-other 2
    CHECK(c.forbidden == 4);  // the rooms that kill a pushed character
    CHECK(c.total == 23);
    CHECK(c.exit_positions == 12);
}

TEST_CASE("the seven closed forms give the published fractions") {
    CategoryCounts c = standard_counts();
    CHECK(value(p_v_lucky(c)) == Rational{BigInt(17), BigInt(230)});
    CHECK(value(p_v_no_valid_x(c)) == Rational{BigInt(13), BigInt(115)});
    CHECK(value(p_v_lucky_no_dark(c)) == Rational{BigInt(67), BigInt(1012)});
    CHECK(value(p_v_instant_loss_bound(c)) ==
          Rational{BigInt(18), BigInt(1265)});
    CHECK(value(p_t_lucky(c)) == Rational{BigInt(1), BigInt(276)});
    CHECK(value(p_t_survival(c)) == Rational{BigInt(95), BigInt(138)});
    CHECK(value(p_t_instant_loss_bound(c)) ==
          Rational{BigInt(43), BigInt(138)});

    // Complements tie the family together.
    CHECK(value(p_t_survival(c)) + value(p_t_instant_loss_bound(c)) ==
          Rational{BigInt(1), BigInt(1)});
    CHECK(value(p_v_lucky(c)) ==
          (Rational{BigInt(1), BigInt(1)} - value(p_v_no_valid_x(c))) /
              Rational{BigInt(12), BigInt(1)});
}

TEST_CASE("the enumeration oracle agrees with every closed form") {
    CategoryCounts c = standard_counts();
    for (ProbEvent e : kAllEvents) {
        Rational direct = value(closed_form(c, e));
        Rational enumerated = value(enumerate_oracle(c, e));
        CHECK_MESSAGE(direct == enumerated, prob_event_name(e));
    }
}

TEST_CASE("oracle agreement holds across a dozen perturbed pools") {
    for (const Roster& roster : perturbed_rosters()) {
        CategoryCounts c = CategoryCounts::from_roster(roster);
        for (ProbEvent e : kAllEvents) {
            auto direct = closed_form(c, e);
            auto enumerated = enumerate_oracle(c, e);
            REQUIRE(direct.ok() == enumerated.ok());
            if (direct.ok())
                CHECK_MESSAGE(direct.value() == enumerated.value(),
                              prob_event_name(e));
        }
    }
}

TEST_CASE("edge pools: zero dark, zero control, all-red scouts") {
    Roster no_dark = Roster::standard();
    no_dark.set_count(TileKind::Dark, 0);
    no_dark.set_count(TileKind::Empty, 6);
    CategoryCounts c1 = CategoryCounts::from_roster(no_dark);
    CHECK(c1.dark == 0);
    CHECK(value(p_v_lucky(c1)) == value(p_v_lucky_no_dark(c1)));

    Roster no_control = Roster::standard();
    no_control.set_count(TileKind::Control, 0);
    no_control.set_count(TileKind::Empty, 5);
    CategoryCounts c2 = CategoryCounts::from_roster(no_control);
    CHECK(value(p_t_lucky(c2)) == Rational{BigInt(0), BigInt(1)});

    // With every pool tile red, the scouts always stare at four red rooms.
    Roster all_red;
    all_red.set_count(TileKind::RedOther, 23);
    CategoryCounts c3 = CategoryCounts::from_roster(all_red);
    CHECK(value(p_v_instant_loss_bound(c3)) == Rational{BigInt(1), BigInt(1)});
    CHECK(value(p_v_lucky(c3)) == Rational{BigInt(0), BigInt(1)});
}

TEST_CASE("impossible category counts are refused loudly") {
    CategoryCounts tiny = standard_counts();
    tiny.total = 3;  // fewer tiles than scouted cells
    auto r1 = p_v_lucky(tiny);
    REQUIRE_FALSE(r1.ok());
    CHECK(r1.error().message.rfind("ImpossibleCounts: ", 0) == 0);

    CategoryCounts negative = standard_counts();
    negative.red = -1;
    CHECK_FALSE(p_t_survival(negative).ok());

    CategoryCounts overfull = standard_counts();
    overfull.valid_x = 30;  // more valid X than tiles in the pool
    CHECK_FALSE(p_v_lucky(overfull).ok());

    CategoryCounts dark_heavy = standard_counts();
    dark_heavy.dark = dark_heavy.valid_x + 1;  // dark is a subset of valid X
    CHECK_FALSE(p_v_lucky_no_dark(dark_heavy).ok());

    CategoryCounts forbidden_heavy = standard_counts();
    forbidden_heavy.forbidden = forbidden_heavy.red + 1;  // subset of red
    CHECK_FALSE(p_t_survival(forbidden_heavy).ok());

    CategoryCounts no_exit = standard_counts();
    no_exit.exit_positions = 0;
    CHECK_FALSE(p_v_lucky(no_exit).ok());
}

TEST_CASE("oracle events and names stay in sync") {
    CHECK(std::string(prob_event_name(ProbEvent::VLucky)) == "v-lucky");
    for (ProbEvent e : kAllEvents)
        CHECK_FALSE(std::string(prob_event_name(e)).empty());
}

TEST_CASE("simulation tallies are byte-identical across job counts") {
    const std::uint64_t trials = 20000;
    const std::uint64_t seed = 20260814;
    auto solo_run = monte_carlo(Opening::Veloce, trials, seed, 1);
    REQUIRE(solo_run.ok());
    for (int jobs : {2, 3, 7}) {
        auto chunked = monte_carlo(Opening::Veloce, trials, seed, jobs);
        REQUIRE(chunked.ok());
        CHECK(chunked.value().tally.trials == solo_run.value().tally.trials);
        CHECK(chunked.value().tally.optimal_win ==
              solo_run.value().tally.optimal_win);
        CHECK(chunked.value().tally.instant_loss ==
              solo_run.value().tally.instant_loss);
        CHECK(chunked.value().tally.other == solo_run.value().tally.other);
    }

    // A different seed deals different boards.
    auto reseeded = monte_carlo(Opening::Veloce, trials, seed + 1, 1);
    REQUIRE(reseeded.ok());
    CHECK(reseeded.value().tally.optimal_win !=
          solo_run.value().tally.optimal_win);
}

TEST_CASE("simulated rates sit near their exact targets") {
    const std::uint64_t trials = 50000;
    auto run = monte_carlo(Opening::Veloce, trials, 424242, 4);
    REQUIRE(run.ok());
    const McReport& rep = run.value();
    CHECK(rep.tally.trials == trials);
    CHECK(rep.tally.optimal_win + rep.tally.instant_loss + rep.tally.other ==
          trials);

    double target = to_double(value(p_v_lucky(standard_counts())));
    double sigma = rep.sigma(target);
    CHECK(std::abs(rep.win_rate() - target) <= 4 * sigma);

    double loss_cap = to_double(value(p_v_instant_loss_bound(standard_counts())));
    CHECK(rep.loss_rate() <= loss_cap + 4 * rep.sigma(loss_cap));

    auto push_run = monte_carlo(Opening::Temeraire, trials, 424242, 4);
    REQUIRE(push_run.ok());
    double t_target = to_double(value(p_t_lucky(standard_counts())));
    CHECK(std::abs(push_run.value().win_rate() - t_target) <=
          4 * push_run.value().sigma(t_target));
    // The instant-loss figure prices the two blind pushes alone; the rest
    // of the mandatory turn can only add deaths, so the simulated full-turn
    // loss rate dominates it.
    double t_loss = to_double(value(p_t_instant_loss_bound(standard_counts())));
    CHECK(push_run.value().loss_rate() >=
          t_loss - 4 * push_run.value().sigma(t_loss));
}

TEST_CASE("simulation refuses a malformed pool") {
    Roster bad = Roster::standard();
    bad.set_count(TileKind::Empty, 3);  // 22 tiles cannot fill the board
    CHECK_FALSE(monte_carlo(Opening::Veloce, 10, 1, 1, bad).ok());
}

TEST_CASE("seed resolution: environment beats the fixed default") {
    unsetenv("R25_SEED");
    CHECK(default_seed() == 424242);
    setenv("R25_SEED", "777", 1);
    CHECK(default_seed() == 777);
    unsetenv("R25_SEED");
    CHECK(default_seed() == 424242);
}
