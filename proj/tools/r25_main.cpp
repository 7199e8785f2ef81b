// Command-line front end for the Room 25 rules engine and analysis toolkit.
//
// Subcommands:
//   parse          echo canonical notation for steps, turns, scripts, programs
//   replay         run a script on a board fixture and print the event log
//   prob exact     exact rational probabilities for the opening analyses
//   prob mc        seeded Monte Carlo over random deals with consistency checks
//   verify         bounded exhaustive verification: one-turn | partial |
//                  antagonistic | randomized
//   openings emit  print the reference opening programs
//
// Exit codes: 0 success / claim confirmed, 1 claim refuted or run rejected,
// 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "room25/adversary.hpp"
#include "room25/core.hpp"
#include "room25/engine.hpp"
#include "room25/notation.hpp"
#include "room25/openings.hpp"
#include "room25/prob.hpp"

namespace {

using namespace room25;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Script and program files may carry full-line comments; the notation
// itself reserves '#' for the win marker, so only whole comment lines are
// blanked (keeping line numbers intact for diagnostics).
std::string strip_comment_lines(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (end == std::string::npos ? text.size() : end) -
                                  pos);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] != '#')
            out.append(line);
        if (end == std::string::npos) break;
        out.push_back('\n');
        pos = end + 1;
    }
    return out;
}

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

bool apply_variant_names(const std::vector<std::string>& names, RuleVariant& v,
                         std::string& bad) {
    for (const std::string& s : names) {
        if (s == "push-from-start") {
            v.push_from_start_allowed = true;
        } else if (s == "push-from-control") {
            v.push_from_control_allowed = true;
        } else {
            bad = s;
            return false;
        }
    }
    return true;
}

std::string variant_label(const RuleVariant& v) {
    std::string out;
    if (v.push_from_start_allowed) out += " push-from-start";
    if (v.push_from_control_allowed) out += " push-from-control";
    return out.empty() ? "default" : out.substr(1);
}

// Loads a roster file when a path was given; reports to stderr on failure.
bool load_roster(const std::string& path, Roster& out) {
    if (path.empty()) return true;
    auto text = read_file(path);
    if (!text) {
        std::cerr << "cannot read roster file: " << path << "\n";
        return false;
    }
    auto parsed = Roster::parse(*text);
    if (!parsed.ok()) {
        std::cerr << "roster error: " << parsed.error().message << "\n";
        return false;
    }
    out = parsed.value();
    return true;
}

// ---------------------------------------------------------------------------
// parse
// ---------------------------------------------------------------------------

struct ParseArgs {
    std::string step;
    std::string turn;
    std::string script;
    std::string script_file;
    std::string program;
    std::string program_file;
};

int cmd_parse(const ParseArgs& a) {
    bool any = false;
    auto fail = [](const ParseError& e) {
        std::cerr << "parse error: " << describe(e) << "\n";
        return kExitUsage;
    };
    if (!a.step.empty()) {
        any = true;
        auto r = parse_step(a.step);
        if (!r.ok()) return fail(r.error());
        std::cout << format(r.value()) << "\n";
    }
    if (!a.turn.empty()) {
        any = true;
        auto r = parse_script_turn(a.turn);
        if (!r.ok()) return fail(r.error());
        std::cout << format(r.value()) << "\n";
    }
    std::string script_text = a.script;
    if (!a.script_file.empty()) {
        auto text = read_file(a.script_file);
        if (!text) {
            std::cerr << "cannot read script file: " << a.script_file << "\n";
            return kExitUsage;
        }
        script_text = strip_comment_lines(*text);
    }
    if (!script_text.empty()) {
        any = true;
        auto r = parse_script(script_text);
        if (!r.ok()) return fail(r.error());
        std::cout << format(r.value());
    }
    std::string program_text = a.program;
    if (!a.program_file.empty()) {
        auto text = read_file(a.program_file);
        if (!text) {
            std::cerr << "cannot read program file: " << a.program_file << "\n";
            return kExitUsage;
        }
        program_text = strip_comment_lines(*text);
    }
    if (!program_text.empty()) {
        any = true;
        auto r = parse_program(program_text);
        if (!r.ok()) return fail(r.error());
        std::cout << format(r.value());
    }
    if (!any) {
        std::cerr << "parse: nothing to parse (use --step/--turn/--script/"
                     "--script-file/--program/--program-file)\n";
        return kExitUsage;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

struct ReplayArgs {
    std::string board;
    std::string script;
    std::string programs;
    int characters = 1;
    std::vector<std::string> variants;
    bool allow_deaths = false;
    bool quiet = false;
};

int cmd_replay(const ReplayArgs& a) {
    auto board_text = read_file(a.board);
    if (!board_text) {
        std::cerr << "cannot read board file: " << a.board << "\n";
        return kExitUsage;
    }
    auto board = BoardState::parse(*board_text);
    if (!board.ok()) {
        std::cerr << "board error: line " << board.error().line << ": "
                  << board.error().message << "\n";
        return kExitUsage;
    }
    auto script_text = read_file(a.script);
    if (!script_text) {
        std::cerr << "cannot read script file: " << a.script << "\n";
        return kExitUsage;
    }
    auto script = parse_script(strip_comment_lines(*script_text));
    if (!script.ok()) {
        std::cerr << "parse error: " << describe(script.error()) << "\n";
        return kExitUsage;
    }
    std::vector<ProgrammedTurn> programs;
    const std::vector<ProgrammedTurn>* programs_ptr = nullptr;
    if (!a.programs.empty()) {
        auto text = read_file(a.programs);
        if (!text) {
            std::cerr << "cannot read program file: " << a.programs << "\n";
            return kExitUsage;
        }
        auto parsed = parse_program(strip_comment_lines(*text));
        if (!parsed.ok()) {
            std::cerr << "parse error: " << describe(parsed.error()) << "\n";
            return kExitUsage;
        }
        programs = parsed.value();
        programs_ptr = &programs;
    }
    RuleVariant variant;
    std::string bad;
    if (!apply_variant_names(a.variants, variant, bad)) {
        std::cerr << "unknown variant: " << bad << "\n";
        return kExitUsage;
    }
    VictoryRegime regime = a.allow_deaths ? VictoryRegime::AllowDeaths
                                          : VictoryRegime::FullOnly;
    auto run = run_script(board.value(), a.characters, variant, script.value(),
                          programs_ptr, regime);
    if (!run.ok()) {
        const RunError& e = run.error();
        std::cout << "run rejected: turn " << e.turn << " step "
                  << e.step_index << ": " << e.message << "\n";
        return kExitRefuted;
    }
    std::string log = render_log(run.value());
    if (a.quiet) {
        auto pos = log.rfind("outcome ");
        std::cout << (pos == std::string::npos ? log : log.substr(pos));
    } else {
        std::cout << log;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// prob exact
// ---------------------------------------------------------------------------

struct ProbExactArgs {
    std::vector<std::string> events;
    std::string roster;
    bool oracle = false;
};

constexpr ProbEvent kAllEvents[] = {
    ProbEvent::VLucky,        ProbEvent::VNoValidX,
    ProbEvent::VLuckyNoDark,  ProbEvent::VInstantLossBound,
    ProbEvent::TLucky,        ProbEvent::TSurvival,
    ProbEvent::TInstantLossBound,
};

std::optional<ProbEvent> event_from_name(const std::string& name) {
    for (ProbEvent e : kAllEvents)
        if (name == prob_event_name(e)) return e;
    return std::nullopt;
}

int cmd_prob_exact(const ProbExactArgs& a) {
    Roster roster = Roster::standard();
    if (!load_roster(a.roster, roster)) return kExitUsage;
    CategoryCounts counts = CategoryCounts::from_roster(roster);

    std::vector<ProbEvent> events;
    if (a.events.empty()) {
        events.assign(std::begin(kAllEvents), std::end(kAllEvents));
    } else {
        for (const std::string& name : a.events) {
            auto e = event_from_name(name);
            if (!e) {
                std::cerr << "unknown event: " << name << "\n";
                return kExitUsage;
            }
            events.push_back(*e);
        }
    }
    for (ProbEvent e : events) {
        auto r = closed_form(counts, e);
        if (!r.ok()) {
            std::cerr << r.error().message << "\n";
            return kExitUsage;
        }
        std::cout << prob_event_name(e) << ' ' << format_rational(r.value())
                  << " ≈ " << format_decimal(r.value(), 6) << "\n";
        if (a.oracle) {
            auto o = enumerate_oracle(counts, e);
            if (!o.ok()) {
                std::cerr << o.error().message << "\n";
                return kExitUsage;
            }
            if (o.value() != r.value()) {
                std::cout << "oracle DISAGREES: " << format_rational(o.value())
                          << "\n";
                return kExitRefuted;
            }
            std::cout << "oracle agrees\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// prob mc
// ---------------------------------------------------------------------------

struct ProbMcArgs {
    std::string opening = "veloce";
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string roster;
};

int cmd_prob_mc(const ProbMcArgs& a) {
    Opening opening;
    if (a.opening == "veloce") {
        opening = Opening::Veloce;
    } else if (a.opening == "temeraire") {
        opening = Opening::Temeraire;
    } else {
        std::cerr << "unknown opening: " << a.opening << "\n";
        return kExitUsage;
    }
    Roster roster = Roster::standard();
    if (!load_roster(a.roster, roster)) return kExitUsage;
    CategoryCounts counts = CategoryCounts::from_roster(roster);

    auto win_theory = opening == Opening::Veloce ? p_v_lucky(counts)
                                                 : p_t_lucky(counts);
    auto loss_bound = opening == Opening::Veloce
                          ? p_v_instant_loss_bound(counts)
                          : p_t_instant_loss_bound(counts);
    if (!win_theory.ok() || !loss_bound.ok()) {
        std::cerr << (win_theory.ok() ? loss_bound.error().message
                                      : win_theory.error().message)
                  << "\n";
        return kExitUsage;
    }

    auto run = monte_carlo(opening, a.trials, a.seed, a.jobs, roster);
    if (!run.ok()) {
        std::cerr << run.error().message << "\n";
        return kExitUsage;
    }
    const McReport& m = run.value();
    double win = m.win_rate();
    double loss = m.loss_rate();
    double pw = to_double(win_theory.value());
    double pl = to_double(loss_bound.value());
    double z = (win - pw) / m.sigma(pw);
    bool win_ok = std::abs(z) <= 4.0;
    // The veloce analysis bounds instant losses from above (any blind policy
    // risks at most the all-red draw); the one-turn opening bounds them from
    // below (the blind pushes die at least that often).
    bool loss_ok = opening == Opening::Veloce
                       ? loss <= pl + 4.0 * m.sigma(pl)
                       : loss >= pl - 4.0 * m.sigma(pl);

    std::cout << "opening " << a.opening << " trials " << m.tally.trials
              << " seed " << m.seed << " jobs " << a.jobs << "\n";
    std::cout << "optimal-win " << m.tally.optimal_win << " rate "
              << fixed(win) << " theory " << format_rational(win_theory.value())
              << " ≈ " << format_decimal(win_theory.value(), 6) << " z "
              << fixed(z, 2) << "\n";
    std::cout << "instant-loss " << m.tally.instant_loss << " rate "
              << fixed(loss) << " bound "
              << (opening == Opening::Veloce ? "<= " : ">= ")
              << format_rational(loss_bound.value()) << " ≈ "
              << format_decimal(loss_bound.value(), 6) << "\n";
    std::cout << "other " << m.tally.other << "\n";
    std::cout << "verdict " << (win_ok && loss_ok ? "consistent" : "INCONSISTENT")
              << "\n";
    return win_ok && loss_ok ? kExitOk : kExitRefuted;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void print_search_report(const std::string& kind, const SearchReport& r) {
    std::cout << kind << " n=" << r.n_characters << " horizon=" << r.horizon
              << " variant " << variant_label(r.variant) << "\n";
    std::cout << "nodes " << r.nodes << " terminal-lines " << r.terminal_lines
              << "\n";
    std::cout << "pi-histogram";
    for (std::uint64_t h : r.pi_histogram) std::cout << ' ' << h;
    std::cout << "\n";
    std::cout << "verdict " << verdict_name(r.verdict) << "\n";
    if (r.certificate) {
        const WinCertificate& c = *r.certificate;
        std::cout << "certificate deaths " << c.deaths << " pi";
        for (int id : c.pi) std::cout << ' ' << id;
        std::cout << "\n";
        std::cout << "certificate program\n" << format(c.programs);
        std::cout << "certificate script\n" << format(c.script);
        std::cout << "certificate board\n" << c.board.to_text();
    }
}

std::optional<Verdict> verdict_from_name(const std::string& s) {
    if (s == "no-win") return Verdict::NoWin;
    if (s == "win-found") return Verdict::WinFound;
    if (s == "forced-loss") return Verdict::ForcedLoss;
    if (s == "not-forced") return Verdict::NotForced;
    return std::nullopt;
}

struct VerifyArgs {
    int n = 1;
    int horizon = 2;
    std::uint64_t budget = SearchLimits{}.node_budget;
    bool no_memo = false;
    std::vector<std::string> variants;
    std::string roster;
    std::string expect;  // empty = subcommand default
};

int finish_verdict(const SearchReport& r, Verdict expected) {
    std::cout << "expected " << verdict_name(expected) << "\n";
    bool ok = r.verdict == expected;
    std::cout << (ok ? "confirmed" : "REFUTED") << "\n";
    return ok ? kExitOk : kExitRefuted;
}

int cmd_verify_win(const VerifyArgs& a, bool partial) {
    RuleVariant variant;
    std::string bad;
    if (!apply_variant_names(a.variants, variant, bad)) {
        std::cerr << "unknown variant: " << bad << "\n";
        return kExitUsage;
    }
    Roster roster = Roster::standard();
    if (!load_roster(a.roster, roster)) return kExitUsage;
    SearchLimits limits{a.budget, !a.no_memo};
    auto rep = partial
                   ? search_one_turn_partial_win(a.n, variant, roster, limits)
                   : search_one_turn_win(a.n, variant, roster, limits);
    if (!rep.ok()) {
        std::cerr << "search aborted: " << rep.error().message << " after "
                  << rep.error().nodes << " nodes\n";
        return kExitUsage;
    }
    print_search_report(partial ? "partial" : "one-turn", rep.value());
    Verdict expected = Verdict::NoWin;
    if (!a.expect.empty()) {
        auto e = verdict_from_name(a.expect);
        if (!e) {
            std::cerr << "unknown verdict: " << a.expect << "\n";
            return kExitUsage;
        }
        expected = *e;
    }
    return finish_verdict(rep.value(), expected);
}

int cmd_verify_antagonistic(const VerifyArgs& a) {
    SearchLimits limits{a.budget, !a.no_memo};
    auto rep = antagonistic_defense(a.horizon, a.n, limits);
    if (!rep.ok()) {
        std::cerr << "search aborted: " << rep.error().message << " after "
                  << rep.error().nodes << " nodes\n";
        return kExitUsage;
    }
    print_search_report("antagonistic", rep.value());
    Verdict expected = Verdict::ForcedLoss;
    if (!a.expect.empty()) {
        auto e = verdict_from_name(a.expect);
        if (!e) {
            std::cerr << "unknown verdict: " << a.expect << "\n";
            return kExitUsage;
        }
        expected = *e;
    }
    return finish_verdict(rep.value(), expected);
}

int cmd_verify_randomized(const VerifyArgs& a) {
    SearchLimits limits{a.budget, !a.no_memo};
    auto rep = randomized_antagonistic_defense(a.horizon, a.n, limits);
    if (!rep.ok()) {
        std::cerr << "search aborted: " << rep.error().message << " after "
                  << rep.error().nodes << " nodes\n";
        return kExitUsage;
    }
    const RandomizedDefenseReport& r = rep.value();
    std::cout << "randomized n=" << a.n << " horizon=" << a.horizon
              << " placements " << r.placements << "\n";
    std::cout << "nodes " << r.nodes << "\n";
    std::cout << "min-losing-placements " << r.min_losing_placements << "\n";
    bool ok = r.min_losing_placements >= 1;
    std::cout << "claim loss-probability >= 1/" << r.placements << " "
              << (ok ? "confirmed" : "REFUTED") << "\n";
    return ok ? kExitOk : kExitRefuted;
}

// ---------------------------------------------------------------------------
// openings emit
// ---------------------------------------------------------------------------

int cmd_openings_emit(const std::string& opening, int n) {
    if (opening == "veloce") {
        auto first = veloce_program(n);
        if (!first.ok()) {
            std::cerr << first.error().message << "\n";
            return kExitUsage;
        }
        auto closing = veloce_closing_program(n);
        if (!closing.ok()) {
            std::cerr << closing.error().message << "\n";
            return kExitUsage;
        }
        std::cout << format(first.value()) << "\n"
                  << format(closing.value()) << "\n";
        return kExitOk;
    }
    if (opening == "temeraire") {
        auto prog = temeraire_program(n);
        if (!prog.ok()) {
            std::cerr << prog.error().message << "\n";
            return kExitUsage;
        }
        std::cout << format(prog.value()) << "\n";
        return kExitOk;
    }
    std::cerr << "unknown opening: " << opening << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Room 25 rules engine and analysis toolkit"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    CLI::App* parse_cmd =
        app.add_subcommand("parse", "Echo canonical notation");
    parse_cmd->add_option("--step", parse_args.step, "One action step");
    parse_cmd->add_option("--turn", parse_args.turn, "One scripted turn");
    parse_cmd->add_option("--script", parse_args.script, "Inline script");
    parse_cmd->add_option("--script-file", parse_args.script_file,
                          "Script file");
    parse_cmd->add_option("--program", parse_args.program, "Inline program");
    parse_cmd->add_option("--program-file", parse_args.program_file,
                          "Program file");

    ReplayArgs replay_args;
    CLI::App* replay_cmd =
        app.add_subcommand("replay", "Run a script and print the event log");
    replay_cmd->add_option("--board", replay_args.board, "Board file")
        ->required();
    replay_cmd->add_option("--script", replay_args.script, "Script file")
        ->required();
    replay_cmd->add_option("--programs", replay_args.programs,
                           "Programmed-phase file checked before execution");
    replay_cmd
        ->add_option("--characters", replay_args.characters,
                     "Number of characters")
        ->required()
        ->check(CLI::Range(1, int(kMaxCharacters)));
    replay_cmd->add_option("--variant", replay_args.variants,
                           "Rule variants: push-from-start, push-from-control");
    replay_cmd->add_flag("--allow-deaths", replay_args.allow_deaths,
                         "Victory may leave dead characters behind");
    replay_cmd->add_flag("--quiet", replay_args.quiet,
                         "Print only the outcome line");

    CLI::App* prob_cmd = app.add_subcommand("prob", "Opening probabilities");
    prob_cmd->require_subcommand(1);
    ProbExactArgs exact_args;
    CLI::App* exact_cmd =
        prob_cmd->add_subcommand("exact", "Exact rational values");
    exact_cmd->add_option(
        "--event", exact_args.events,
        "Events (default all): v-lucky, v-no-valid-x, v-lucky-no-dark, "
        "v-loss-bound, t-lucky, t-survival, t-loss-bound");
    exact_cmd->add_option("--roster", exact_args.roster, "Roster file");
    exact_cmd->add_flag("--oracle", exact_args.oracle,
                        "Cross-check against the enumeration oracle");

    ProbMcArgs mc_args;
    mc_args.seed = default_seed();
    CLI::App* mc_cmd = prob_cmd->add_subcommand("mc", "Monte Carlo trials");
    mc_cmd->add_option("--opening", mc_args.opening, "veloce or temeraire")
        ->required();
    mc_cmd->add_option("--trials", mc_args.trials, "Trial count");
    mc_cmd->add_option("--seed", mc_args.seed,
                       "RNG seed (default: R25_SEED env or 424242)");
    mc_cmd->add_option("--jobs", mc_args.jobs, "Worker threads")
        ->check(CLI::Range(1, 64));
    mc_cmd->add_option("--roster", mc_args.roster, "Roster file");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Bounded exhaustive verification");
    verify_cmd->require_subcommand(1);
    VerifyArgs one_args, partial_args, antag_args, rand_args;
    CLI::App* one_cmd = verify_cmd->add_subcommand(
        "one-turn", "No full victory within the first turn");
    one_cmd->add_option("--n", one_args.n, "Characters")
        ->required()
        ->check(CLI::Range(1, int(kMaxCharacters)));
    one_cmd->add_option("--budget", one_args.budget, "Node budget");
    one_cmd->add_flag("--no-memo", one_args.no_memo, "Disable memoization");
    one_cmd->add_option("--variant", one_args.variants, "Rule variants");
    one_cmd->add_option("--roster", one_args.roster, "Roster file");
    one_cmd->add_option("--expect", one_args.expect,
                        "Expected verdict (default no-win)");

    CLI::App* partial_cmd = verify_cmd->add_subcommand(
        "partial", "No one-dead victory within the first turn");
    partial_cmd->add_option("--n", partial_args.n, "Characters")
        ->required()
        ->check(CLI::Range(1, int(kMaxCharacters)));
    partial_cmd->add_option("--budget", partial_args.budget, "Node budget");
    partial_cmd->add_flag("--no-memo", partial_args.no_memo,
                          "Disable memoization");
    partial_cmd->add_option("--variant", partial_args.variants,
                            "Rule variants");
    partial_cmd->add_option("--roster", partial_args.roster, "Roster file");
    partial_cmd->add_option("--expect", partial_args.expect,
                            "Expected verdict (default no-win)");

    CLI::App* antag_cmd = verify_cmd->add_subcommand(
        "antagonistic", "Scripted adversary forces death or confinement");
    antag_cmd->add_option("--n", antag_args.n, "Characters")
        ->required()
        ->check(CLI::Range(1, int(kMaxCharacters)));
    antag_cmd->add_option("--horizon", antag_args.horizon, "Turn horizon")
        ->required()
        ->check(CLI::Range(1, 8));
    antag_cmd->add_option("--budget", antag_args.budget, "Node budget");
    antag_cmd->add_flag("--no-memo", antag_args.no_memo,
                        "Disable memoization");
    antag_cmd->add_option("--expect", antag_args.expect,
                          "Expected verdict (default forced-loss)");

    CLI::App* rand_cmd = verify_cmd->add_subcommand(
        "randomized", "Random second-kill placement loses >= 1/5");
    rand_cmd->add_option("--n", rand_args.n, "Characters")
        ->required()
        ->check(CLI::Range(1, int(kMaxCharacters)));
    rand_cmd->add_option("--horizon", rand_args.horizon, "Turn horizon")
        ->required()
        ->check(CLI::Range(1, 8));
    rand_cmd->add_option("--budget", rand_args.budget, "Node budget");

    CLI::App* openings_cmd =
        app.add_subcommand("openings", "Reference opening programs");
    openings_cmd->require_subcommand(1);
    std::string emit_opening;
    int emit_n = 1;
    CLI::App* emit_cmd =
        openings_cmd->add_subcommand("emit", "Print programmed turns");
    emit_cmd->add_option("--opening", emit_opening, "veloce or temeraire")
        ->required();
    emit_cmd->add_option("--n", emit_n, "Characters")
        ->check(CLI::Range(1, int(kMaxCharacters)));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (parse_cmd->parsed()) return cmd_parse(parse_args);
    if (replay_cmd->parsed()) return cmd_replay(replay_args);
    if (prob_cmd->parsed()) {
        if (exact_cmd->parsed()) return cmd_prob_exact(exact_args);
        if (mc_cmd->parsed()) return cmd_prob_mc(mc_args);
    }
    if (verify_cmd->parsed()) {
        if (one_cmd->parsed()) return cmd_verify_win(one_args, false);
        if (partial_cmd->parsed()) return cmd_verify_win(partial_args, true);
        if (antag_cmd->parsed()) return cmd_verify_antagonistic(antag_args);
        if (rand_cmd->parsed()) return cmd_verify_randomized(rand_args);
    }
    if (openings_cmd->parsed() && emit_cmd->parsed()) {
        if (emit_opening == "temeraire" &&
            emit_cmd->count("--n") == 0)
            emit_n = 6;
        return cmd_openings_emit(emit_opening, emit_n);
    }
    std::cerr << "no subcommand\n";
    return kExitUsage;
}
