#pragma once

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "armvalue/csv.hpp"
#include "armvalue/game_state.hpp"
#include "armvalue/opportunities.hpp"

namespace armvalue {

inline constexpr std::string_view kRunMatrixHeader = "base_state,outs,expected_runs";
inline constexpr std::string_view kCatcherTransitionsHeader =
    "situation,outcome,result_base_state,outs_delta";
inline constexpr std::string_view kOutfieldTransitionsHeader =
    "base_state,hit,outcome,result_base_state,outs_delta";

// Expected runs scored in the remainder of a half-inning from each of the 24
// live states.  Three-out lookups return exactly zero.
class ExpectedRunsMatrix {
public:
    static ExpectedRunsMatrix load(std::istream& in) {
        csv::Reader reader(in, kRunMatrixHeader);
        std::array<double, 24> values{};
        std::array<bool, 24> seen{};
        std::vector<std::string_view> f;
        while (reader.next(f)) {
            std::size_t line = reader.line_number();
            reader.expect_fields(f, 3);
            auto bases = BaseConfig::parse(f[0]);
            if (!bases) csv::fail(line, "base_state", "unknown base state '" + std::string(f[0]) + "'");
            long long outs = csv::parse_int(f[1], line, "outs");
            if (outs < 0 || outs > 2) csv::fail(line, "outs", "outs out of range");
            double runs = csv::parse_double(f[2], line, "expected_runs");
            if (runs < 0.0) csv::fail(line, "expected_runs", "negative expected runs");
            GameState state{*bases, int(outs)};
            if (seen[state.index()])
                csv::fail(line, "base_state", "duplicate state " + bases->code() + "," + std::to_string(outs));
            seen[state.index()] = true;
            values[state.index()] = runs;
        }
        for (GameState s : all_game_states())
            if (!seen[s.index()])
                throw ParseError("run matrix is missing state " + s.bases.code() + "," +
                                 std::to_string(s.outs));
        return ExpectedRunsMatrix(values);
    }

    static ExpectedRunsMatrix from_values(const std::array<double, 24>& values) {
        for (double v : values)
            if (v < 0.0) throw std::invalid_argument("negative expected runs");
        return ExpectedRunsMatrix(values);
    }

    static ExpectedRunsMatrix constant(double value) {
        std::array<double, 24> values{};
        values.fill(value);
        return from_values(values);
    }

    double at(GameState state) const {
        if (state.terminal()) return 0.0;
        return values_[state.index()];
    }

    // Flags states where expected runs increase with outs for fixed bases.
    // Advisory only; such a matrix still loads.
    std::vector<std::string> monotonicity_warnings() const {
        std::vector<std::string> warnings;
        for (BaseConfig bases : BaseConfig::all())
            for (int outs = 1; outs < 3; ++outs) {
                double prev = values_[GameState{bases, outs - 1}.index()];
                double cur = values_[GameState{bases, outs}.index()];
                if (cur > prev)
                    warnings.push_back("expected runs increase from " + std::to_string(outs - 1) +
                                       " to " + std::to_string(outs) + " outs with bases " +
                                       bases.code());
            }
        return warnings;
    }

    void write(std::ostream& out) const {
        out << kRunMatrixHeader << '\n';
        for (GameState s : all_game_states())
            out << s.bases.code() << ',' << s.outs << ',' << csv::format_double(at(s)) << '\n';
    }

private:
    explicit ExpectedRunsMatrix(const std::array<double, 24>& values) : values_(values) {}

    std::array<double, 24> values_{};
};

// Maps each steal situation and attempt outcome to the resulting game state.
// Caught stealing removes the tracked runner and adds an out; a stolen base
// advances runners with no out recorded.
class CatcherTransitionTable {
public:
    static CatcherTransitionTable defaults() {
        CatcherTransitionTable t;
        t.set(StealCategory::FirstOnly, StealOutcome::StolenBase, {false, true, false}, 0);
        t.set(StealCategory::FirstOnly, StealOutcome::CaughtStealing, {false, false, false}, 1);
        t.set(StealCategory::SecondOnly, StealOutcome::StolenBase, {false, false, true}, 0);
        t.set(StealCategory::SecondOnly, StealOutcome::CaughtStealing, {false, false, false}, 1);
        t.set(StealCategory::FirstAndThird, StealOutcome::StolenBase, {false, true, true}, 0);
        t.set(StealCategory::FirstAndThird, StealOutcome::CaughtStealing, {false, false, true}, 1);
        t.set(StealCategory::DoubleStealLead, StealOutcome::StolenBase, {false, true, true}, 0);
        t.set(StealCategory::DoubleStealLead, StealOutcome::CaughtStealing, {false, true, false}, 1);
        t.set(StealCategory::DoubleStealTrail, StealOutcome::StolenBase, {false, true, true}, 0);
        t.set(StealCategory::DoubleStealTrail, StealOutcome::CaughtStealing, {false, false, true}, 1);
        return t;
    }

    static CatcherTransitionTable load(std::istream& in) {
        csv::Reader reader(in, kCatcherTransitionsHeader);
        CatcherTransitionTable t;
        std::array<std::array<bool, 2>, 5> seen{};
        std::vector<std::string_view> f;
        while (reader.next(f)) {
            std::size_t line = reader.line_number();
            reader.expect_fields(f, 4);
            auto category = parse_steal_category(f[0]);
            if (!category) csv::fail(line, "situation", "unknown situation code '" + std::string(f[0]) + "'");
            StealOutcome outcome;
            if (f[1] == "SB") outcome = StealOutcome::StolenBase;
            else if (f[1] == "CS") outcome = StealOutcome::CaughtStealing;
            else {
                csv::fail(line, "outcome", "outcome must be SB or CS");
            }
            auto bases = BaseConfig::parse(f[2]);
            if (!bases) csv::fail(line, "result_base_state", "unknown base state '" + std::string(f[2]) + "'");
            long long delta = csv::parse_int(f[3], line, "outs_delta");
            BaseConfig start = StealSituation{*category, 0}.game_state().bases;
            if (outcome == StealOutcome::CaughtStealing) {
                if (delta != 1) csv::fail(line, "outs_delta", "caught stealing must add exactly one out");
                if (bases->runner_count() != start.runner_count() - 1)
                    csv::fail(line, "result_base_state", "caught stealing must remove exactly one runner");
            } else {
                if (delta != 0) csv::fail(line, "outs_delta", "stolen base must not change outs");
            }
            int slot = outcome == StealOutcome::CaughtStealing ? 1 : 0;
            if (seen[int(*category)][slot])
                csv::fail(line, "situation", "duplicate transition for " + std::string(f[0]) + "," + std::string(f[1]));
            seen[int(*category)][slot] = true;
            t.set(*category, outcome, *bases, int(delta));
        }
        for (StealCategory c : kStealCategories)
            for (int slot = 0; slot < 2; ++slot)
                if (!seen[int(c)][slot])
                    throw ParseError("transition table is missing " + std::string(category_code(c)) +
                                     "," + (slot == 1 ? "CS" : "SB"));
        return t;
    }

    GameState result(StealSituation situation, StealOutcome outcome) const {
        if (outcome == StealOutcome::NoAttempt)
            throw std::invalid_argument("no transition for an unattempted steal");
        const Rule& rule = rules_[int(situation.category)][outcome == StealOutcome::CaughtStealing ? 1 : 0];
        return GameState{rule.bases, situation.outs + rule.outs_delta};
    }

    void write(std::ostream& out) const {
        out << kCatcherTransitionsHeader << '\n';
        for (StealCategory c : kStealCategories)
            for (StealOutcome o : {StealOutcome::StolenBase, StealOutcome::CaughtStealing}) {
                const Rule& rule = rules_[int(c)][o == StealOutcome::CaughtStealing ? 1 : 0];
                out << category_code(c) << ',' << outcome_code(o) << ',' << rule.bases.code()
                    << ',' << rule.outs_delta << '\n';
            }
    }

private:
    struct Rule {
        BaseConfig bases;
        int outs_delta = 0;
    };

    void set(StealCategory c, StealOutcome o, BaseConfig bases, int outs_delta) {
        rules_[int(c)][o == StealOutcome::CaughtStealing ? 1 : 0] = Rule{bases, outs_delta};
    }

    std::array<std::array<Rule, 2>, 5> rules_{};
};

// Maps (pre-play bases, hit flag, throw outcome) to the post-play state.  The
// defaults track the lead runner with a real advance decision: on a hit every
// runner takes one base and the batter reaches first, with the tracked runner
// taking one extra base when ADVANCED; on an out only the tracked runner
// moves.  THROWN_OUT removes the tracked runner and adds the play's only
// counted out.
class OutfieldTransitionTable {
public:
    static OutfieldTransitionTable defaults() {
        OutfieldTransitionTable t;
        // hit = 1: batter on first, runner from third scores, tracked runner
        // is the lead runner on first or second
        t.set({true, false, false}, true, ThrowOutcome::RunnerAdvanced, {true, false, true}, 0);
        t.set({true, false, false}, true, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({false, true, false}, true, ThrowOutcome::RunnerAdvanced, {true, false, false}, 0);
        t.set({false, true, false}, true, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({true, true, false}, true, ThrowOutcome::RunnerAdvanced, {true, true, false}, 0);
        t.set({true, true, false}, true, ThrowOutcome::RunnerThrownOut, {true, true, false}, 1);
        t.set({true, false, true}, true, ThrowOutcome::RunnerAdvanced, {true, false, true}, 0);
        t.set({true, false, true}, true, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({false, true, true}, true, ThrowOutcome::RunnerAdvanced, {true, false, false}, 0);
        t.set({false, true, true}, true, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({true, true, true}, true, ThrowOutcome::RunnerAdvanced, {true, true, false}, 0);
        t.set({true, true, true}, true, ThrowOutcome::RunnerThrownOut, {true, true, false}, 1);
        // hit = 0: tag-up play, tracked runner is the lead runner on second
        // or third, everyone else holds
        t.set({false, true, false}, false, ThrowOutcome::RunnerAdvanced, {false, false, true}, 0);
        t.set({false, true, false}, false, ThrowOutcome::RunnerThrownOut, {false, false, false}, 1);
        t.set({false, false, true}, false, ThrowOutcome::RunnerAdvanced, {false, false, false}, 0);
        t.set({false, false, true}, false, ThrowOutcome::RunnerThrownOut, {false, false, false}, 1);
        t.set({true, true, false}, false, ThrowOutcome::RunnerAdvanced, {true, false, true}, 0);
        t.set({true, true, false}, false, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({true, false, true}, false, ThrowOutcome::RunnerAdvanced, {true, false, false}, 0);
        t.set({true, false, true}, false, ThrowOutcome::RunnerThrownOut, {true, false, false}, 1);
        t.set({false, true, true}, false, ThrowOutcome::RunnerAdvanced, {false, true, false}, 0);
        t.set({false, true, true}, false, ThrowOutcome::RunnerThrownOut, {false, true, false}, 1);
        t.set({true, true, true}, false, ThrowOutcome::RunnerAdvanced, {true, true, false}, 0);
        t.set({true, true, true}, false, ThrowOutcome::RunnerThrownOut, {true, true, false}, 1);
        return t;
    }

    static OutfieldTransitionTable load(std::istream& in) {
        csv::Reader reader(in, kOutfieldTransitionsHeader);
        OutfieldTransitionTable t;
        std::vector<std::string_view> f;
        while (reader.next(f)) {
            std::size_t line = reader.line_number();
            reader.expect_fields(f, 5);
            auto bases = BaseConfig::parse(f[0]);
            if (!bases) csv::fail(line, "base_state", "unknown base state '" + std::string(f[0]) + "'");
            long long hit = csv::parse_int(f[1], line, "hit");
            if (hit != 0 && hit != 1) csv::fail(line, "hit", "hit must be 0 or 1");
            ThrowOutcome outcome;
            if (f[2] == "THROWN_OUT") outcome = ThrowOutcome::RunnerThrownOut;
            else if (f[2] == "ADVANCED") outcome = ThrowOutcome::RunnerAdvanced;
            else {
                csv::fail(line, "outcome", "outcome must be THROWN_OUT or ADVANCED");
            }
            auto result = BaseConfig::parse(f[3]);
            if (!result) csv::fail(line, "result_base_state", "unknown base state '" + std::string(f[3]) + "'");
            long long delta = csv::parse_int(f[4], line, "outs_delta");
            if (outcome == ThrowOutcome::RunnerThrownOut && delta != 1)
                csv::fail(line, "outs_delta", "a runner thrown out must add exactly one out");
            if (outcome == ThrowOutcome::RunnerAdvanced && delta != 0)
                csv::fail(line, "outs_delta", "a runner advance must not change outs");
            if (!eligible_outfield_opportunity(GameState{*bases, 0}, hit == 1))
                csv::fail(line, "base_state", "state is not a throwing opportunity");
            if (t.rule(*bases, hit == 1, outcome))
                csv::fail(line, "base_state", "duplicate transition row");
            t.set(*bases, hit == 1, outcome, *result, int(delta));
        }
        for (BaseConfig bases : BaseConfig::all())
            for (int hit = 0; hit < 2; ++hit) {
                if (!eligible_outfield_opportunity(GameState{bases, 0}, hit == 1)) continue;
                for (ThrowOutcome o : {ThrowOutcome::RunnerThrownOut, ThrowOutcome::RunnerAdvanced})
                    if (!t.rule(bases, hit == 1, o))
                        throw ParseError("transition table is missing " + bases.code() + "," +
                                         std::to_string(hit) + "," + std::string(outcome_code(o)));
            }
        return t;
    }

    GameState result(GameState start, bool hit, ThrowOutcome outcome) const {
        if (outcome == ThrowOutcome::Hold)
            throw std::invalid_argument("a hold has no transition");
        if (!hit && start.outs >= 2)
            throw std::invalid_argument("an out with two outs ends the inning; not an opportunity");
        const std::optional<Rule>& r = rule(start.bases, hit, outcome);
        if (!r)
            throw std::invalid_argument("state " + start.bases.code() + " is not a throwing opportunity");
        return GameState{r->bases, start.outs + r->outs_delta};
    }

    void write(std::ostream& out) const {
        out << kOutfieldTransitionsHeader << '\n';
        for (int hit = 1; hit >= 0; --hit)
            for (BaseConfig bases : BaseConfig::all())
                for (ThrowOutcome o : {ThrowOutcome::RunnerThrownOut, ThrowOutcome::RunnerAdvanced}) {
                    const std::optional<Rule>& r = rule(bases, hit == 1, o);
                    if (!r) continue;
                    out << bases.code() << ',' << hit << ',' << outcome_code(o) << ','
                        << r->bases.code() << ',' << r->outs_delta << '\n';
                }
    }

private:
    struct Rule {
        BaseConfig bases;
        int outs_delta = 0;
    };

    void set(BaseConfig bases, bool hit, ThrowOutcome outcome, BaseConfig result, int outs_delta) {
        rules_[bases.index()][hit ? 1 : 0][outcome == ThrowOutcome::RunnerThrownOut ? 0 : 1] =
            Rule{result, outs_delta};
    }

    const std::optional<Rule>& rule(BaseConfig bases, bool hit, ThrowOutcome outcome) const {
        return rules_[bases.index()][hit ? 1 : 0][outcome == ThrowOutcome::RunnerThrownOut ? 0 : 1];
    }

    std::array<std::array<std::array<std::optional<Rule>, 2>, 2>, 8> rules_{};
};

// Runs credited to the catcher for one attempt outcome: R(before) - R(after).
// Positive for a caught stealing under any sane matrix, negative for a
// stolen base.
inline double delta_runs_catcher(StealSituation situation, StealOutcome outcome,
                                 const ExpectedRunsMatrix& matrix,
                                 const CatcherTransitionTable& table) {
    return matrix.at(situation.game_state()) - matrix.at(table.result(situation, outcome));
}

// Runs credited to the outfielder for a throw outcome, same sign convention.
inline double delta_runs_outfield(GameState start, bool hit, ThrowOutcome outcome,
                                  const ExpectedRunsMatrix& matrix,
                                  const OutfieldTransitionTable& table) {
    return matrix.at(start) - matrix.at(table.result(start, hit, outcome));
}

}  // namespace armvalue
