#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "armvalue/catcher_eval.hpp"
#include "armvalue/synthgen.hpp"

using namespace armvalue;

namespace {

const StealSituation kFirstNoOuts{StealCategory::FirstOnly, 0};

void append(std::vector<CatcherOpportunity>& records, const std::string& id, int season,
            StealSituation situation, StealOutcome outcome, std::int64_t count) {
    for (std::int64_t k = 0; k < count; ++k) records.push_back({season, id, situation, outcome});
}

// The published 2002 tabulation: J. Lopez 241/25/14/11 against league totals
// 12361/831/519/312 in the (runner on first, no outs) situation.
std::vector<CatcherOpportunity> table_one_ledger() {
    std::vector<CatcherOpportunity> records;
    append(records, "lopej001", 2002, kFirstNoOuts, StealOutcome::StolenBase, 14);
    append(records, "lopej001", 2002, kFirstNoOuts, StealOutcome::CaughtStealing, 11);
    append(records, "lopej001", 2002, kFirstNoOuts, StealOutcome::NoAttempt, 241 - 25);
    append(records, "league_rest", 2002, kFirstNoOuts, StealOutcome::StolenBase, 519 - 14);
    append(records, "league_rest", 2002, kFirstNoOuts, StealOutcome::CaughtStealing, 312 - 11);
    append(records, "league_rest", 2002, kFirstNoOuts, StealOutcome::NoAttempt,
           (12361 - 241) - (831 - 25));
    return records;
}

ExpectedRunsMatrix reference_matrix() {
    std::ifstream in(ARMVALUE_DATA_DIR "/run_matrix.csv");
    REQUIRE(in.good());
    return ExpectedRunsMatrix::load(in);
}

}  // namespace

TEST_CASE("tabulation reproduces the published counts") {
    auto records = table_one_ledger();
    CatcherTabulation tab = tabulate(records);

    const StealCounts& lopez = tab.cells.at({"lopej001", 2002, kFirstNoOuts});
    CHECK(lopez.opportunities == 241);
    CHECK(lopez.attempts == 25);
    CHECK(lopez.stolen == 14);
    CHECK(lopez.caught == 11);

    const StealCounts& league = tab.league.at({2002, kFirstNoOuts});
    CHECK(league.opportunities == 12361);
    CHECK(league.attempts == 831);
    CHECK(league.stolen == 519);
    CHECK(league.caught == 312);
}

TEST_CASE("tabulation basics") {
    SUBCASE("empty ledger") {
        std::vector<CatcherOpportunity> none;
        CatcherTabulation tab = tabulate(none);
        CHECK(tab.cells.empty());
        CHECK(tab.league.empty());
    }
    SUBCASE("single caught stealing") {
        std::vector<CatcherOpportunity> records{
            {2002, "a", kFirstNoOuts, StealOutcome::CaughtStealing}};
        CatcherTabulation tab = tabulate(records);
        const StealCounts& cell = tab.cells.at({"a", 2002, kFirstNoOuts});
        CHECK(cell.opportunities == 1);
        CHECK(cell.attempts == 1);
        CHECK(cell.stolen == 0);
        CHECK(cell.caught == 1);
    }
    SUBCASE("counts partition: N = none + S + F and A = S + F") {
        CatcherLedgerSpec spec;
        spec.players = {CatcherTruth::flat("a", 0.08, 0.7), CatcherTruth::flat("b", 0.03, 0.5)};
        spec.seasons = {2002, 2003};
        spec.opportunities_low = 30;
        spec.opportunities_high = 90;
        spec.seed = 11;
        auto records = generate_catcher_ledger(spec);
        CatcherTabulation tab = tabulate(records);
        std::int64_t total = 0;
        for (const auto& [key, c] : tab.cells) {
            CHECK(c.attempts == c.stolen + c.caught);
            CHECK(c.opportunities >= c.attempts);
            total += c.opportunities;
        }
        CHECK(total == std::int64_t(records.size()));
        for (const auto& [key, league] : tab.league) {
            StealCounts sum;
            for (const auto& [cell_key, c] : tab.cells) {
                if (cell_key.season != key.first || !(cell_key.situation == key.second)) continue;
                sum.opportunities += c.opportunities;
                sum.attempts += c.attempts;
                sum.stolen += c.stolen;
                sum.caught += c.caught;
            }
            CHECK(sum.opportunities == league.opportunities);
            CHECK(sum.attempts == league.attempts);
            CHECK(sum.stolen == league.stolen);
            CHECK(sum.caught == league.caught);
        }
    }
}

TEST_CASE("expected counts from league rates") {
    SUBCASE("published example, computed from the ratio formulas") {
        StealCounts lopez{241, 25, 14, 11};
        StealCounts league{12361, 831, 519, 312};
        ExpectedCounts e = expected_counts(lopez, league);
        CHECK(e.stolen == doctest::Approx(10.118841517676563).epsilon(1e-12));
        CHECK(e.caught == doctest::Approx(6.083002993285333).epsilon(1e-12));
    }
    SUBCASE("zero opportunities expect zero") {
        ExpectedCounts e = expected_counts(StealCounts{0, 0, 0, 0}, StealCounts{100, 10, 6, 4});
        CHECK(e.stolen == 0.0);
        CHECK(e.caught == 0.0);
    }
    SUBCASE("a player at exactly the league rate has zero residuals") {
        StealCounts cell{100, 10, 6, 4};
        StealCounts league{1000, 100, 60, 40};
        ExpectedCounts e = expected_counts(cell, league);
        CHECK(double(cell.stolen) - e.stolen == doctest::Approx(0.0));
        CHECK(double(cell.caught) - e.caught == doctest::Approx(0.0));
    }
    SUBCASE("an empty league cell is a caller error") {
        CHECK_THROWS_AS(expected_counts(StealCounts{}, StealCounts{}), std::invalid_argument);
    }
}

TEST_CASE("the worked single-situation run value") {
    ExpectedRunsMatrix matrix = reference_matrix();
    CatcherTransitionTable table = CatcherTransitionTable::defaults();
    auto values = catcher_situation_values(tabulate(table_one_ledger()), matrix, table);

    const CatcherSituationValue* lopez = nullptr;
    for (const auto& v : values)
        if (v.catcher_id == "lopej001") lopez = &v;
    REQUIRE(lopez != nullptr);
    CHECK(lopez->expected_stolen == doctest::Approx(10.118841517676563).epsilon(1e-9));
    CHECK(lopez->expected_caught == doctest::Approx(6.083002993285333).epsilon(1e-9));
    CHECK(lopez->delta_caught == doctest::Approx(0.62).epsilon(1e-12));
    CHECK(lopez->delta_stolen == doctest::Approx(-0.24).epsilon(1e-12));
    // 2.12 in the source example; the ratio-formula residuals give 2.1171
    CHECK(lopez->run_value == doctest::Approx(2.117060108405469).epsilon(1e-9));
    CHECK(std::abs(lopez->run_value - 2.12) < 0.05);
}

TEST_CASE("seasonal ledger entries carry totals") {
    ExpectedRunsMatrix matrix = reference_matrix();
    CatcherTransitionTable table = CatcherTransitionTable::defaults();
    RunValueLedger ledger = catcher_run_values(tabulate(table_one_ledger()), matrix, table);
    REQUIRE(ledger.size() == 2);
    for (const auto& e : ledger) {
        if (e.player_id != "lopej001") continue;
        CHECK(e.season == 2002);
        CHECK(e.opportunities == 241);
        REQUIRE(e.attempts.has_value());
        CHECK(*e.attempts == 25);
    }
}

TEST_CASE("league-average players are worth zero") {
    // two players with identical counts split the league exactly in half
    std::vector<CatcherOpportunity> records;
    for (const char* id : {"a", "b"}) {
        append(records, id, 2002, kFirstNoOuts, StealOutcome::StolenBase, 6);
        append(records, id, 2002, kFirstNoOuts, StealOutcome::CaughtStealing, 4);
        append(records, id, 2002, kFirstNoOuts, StealOutcome::NoAttempt, 90);
        StealSituation second{StealCategory::SecondOnly, 1};
        append(records, id, 2002, second, StealOutcome::StolenBase, 2);
        append(records, id, 2002, second, StealOutcome::NoAttempt, 48);
    }
    ExpectedRunsMatrix matrix = reference_matrix();
    CatcherTransitionTable table = CatcherTransitionTable::defaults();
    RunValueLedger ledger = catcher_run_values(tabulate(records), matrix, table);
    REQUIRE(ledger.size() == 2);
    for (const auto& e : ledger) CHECK(e.run_value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("run values are zero-sum within each season") {
    CatcherLedgerSpec spec;
    spec.players = {CatcherTruth::flat("a", 0.10, 0.75), CatcherTruth::flat("b", 0.05, 0.60),
                    CatcherTruth::flat("c", 0.02, 0.50), CatcherTruth::flat("d", 0.08, 0.85)};
    spec.seasons = {2002, 2003, 2004};
    spec.opportunities_low = 50;
    spec.opportunities_high = 220;
    spec.seed = 7;
    auto records = generate_catcher_ledger(spec);

    ExpectedRunsMatrix matrix = reference_matrix();
    CatcherTransitionTable table = CatcherTransitionTable::defaults();
    RunValueLedger ledger = catcher_run_values(tabulate(records), matrix, table);

    std::map<int, double> season_sum;
    std::map<int, double> season_abs;
    for (const auto& e : ledger) {
        season_sum[e.season] += e.run_value;
        season_abs[e.season] += std::abs(e.run_value);
    }
    REQUIRE(season_sum.size() == 3);
    for (const auto& [season, sum] : season_sum)
        CHECK(std::abs(sum) <= 1e-9 * std::max(season_abs[season], 1.0));
}

TEST_CASE("preventing attempts is rewarded when attempts cost the league runs") {
    ExpectedRunsMatrix matrix = reference_matrix();
    CatcherTransitionTable table = CatcherTransitionTable::defaults();
    double delta_cs = delta_runs_catcher(kFirstNoOuts, StealOutcome::CaughtStealing, matrix, table);
    double delta_sb = delta_runs_catcher(kFirstNoOuts, StealOutcome::StolenBase, matrix, table);
    StealCounts league{10000, 900, 700, 200};
    double league_net = (double(league.caught) * delta_cs + double(league.stolen) * delta_sb) /
                        double(league.opportunities);
    REQUIRE(league_net < 0.0);

    // holding S and F fixed, more opportunities means smaller expected counts
    // and, against a run-costing league, a larger credit
    auto value_at = [&](std::int64_t n) {
        StealCounts cell{n, 10, 6, 4};
        ExpectedCounts e = expected_counts(cell, league);
        return (double(cell.caught) - e.caught) * delta_cs +
               (double(cell.stolen) - e.stolen) * delta_sb;
    };
    CHECK(value_at(400) > value_at(200));
    CHECK(value_at(200) > value_at(100));
}
