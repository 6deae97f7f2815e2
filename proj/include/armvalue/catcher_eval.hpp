#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "armvalue/game_state.hpp"
#include "armvalue/ledger.hpp"
#include "armvalue/opportunities.hpp"
#include "armvalue/run_matrix.hpp"

namespace armvalue {

// Counts for one player-season-situation cell: N opportunities, of which
// A = stolen + caught were actual attempts.
struct StealCounts {
    std::int64_t opportunities = 0;
    std::int64_t attempts = 0;
    std::int64_t stolen = 0;
    std::int64_t caught = 0;

    void add(StealOutcome outcome) {
        ++opportunities;
        switch (outcome) {
            case StealOutcome::NoAttempt: break;
            case StealOutcome::StolenBase:
                ++attempts;
                ++stolen;
                break;
            case StealOutcome::CaughtStealing:
                ++attempts;
                ++caught;
                break;
        }
    }
};

struct CatcherCellKey {
    std::string catcher_id;
    int season = 0;
    StealSituation situation;

    friend auto operator<=>(const CatcherCellKey&, const CatcherCellKey&) = default;
};

using LeagueCellKey = std::pair<int, StealSituation>;  // (season, situation)

struct CatcherTabulation {
    std::map<CatcherCellKey, StealCounts> cells;
    std::map<LeagueCellKey, StealCounts> league;
};

inline CatcherTabulation tabulate(std::span<const CatcherOpportunity> records) {
    CatcherTabulation tab;
    for (const auto& rec : records) {
        tab.cells[{rec.catcher_id, rec.season, rec.situation}].add(rec.outcome);
        tab.league[{rec.season, rec.situation}].add(rec.outcome);
    }
    return tab;
}

struct ExpectedCounts {
    double stolen = 0.0;
    double caught = 0.0;
};

// League-rate expectation for a cell: the player's opportunities times the
// league's per-opportunity steal and caught rates in that situation.
inline ExpectedCounts expected_counts(const StealCounts& cell, const StealCounts& league) {
    if (league.opportunities <= 0)
        throw std::invalid_argument("league cell has no opportunities");
    double n = double(cell.opportunities);
    double league_n = double(league.opportunities);
    return {n * double(league.stolen) / league_n, n * double(league.caught) / league_n};
}

// One situation's contribution to a catcher's seasonal run value.
struct CatcherSituationValue {
    std::string catcher_id;
    int season = 0;
    StealSituation situation;
    StealCounts counts;
    double expected_stolen = 0.0;
    double expected_caught = 0.0;
    double delta_caught = 0.0;  // runs credited per caught stealing
    double delta_stolen = 0.0;  // runs credited (negative) per stolen base
    double run_value = 0.0;
};

inline std::vector<CatcherSituationValue> catcher_situation_values(
    const CatcherTabulation& tab, const ExpectedRunsMatrix& matrix,
    const CatcherTransitionTable& table) {
    std::vector<CatcherSituationValue> values;
    values.reserve(tab.cells.size());
    for (const auto& [key, counts] : tab.cells) {
        const StealCounts& league = tab.league.at({key.season, key.situation});
        if (league.opportunities <= 0) continue;
        CatcherSituationValue v;
        v.catcher_id = key.catcher_id;
        v.season = key.season;
        v.situation = key.situation;
        v.counts = counts;
        ExpectedCounts expected = expected_counts(counts, league);
        v.expected_stolen = expected.stolen;
        v.expected_caught = expected.caught;
        v.delta_caught = delta_runs_catcher(key.situation, StealOutcome::CaughtStealing, matrix, table);
        v.delta_stolen = delta_runs_catcher(key.situation, StealOutcome::StolenBase, matrix, table);
        v.run_value = (double(counts.caught) - v.expected_caught) * v.delta_caught +
                      (double(counts.stolen) - v.expected_stolen) * v.delta_stolen;
        values.push_back(std::move(v));
    }
    return values;
}

// Seasonal run values: the situation contributions summed per catcher-season,
// with total opportunities and attempts carried along.
inline RunValueLedger catcher_run_values(const CatcherTabulation& tab,
                                         const ExpectedRunsMatrix& matrix,
                                         const CatcherTransitionTable& table) {
    std::map<PlayerSeasonKey, RunValueEntry> entries;
    for (const auto& v : catcher_situation_values(tab, matrix, table)) {
        RunValueEntry& e = entries[{v.catcher_id, v.season}];
        if (e.player_id.empty()) {
            e.player_id = v.catcher_id;
            e.season = v.season;
            e.attempts = 0;
        }
        e.opportunities += v.counts.opportunities;
        *e.attempts += v.counts.attempts;
        e.run_value += v.run_value;
    }
    RunValueLedger ledger;
    ledger.reserve(entries.size());
    for (auto& [key, e] : entries) ledger.push_back(std::move(e));
    return ledger;
}

inline constexpr std::string_view kCatcherCellsHeader =
    "player_id,season,situation,outs,opportunities,attempts,stolen,caught";

inline void write_catcher_cells(std::ostream& out, const CatcherTabulation& tab) {
    out << kCatcherCellsHeader << '\n';
    for (const auto& [key, c] : tab.cells)
        out << key.catcher_id << ',' << key.season << ',' << category_code(key.situation.category)
            << ',' << key.situation.outs << ',' << c.opportunities << ',' << c.attempts << ','
            << c.stolen << ',' << c.caught << '\n';
}

}  // namespace armvalue
