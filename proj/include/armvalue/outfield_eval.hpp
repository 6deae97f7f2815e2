#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "armvalue/game_state.hpp"
#include "armvalue/ledger.hpp"
#include "armvalue/opportunities.hpp"
#include "armvalue/run_matrix.hpp"

namespace armvalue {

// 12 ft (lateral) by 10 ft (depth) fielding zone.  Boundaries belong to the
// higher-index zone.
struct Zone {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Zone&, const Zone&) = default;
};

inline Zone assign_zone(double bip_x, double bip_y) {
    if (!std::isfinite(bip_x) || !std::isfinite(bip_y))
        throw std::invalid_argument("ball-in-play coordinates must be finite");
    return Zone{int(std::floor(bip_x / 12.0)), int(std::floor(bip_y / 10.0))};
}

struct ThrowCounts {
    std::int64_t opportunities = 0;
    std::int64_t thrown_out = 0;
    std::int64_t advanced = 0;

    void add(ThrowOutcome outcome) {
        ++opportunities;
        switch (outcome) {
            case ThrowOutcome::Hold: break;
            case ThrowOutcome::RunnerThrownOut: ++thrown_out; break;
            case ThrowOutcome::RunnerAdvanced: ++advanced; break;
        }
    }
};

// Cells carry the full pre-play state, outs included: the run deltas depend
// on outs, so league rates and deltas must share one grain for the
// expectation differencing to cancel exactly.
struct OutfieldCellKey {
    std::string fielder_id;
    int season = 0;
    Zone zone;
    GameState state;
    bool hit = false;

    friend auto operator<=>(const OutfieldCellKey&, const OutfieldCellKey&) = default;
};

using LeagueOutfieldKey = std::tuple<int, Zone, GameState, bool>;  // (season, zone, state, hit)

struct OutfieldTabulation {
    std::map<OutfieldCellKey, ThrowCounts> cells;
    std::map<LeagueOutfieldKey, ThrowCounts> league;
};

inline OutfieldTabulation tabulate_outfield(std::span<const OutfieldOpportunity> records) {
    OutfieldTabulation tab;
    for (const auto& rec : records) {
        Zone zone = assign_zone(rec.bip_x, rec.bip_y);
        tab.cells[{rec.fielder_id, rec.season, zone, rec.start_state, rec.hit}].add(rec.outcome);
        tab.league[{rec.season, zone, rec.start_state, rec.hit}].add(rec.outcome);
    }
    return tab;
}

inline RunValueLedger outfield_run_values(const OutfieldTabulation& tab,
                                          const ExpectedRunsMatrix& matrix,
                                          const OutfieldTransitionTable& table) {
    std::map<PlayerSeasonKey, RunValueEntry> entries;
    for (const auto& [key, counts] : tab.cells) {
        const ThrowCounts& league = tab.league.at({key.season, key.zone, key.state, key.hit});
        if (league.opportunities <= 0) continue;
        double n = double(counts.opportunities);
        double league_n = double(league.opportunities);
        double expected_thrown_out = n * double(league.thrown_out) / league_n;
        double expected_advanced = n * double(league.advanced) / league_n;
        double delta_out = delta_runs_outfield(key.state, key.hit, ThrowOutcome::RunnerThrownOut,
                                               matrix, table);
        double delta_adv = delta_runs_outfield(key.state, key.hit, ThrowOutcome::RunnerAdvanced,
                                               matrix, table);
        double value = (double(counts.thrown_out) - expected_thrown_out) * delta_out +
                       (double(counts.advanced) - expected_advanced) * delta_adv;
        RunValueEntry& e = entries[{key.fielder_id, key.season}];
        if (e.player_id.empty()) {
            e.player_id = key.fielder_id;
            e.season = key.season;
        }
        e.opportunities += counts.opportunities;
        e.run_value += value;
    }
    RunValueLedger ledger;
    ledger.reserve(entries.size());
    for (auto& [key, e] : entries) ledger.push_back(std::move(e));
    return ledger;
}

inline constexpr std::string_view kOutfieldCellsHeader =
    "player_id,season,zone_x,zone_y,base_state,outs,hit,opportunities,thrown_out,advanced";

inline void write_outfield_cells(std::ostream& out, const OutfieldTabulation& tab) {
    out << kOutfieldCellsHeader << '\n';
    for (const auto& [key, c] : tab.cells)
        out << key.fielder_id << ',' << key.season << ',' << key.zone.x << ',' << key.zone.y << ','
            << key.state.bases.code() << ',' << key.state.outs << ',' << (key.hit ? 1 : 0) << ','
            << c.opportunities << ',' << c.thrown_out << ',' << c.advanced << '\n';
}

}  // namespace armvalue
