#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "armvalue/csv.hpp"

namespace armvalue {

struct PlayerSeasonKey {
    std::string player_id;
    int season = 0;

    friend auto operator<=>(const PlayerSeasonKey&, const PlayerSeasonKey&) = default;
};

// One player-season run value X_ij with its opportunity count n_ij.  Attempts
// are carried for catchers so attempt percentages can be reported; the field
// is absent for outfielders.
struct RunValueEntry {
    std::string player_id;
    int season = 0;
    std::int64_t opportunities = 0;
    double run_value = 0.0;
    std::optional<std::int64_t> attempts;

    PlayerSeasonKey key() const { return {player_id, season}; }
};

using RunValueLedger = std::vector<RunValueEntry>;

inline constexpr std::string_view kRunValueHeader = "player_id,season,n_opportunities,run_value";

inline void sort_ledger(RunValueLedger& ledger) {
    std::sort(ledger.begin(), ledger.end(),
              [](const RunValueEntry& a, const RunValueEntry& b) { return a.key() < b.key(); });
}

inline void write_run_values(std::ostream& out, std::span<const RunValueEntry> ledger) {
    out << kRunValueHeader << '\n';
    for (const auto& e : ledger)
        out << e.player_id << ',' << e.season << ',' << e.opportunities << ','
            << csv::format_double(e.run_value) << '\n';
}

inline RunValueLedger parse_run_values(std::istream& in) {
    csv::Reader reader(in, kRunValueHeader);
    RunValueLedger ledger;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        std::size_t line = reader.line_number();
        reader.expect_fields(f, 4);
        RunValueEntry e;
        e.player_id = std::string(f[0]);
        if (e.player_id.empty()) csv::fail(line, "player_id", "empty player identifier");
        e.season = int(csv::parse_int(f[1], line, "season"));
        e.opportunities = csv::parse_int(f[2], line, "n_opportunities");
        if (e.opportunities <= 0) csv::fail(line, "n_opportunities", "must be positive");
        e.run_value = csv::parse_double(f[3], line, "run_value");
        ledger.push_back(std::move(e));
    }
    return ledger;
}

}  // namespace armvalue
