#pragma once

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "armvalue/csv.hpp"
#include "armvalue/game_state.hpp"

namespace armvalue {

enum class StealOutcome { NoAttempt, StolenBase, CaughtStealing };
enum class ThrowOutcome { Hold, RunnerThrownOut, RunnerAdvanced };

inline std::string_view outcome_code(StealOutcome o) {
    switch (o) {
        case StealOutcome::NoAttempt: return "NONE";
        case StealOutcome::StolenBase: return "SB";
        case StealOutcome::CaughtStealing: return "CS";
    }
    return "";
}

inline std::string_view outcome_code(ThrowOutcome o) {
    switch (o) {
        case ThrowOutcome::Hold: return "HOLD";
        case ThrowOutcome::RunnerThrownOut: return "THROWN_OUT";
        case ThrowOutcome::RunnerAdvanced: return "ADVANCED";
    }
    return "";
}

// One base-stealing opportunity against a catcher, attempted or not.
struct CatcherOpportunity {
    int season = 0;
    std::string catcher_id;
    StealSituation situation;
    StealOutcome outcome = StealOutcome::NoAttempt;

    friend bool operator==(const CatcherOpportunity&, const CatcherOpportunity&) = default;
};

// One ball in play to an outfielder with a possible extra-base advance.
// Coordinates are feet from home plate: bip_x lateral (negative toward left
// field), bip_y depth.
struct OutfieldOpportunity {
    int season = 0;
    std::string fielder_id;
    GameState start_state;
    bool hit = false;  // true when the ball fell for a hit, false on an out
    double bip_x = 0.0;
    double bip_y = 0.0;
    ThrowOutcome outcome = ThrowOutcome::Hold;

    friend bool operator==(const OutfieldOpportunity&, const OutfieldOpportunity&) = default;
};

// A hit is a throwing opportunity only with a runner on first and/or second;
// a runner on third alone scores uncontested.
inline bool hit_opportunity_bases(BaseConfig b) { return b.first || b.second; }

// An out is a throwing opportunity only with a runner on second and/or third;
// runners do not advance from first on an out.
inline bool out_opportunity_bases(BaseConfig b) { return b.second || b.third; }

inline bool eligible_outfield_opportunity(GameState state, bool hit) {
    if (hit) return hit_opportunity_bases(state.bases);
    return out_opportunity_bases(state.bases) && state.outs < 2;
}

inline constexpr std::string_view kCatcherOpportunityHeader =
    "season,catcher_id,situation,outs,outcome";
inline constexpr std::string_view kOutfieldOpportunityHeader =
    "season,fielder_id,base_state,outs,hit,bip_x,bip_y,outcome";

inline std::vector<CatcherOpportunity> parse_catcher_opportunities(std::istream& in) {
    csv::Reader reader(in, kCatcherOpportunityHeader);
    std::vector<CatcherOpportunity> records;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        std::size_t line = reader.line_number();
        reader.expect_fields(f, 5);
        CatcherOpportunity rec;
        rec.season = int(csv::parse_int(f[0], line, "season"));
        rec.catcher_id = std::string(f[1]);
        if (rec.catcher_id.empty()) csv::fail(line, "catcher_id", "empty player identifier");
        auto category = parse_steal_category(f[2]);
        if (!category) csv::fail(line, "situation", "unknown situation code '" + std::string(f[2]) + "'");
        long long outs = csv::parse_int(f[3], line, "outs");
        if (outs < 0 || outs > 2) csv::fail(line, "outs", "outs out of range");
        rec.situation = StealSituation{*category, int(outs)};
        if (f[4] == "NONE") rec.outcome = StealOutcome::NoAttempt;
        else if (f[4] == "SB") rec.outcome = StealOutcome::StolenBase;
        else if (f[4] == "CS") rec.outcome = StealOutcome::CaughtStealing;
        else csv::fail(line, "outcome", "unknown outcome code '" + std::string(f[4]) + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::vector<OutfieldOpportunity> parse_outfield_opportunities(std::istream& in) {
    csv::Reader reader(in, kOutfieldOpportunityHeader);
    std::vector<OutfieldOpportunity> records;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        std::size_t line = reader.line_number();
        reader.expect_fields(f, 8);
        OutfieldOpportunity rec;
        rec.season = int(csv::parse_int(f[0], line, "season"));
        rec.fielder_id = std::string(f[1]);
        if (rec.fielder_id.empty()) csv::fail(line, "fielder_id", "empty player identifier");
        auto bases = BaseConfig::parse(f[2]);
        if (!bases) csv::fail(line, "base_state", "unknown base state '" + std::string(f[2]) + "'");
        long long outs = csv::parse_int(f[3], line, "outs");
        if (outs < 0 || outs > 2) csv::fail(line, "outs", "outs out of range");
        rec.start_state = GameState{*bases, int(outs)};
        long long hit = csv::parse_int(f[4], line, "hit");
        if (hit != 0 && hit != 1) csv::fail(line, "hit", "hit must be 0 or 1");
        rec.hit = hit == 1;
        rec.bip_x = csv::parse_double(f[5], line, "bip_x");
        rec.bip_y = csv::parse_double(f[6], line, "bip_y");
        if (!std::isfinite(rec.bip_x)) csv::fail(line, "bip_x", "not finite");
        if (!std::isfinite(rec.bip_y) || rec.bip_y < 0.0) csv::fail(line, "bip_y", "must be finite and >= 0");
        if (f[7] == "HOLD") rec.outcome = ThrowOutcome::Hold;
        else if (f[7] == "THROWN_OUT") rec.outcome = ThrowOutcome::RunnerThrownOut;
        else if (f[7] == "ADVANCED") rec.outcome = ThrowOutcome::RunnerAdvanced;
        else csv::fail(line, "outcome", "unknown outcome code '" + std::string(f[7]) + "'");
        if (!eligible_outfield_opportunity(rec.start_state, rec.hit))
            csv::fail(line, "base_state", "ineligible opportunity");
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::string serialize(const CatcherOpportunity& rec) {
    std::string row = std::to_string(rec.season);
    row += ',';
    row += rec.catcher_id;
    row += ',';
    row += category_code(rec.situation.category);
    row += ',';
    row += std::to_string(rec.situation.outs);
    row += ',';
    row += outcome_code(rec.outcome);
    return row;
}

inline std::string serialize(const OutfieldOpportunity& rec) {
    std::string row = std::to_string(rec.season);
    row += ',';
    row += rec.fielder_id;
    row += ',';
    row += rec.start_state.bases.code();
    row += ',';
    row += std::to_string(rec.start_state.outs);
    row += ',';
    row += rec.hit ? '1' : '0';
    row += ',';
    row += csv::format_double(rec.bip_x);
    row += ',';
    row += csv::format_double(rec.bip_y);
    row += ',';
    row += outcome_code(rec.outcome);
    return row;
}

inline void write_catcher_opportunities(std::ostream& out, std::span<const CatcherOpportunity> records) {
    out << kCatcherOpportunityHeader << '\n';
    for (const auto& rec : records) out << serialize(rec) << '\n';
}

inline void write_outfield_opportunities(std::ostream& out, std::span<const OutfieldOpportunity> records) {
    out << kOutfieldOpportunityHeader << '\n';
    for (const auto& rec : records) out << serialize(rec) << '\n';
}

// Summary of a ledger plus any invariant violations found.  Duplicates are
// legal: opportunities carry no unique key.
struct ValidationReport {
    std::size_t record_count = 0;
    std::map<int, std::size_t> records_per_season;
    std::map<std::string, std::size_t> records_per_player;
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_ledger(std::span<const CatcherOpportunity> records) {
    ValidationReport report;
    report.record_count = records.size();
    std::size_t i = 0;
    for (const auto& rec : records) {
        ++report.records_per_season[rec.season];
        ++report.records_per_player[rec.catcher_id];
        if (rec.situation.outs < 0 || rec.situation.outs > 2)
            report.violations.push_back("record " + std::to_string(i) + ": outs out of range");
        if (rec.catcher_id.empty())
            report.violations.push_back("record " + std::to_string(i) + ": empty player identifier");
        ++i;
    }
    return report;
}

inline ValidationReport validate_ledger(std::span<const OutfieldOpportunity> records) {
    ValidationReport report;
    report.record_count = records.size();
    std::size_t i = 0;
    for (const auto& rec : records) {
        ++report.records_per_season[rec.season];
        ++report.records_per_player[rec.fielder_id];
        if (rec.start_state.outs < 0 || rec.start_state.outs > 2)
            report.violations.push_back("record " + std::to_string(i) + ": outs out of range");
        if (rec.fielder_id.empty())
            report.violations.push_back("record " + std::to_string(i) + ": empty player identifier");
        if (!std::isfinite(rec.bip_x) || !std::isfinite(rec.bip_y))
            report.violations.push_back("record " + std::to_string(i) + ": non-finite coordinates");
        else if (rec.bip_y < 0.0)
            report.violations.push_back("record " + std::to_string(i) + ": negative bip_y");
        if (!eligible_outfield_opportunity(rec.start_state, rec.hit))
            report.violations.push_back("record " + std::to_string(i) + ": ineligible opportunity");
        ++i;
    }
    return report;
}

}  // namespace armvalue
