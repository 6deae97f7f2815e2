#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "armvalue/catcher_eval.hpp"
#include "armvalue/game_state.hpp"
#include "armvalue/ledger.hpp"
#include "armvalue/opportunities.hpp"
#include "armvalue/outfield_eval.hpp"
#include "armvalue/random.hpp"
#include "armvalue/run_matrix.hpp"

namespace armvalue {

inline std::int64_t uniform_int(GibbsRng& rng, std::int64_t low, std::int64_t high) {
    if (high < low) throw std::invalid_argument("empty integer range");
    auto span = std::uint64_t(high - low) + 1;
    return low + std::int64_t(std::uint64_t(rng.uniform() * double(span)) % span);
}

// ---------------------------------------------------------------------------
// Event-level generation: Bernoulli attempt, then Bernoulli outcome.

struct CatcherTruth {
    std::string player_id;
    std::array<double, 15> attempt_prob{};  // indexed by StealSituation::index()
    double steal_success_prob = 0.7;        // P(stolen base | attempt)

    static CatcherTruth flat(std::string player_id, double attempt, double success) {
        CatcherTruth t;
        t.player_id = std::move(player_id);
        t.attempt_prob.fill(attempt);
        t.steal_success_prob = success;
        return t;
    }
};

struct CatcherLedgerSpec {
    std::vector<CatcherTruth> players;
    std::vector<int> seasons;
    std::int64_t opportunities_low = 100;   // per situation per season
    std::int64_t opportunities_high = 100;
    std::uint64_t seed = 1;
};

inline std::vector<CatcherOpportunity> generate_catcher_ledger(const CatcherLedgerSpec& spec) {
    GibbsRng rng(spec.seed);
    std::vector<CatcherOpportunity> records;
    for (const CatcherTruth& truth : spec.players)
        for (int season : spec.seasons)
            for (StealSituation situation : all_steal_situations()) {
                std::int64_t n = uniform_int(rng, spec.opportunities_low, spec.opportunities_high);
                for (std::int64_t k = 0; k < n; ++k) {
                    StealOutcome outcome = StealOutcome::NoAttempt;
                    if (rng.uniform() < truth.attempt_prob[situation.index()])
                        outcome = rng.uniform() < truth.steal_success_prob
                                      ? StealOutcome::StolenBase
                                      : StealOutcome::CaughtStealing;
                    records.push_back({season, truth.player_id, situation, outcome});
                }
            }
    return records;
}

struct OutfieldTruth {
    std::string player_id;
    double thrown_out_prob = 0.05;  // per opportunity
    double advanced_prob = 0.25;    // per opportunity; remainder holds
};

struct OutfieldLedgerSpec {
    std::vector<OutfieldTruth> players;
    std::vector<int> seasons;
    std::int64_t opportunities_low = 200;  // per player per season
    std::int64_t opportunities_high = 200;
    double x_min = -120.0, x_max = 120.0;
    double y_min = 150.0, y_max = 380.0;
    std::uint64_t seed = 1;
};

inline std::vector<OutfieldOpportunity> generate_outfield_ledger(const OutfieldLedgerSpec& spec) {
    GibbsRng rng(spec.seed);
    std::vector<BaseConfig> hit_states, out_states;
    for (BaseConfig b : BaseConfig::all()) {
        if (hit_opportunity_bases(b)) hit_states.push_back(b);
        if (out_opportunity_bases(b)) out_states.push_back(b);
    }
    std::vector<OutfieldOpportunity> records;
    for (const OutfieldTruth& truth : spec.players)
        for (int season : spec.seasons) {
            std::int64_t n = uniform_int(rng, spec.opportunities_low, spec.opportunities_high);
            for (std::int64_t k = 0; k < n; ++k) {
                OutfieldOpportunity rec;
                rec.season = season;
                rec.fielder_id = truth.player_id;
                rec.hit = rng.uniform() < 0.5;
                const auto& states = rec.hit ? hit_states : out_states;
                BaseConfig bases = states[std::size_t(uniform_int(rng, 0, std::int64_t(states.size()) - 1))];
                int outs = int(uniform_int(rng, 0, rec.hit ? 2 : 1));
                rec.start_state = GameState{bases, outs};
                rec.bip_x = spec.x_min + rng.uniform() * (spec.x_max - spec.x_min);
                rec.bip_y = spec.y_min + rng.uniform() * (spec.y_max - spec.y_min);
                double u = rng.uniform();
                if (u < truth.thrown_out_prob) rec.outcome = ThrowOutcome::RunnerThrownOut;
                else if (u < truth.thrown_out_prob + truth.advanced_prob)
                    rec.outcome = ThrowOutcome::RunnerAdvanced;
                else rec.outcome = ThrowOutcome::Hold;
                records.push_back(std::move(rec));
            }
        }
    return records;
}

// ---------------------------------------------------------------------------
// Model-level generation: seasonal run values drawn straight from the
// hierarchical likelihood, for sampler recovery and calibration tests.

struct ModelTruth {
    std::string player_id;
    double mu = 0.0;
    double sigma2 = 1.0;
};

struct ModelLedgerSpec {
    std::vector<ModelTruth> players;
    int seasons = 4;
    int first_season = 2002;
    std::int64_t opportunities_low = 200;
    std::int64_t opportunities_high = 400;
    std::uint64_t seed = 1;
};

inline RunValueLedger generate_model_observations(const ModelLedgerSpec& spec) {
    if (spec.players.empty() || spec.seasons < 1)
        throw std::invalid_argument("model spec needs players and seasons");
    GibbsRng rng(spec.seed);
    std::vector<std::int64_t> counts;
    counts.reserve(spec.players.size() * std::size_t(spec.seasons));
    double total = 0.0;
    for (std::size_t i = 0; i < spec.players.size() * std::size_t(spec.seasons); ++i) {
        counts.push_back(uniform_int(rng, spec.opportunities_low, spec.opportunities_high));
        total += double(counts.back());
    }
    double n_bar = total / double(counts.size());

    RunValueLedger ledger;
    std::size_t k = 0;
    for (const ModelTruth& truth : spec.players)
        for (int j = 0; j < spec.seasons; ++j) {
            std::int64_t n = counts[k++];
            double n_star = double(n) / n_bar;
            double y = rng.normal(truth.mu, std::sqrt(truth.sigma2 / n_star));
            RunValueEntry e;
            e.player_id = truth.player_id;
            e.season = spec.first_season + j;
            e.opportunities = n;
            e.run_value = y * double(n) / n_bar;
            ledger.push_back(std::move(e));
        }
    return ledger;
}

// ---------------------------------------------------------------------------
// Brute-force run values: one pass for league rates, one pass per record.
// No tabulation cells; this is the independent check on the aggregated path.

inline std::map<PlayerSeasonKey, double> brute_force_catcher_run_values(
    std::span<const CatcherOpportunity> records, const ExpectedRunsMatrix& matrix,
    const CatcherTransitionTable& table) {
    struct Rates {
        double n = 0.0, stolen = 0.0, caught = 0.0;
    };
    std::map<std::pair<int, int>, Rates> league;  // (season, situation index)
    for (const auto& rec : records) {
        Rates& r = league[{rec.season, rec.situation.index()}];
        r.n += 1.0;
        if (rec.outcome == StealOutcome::StolenBase) r.stolen += 1.0;
        if (rec.outcome == StealOutcome::CaughtStealing) r.caught += 1.0;
    }
    std::map<PlayerSeasonKey, double> values;
    for (const auto& rec : records) {
        const Rates& r = league.at({rec.season, rec.situation.index()});
        double delta_cs = delta_runs_catcher(rec.situation, StealOutcome::CaughtStealing, matrix, table);
        double delta_sb = delta_runs_catcher(rec.situation, StealOutcome::StolenBase, matrix, table);
        double caught = rec.outcome == StealOutcome::CaughtStealing ? 1.0 : 0.0;
        double stolen = rec.outcome == StealOutcome::StolenBase ? 1.0 : 0.0;
        values[{rec.catcher_id, rec.season}] += (caught - r.caught / r.n) * delta_cs +
                                                (stolen - r.stolen / r.n) * delta_sb;
    }
    return values;
}

inline std::map<PlayerSeasonKey, double> brute_force_outfield_run_values(
    std::span<const OutfieldOpportunity> records, const ExpectedRunsMatrix& matrix,
    const OutfieldTransitionTable& table) {
    struct Rates {
        double n = 0.0, thrown_out = 0.0, advanced = 0.0;
    };
    using Key = std::tuple<int, int, int, int, bool>;  // season, zx, zy, state index, hit
    auto key_of = [](const OutfieldOpportunity& rec) {
        int zx = int(std::floor(rec.bip_x / 12.0));
        int zy = int(std::floor(rec.bip_y / 10.0));
        return Key{rec.season, zx, zy, rec.start_state.index(), rec.hit};
    };
    std::map<Key, Rates> league;
    for (const auto& rec : records) {
        Rates& r = league[key_of(rec)];
        r.n += 1.0;
        if (rec.outcome == ThrowOutcome::RunnerThrownOut) r.thrown_out += 1.0;
        if (rec.outcome == ThrowOutcome::RunnerAdvanced) r.advanced += 1.0;
    }
    std::map<PlayerSeasonKey, double> values;
    for (const auto& rec : records) {
        const Rates& r = league.at(key_of(rec));
        double delta_out = delta_runs_outfield(rec.start_state, rec.hit,
                                               ThrowOutcome::RunnerThrownOut, matrix, table);
        double delta_adv = delta_runs_outfield(rec.start_state, rec.hit,
                                               ThrowOutcome::RunnerAdvanced, matrix, table);
        double thrown = rec.outcome == ThrowOutcome::RunnerThrownOut ? 1.0 : 0.0;
        double advanced = rec.outcome == ThrowOutcome::RunnerAdvanced ? 1.0 : 0.0;
        values[{rec.fielder_id, rec.season}] += (thrown - r.thrown_out / r.n) * delta_out +
                                                (advanced - r.advanced / r.n) * delta_adv;
    }
    return values;
}

// ---------------------------------------------------------------------------
// Half-inning simulation used to fill in the illustrative expected-runs file.

struct PlateAppearanceModel {
    double p_out = 0.675;
    double p_walk = 0.085;
    double p_single = 0.155;
    double p_double = 0.048;
    double p_triple = 0.006;
    double p_hr = 0.031;
    double p_single_first_to_third = 0.30;
    double p_single_second_scores = 0.60;
    double p_double_first_scores = 0.45;
};

namespace detail {

struct Diamond {
    bool first = false, second = false, third = false;
    int runs = 0;

    void score() { ++runs; }
};

inline void advance_on_walk(Diamond& d) {
    if (d.first && d.second && d.third) d.score();
    else if (d.first && d.second) d.third = true;
    else if (d.first) d.second = true;
    d.first = true;
}

inline void advance_on_single(Diamond& d, const PlateAppearanceModel& m, GibbsRng& rng) {
    if (d.third) {
        d.third = false;
        d.score();
    }
    if (d.second) {
        d.second = false;
        if (rng.uniform() < m.p_single_second_scores) d.score();
        else d.third = true;
    }
    if (d.first) {
        d.first = false;
        if (!d.third && rng.uniform() < m.p_single_first_to_third) d.third = true;
        else d.second = true;
    }
    d.first = true;
}

inline void advance_on_double(Diamond& d, const PlateAppearanceModel& m, GibbsRng& rng) {
    if (d.third) {
        d.third = false;
        d.score();
    }
    if (d.second) {
        d.second = false;
        d.score();
    }
    if (d.first) {
        d.first = false;
        if (rng.uniform() < m.p_double_first_scores) d.score();
        else d.third = true;
    }
    d.second = true;
}

}  // namespace detail

// Average runs to the end of the half-inning from each live state, tabulated
// by direct simulation of the plate-appearance model.
inline std::array<double, 24> simulate_expected_runs(const PlateAppearanceModel& model,
                                                     std::int64_t innings_per_state,
                                                     std::uint64_t seed) {
    std::array<double, 24> expected{};
    for (GameState start : all_game_states()) {
        GibbsRng rng(derive_seed(seed, std::uint64_t(start.index())));
        double total = 0.0;
        for (std::int64_t sim = 0; sim < innings_per_state; ++sim) {
            detail::Diamond d{start.bases.first, start.bases.second, start.bases.third, 0};
            int outs = start.outs;
            while (outs < 3) {
                double u = rng.uniform();
                if (u < model.p_out) {
                    ++outs;
                } else if (u < model.p_out + model.p_walk) {
                    detail::advance_on_walk(d);
                } else if (u < model.p_out + model.p_walk + model.p_single) {
                    detail::advance_on_single(d, model, rng);
                } else if (u < model.p_out + model.p_walk + model.p_single + model.p_double) {
                    detail::advance_on_double(d, model, rng);
                } else if (u < model.p_out + model.p_walk + model.p_single + model.p_double +
                                   model.p_triple) {
                    d.runs += d.first + d.second + d.third;
                    d.first = d.second = false;
                    d.third = true;
                } else {
                    d.runs += 1 + d.first + d.second + d.third;
                    d.first = d.second = d.third = false;
                }
            }
            total += double(d.runs);
        }
        expected[start.index()] = total / double(innings_per_state);
    }
    return expected;
}

}  // namespace armvalue
