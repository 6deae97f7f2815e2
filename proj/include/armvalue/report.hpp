#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "armvalue/csv.hpp"
#include "armvalue/hier_model.hpp"
#include "armvalue/ledger.hpp"

namespace armvalue {

// Posterior summary for one player on both reporting scales.  The scaled
// numbers describe a season with the league-average number of opportunities;
// the individual numbers are rescaled by the player's own average.
struct PosteriorSummary {
    std::string player_id;
    double mean_scaled = 0.0;
    double lo_scaled = 0.0;
    double hi_scaled = 0.0;
    double avg_opportunities = 0.0;
    double mean_individual = 0.0;
    double lo_individual = 0.0;
    double hi_individual = 0.0;
    bool significant = false;  // the 95% interval excludes zero (open exclusion)
    std::optional<double> attempt_pct;
};

// Linear interpolation between order statistics, h = (n - 1) p.  Fixed here
// so summaries reproduce bit for bit.
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of no draws");
    double h = double(sorted.size() - 1) * p;
    std::size_t lo = std::size_t(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = h - double(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline std::vector<PosteriorSummary> summarize(
    const PosteriorDraws& draws, const RunValueLedger& ledger,
    const std::map<std::string, double>* attempt_pct = nullptr) {
    if (draws.n_retained <= 0 || draws.player_ids.empty())
        throw std::invalid_argument("no draws to summarize");

    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < draws.player_ids.size(); ++i) column[draws.player_ids[i]] = i;

    double n_bar = mean_opportunities(ledger);
    std::map<std::string, std::pair<double, std::int64_t>> opportunity_totals;
    for (const auto& e : ledger) {
        auto& [total, seasons] = opportunity_totals[e.player_id];
        total += double(e.opportunities);
        ++seasons;
    }

    std::vector<PosteriorSummary> summaries;
    summaries.reserve(opportunity_totals.size());
    std::vector<double> sample(std::size_t(draws.n_retained));
    for (const auto& [player_id, totals] : opportunity_totals) {
        auto it = column.find(player_id);
        if (it == column.end())
            throw std::invalid_argument("player '" + player_id + "' is not in the draws");
        std::size_t col = it->second;
        double sum = 0.0;
        for (std::int64_t d = 0; d < draws.n_retained; ++d) {
            sample[std::size_t(d)] = draws.mu_at(d, col);
            sum += sample[std::size_t(d)];
        }
        std::sort(sample.begin(), sample.end());

        PosteriorSummary s;
        s.player_id = player_id;
        s.mean_scaled = sum / double(draws.n_retained);
        s.lo_scaled = quantile_sorted(sample, 0.025);
        s.hi_scaled = quantile_sorted(sample, 0.975);
        s.avg_opportunities = totals.first / double(totals.second);
        double factor = s.avg_opportunities / n_bar;
        s.mean_individual = s.mean_scaled * factor;
        s.lo_individual = s.lo_scaled * factor;
        s.hi_individual = s.hi_scaled * factor;
        s.significant = s.lo_scaled > 0.0 || s.hi_scaled < 0.0;
        if (attempt_pct) {
            auto a = attempt_pct->find(player_id);
            if (a != attempt_pct->end()) s.attempt_pct = a->second;
        }
        summaries.push_back(std::move(s));
    }
    return summaries;
}

// Attempt percentages from a catcher ledger: 100 * sum(A) / sum(N) across
// seasons, for the attempt-rate comparison column.
inline std::map<std::string, double> attempt_percentages(const RunValueLedger& ledger) {
    std::map<std::string, std::pair<double, double>> totals;
    for (const auto& e : ledger) {
        if (!e.attempts) continue;
        auto& [attempts, opportunities] = totals[e.player_id];
        attempts += double(*e.attempts);
        opportunities += double(e.opportunities);
    }
    std::map<std::string, double> pct;
    for (const auto& [id, t] : totals)
        if (t.second > 0.0) pct[id] = 100.0 * t.first / t.second;
    return pct;
}

enum class RankDirection { Best, Worst };

// Top-k by individual run contribution; ties break lexicographically by
// player id so listings are stable across runs.
inline std::vector<PosteriorSummary> rank(std::span<const PosteriorSummary> summaries,
                                          std::size_t k, RankDirection direction) {
    if (k > summaries.size()) throw std::invalid_argument("k exceeds the number of players");
    std::vector<PosteriorSummary> ordered(summaries.begin(), summaries.end());
    std::sort(ordered.begin(), ordered.end(),
              [direction](const PosteriorSummary& a, const PosteriorSummary& b) {
                  if (a.mean_individual != b.mean_individual)
                      return direction == RankDirection::Best
                                 ? a.mean_individual > b.mean_individual
                                 : a.mean_individual < b.mean_individual;
                  return a.player_id < b.player_id;
              });
    ordered.resize(k);
    return ordered;
}

inline std::size_t significance_count(std::span<const PosteriorSummary> summaries) {
    std::size_t count = 0;
    for (const auto& s : summaries) count += s.significant ? 1 : 0;
    return count;
}

// Interval data for the posterior-interval plots, one row per player ordered
// by ascending individual posterior mean.
inline void export_interval_plot_data(std::span<const PosteriorSummary> summaries,
                                      std::ostream& out) {
    std::vector<const PosteriorSummary*> ordered;
    ordered.reserve(summaries.size());
    for (const auto& s : summaries) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(), [](const PosteriorSummary* a, const PosteriorSummary* b) {
        if (a->mean_individual != b->mean_individual) return a->mean_individual < b->mean_individual;
        return a->player_id < b->player_id;
    });
    out << "rank,mean,lower,upper\n";
    std::size_t r = 1;
    for (const PosteriorSummary* s : ordered)
        out << r++ << ',' << csv::format_double(s->mean_individual) << ','
            << csv::format_double(s->lo_individual) << ',' << csv::format_double(s->hi_individual)
            << '\n';
}

inline constexpr std::string_view kSummaryHeader =
    "player_id,mean_scaled,lo_scaled,hi_scaled,avg_opps,mean_individual,lo_individual,"
    "hi_individual,significant,attempt_pct";

inline void write_summaries(std::ostream& out, std::span<const PosteriorSummary> summaries) {
    out << kSummaryHeader << '\n';
    for (const auto& s : summaries) {
        out << s.player_id << ',' << csv::format_double(s.mean_scaled) << ','
            << csv::format_double(s.lo_scaled) << ',' << csv::format_double(s.hi_scaled) << ','
            << csv::format_double(s.avg_opportunities) << ','
            << csv::format_double(s.mean_individual) << ',' << csv::format_double(s.lo_individual)
            << ',' << csv::format_double(s.hi_individual) << ',' << (s.significant ? 1 : 0) << ',';
        if (s.attempt_pct) out << csv::format_double(*s.attempt_pct);
        out << '\n';
    }
}

}  // namespace armvalue
