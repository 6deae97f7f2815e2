#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "armvalue/ledger.hpp"
#include "armvalue/random.hpp"

namespace armvalue {

// One player-season on the common opportunity scale: Y = X * n_bar / n, with
// weight n_star = n / n_bar.
struct ScaledObservation {
    std::int32_t player = 0;  // index into the model's player list
    std::int32_t season = 0;  // season index j within the player, 0-based
    double y = 0.0;
    double n_star = 0.0;
};

inline double mean_opportunities(const RunValueLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("empty ledger");
    double total = 0.0;
    for (const auto& e : ledger) total += double(e.opportunities);
    return total / double(ledger.size());
}

struct PlayerSeries {
    std::string id;
    std::vector<double> y;
    std::vector<double> n_star;
    double avg_opportunities = 0.0;

    std::size_t seasons() const { return y.size(); }

    // Precision-weighted mean of the scaled values, sum(n* y) / sum(n*).
    double weighted_mean() const {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            num += n_star[j] * y[j];
            den += n_star[j];
        }
        return num / den;
    }
};

// Ledger regrouped for the sampler.  Players are ordered by id and seasons
// by year so a given ledger always produces the same indexing.
struct ModelData {
    std::vector<PlayerSeries> players;
    double n_bar = 0.0;

    static ModelData from_ledger(RunValueLedger ledger) {
        if (ledger.empty()) throw std::invalid_argument("empty ledger");
        for (const auto& e : ledger)
            if (e.opportunities <= 0)
                throw std::invalid_argument("ledger entry with no opportunities: " + e.player_id);
        sort_ledger(ledger);
        ModelData data;
        data.n_bar = mean_opportunities(ledger);
        std::map<std::string, PlayerSeries> by_player;
        std::map<std::string, double> total_opportunities;
        for (const auto& e : ledger) {
            PlayerSeries& p = by_player[e.player_id];
            p.id = e.player_id;
            p.y.push_back(e.run_value * data.n_bar / double(e.opportunities));
            p.n_star.push_back(double(e.opportunities) / data.n_bar);
            total_opportunities[e.player_id] += double(e.opportunities);
        }
        for (auto& [id, p] : by_player) {
            p.avg_opportunities = total_opportunities[id] / double(p.seasons());
            data.players.push_back(std::move(p));
        }
        return data;
    }
};

inline std::vector<ScaledObservation> scale_observations(const RunValueLedger& ledger) {
    ModelData data = ModelData::from_ledger(ledger);
    std::vector<ScaledObservation> observations;
    for (std::size_t i = 0; i < data.players.size(); ++i)
        for (std::size_t j = 0; j < data.players[i].seasons(); ++j)
            observations.push_back({std::int32_t(i), std::int32_t(j), data.players[i].y[j],
                                    data.players[i].n_star[j]});
    return observations;
}

// Hyper-parameters of the three priors.  The defaults are the non-influential
// limits: nu -> 0, gamma -> 0, and a large finite stand-in for beta -> inf.
struct HyperParams {
    double nu = 0.0;
    double beta = 1e12;
    double gamma = 0.0;

    void validate() const {
        if (nu < 0.0) throw std::invalid_argument("nu must be >= 0");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
        if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    }
};

struct SamplerConfig {
    std::int64_t burnin = 2000;
    std::int64_t draws = 20000;
    std::int64_t thin = 1;
    std::uint64_t seed = 20020405;
};

struct ModelState {
    std::vector<double> mu;
    std::vector<double> sigma2;
    double mu0 = 0.0;
    double tau2 = 1.0;
};

struct NormalParams {
    double mean = 0.0;
    double variance = 1.0;
};

struct InvGammaParams {
    double shape = 1.0;
    double scale = 1.0;
};

// Conditional of mu_i: a precision-weighted compromise between the player's
// data total sum(n* y) and the population mean mu0.
inline NormalParams mu_conditional(const ModelState& state, const ModelData& data, std::size_t i) {
    const PlayerSeries& p = data.players[i];
    double sum_ny = 0.0, sum_n = 0.0;
    for (std::size_t j = 0; j < p.seasons(); ++j) {
        sum_ny += p.n_star[j] * p.y[j];
        sum_n += p.n_star[j];
    }
    double precision = sum_n / state.sigma2[i] + 1.0 / state.tau2;
    double mean = (sum_ny / state.sigma2[i] + state.mu0 / state.tau2) / precision;
    return {mean, 1.0 / precision};
}

inline InvGammaParams sigma2_conditional(const ModelState& state, const ModelData& data,
                                         const HyperParams& hyper, std::size_t i) {
    const PlayerSeries& p = data.players[i];
    double residual = 0.0;
    for (std::size_t j = 0; j < p.seasons(); ++j) {
        double r = p.y[j] - state.mu[i];
        residual += p.n_star[j] * r * r;
    }
    return {(double(p.seasons()) + hyper.nu) / 2.0, (residual + 1.0) / 2.0};
}

inline NormalParams mu0_conditional(const ModelState& state, const HyperParams& hyper) {
    double n = double(state.mu.size());
    double mu_bar = std::accumulate(state.mu.begin(), state.mu.end(), 0.0) / n;
    double precision = n / state.tau2 + 1.0 / hyper.beta;
    return {(n / state.tau2) * mu_bar / precision, 1.0 / precision};
}

inline InvGammaParams tau2_conditional(const ModelState& state, const HyperParams& hyper) {
    double residual = 0.0;
    for (double m : state.mu) {
        double r = m - state.mu0;
        residual += r * r;
    }
    return {(double(state.mu.size()) + hyper.gamma) / 2.0, (residual + 1.0) / 2.0};
}

template <class Rng>
void gibbs_step_mu(ModelState& state, const ModelData& data, Rng& rng) {
    for (std::size_t i = 0; i < data.players.size(); ++i) {
        NormalParams c = mu_conditional(state, data, i);
        state.mu[i] = rng.normal(c.mean, std::sqrt(c.variance));
    }
}

template <class Rng>
void gibbs_step_sigma2(ModelState& state, const ModelData& data, const HyperParams& hyper,
                       Rng& rng) {
    for (std::size_t i = 0; i < data.players.size(); ++i) {
        InvGammaParams c = sigma2_conditional(state, data, hyper, i);
        state.sigma2[i] = rng.inverse_gamma(c.shape, c.scale);
    }
}

template <class Rng>
void gibbs_step_mu0(ModelState& state, const HyperParams& hyper, Rng& rng) {
    NormalParams c = mu0_conditional(state, hyper);
    state.mu0 = rng.normal(c.mean, std::sqrt(c.variance));
}

template <class Rng>
void gibbs_step_tau2(ModelState& state, const HyperParams& hyper, Rng& rng) {
    InvGammaParams c = tau2_conditional(state, hyper);
    state.tau2 = rng.inverse_gamma(c.shape, c.scale);
}

// Known-variance point estimate of a group mean (the shrinkage compromise
// between the group's observed mean and the population mean).
inline double shrinkage_estimate(double y_bar, double m, double sigma2, double tau2, double mu0) {
    double data_precision = m / sigma2;
    double prior_precision = 1.0 / tau2;
    return (data_precision * y_bar + prior_precision * mu0) / (data_precision + prior_precision);
}

// Warm start at the data's own estimates; burn-in does the rest.
inline ModelState initial_state(const ModelData& data) {
    ModelState state;
    state.mu.reserve(data.players.size());
    state.sigma2.reserve(data.players.size());
    for (const PlayerSeries& p : data.players) {
        state.mu.push_back(p.weighted_mean());
        double variance = 1.0;
        if (p.seasons() > 1) {
            double mean = std::accumulate(p.y.begin(), p.y.end(), 0.0) / double(p.seasons());
            double ss = 0.0;
            for (double y : p.y) ss += (y - mean) * (y - mean);
            variance = ss / double(p.seasons() - 1);
            if (!(variance > 0.0)) variance = 1.0;
        }
        state.sigma2.push_back(variance);
    }
    double n = double(state.mu.size());
    state.mu0 = std::accumulate(state.mu.begin(), state.mu.end(), 0.0) / n;
    double ss = 0.0;
    for (double m : state.mu) ss += (m - state.mu0) * (m - state.mu0);
    state.tau2 = n > 1 ? ss / (n - 1) : 1.0;
    if (!(state.tau2 > 0.0)) state.tau2 = 1.0;
    return state;
}

// Retained draws, one row per kept iteration.  Identical (data, hyper,
// config) inputs reproduce identical draws bit for bit.
struct PosteriorDraws {
    std::vector<std::string> player_ids;
    std::int64_t n_retained = 0;
    std::vector<double> mu;      // row-major [draw][player]
    std::vector<double> sigma2;  // row-major [draw][player]
    std::vector<double> mu0;
    std::vector<double> tau2;
    std::vector<std::string> warnings;

    double mu_at(std::int64_t draw, std::size_t player) const {
        return mu[std::size_t(draw) * player_ids.size() + player];
    }
};

template <class Rng = GibbsRng>
PosteriorDraws run_gibbs(const ModelData& data, const HyperParams& hyper,
                         const SamplerConfig& config) {
    hyper.validate();
    if (data.players.size() < 2)
        throw std::invalid_argument(
            "the model needs at least two players; the population spread is "
            "unidentifiable from one");
    if (config.burnin < 0 || config.draws < 1) throw std::invalid_argument("bad iteration counts");
    if (config.thin < 1) throw std::invalid_argument("thin must be >= 1");

    PosteriorDraws draws;
    for (const PlayerSeries& p : data.players) draws.player_ids.push_back(p.id);
    if (config.draws < 1000)
        draws.warnings.push_back("fewer than 1000 retained draws; interval endpoints will be noisy");

    std::size_t n_players = data.players.size();
    std::int64_t retained = config.draws / config.thin;
    draws.n_retained = retained;
    draws.mu.reserve(std::size_t(retained) * n_players);
    draws.sigma2.reserve(std::size_t(retained) * n_players);
    draws.mu0.reserve(std::size_t(retained));
    draws.tau2.reserve(std::size_t(retained));

    ModelState state = initial_state(data);
    Rng rng(config.seed);
    for (std::int64_t iter = 0; iter < config.burnin + config.draws; ++iter) {
        gibbs_step_mu(state, data, rng);
        gibbs_step_sigma2(state, data, hyper, rng);
        gibbs_step_mu0(state, hyper, rng);
        gibbs_step_tau2(state, hyper, rng);
        std::int64_t kept = iter - config.burnin;
        if (kept < 0 || (kept + 1) % config.thin != 0) continue;
        draws.mu.insert(draws.mu.end(), state.mu.begin(), state.mu.end());
        draws.sigma2.insert(draws.sigma2.end(), state.sigma2.begin(), state.sigma2.end());
        draws.mu0.push_back(state.mu0);
        draws.tau2.push_back(state.tau2);
    }
    return draws;
}

}  // namespace armvalue
